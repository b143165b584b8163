//! Noncentral chi-squared survival function and its normal limit.

use super::gamma::{ln_poisson_kernel, reg_gamma_pair};
use super::normal::normal_cdf;
use super::SeriesControl;
use crate::error::{Error, Result};

/// `Q(x; df, λ) = Σ_j Pois(j; λ/2)·Q(df/2 + j, x/2)`.
///
/// The sum starts at the Poisson mode and walks outward in both directions.
/// The central terms are advanced with `Q(s+1, y) = Q(s, y) + y^s e^{-y}/Γ(s+1)`,
/// and each walk stops once the geometric bound on the remaining Poisson
/// mass drops below `ctl.abs_tol`.
pub fn noncentral_chi2_sf(x: f64, df: f64, lambda: f64, ctl: SeriesControl) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain("noncentral_chi2_sf", format!("x = {x} must be >= 0")));
    }
    if !(df > 0.0) || !df.is_finite() {
        return Err(Error::domain("noncentral_chi2_sf", format!("df = {df} must be > 0")));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::domain(
            "noncentral_chi2_sf",
            format!("lambda = {lambda} must be >= 0"),
        ));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let half_x = 0.5 * x;
    let half_df = 0.5 * df;
    if lambda == 0.0 {
        return Ok(reg_gamma_pair(half_df, half_x)?.1);
    }

    let mean = 0.5 * lambda;
    let mode = mean.floor();
    let w_mode = ln_poisson_kernel(mode, mean).exp();
    let q_mode = reg_gamma_pair(half_df + mode, half_x)?.1;
    let kernel = |s: f64| ln_poisson_kernel(s, half_x).exp();

    let mut total = w_mode * q_mode;
    let mut terms = 1usize;

    // upward: j = mode+1, mode+2, ...
    let (mut w, mut q, mut j) = (w_mode, q_mode, mode);
    loop {
        q = (q + kernel(half_df + j)).min(1.0);
        w *= mean / (j + 1.0);
        j += 1.0;
        total += w * q;
        terms += 1;
        let ratio = mean / (j + 1.0);
        if ratio < 1.0 && w * ratio / (1.0 - ratio) < ctl.abs_tol {
            break;
        }
        if terms > ctl.max_terms {
            return Err(Error::NonConvergence {
                function: "noncentral_chi2_sf",
                terms,
            });
        }
    }

    // downward: j = mode-1, ..., 0
    let (mut w, mut q, mut j) = (w_mode, q_mode, mode);
    while j > 0.0 {
        w *= j / mean;
        j -= 1.0;
        q = (q - kernel(half_df + j)).max(0.0);
        total += w * q;
        terms += 1;
        let ratio = j / mean;
        if ratio < 1.0 && w * ratio / (1.0 - ratio) < ctl.abs_tol {
            break;
        }
        if terms > ctl.max_terms {
            return Err(Error::NonConvergence {
                function: "noncentral_chi2_sf",
                terms,
            });
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Normal approximation `Q_N((n - v - λ)/√(2(v + 2λ)))` to `Q(n; v, λ)`,
/// exact in the limit of many degrees of freedom.
pub fn q_normal_limit(n: f64, v: f64, lambda: f64) -> Result<f64> {
    let scale = 2.0 * (v + 2.0 * lambda);
    if !(scale > 0.0) {
        return Err(Error::domain("q_normal_limit", "v + 2λ must be positive"));
    }
    Ok(normal_cdf(-(n - v - lambda) / scale.sqrt()))
}
