//! Modified Bessel function of the first kind, `I_ν(x)` for `ν ≥ 0`.

use super::gamma::ln_gamma_unchecked;
use super::SeriesControl;
use crate::error::{Error, Result};

/// `I_ν(x)`. Overflows to `+∞` past `x ≈ 700`; use [`bessel_i_scaled`] or
/// [`ln_bessel_i`] there.
pub fn bessel_i(nu: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    Ok(ln_bessel_i(nu, x, ctl)?.exp())
}

/// `e^{-x}·I_ν(x)`.
pub fn bessel_i_scaled(nu: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    Ok(ln_bessel_i_scaled(nu, x, ctl)?.exp())
}

/// `ln I_ν(x)`; `-∞` at `x = 0` for `ν > 0`.
pub fn ln_bessel_i(nu: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    Ok(ln_bessel_i_scaled(nu, x, ctl)? + x)
}

/// `ln(e^{-x}·I_ν(x))`, kept separate so large arguments do not lose
/// digits to the `x` offset.
fn ln_bessel_i_scaled(nu: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::domain("bessel_i", format!("order {nu} must be >= 0")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain("bessel_i", format!("argument {x} must be >= 0")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if x > 50.0 && x > nu * nu {
        if let Some(v) = ln_asymptotic(nu, x) {
            return Ok(v);
        }
    }
    Ok(ln_series_from_mode(nu, x, ctl)? - x)
}

/// Hankel expansion `e^x/√(2πx)·Σ (-1)^k a_k(ν)/x^k`; `None` when the terms
/// stop shrinking before reaching double precision.
fn ln_asymptotic(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let next = -term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            return Some(-0.5 * (2.0 * std::f64::consts::PI * x).ln() + sum.ln());
        }
    }
    None
}

/// Ascending series `Σ (x/2)^{2k+ν} / (k!·Γ(k+ν+1))`, summed outward from
/// its largest term in scaled form so that no partial sum overflows.
fn ln_series_from_mode(nu: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    let q = 0.25 * x * x;
    let half_ln = (0.5 * x).ln();
    let mode = ((-(nu + 2.0) + (nu * nu + x * x).sqrt()) / 2.0).round().max(0.0);
    let ln_peak = (2.0 * mode + nu) * half_ln
        - ln_gamma_unchecked(mode + 1.0)
        - ln_gamma_unchecked(mode + nu + 1.0);

    let mut sum = 1.0;
    let mut terms = 1usize;

    let mut t = 1.0;
    let mut k = mode;
    loop {
        t *= q / ((k + 1.0) * (k + nu + 1.0));
        k += 1.0;
        sum += t;
        terms += 1;
        if t < ctl.abs_tol * 1e-3 * sum {
            break;
        }
        if terms > ctl.max_terms {
            return Err(Error::NonConvergence {
                function: "bessel_i",
                terms,
            });
        }
    }

    let mut t = 1.0;
    let mut k = mode;
    while k > 0.0 {
        t *= k * (k + nu) / q;
        k -= 1.0;
        sum += t;
        terms += 1;
        if t < ctl.abs_tol * 1e-3 * sum {
            break;
        }
        if terms > ctl.max_terms {
            return Err(Error::NonConvergence {
                function: "bessel_i",
                terms,
            });
        }
    }
    Ok(ln_peak + sum.ln())
}
