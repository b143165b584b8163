//! Confluent hypergeometric (Kummer) and Whittaker M functions.

use super::SeriesControl;
use crate::error::{Error, Result};

/// Kummer's `₁F₁(a; b; z)`.
///
/// Negative `z` goes through Kummer's transformation
/// `M(a, b, z) = e^z·M(b-a, b, -z)` so the summed terms do not alternate.
pub fn kummer_m(a: f64, b: f64, z: f64, ctl: SeriesControl) -> Result<f64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Pole {
            function: "kummer_m",
            reason: format!("b = {b} is a nonpositive integer"),
        });
    }
    if !a.is_finite() || !b.is_finite() || !z.is_finite() {
        return Err(Error::domain("kummer_m", "arguments must be finite"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 {
        return Ok(z.exp() * series(b - a, b, -z, ctl)?);
    }
    series(a, b, z, ctl)
}

fn series(a: f64, b: f64, z: f64, ctl: SeriesControl) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        // only trust the stopping rule once the ratio is below one
        let past_peak = nf + 1.0 > z && nf + 1.0 > a.abs();
        if past_peak && term.abs() <= ctl.abs_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "kummer_m",
        terms: ctl.max_terms,
    })
}

/// Whittaker `M_{κ,μ}(z) = e^{-z/2}·z^{μ+½}·M(μ-κ+½, 1+2μ, z)` for `z > 0`.
pub fn whittaker_m(kappa: f64, mu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain("whittaker_m", format!("z = {z} must be positive")));
    }
    let m = kummer_m(mu - kappa + 0.5, 1.0 + 2.0 * mu, z, SeriesControl::default())?;
    Ok((-0.5 * z + (mu + 0.5) * z.ln()).exp() * m)
}
