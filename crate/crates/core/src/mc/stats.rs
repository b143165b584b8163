//! Goodness-of-fit statistics used to compare samples with closed-form laws.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::reg_upper_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

/// One-sample Kolmogorov–Smirnov test against `cdf`, with the asymptotic
/// Kolmogorov p-value (Stephens' small-sample correction).
pub fn kolmogorov_smirnov(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
    if samples.is_empty() {
        return Err(Error::param("samples", "must be nonempty"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i as f64 + 1.0) / n - f);
    }
    let sqrt_n = n.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    Ok(KsResult {
        statistic: d,
        p_value: kolmogorov_q(lambda),
        n: sorted.len(),
    })
}

/// `Q_KS(λ) = 2 Σ_{j≥1} (-1)^{j-1} e^{-2j²λ²}`.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = sign * (-2.0 * jf * jf * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson χ² test of `observed` bin counts against bin probabilities.
///
/// Adjacent bins are pooled until each expected count reaches 5. Mass not
/// covered by `probabilities` becomes one extra bin whose observed count is
/// `total - Σ observed`.
pub fn chi_square_gof(observed: &[u64], probabilities: &[f64], total: u64) -> Result<ChiSquareResult> {
    if observed.len() != probabilities.len() {
        return Err(Error::param("probabilities", "length must match observed"));
    }
    let n = total as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probabilities) {
        acc.0 += o as f64;
        acc.1 += p * n;
        if acc.1 >= 5.0 {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    let seen: u64 = observed.iter().sum();
    let covered: f64 = probabilities.iter().sum();
    acc.0 += (total - seen.min(total)) as f64;
    acc.1 += (1.0 - covered).max(0.0) * n;
    if acc.1 >= 5.0 || bins.is_empty() {
        bins.push(acc);
    } else if let Some(last) = bins.last_mut() {
        last.0 += acc.0;
        last.1 += acc.1;
    }
    if bins.len() < 2 {
        return Err(Error::param("observed", "need at least two pooled bins"));
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = bins.len() - 1;
    Ok(ChiSquareResult {
        statistic,
        dof,
        p_value: reg_upper_gamma(dof as f64 / 2.0, statistic / 2.0)?,
    })
}
