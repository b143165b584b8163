use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: usize,
}

impl McEstimate {
    /// Mean and standard error of `values`, accumulated in index order.
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::param("n_paths", "need at least two samples"));
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let var = ss / (n as f64 - 1.0);
        Ok(Self {
            mean,
            std_error: (var / n as f64).sqrt(),
            n_paths: n,
        })
    }

    /// Distance to `target` in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target) / self.std_error
    }

    pub fn within(&self, target: f64, n_se: f64) -> bool {
        (self.mean - target).abs() <= n_se * self.std_error
    }
}

/// Discounted call payoff `e^{-rT}(S_T - E)^+` averaged over terminal prices.
/// Absorbed paths carry `S_T = 0` and pay nothing.
pub fn mc_price(samples: &[f64], strike: f64, rate: f64, maturity: f64) -> Result<McEstimate> {
    let disc = (-rate * maturity).exp();
    let payoffs: Vec<f64> = samples
        .iter()
        .map(|&s| disc * (s - strike).max(0.0))
        .collect();
    McEstimate::from_samples(&payoffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_out_of_the_money() {
        let e = mc_price(&[1.0, 2.0, 3.0], 10.0, 0.05, 1.0).unwrap();
        assert_eq!(e.mean, 0.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn constant_in_the_money() {
        let e = mc_price(&[120.0; 10], 100.0, 0.05, 2.0).unwrap();
        assert!((e.mean - (-0.1f64).exp() * 20.0).abs() < 1e-12);
        assert!(e.std_error < 1e-12);
        assert_eq!(e.n_paths, 10);
    }

    #[test]
    fn too_few_samples() {
        assert!(mc_price(&[1.0], 1.0, 0.0, 1.0).is_err());
    }
}
