//! Special functions behind the closed-form prices and densities.
//!
//! Everything here is built from elementary functions only: the normal CDF
//! comes from the incomplete gamma function, the Bessel and Kummer functions
//! from their ascending series, and the noncentral chi-squared survival
//! function from a Poisson mixture of central terms.

mod bessel;
mod gamma;
mod hypergeometric;
mod ncx2;
mod normal;

pub use bessel::{bessel_i, bessel_i_scaled, ln_bessel_i};
pub use gamma::{ln_gamma, reg_gamma_pair, reg_lower_gamma, reg_upper_gamma};
pub use hypergeometric::{kummer_m, whittaker_m};
pub use ncx2::{noncentral_chi2_sf, q_normal_limit};
pub use normal::{normal_cdf, normal_pdf};


use serde::{Deserialize, Serialize};

/// Truncation controls shared by the series evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            max_terms: 100_000,
        }
    }
}

impl SeriesControl {
    pub fn new(abs_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(crate::Error::param("abs_tol", "must be positive"));
        }
        if max_terms == 0 {
            return Err(crate::Error::param("max_terms", "must be at least 1"));
        }
        Ok(Self { abs_tol, max_terms })
    }
}
