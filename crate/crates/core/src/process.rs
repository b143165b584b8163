//! Generalized fractional Brownian motion `Z_t = a·B^H_t + b·B^H_{-t}`.
//!
//! `B^H` is a two-sided fractional Brownian motion. The weights `(a, b)` and
//! the Hurst exponent `H` select the familiar special cases:
//!
//! | `(a, b, H)`          | process                        |
//! |----------------------|--------------------------------|
//! | `(a, 0, 1/2)`        | scaled standard Brownian motion |
//! | `(a, 0, H)`          | fractional Brownian motion     |
//! | `(a, a, H)`          | sub-fractional Brownian motion |
//!
//! Every closed form in this crate depends on the process only through the
//! variance factor `K = (a+b)^2 - 2^{2H}·a·b`, with `Var Z_t = K·t^{2H}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The triple `(a, b, H)` defining a gfBm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GfbmParams {
    a: f64,
    b: f64,
    hurst: f64,
}

/// Named special cases of the gfBm family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProcessKind {
    StandardBm,
    FractionalBm,
    SubFractionalBm,
    General,
}

impl GfbmParams {
    pub fn new(a: f64, b: f64, hurst: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::param("a, b", "weights must be finite"));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::param("a, b", "(a, b) must not be (0, 0)"));
        }
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::param("hurst", format!("{hurst} not in (0, 1)")));
        }
        Ok(Self { a, b, hurst })
    }

    /// Standard Brownian motion, `(1, 0, 1/2)`.
    pub fn standard() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            hurst: 0.5,
        }
    }

    /// Fractional Brownian motion, `(1, 0, H)`.
    pub fn fractional(hurst: f64) -> Result<Self> {
        Self::new(1.0, 0.0, hurst)
    }

    /// Sub-fractional Brownian motion, `(1/√2, 1/√2, H)`.
    pub fn sub_fractional(hurst: f64) -> Result<Self> {
        Self::new(
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
            hurst,
        )
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    /// `K = (a+b)^2 - 2^{2H}·a·b`; always strictly positive.
    pub fn k_factor(&self) -> f64 {
        let (a, b, h) = (self.a, self.b, self.hurst);
        (a + b).powi(2) - (2.0 * h * std::f64::consts::LN_2).exp() * a * b
    }

    /// `t^{2H}` evaluated as `exp(2H·ln t)`, zero at the origin.
    pub fn time_power(&self, t: f64) -> f64 {
        pow_2h(t, self.hurst)
    }

    pub fn covariance(&self, s: f64, t: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::NegativeTime(s));
        }
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        let (a, b, h) = (self.a, self.b, self.hurst);
        Ok(0.5 * (a + b).powi(2) * (pow_2h(s, h) + pow_2h(t, h))
            - a * b * pow_2h(s + t, h)
            - 0.5 * (a * a + b * b) * pow_2h((t - s).abs(), h))
    }

    pub fn variance(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(self.k_factor() * pow_2h(t, self.hurst))
    }

    /// Coefficient `H·K·t^{2H-1}` multiplying `f''·dt` in the Itô rule.
    ///
    /// Diverges at `t = 0` when `H < 1/2`, so `t` must be positive.
    pub fn ito_drift_coeff(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::NonPositiveTime(t));
        }
        let h = self.hurst;
        Ok(h * self.k_factor() * ((2.0 * h - 1.0) * t.ln()).exp())
    }

    /// Exact comparison on the stored values; used for reporting only.
    pub fn classify(&self) -> ProcessKind {
        if self.b == 0.0 {
            if self.hurst == 0.5 {
                ProcessKind::StandardBm
            } else {
                ProcessKind::FractionalBm
            }
        } else if self.a == self.b {
            ProcessKind::SubFractionalBm
        } else {
            ProcessKind::General
        }
    }
}

pub fn k_factor(p: &GfbmParams) -> f64 {
    p.k_factor()
}

pub fn covariance(p: &GfbmParams, s: f64, t: f64) -> Result<f64> {
    p.covariance(s, t)
}

pub fn variance(p: &GfbmParams, t: f64) -> Result<f64> {
    p.variance(t)
}

pub fn ito_drift_coeff(p: &GfbmParams, t: f64) -> Result<f64> {
    p.ito_drift_coeff(t)
}

pub fn classify(p: &GfbmParams) -> ProcessKind {
    p.classify()
}

pub(crate) fn pow_2h(t: f64, h: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        (2.0 * h * t.ln()).exp()
    }
}
