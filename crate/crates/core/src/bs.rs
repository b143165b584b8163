//! Black–Scholes dynamics `dS = rS dt + σS dZ` driven by a gfBm.
//!
//! With `x = ln S - rt` the log-price is Gaussian with variance
//! `v(t) = σ²·K·t^{2H}` and mean `ln S₀ - v(t)/2`, so every quantity here is
//! the classical one with `σ²T` replaced by the total variance `v(T)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::process::{GfbmParams, ProcessKind};
use crate::quote::PriceQuote;
use crate::specfun::normal_cdf;

/// Market inputs shared by both pricers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams {
    pub s0: f64,
    pub strike: f64,
    pub rate: f64,
    pub sigma: f64,
    pub maturity: f64,
}

impl MarketParams {
    pub fn new(s0: f64, strike: f64, rate: f64, sigma: f64, maturity: f64) -> Result<Self> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, format!("{v} must be positive and finite")))
            }
        };
        positive("s0", s0)?;
        positive("strike", strike)?;
        positive("sigma", sigma)?;
        positive("maturity", maturity)?;
        if !rate.is_finite() {
            return Err(Error::param("rate", "must be finite"));
        }
        Ok(Self {
            s0,
            strike,
            rate,
            sigma,
            maturity,
        })
    }

    pub fn with_strike(self, strike: f64) -> Result<Self> {
        Self::new(self.s0, strike, self.rate, self.sigma, self.maturity)
    }

    pub fn with_sigma(self, sigma: f64) -> Result<Self> {
        Self::new(self.s0, self.strike, self.rate, sigma, self.maturity)
    }

    pub fn discount(&self) -> f64 {
        (-self.rate * self.maturity).exp()
    }
}

/// A one-dimensional normal law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianLaw {
    pub mean: f64,
    pub variance: f64,
}

impl GaussianLaw {
    pub fn pdf(&self, x: f64) -> f64 {
        let z = x - self.mean;
        (-0.5 * z * z / self.variance).exp() / (2.0 * std::f64::consts::PI * self.variance).sqrt()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        normal_cdf((x - self.mean) / self.variance.sqrt())
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// `σ²·K·t^{2H}`.
pub fn total_variance(p: &GfbmParams, m: &MarketParams, t: f64) -> f64 {
    m.sigma * m.sigma * p.k_factor() * p.time_power(t)
}

/// Law of `x_t = ln S_t - r·t` given `x_0 = ln S_0`.
pub fn log_price_law(p: &GfbmParams, m: &MarketParams, t: f64) -> Result<GaussianLaw> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let v = total_variance(p, m, t);
    Ok(GaussianLaw {
        mean: m.s0.ln() - 0.5 * v,
        variance: v,
    })
}

/// Risk-neutral density of `S_T` at the market's maturity.
pub fn price_density(p: &GfbmParams, m: &MarketParams, s_t: f64) -> Result<f64> {
    price_density_at(p, m, s_t, m.maturity)
}

/// Density of `S_t` at an arbitrary horizon `t > 0`.
pub fn price_density_at(p: &GfbmParams, m: &MarketParams, s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain("price_density", format!("price {s} must be positive")));
    }
    let law = log_price_law(p, m, t)?;
    Ok(law.pdf(s.ln() - m.rate * t) / s)
}

pub fn d1_d2(p: &GfbmParams, m: &MarketParams) -> (f64, f64) {
    let v = total_variance(p, m, m.maturity);
    let sd = v.sqrt();
    let d1 = ((m.s0 / m.strike).ln() + m.rate * m.maturity + 0.5 * v) / sd;
    (d1, d1 - sd)
}

pub fn call_price(p: &GfbmParams, m: &MarketParams) -> PriceQuote {
    let (d1, d2) = d1_d2(p, m);
    let price = m.s0 * normal_cdf(d1) - m.strike * m.discount() * normal_cdf(d2);
    PriceQuote::closed_form(price, "gfbm-black-scholes-call")
}

/// Put by parity against the closed-form call.
pub fn put_price(p: &GfbmParams, m: &MarketParams) -> PriceQuote {
    let call = call_price(p, m).price;
    PriceQuote::closed_form(
        call - m.s0 + m.strike * m.discount(),
        "gfbm-black-scholes-put-parity",
    )
}

/// General formula next to the matching special-case formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub kind: ProcessKind,
    pub general: f64,
    /// `None` for a general `(a, b)`, which has no named special case.
    pub special: Option<f64>,
    pub special_formula: Option<&'static str>,
    pub gap: Option<f64>,
}

pub fn reduction_report(p: &GfbmParams, m: &MarketParams) -> ReductionReport {
    let general = call_price(p, m).price;
    let h = p.hurst();
    let scale = p.a() * p.a();
    let (special, name) = match p.classify() {
        ProcessKind::StandardBm => (
            Some(reference::textbook_call(m.s0, m.strike, m.rate, m.sigma * p.a().abs(), m.maturity)),
            Some("black-scholes"),
        ),
        ProcessKind::FractionalBm => (
            Some(reference::fractional_call(
                m.s0,
                m.strike,
                m.rate,
                m.sigma * p.a().abs(),
                m.maturity,
                h,
            )),
            Some("fractional-black-scholes"),
        ),
        ProcessKind::SubFractionalBm => (
            // the named formula is stated for a = b = 1/√2; rescale σ for other a
            Some(reference::sub_fractional_call(
                m.s0,
                m.strike,
                m.rate,
                m.sigma * (2.0 * scale).sqrt(),
                m.maturity,
                h,
            )),
            Some("sub-fractional-black-scholes"),
        ),
        ProcessKind::General => (None, None),
    };
    ReductionReport {
        kind: p.classify(),
        general,
        special,
        special_formula: name,
        gap: special.map(|s| (s - general).abs()),
    }
}

/// The named special cases, each written out in its own textbook form.
pub mod reference {
    use crate::specfun::normal_cdf;

    pub fn textbook_call(s0: f64, strike: f64, rate: f64, sigma: f64, t: f64) -> f64 {
        let sqrt_t = t.sqrt();
        let d1 = ((s0 / strike).ln() + (rate + 0.5 * sigma * sigma) * t) / (sigma * sqrt_t);
        let d2 = d1 - sigma * sqrt_t;
        s0 * normal_cdf(d1) - strike * (-rate * t).exp() * normal_cdf(d2)
    }

    /// Fractional Black–Scholes with `σ²T^{2H}` in place of `σ²T`.
    pub fn fractional_call(s0: f64, strike: f64, rate: f64, sigma: f64, t: f64, h: f64) -> f64 {
        let t2h = t.powf(2.0 * h);
        let d1 = ((s0 / strike).ln() + rate * t + 0.5 * sigma * sigma * t2h) / (sigma * t.powf(h));
        let d2 = ((s0 / strike).ln() + rate * t - 0.5 * sigma * sigma * t2h) / (sigma * t.powf(h));
        s0 * normal_cdf(d1) - strike * (-rate * t).exp() * normal_cdf(d2)
    }

    /// Sub-fractional Black–Scholes, variance factor `2 - 2^{2H-1}`.
    pub fn sub_fractional_call(s0: f64, strike: f64, rate: f64, sigma: f64, t: f64, h: f64) -> f64 {
        let t2h = t.powf(2.0 * h);
        let half_var = (1.0 - 2f64.powf(2.0 * h - 2.0)) * sigma * sigma * t2h;
        let sd = sigma * ((2.0 - 2f64.powf(2.0 * h - 1.0)) * t2h).sqrt();
        let d1 = ((s0 / strike).ln() + rate * t + half_var) / sd;
        let d2 = ((s0 / strike).ln() + rate * t - half_var) / sd;
        s0 * normal_cdf(d1) - strike * (-rate * t).exp() * normal_cdf(d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadControl};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn atm() -> MarketParams {
        MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0).unwrap()
    }

    #[test]
    fn market_validation() {
        assert!(MarketParams::new(0.0, 100.0, 0.05, 0.2, 1.0).is_err());
        assert!(MarketParams::new(100.0, -1.0, 0.05, 0.2, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, 0.05, 0.0, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, 0.05, 0.2, 0.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, f64::NAN, 0.2, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, -0.01, 0.2, 1.0).is_ok());
    }

    #[test]
    fn log_law_classical() {
        let m = atm();
        let law = log_price_law(&GfbmParams::standard(), &m, 1.0).unwrap();
        assert_relative_eq!(law.mean, 100f64.ln() - 0.02, max_relative = 1e-15);
        assert_relative_eq!(law.variance, 0.04, max_relative = 1e-15);
        let g = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
        let law = log_price_law(&g, &m, 2.0).unwrap();
        let k = 2.25 - 2f64.powf(1.4) * 0.5;
        assert_relative_eq!(law.variance, 0.04 * k * 2f64.powf(1.4), max_relative = 1e-13);
        assert!(log_price_law(&g, &m, 0.0).is_err());
    }

    #[test]
    fn tiny_sigma_concentrates() {
        let m = atm().with_sigma(1e-9).unwrap();
        let law = log_price_law(&GfbmParams::standard(), &m, 1.0).unwrap();
        assert!(law.variance < 1e-17);
        assert_relative_eq!(law.mean, 100f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn d1_d2_examples() {
        let (d1, d2) = d1_d2(&GfbmParams::standard(), &atm());
        assert_relative_eq!(d1, 0.35, max_relative = 1e-14);
        assert_relative_eq!(d2, 0.15, max_relative = 1e-13);

        let g = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
        let m = atm().with_strike(100.0 * (0.05f64).exp()).unwrap();
        let (d1, d2) = d1_d2(&g, &m);
        let sd = total_variance(&g, &m, 1.0).sqrt();
        assert_relative_eq!(d1, 0.5 * sd, max_relative = 1e-12);
        assert_relative_eq!(d2, -d1, max_relative = 1e-12);
    }

    #[test]
    fn call_put_reference_point() {
        let call = call_price(&GfbmParams::standard(), &atm()).price;
        assert!((call - 10.450_583_572_185_565).abs() < 1e-10, "{call}");
        let put = put_price(&GfbmParams::standard(), &atm()).price;
        assert!((put - 5.573_526_022_256_971).abs() < 1e-10, "{put}");
    }

    #[test]
    fn tiny_strike_limits() {
        let m = atm().with_strike(1e-8).unwrap();
        let g = GfbmParams::new(1.0, 0.5, 0.3).unwrap();
        assert!((call_price(&g, &m).price - 100.0).abs() < 1e-6);
        assert!(put_price(&g, &m).price.abs() < 1e-6);
    }

    #[test]
    fn density_mass_mean_and_mode() {
        let g = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
        let m = atm();
        let ctl = QuadControl::default();
        let f = |s: f64| price_density(&g, &m, s).unwrap();
        let mass = integrate(f, 1e-6, 400.0, ctl).unwrap();
        assert!((mass - 1.0).abs() < 1e-8, "{mass}");
        let mean = integrate(|s| s * f(s), 1e-6, 400.0, ctl).unwrap();
        assert_relative_eq!(mean, 100.0 * 0.05f64.exp(), max_relative = 1e-9);

        let v = total_variance(&g, &m, 1.0);
        let mode = 100.0 * (0.05 - 1.5 * v).exp();
        assert!(f(mode) > f(mode * 1.001) && f(mode) > f(mode * 0.999));
        assert!(price_density(&g, &m, 0.0).is_err());
    }

    #[test]
    fn reductions_are_tight() {
        let m = atm();
        for p in [
            GfbmParams::standard(),
            GfbmParams::fractional(0.3).unwrap(),
            GfbmParams::fractional(0.8).unwrap(),
            GfbmParams::sub_fractional(0.6).unwrap(),
            GfbmParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.5).unwrap(),
        ] {
            let r = reduction_report(&p, &m);
            assert!(r.gap.unwrap() <= 1e-12, "{r:?}");
        }
        let general = reduction_report(&GfbmParams::new(1.0, 0.5, 0.7).unwrap(), &m);
        assert_eq!(general.kind, ProcessKind::General);
        assert!(general.special.is_none());
    }
}
