//! CEV dynamics `dS = rS dt + σ S^{α/2} dZ` driven by a gfBm.
//!
//! Under `y = S^{2-α}` the price becomes a Feller-type diffusion
//!
//! ```text
//! dy = (B·y + C(t)) dt + √(2·A(t)·y) dW(t),
//! A(t) = (2-α)²σ²·H·K·t^{2H-1},   B = (2-α)·r,   C(t) = (1-α)/(2-α)·A(t).
//! ```
//!
//! Because `C/A` does not depend on time, `y_t` is a scaled noncentral
//! chi-squared variable with scale `φ(t)/2`, where
//!
//! ```text
//! φ(t) = ∫₀ᵗ A(s)·e^{B(t-s)} ds = (2-α)²σ²K/2 · t^{2H} · M(1, 2H+1, Bt).
//! ```
//!
//! For `α < 2` the origin is absorbing and the density loses mass; for
//! `α > 2` the origin is unattainable.

use serde::{Deserialize, Serialize};

use crate::bs::{self, MarketParams};
use crate::error::{Error, Result};
use crate::process::GfbmParams;
use crate::quad::{integrate, QuadControl};
use crate::quote::PriceQuote;
use crate::specfun::{kummer_m, ln_bessel_i, noncentral_chi2_sf, reg_upper_gamma, whittaker_m, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CevParams {
    pub market: MarketParams,
    alpha: f64,
}

impl CevParams {
    pub fn new(market: MarketParams, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::param("alpha", "must be finite"));
        }
        if alpha == 2.0 {
            return Err(Error::param(
                "alpha",
                "alpha = 2 is the Black-Scholes model; use the bs module",
            ));
        }
        Ok(Self { market, alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `2 - α`, the exponent of the `y = S^{2-α}` transform.
    pub fn power(&self) -> f64 {
        2.0 - self.alpha
    }

    /// `D = C/A = (1-α)/(2-α)`.
    pub fn drift_ratio(&self) -> f64 {
        (1.0 - self.alpha) / (2.0 - self.alpha)
    }

    /// Bessel order `θ = 1/|2-α|`.
    pub fn theta(&self) -> f64 {
        1.0 / (2.0 - self.alpha).abs()
    }
}

/// Constants of the closed form at maturity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CevTransform {
    pub phi: f64,
    pub k: f64,
    /// `k·S₀^{2-α}·e^{r(2-α)T}`
    pub l: f64,
    /// `k·E^{2-α}`
    pub f: f64,
    pub theta: f64,
}

/// Coefficients `(A(t), B, C(t))` of the transformed process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FellerCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

pub fn drift_diffusion_coefficients(
    p: &GfbmParams,
    c: &CevParams,
    t: f64,
) -> Result<FellerCoefficients> {
    let m = &c.market;
    let q = c.power();
    let a = q * q * m.sigma * m.sigma * p.ito_drift_coeff(t)?;
    Ok(FellerCoefficients {
        a,
        b: q * m.rate,
        c: c.drift_ratio() * a,
    })
}

fn phi_prefactor(p: &GfbmParams, c: &CevParams) -> f64 {
    let q = c.power();
    0.5 * q * q * c.market.sigma * c.market.sigma * p.k_factor()
}

/// `φ(t) = ∫₀ᵗ A(s)·e^{B(t-s)} ds` in closed form via Kummer's `M(1, 2H+1, Bt)`.
pub fn phi(p: &GfbmParams, c: &CevParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let h = p.hurst();
    let bt = c.power() * c.market.rate * t;
    let m = kummer_m(1.0, 2.0 * h + 1.0, bt, SeriesControl::default())?;
    Ok(phi_prefactor(p, c) * p.time_power(t) * m)
}

/// `φ(t)` by adaptive quadrature of its defining integral.
///
/// Substituting `s = t·u^{1/(2H)}` absorbs the `s^{2H-1}` singularity, so
/// the integrand on `[0, 1]` is bounded.
pub fn phi_quadrature(p: &GfbmParams, c: &CevParams, t: f64, ctl: QuadControl) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let inv_2h = 1.0 / (2.0 * p.hurst());
    let bt = c.power() * c.market.rate * t;
    let integral = integrate(|u: f64| (bt * (1.0 - u.powf(inv_2h))).exp(), 0.0, 1.0, ctl)?;
    Ok(phi_prefactor(p, c) * p.time_power(t) * integral)
}

/// `φ(t)` through the Whittaker form
/// `C₀·t^{2H}/(2H+1)·[2H+1 + e^{z/2}·z^{-H}·M_{H,H+½}(z)]`, `z = Bt > 0`.
pub fn phi_whittaker(p: &GfbmParams, c: &CevParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let h = p.hurst();
    let z = c.power() * c.market.rate * t;
    if !(z > 0.0) {
        return Err(Error::domain(
            "phi_whittaker",
            "the Whittaker form needs (2-α)·r·t > 0",
        ));
    }
    let w = whittaker_m(h, h + 0.5, z)?;
    let bracket = 2.0 * h + 1.0 + (0.5 * z - h * z.ln()).exp() * w;
    Ok(phi_prefactor(p, c) * p.time_power(t) * bracket / (2.0 * h + 1.0))
}

pub fn transform(p: &GfbmParams, c: &CevParams) -> Result<CevTransform> {
    let m = &c.market;
    let q = c.power();
    let phi = phi(p, c, m.maturity)?;
    let k = 1.0 / phi;
    Ok(CevTransform {
        phi,
        k,
        l: k * (q * m.s0.ln() + q * m.rate * m.maturity).exp(),
        f: k * (q * m.strike.ln()).exp(),
        theta: c.theta(),
    })
}

/// Transition density of `y_t` started at `y0`, absorbing at the origin
/// when `α < 2`:
///
/// ```text
/// p(y) = (1/φ)·(y/(y0·e^{Bt}))^{(D-1)/2}·exp(-(y + y0·e^{Bt})/φ)·I_θ(2√(y0·e^{Bt}·y)/φ)
/// ```
pub fn transition_density_y(p: &GfbmParams, c: &CevParams, y0: f64, y: f64, t: f64) -> Result<f64> {
    if !(y0 > 0.0) || !(y > 0.0) {
        return Err(Error::domain(
            "transition_density_y",
            format!("y0 = {y0} and y = {y} must be positive"),
        ));
    }
    Ok(ln_transition_density_y(p, c, y0, y, t)?.exp())
}

fn ln_transition_density_y(p: &GfbmParams, c: &CevParams, y0: f64, y: f64, t: f64) -> Result<f64> {
    let phi = phi(p, c, t)?;
    let grown = y0 * (c.power() * c.market.rate * t).exp();
    let arg = 2.0 * (grown * y).sqrt() / phi;
    let ln_i = ln_bessel_i(c.theta(), arg, SeriesControl::default())?;
    Ok(-phi.ln() + 0.5 * (c.drift_ratio() - 1.0) * (y / grown).ln() - (y + grown) / phi + ln_i)
}

/// Density of `S_t` given `S_0 = market.s0`.
pub fn transition_density_s(p: &GfbmParams, c: &CevParams, s_t: f64, t: f64) -> Result<f64> {
    if !(s_t > 0.0) {
        return Err(Error::domain(
            "transition_density_s",
            format!("price {s_t} must be positive"),
        ));
    }
    let q = c.power();
    let y0 = (q * c.market.s0.ln()).exp();
    let y = (q * s_t.ln()).exp();
    let ln_jacobian = q.abs().ln() + (1.0 - c.alpha) * s_t.ln();
    Ok((ln_transition_density_y(p, c, y0, y, t)? + ln_jacobian).exp())
}

/// Probability that the price has been absorbed at zero by time `t`.
///
/// Equals `Q(θ, y0·e^{Bt}/φ(t))` for `α < 2` and zero for `α > 2`.
pub fn absorption_probability(p: &GfbmParams, c: &CevParams, t: f64) -> Result<f64> {
    if c.alpha > 2.0 {
        return Ok(0.0);
    }
    let q = c.power();
    let grown = (q * c.market.s0.ln() + q * c.market.rate * t).exp();
    reg_upper_gamma(c.theta(), grown / phi(p, c, t)?)
}

/// Series control used by the pricer. The Poisson mixture near `α = 2`
/// needs far more terms than the library default.
pub fn pricing_series_control() -> SeriesControl {
    SeriesControl {
        abs_tol: 1e-14,
        max_terms: 20_000_000,
    }
}

pub fn call_price_cev(p: &GfbmParams, c: &CevParams) -> Result<PriceQuote> {
    call_price_cev_with(p, c, pricing_series_control())
}

pub fn call_price_cev_with(p: &GfbmParams, c: &CevParams, ctl: SeriesControl) -> Result<PriceQuote> {
    let m = &c.market;
    let tr = transform(p, c)?;
    let disc = m.discount();
    let (price, formula) = if c.alpha < 2.0 {
        let nu = 2.0 / (2.0 - c.alpha);
        let q1 = noncentral_chi2_sf(2.0 * tr.f, 2.0 + nu, 2.0 * tr.l, ctl)?;
        let q2 = noncentral_chi2_sf(2.0 * tr.l, nu, 2.0 * tr.f, ctl)?;
        (m.s0 * q1 - m.strike * disc * (1.0 - q2), "gfbm-cev-call-alpha-below-2")
    } else {
        let nu = 2.0 / (c.alpha - 2.0);
        let q1 = noncentral_chi2_sf(2.0 * tr.l, nu, 2.0 * tr.f, ctl)?;
        let q2 = noncentral_chi2_sf(2.0 * tr.f, 2.0 + nu, 2.0 * tr.l, ctl)?;
        (m.s0 * q1 - m.strike * disc * (1.0 - q2), "gfbm-cev-call-alpha-above-2")
    };
    Ok(PriceQuote::closed_form(price, formula))
}

/// `σ_cev = σ_bs·S₀^{1-α/2}`, matching local volatility at the spot.
pub fn matched_cev_sigma(sigma_bs: f64, s0: f64, alpha: f64) -> f64 {
    sigma_bs * s0.powf(1.0 - 0.5 * alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitGapRow {
    pub alpha: f64,
    pub sigma_cev: f64,
    pub cev_price: f64,
    pub bs_price: f64,
    pub gap: f64,
}

/// CEV prices along `alphas` against the gfBm Black–Scholes price, with the
/// CEV volatility rescaled so both models share the local volatility at `S₀`.
pub fn bs_limit_gap(p: &GfbmParams, m: &MarketParams, alphas: &[f64]) -> Result<Vec<LimitGapRow>> {
    let bs_price = bs::call_price(p, m).price;
    alphas
        .iter()
        .map(|&alpha| {
            let sigma_cev = matched_cev_sigma(m.sigma, m.s0, alpha);
            let c = CevParams::new(m.with_sigma(sigma_cev)?, alpha)?;
            let cev_price = call_price_cev(p, &c)?.price;
            Ok(LimitGapRow {
                alpha,
                sigma_cev,
                cev_price,
                bs_price,
                gap: (cev_price - bs_price).abs(),
            })
        })
        .collect()
}
