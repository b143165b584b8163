//! Evidence for the conventions the CEV closed form commits to: the
//! time-change kernel `e^{B(t-s)}`, the density exponent `(D-1)/2` and
//! pricing under the Gaussian martingale rather than correlated gfBm noise.

use gfbm::cev::{self, matched_cev_sigma};
use gfbm::mc::{self, Driver};
use gfbm::pde::{residual_check, FokkerPlanck};
use gfbm::quad::{integrate, QuadControl};
use gfbm::specfun::noncentral_chi2_sf;
use gfbm::{CevParams, GfbmParams, MarketParams};

/// The call formula for `α < 2` evaluated with an arbitrary time-change mass.
fn call_with_phi(c: &CevParams, phi: f64) -> f64 {
    let m = &c.market;
    let q = c.power();
    let k = 1.0 / phi;
    let l = k * m.s0.powf(q) * (q * m.rate * m.maturity).exp();
    let f = k * m.strike.powf(q);
    let nu = 2.0 / q;
    let ctl = cev::pricing_series_control();
    let q1 = noncentral_chi2_sf(2.0 * f, 2.0 + nu, 2.0 * l, ctl).unwrap();
    let q2 = noncentral_chi2_sf(2.0 * l, nu, 2.0 * f, ctl).unwrap();
    m.s0 * q1 - m.strike * m.discount() * (1.0 - q2)
}

/// `∫₀ᵗ A(s)·e^{B·s} ds`, the kernel without the convolution shift.
fn forward_kernel_phi(p: &GfbmParams, c: &CevParams, t: f64) -> f64 {
    let b = c.power() * c.market.rate;
    let ctl = QuadControl {
        abs_tol: 0.0,
        rel_tol: 1e-13,
        max_intervals: 20_000,
    };
    // s = t·u^{1/(2H)} removes the endpoint singularity
    let inv = 1.0 / (2.0 * p.hurst());
    let q = c.power();
    let c0 = 0.5 * q * q * c.market.sigma * c.market.sigma * p.k_factor();
    c0 * p.time_power(t) * integrate(|u: f64| (b * t * u.powf(inv)).exp(), 0.0, 1.0, ctl).unwrap()
}

fn discriminating_config() -> (GfbmParams, CevParams) {
    let p = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
    let c = CevParams::new(
        MarketParams::new(100.0, 100.0, 0.4, matched_cev_sigma(0.3, 100.0, 1.0), 2.0).unwrap(),
        1.0,
    )
    .unwrap();
    (p, c)
}

#[test]
fn kernels_coincide_for_standard_brownian_motion() {
    let p = GfbmParams::standard();
    let c = CevParams::new(MarketParams::new(100.0, 100.0, 0.3, 2.0, 2.0).unwrap(), 1.5).unwrap();
    let ours = cev::phi(&p, &c, 2.0).unwrap();
    assert!((forward_kernel_phi(&p, &c, 2.0) / ours - 1.0).abs() < 1e-12);
    assert!((call_with_phi(&c, ours) - cev::call_price_cev(&p, &c).unwrap().price).abs() < 1e-12);
}

#[test]
fn convolution_kernel_is_the_one_monte_carlo_confirms() {
    let (p, c) = discriminating_config();
    let ours = cev::call_price_cev(&p, &c).unwrap().price;
    let other = call_with_phi(&c, forward_kernel_phi(&p, &c, 2.0));
    let run = mc::cev_terminal_euler(&p, &c, 512, 800_000, 31, Driver::Martingale).unwrap();
    let est = mc::mc_price(&run.prices, 100.0, 0.4, 2.0).unwrap();
    assert!(est.within(ours, 3.0), "z = {}", est.z_score(ours));
    assert!(est.z_score(other).abs() > 5.0, "z = {}", est.z_score(other));
}

#[test]
fn density_exponent_is_selected_by_the_fokker_planck_equation() {
    let p = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
    let c = CevParams::new(MarketParams::new(1.0, 1.0, 0.05, 0.8, 1.0).unwrap(), 1.5).unwrap();
    let d = c.drift_ratio();
    let eq = FokkerPlanck::cev_transformed(p, c);
    let ours = |y: f64, t: f64| cev::transition_density_y(&p, &c, 1.0, y, t).unwrap();
    let flipped = |y: f64, t: f64| {
        let grown = (c.power() * 0.05 * t).exp();
        ours(y, t) * (y / grown).powf(1.0 - d)
    };
    let points: Vec<(f64, f64)> = (1..30).map(|i| (0.1 * i as f64, 0.7)).collect();
    let r_ours = residual_check(&eq, &ours, &points, (1e-4, 1e-4));
    let r_flipped = residual_check(&eq, &flipped, &points, (1e-4, 1e-4));
    assert!(r_ours < 1e-4, "{r_ours}");
    assert!(r_flipped > 100.0 * r_ours, "{r_flipped}");
}

#[test]
fn forward_kernel_fails_the_fokker_planck_equation() {
    let p = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
    let c = CevParams::new(MarketParams::new(1.0, 1.0, 0.4, 0.8, 1.0).unwrap(), 1.0).unwrap();
    let eq = FokkerPlanck::cev_transformed(p, c);
    let ours = |y: f64, t: f64| cev::transition_density_y(&p, &c, 1.0, y, t).unwrap();
    // α = 1: D = 0 and θ = 1, with the other kernel's time-change mass
    let other = |y: f64, t: f64| {
        let alt = forward_kernel_phi(&p, &c, t);
        let grown = (0.4 * t).exp();
        let ln_i = gfbm::specfun::ln_bessel_i(1.0, 2.0 * (grown * y).sqrt() / alt, Default::default()).unwrap();
        (-alt.ln() - 0.5 * (y / grown).ln() - (y + grown) / alt + ln_i).exp()
    };
    let points: Vec<(f64, f64)> = (1..30).map(|i| (0.1 * i as f64, 0.7)).collect();
    let r_ours = residual_check(&eq, &ours, &points, (1e-4, 1e-4));
    let r_other = residual_check(&eq, &other, &points, (1e-4, 1e-4));
    assert!(r_ours < 1e-4, "{r_ours}");
    assert!(r_other > 100.0 * r_ours, "{r_other}");
}

#[test]
fn correlated_noise_does_not_reproduce_the_closed_form() {
    let p = GfbmParams::new(1.0, 0.5, 0.7).unwrap();
    let alpha = 1.5;
    let c = CevParams::new(
        MarketParams::new(100.0, 100.0, 0.05, matched_cev_sigma(0.25, 100.0, alpha), 1.0).unwrap(),
        alpha,
    )
    .unwrap();
    let closed = cev::call_price_cev(&p, &c).unwrap().price;
    let run = mc::cev_terminal_euler(&p, &c, 128, 50_000, 32, Driver::Gfbm).unwrap();
    let est = mc::mc_price(&run.prices, 100.0, 0.05, 1.0).unwrap();
    assert!(est.z_score(closed) > 4.0, "z = {}", est.z_score(closed));
}
