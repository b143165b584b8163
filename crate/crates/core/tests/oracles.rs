//! Closed forms against independent quadrature and series oracles.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use approx::assert_relative_eq;
use common::*;
use gfbm::cev::{self, matched_cev_sigma};
use gfbm::quad::{integrate, integrate_to_infinity};
use gfbm::specfun::{self, SeriesControl};
use gfbm::{bs, CevParams, GfbmParams, MarketParams};

fn general() -> GfbmParams {
    GfbmParams::new(1.0, 0.5, 0.7).unwrap()
}

fn market() -> MarketParams {
    MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0).unwrap()
}

#[test]
fn covariance_and_variance_reference_points() {
    let p = general();
    let expected = 2.25 - 2f64.powf(1.4) * 0.5;
    assert_relative_eq!(p.covariance(1.0, 1.0).unwrap(), expected, max_relative = 1e-15);
    assert!((expected - 0.930492).abs() < 1e-6);
    assert_relative_eq!(p.variance(2.0).unwrap(), expected * 2f64.powf(1.4), max_relative = 1e-14);
    let sub = GfbmParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.6).unwrap();
    assert_relative_eq!(sub.k_factor(), 2.0 - 2f64.powf(0.2), max_relative = 1e-14);
}

#[test]
fn ito_coefficient_is_half_the_variance_derivative() {
    let p = GfbmParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.6).unwrap();
    let t: f64 = 2.0;
    let h = 1e-5;
    let fd = 0.5 * (p.variance(t + h).unwrap() - p.variance(t - h).unwrap()) / (2.0 * h);
    let exact = 0.6 * (2.0 - 2f64.powf(0.2)) * 2f64.powf(0.2);
    assert_relative_eq!(p.ito_drift_coeff(t).unwrap(), exact, max_relative = 1e-14);
    assert_relative_eq!(fd, exact, max_relative = 1e-6);
}

#[test]
fn normal_cdf_against_density_quadrature() {
    let tail = integrate_to_infinity(|x| (-0.5 * x * x).exp() / (2.0 * PI).sqrt(), 1.96, tight()).unwrap();
    assert!((specfun::normal_cdf(1.96) - (1.0 - tail)).abs() < 1e-14);
    assert!((specfun::normal_cdf(40.0) - 1.0).abs() < 1e-15);
    assert_eq!(specfun::normal_cdf(0.0), 0.5);
}

#[test]
fn gamma_functions_against_independent_routes() {
    for x in [0.3, 1.7, 7.3, 14.9, 15.1, 42.0] {
        assert_relative_eq!(specfun::ln_gamma(x).unwrap(), ln_gamma(x), max_relative = 1e-12);
    }
    let (s, x) = (2.5, 3.7);
    let lower = integrate(|t: f64| t.powf(s - 1.0) * (-t).exp(), 0.0, x, tight()).unwrap();
    let p = lower / ln_gamma(s).exp();
    assert!((specfun::reg_lower_gamma(s, x).unwrap() - p).abs() < 1e-13);
}

#[test]
fn bessel_against_integral_representation() {
    let ctl = SeriesControl::default();
    assert_eq!(specfun::bessel_i(0.0, 0.0, ctl).unwrap(), 1.0);
    assert_relative_eq!(specfun::bessel_i(2.0, 3.1, ctl).unwrap(), bessel_i_integral(2, 3.1), max_relative = 1e-12);
    for (nu, x) in [(0.3, 0.2), (1.0 / 0.5, 3.1), (0.75, 40.0), (3.0, 120.0), (0.5, 800.0)] {
        let lib = specfun::ln_bessel_i(nu, x, ctl).unwrap();
        assert!((lib - ln_bessel_i(nu, x)).abs() < 1e-11 * lib.abs().max(1.0), "{nu} {x}");
    }
}

#[test]
fn kummer_against_integral_representation() {
    let ctl = SeriesControl::default();
    // M(a, a+1, z) = ∫₀¹ exp(z·w^{1/a}) dw
    let a = 1.4;
    let z = -1.3;
    let oracle = integrate(|w: f64| (z * w.powf(1.0 / a)).exp(), 0.0, 1.0, tight()).unwrap();
    assert_relative_eq!(specfun::kummer_m(a, a + 1.0, z, ctl).unwrap(), oracle, max_relative = 1e-12);
    for z in [-4.0, 0.7, 3.0] {
        assert_relative_eq!(
            specfun::kummer_m(1.0, 2.0, z, ctl).unwrap(),
            (f64::exp(z) - 1.0) / z,
            max_relative = 1e-13
        );
    }
    assert!(specfun::kummer_m(1.0, -2.0, 0.5, ctl).is_err());
}

#[test]
fn whittaker_against_integral_representation() {
    // M_{0.7,1.2}(z) = e^{-z/2} z^{1.7} M(1, 3.4, z), M(1, b, z) = (b-1)∫₀¹ e^{zu}(1-u)^{b-2} du
    let z: f64 = 2.5;
    let b = 3.4;
    let m = (b - 1.0) * integrate(|u: f64| (z * u).exp() * (1.0 - u).powf(b - 2.0), 0.0, 1.0, tight()).unwrap();
    let oracle = (-0.5 * z).exp() * z.powf(1.7) * m;
    assert_relative_eq!(specfun::whittaker_m(0.7, 1.2, z).unwrap(), oracle, max_relative = 1e-12);
    assert_relative_eq!(specfun::whittaker_m(0.0, 0.5, z).unwrap(), 2.0 * (0.5 * z).sinh(), max_relative = 1e-13);
    let h: f64 = 0.7;
    let ctl = SeriesControl::default();
    let structural = (-0.5 * z).exp() * z.powf(h + 1.0) * specfun::kummer_m(1.0, 2.0 * h + 2.0, z, ctl).unwrap();
    assert_relative_eq!(specfun::whittaker_m(h, h + 0.5, z).unwrap(), structural, max_relative = 1e-14);
}

#[test]
fn noncentral_chi2_reference_cases() {
    let ctl = SeriesControl::default();
    assert_eq!(specfun::noncentral_chi2_sf(0.0, 3.0, 2.0, ctl).unwrap(), 1.0);
    for x in [0.5, 4.0, 11.0] {
        let central = 1.0 - specfun::reg_lower_gamma(1.5, 0.5 * x).unwrap();
        assert!((specfun::noncentral_chi2_sf(x, 3.0, 0.0, ctl).unwrap() - central).abs() < 1e-15);
    }
    assert!((specfun::noncentral_chi2_sf(3.2, 2.8, 1.7, ctl).unwrap() - ncx2_sf_quadrature(3.2, 2.8, 1.7)).abs() < 1e-12);
    let (n, v, l) = (1e4, 1e4, 50.0);
    let q = specfun::noncentral_chi2_sf(n, v, l, ctl).unwrap();
    assert!((q - specfun::q_normal_limit(n, v, l).unwrap()).abs() < 1e-2);
    assert_eq!(specfun::q_normal_limit(v + l, v, l).unwrap(), 0.5);
}

#[test]
fn black_scholes_reference_points() {
    let p = GfbmParams::standard();
    let m = market();
    let (d1, d2) = bs::d1_d2(&p, &m);
    assert!((d1 - 0.35).abs() < 1e-14 && (d2 - 0.15).abs() < 1e-14);
    let call = bs::call_price(&p, &m).price;
    let put = bs::put_price(&p, &m).price;
    let oracle = discounted_payoff(|s| bs::price_density(&p, &m, s).unwrap(), 100.0, 0.05, 1.0);
    assert!((call - oracle).abs() < 1e-10);
    assert!((call - 10.4506).abs() < 5e-5);
    assert!((put - 5.5735).abs() < 5e-5);
    let deep = bs::call_price(&p, &m.with_strike(1e-9).unwrap()).price;
    assert!((deep - 100.0).abs() < 1e-6);

    // ATM-forward symmetry
    let fwd = m.with_strike(100.0 * f64::exp(0.05)).unwrap();
    let (d1, d2) = bs::d1_d2(&general(), &fwd);
    assert!((d1 + d2).abs() < 1e-14);
}

#[test]
fn price_density_mass_and_mode() {
    let p = general();
    let m = market();
    let f = |s: f64| bs::price_density(&p, &m, s).unwrap();
    let mass = integrate_to_infinity(f, 1e-12, tight()).unwrap();
    assert!((mass - 1.0).abs() < 1e-8);
    let v = bs::total_variance(&p, &m, 1.0);
    let mode = 100.0 * (0.05 - 1.5 * v).exp();
    let h = 1e-3;
    assert!(f(mode) > f(mode - h) && f(mode) > f(mode + h));
}

#[test]
fn log_price_law_special_cases() {
    let m = market();
    let law = bs::log_price_law(&GfbmParams::standard(), &m, 1.0).unwrap();
    assert_relative_eq!(law.mean, 100f64.ln() - 0.02, max_relative = 1e-15);
    assert_relative_eq!(law.variance, 0.04, max_relative = 1e-15);
    let law = bs::log_price_law(&general(), &m, 2.0).unwrap();
    assert_relative_eq!(law.variance, 0.04 * general().k_factor() * 2f64.powf(1.4), max_relative = 1e-14);
}

#[test]
fn feller_coefficients() {
    let p = general();
    let c = CevParams::new(MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0).unwrap(), 1.5).unwrap();
    let f = cev::drift_diffusion_coefficients(&p, &c, 2.0).unwrap();
    let a = 0.25 * 0.04 * 0.7 * 2f64.powf(0.4) * p.k_factor();
    assert_relative_eq!(f.a, a, max_relative = 1e-14);
    assert_relative_eq!(f.b, 0.5 * 0.05, max_relative = 1e-15);
    assert_relative_eq!(f.c / f.a, -1.0, max_relative = 1e-15);
    let c1 = CevParams::new(c.market, 1.0).unwrap();
    assert_eq!(cev::drift_diffusion_coefficients(&p, &c1, 2.0).unwrap().c, 0.0);
}

#[test]
fn transformed_density_mass_plus_absorption_is_one() {
    for (p, alpha, sigma, s0) in [
        (GfbmParams::standard(), 1.0, 0.8, 1.0),
        (general(), 1.5, 1.2, 1.0),
        (general(), 0.5, 0.7, 1.0),
    ] {
        let c = CevParams::new(MarketParams::new(s0, 1.0, 0.03, sigma, 1.0).unwrap(), alpha).unwrap();
        let y0 = s0.powf(2.0 - alpha);
        let mass = integrate_to_infinity(|y| if y > 0.0 { cev::transition_density_y(&p, &c, y0, y, 1.0).unwrap() } else { 0.0 }, 0.0, tight()).unwrap();
        let absorbed = cev::absorption_probability(&p, &c, 1.0).unwrap();
        assert!(absorbed > 1e-4, "{absorbed}");
        assert!((mass + absorbed - 1.0).abs() < 1e-8, "α={alpha}: {mass} + {absorbed}");
    }
}

#[test]
fn price_density_matches_classical_cev() {
    let p = GfbmParams::standard();
    for alpha in [0.5, 1.0, 1.5, 2.5, 3.0] {
        let sigma = matched_cev_sigma(0.3, 100.0, alpha);
        let c = CevParams::new(MarketParams::new(100.0, 100.0, 0.05, sigma, 1.0).unwrap(), alpha).unwrap();
        for s in [60.0, 90.0, 100.0, 115.0, 160.0] {
            let lib = cev::transition_density_s(&p, &c, s, 1.0).unwrap();
            let oracle = classical_cev_density(100.0, 0.05, sigma, alpha, 1.0, s);
            assert_relative_eq!(lib, oracle, max_relative = 1e-10);
        }
    }
}

#[test]
fn cev_price_matches_its_own_density() {
    let p = general();
    for alpha in [0.5, 1.5, 2.5, 3.0] {
        let sigma = matched_cev_sigma(0.3, 100.0, alpha);
        for strike in [80.0, 100.0, 125.0] {
            let c = CevParams::new(MarketParams::new(100.0, strike, 0.05, sigma, 1.0).unwrap(), alpha).unwrap();
            let closed = cev::call_price_cev(&p, &c).unwrap().price;
            let quad = discounted_payoff(|s| cev::transition_density_s(&p, &c, s, 1.0).unwrap(), strike, 0.05, 1.0);
            assert!((closed - quad).abs() < 1e-5 * 100.0, "α={alpha} E={strike}: {closed} vs {quad}");
        }
    }
}

#[test]
fn price_density_mass_never_exceeds_one() {
    let p = general();
    let c = CevParams::new(MarketParams::new(100.0, 100.0, 0.05, matched_cev_sigma(0.4, 100.0, 1.5), 1.0).unwrap(), 1.5).unwrap();
    let mass = integrate_to_infinity(|s| if s > 0.0 { cev::transition_density_s(&p, &c, s, 1.0).unwrap() } else { 0.0 }, 0.0, tight()).unwrap();
    let absorbed = cev::absorption_probability(&p, &c, 1.0).unwrap();
    assert!(mass + absorbed <= 1.0 + 1e-6);
}

#[test]
fn cev_pde_matches_square_root_density() {
    use gfbm::pde::{evolve_fp_cev, Grid1D};
    let p = GfbmParams::standard();
    let c = CevParams::new(MarketParams::new(1.0, 1.0, 0.05, 0.6, 1.0).unwrap(), 1.0).unwrap();
    let g = Grid1D::new(0.0, 6.0, 2000, 0.05, 1.0, 2000).unwrap();
    let slice = evolve_fp_cev(&p, &c, &g).unwrap();
    // for α = 1 the price itself is the square-root process
    let l1 = slice.l1_distance(|s| if s > 0.0 { classical_cev_density(1.0, 0.05, 0.6, 1.0, 1.0, s) } else { 0.0 });
    assert!(l1 < 2e-2, "{l1}");
    let exact = cev::absorption_probability(&p, &c, 1.0).unwrap();
    assert!((slice.absorbed - exact).abs() < 1e-3);
}
