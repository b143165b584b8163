//! Independent reference implementations used as test oracles. Nothing here
//! calls the library's special functions.
#![allow(dead_code)]

use std::f64::consts::PI;

use gfbm::quad::{integrate, integrate_to_infinity, QuadControl};

pub fn tight() -> QuadControl {
    QuadControl {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        max_intervals: 50_000,
    }
}

/// `Φ(x)` from Marsaglia's series `½ + φ(x)(x + x³/3 + x⁵/15 + …)`.
pub fn phi_cdf(x: f64) -> f64 {
    if x > 8.5 {
        return 1.0;
    }
    if x < -8.5 {
        return 0.0;
    }
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    let mut k = 1.0;
    loop {
        k += 2.0;
        term *= x2 / k;
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
    }
    0.5 + sum * (-0.5 * x2).exp() / (2.0 * PI).sqrt()
}

/// Black–Scholes call written in terms of the total log variance `v`.
pub fn call_from_total_variance(s0: f64, strike: f64, rate: f64, v: f64, t: f64) -> f64 {
    let sd = v.sqrt();
    let d1 = ((s0 / strike).ln() + rate * t + 0.5 * v) / sd;
    s0 * phi_cdf(d1) - strike * (-rate * t).exp() * phi_cdf(d1 - sd)
}

pub fn textbook_bs(s0: f64, strike: f64, rate: f64, sigma: f64, t: f64) -> f64 {
    call_from_total_variance(s0, strike, rate, sigma * sigma * t, t)
}

/// Necula's fractional Black–Scholes price.
pub fn fractional_bs(s0: f64, strike: f64, rate: f64, sigma: f64, t: f64, h: f64) -> f64 {
    call_from_total_variance(s0, strike, rate, sigma * sigma * t.powf(2.0 * h), t)
}

/// Sub-fractional Black–Scholes price with variance factor `2 - 2^{2H-1}`.
pub fn sub_fractional_bs(s0: f64, strike: f64, rate: f64, sigma: f64, t: f64, h: f64) -> f64 {
    let k = 2.0 - 2f64.powf(2.0 * h - 1.0);
    call_from_total_variance(s0, strike, rate, k * sigma * sigma * t.powf(2.0 * h), t)
}

/// `lnΓ(z)` by shifting up to `z ≥ 20` and applying Stirling's series.
pub fn ln_gamma(z: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = z;
    while z < 20.0 {
        shift += z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z2 * z2 * z)
        - 1.0 / (1680.0 * z2 * z2 * z2 * z);
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

/// `ln I_ν(x)` for `ν > -1`, `x > 0` from the ascending series, summed in
/// log space.
pub fn ln_bessel_i(nu: f64, x: f64) -> f64 {
    let lh = (0.5 * x).ln();
    let ln_term = |k: f64| (2.0 * k + nu) * lh - ln_gamma(k + 1.0) - ln_gamma(k + nu + 1.0);
    // the largest term sits near k = x/2
    let mode = (0.5 * (-nu + (nu * nu + x * x).sqrt())).floor().max(0.0);
    let peak = ln_term(mode);
    let mut sum = 0.0;
    let mut k = mode;
    loop {
        let r = (ln_term(k) - peak).exp();
        sum += r;
        if r < 1e-18 {
            break;
        }
        k += 1.0;
    }
    let mut k = mode - 1.0;
    while k >= 0.0 {
        let r = (ln_term(k) - peak).exp();
        sum += r;
        if r < 1e-18 {
            break;
        }
        k -= 1.0;
    }
    peak + sum.ln()
}

pub fn bessel_i(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    ln_bessel_i(nu, x).exp()
}

/// `I_n(x)` for integer `n` from `(1/π)∫₀^π e^{x cos θ} cos(nθ) dθ`.
pub fn bessel_i_integral(n: u32, x: f64) -> f64 {
    integrate(|t: f64| (x * t.cos()).exp() * (n as f64 * t).cos(), 0.0, PI, tight()).unwrap() / PI
}

/// Density of the noncentral χ² law.
pub fn ncx2_pdf(v: f64, df: f64, lambda: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    if lambda == 0.0 {
        let k = 0.5 * df;
        return ((k - 1.0) * v.ln() - 0.5 * v - k * 2f64.ln() - ln_gamma(k)).exp();
    }
    let nu = 0.5 * df - 1.0;
    let ln = -0.5 * (v + lambda) + 0.5 * nu * (v / lambda).ln() + ln_bessel_i(nu, (lambda * v).sqrt());
    0.5 * ln.exp()
}

/// `Q(x; df, λ)` by quadrature of [`ncx2_pdf`]. Below the mean the lower
/// tail is integrated after `v = u^m`, which removes the `v^{df/2-1}`
/// singularity at the origin.
pub fn ncx2_sf_quadrature(x: f64, df: f64, lambda: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < df + lambda {
        let m = (2.0 / df).ceil().max(1.0);
        let lower = integrate(
            |u: f64| {
                if u <= 0.0 {
                    return 0.0;
                }
                ncx2_pdf(u.powf(m), df, lambda) * m * u.powf(m - 1.0)
            },
            0.0,
            x.powf(1.0 / m),
            tight(),
        )
        .unwrap();
        1.0 - lower
    } else {
        integrate_to_infinity(|v| ncx2_pdf(v, df, lambda), x, tight()).unwrap()
    }
}

/// Classical CEV transition density of `S_T` for
/// `dS = rS dt + σS^{α/2} dW`, absorbing at zero when `α < 2`.
pub fn classical_cev_density(s0: f64, rate: f64, sigma: f64, alpha: f64, t: f64, s: f64) -> f64 {
    let q = 2.0 - alpha;
    let k = 2.0 * rate / (sigma * sigma * q * ((q * rate * t).exp() - 1.0));
    let x = k * s0.powf(q) * (q * rate * t).exp();
    let w = k * s.powf(q);
    let theta = 1.0 / q.abs();
    let ln = q.abs().ln() + k.ln() / q + (x.ln() + (1.0 - 2.0 * alpha) * w.ln()) / (4.0 - 2.0 * alpha) - x - w
        + ln_bessel_i(theta, 2.0 * (x * w).sqrt());
    ln.exp()
}

/// Discounted `∫ (s - strike)⁺ f(s) ds`.
pub fn discounted_payoff(f: impl Fn(f64) -> f64, strike: f64, rate: f64, t: f64) -> f64 {
    let v = integrate_to_infinity(|s| (s - strike) * f(s), strike, tight()).unwrap();
    (-rate * t).exp() * v
}

/// Deterministic uniform draws in `[lo, hi)` for randomized grids
/// (SplitMix64).
pub struct Uniform(u64);

impl Uniform {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
