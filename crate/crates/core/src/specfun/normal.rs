use super::gamma::reg_gamma_pair;

/// Standard normal CDF, `N(x) = ½[1 + sign(x)·P(½, x²/2)]`.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let (p, q) = reg_gamma_pair(0.5, 0.5 * x * x).expect("s = 1/2 is in domain");
    if x >= 0.0 {
        // 1 - Q/2 rather than (1 + P)/2 keeps the upper tail exact
        if q < p {
            1.0 - 0.5 * q
        } else {
            0.5 + 0.5 * p
        }
    } else {
        0.5 * q
    }
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}
