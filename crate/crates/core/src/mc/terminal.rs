use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::{in_pool, path_rng};
use crate::bs::{total_variance, MarketParams};
use crate::error::{Error, Result};
use crate::process::GfbmParams;

/// Exact draws of `S_T = S₀·exp(rT - v/2 + √v·ξ)` with `v = σ²KT^{2H}`.
pub fn bs_terminal(p: &GfbmParams, m: &MarketParams, n_paths: usize, seed: u64) -> Result<Vec<f64>> {
    if n_paths == 0 {
        return Err(Error::param("n_paths", "must be at least 1"));
    }
    let v = total_variance(p, m, m.maturity);
    let sd = v.sqrt();
    let drift = m.s0.ln() + m.rate * m.maturity - 0.5 * v;
    let mut out = vec![0.0; n_paths];
    in_pool(|| {
        out.par_iter_mut().enumerate().for_each(|(i, s)| {
            let xi: f64 = StandardNormal.sample(&mut path_rng(seed, i as u64));
            *s = (drift + sd * xi).exp();
        })
    });
    Ok(out)
}
