//! CEV prices approach the gfBm Black–Scholes price as `α → 2` from either
//! side once the CEV volatility is rescaled to the same local volatility.

use gfbm::{bs, cev, specfun, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let p = GfbmParams::new(1.0, 0.5, 0.7)?;
    let m = MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0)?;
    println!("Black–Scholes: {:.8}", bs::call_price(&p, &m).price);
    for alphas in [[1.9, 1.99, 1.999], [2.1, 2.01, 2.001]] {
        for row in cev::bs_limit_gap(&p, &m, &alphas)? {
            println!(
                "alpha {:<6} cev {:.8} gap {:.3e} ({:.2e} relative)",
                row.alpha,
                row.cev_price,
                row.gap,
                row.gap / row.bs_price
            );
        }
    }

    // the Q function against its normal limit at large degrees of freedom
    let ctl = specfun::SeriesControl::default();
    let (v, lambda): (f64, f64) = (1e4, 50.0);
    let sd = (2.0 * (v + 2.0 * lambda)).sqrt();
    for z in [-3.0, -1.0, 0.0, 1.0, 3.0] {
        let n = v + lambda + z * sd;
        let q = specfun::noncentral_chi2_sf(n, v, lambda, ctl)?;
        let qn = specfun::q_normal_limit(n, v, lambda)?;
        println!("z {z:>4}: Q {q:.6} normal {qn:.6} diff {:.1e}", (q - qn).abs());
    }
    Ok(())
}
