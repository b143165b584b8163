//! Monte Carlo prices next to the closed forms: exact terminal draws for
//! Black–Scholes and an Euler scheme for CEV. Set `GFBM_THREADS` to cap
//! the worker count; results do not depend on it.

use gfbm::mc::{self, Driver};
use gfbm::{bs, cev, CevParams, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let p = GfbmParams::new(1.0, 0.5, 0.7)?;
    let m = MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0)?;

    let terminal = mc::bs_terminal(&p, &m, 200_000, 7)?;
    let est = mc::mc_price(&terminal, m.strike, m.rate, m.maturity)?;
    let exact = bs::call_price(&p, &m).price;
    println!(
        "BS   mc {:.4} ± {:.4}  closed {:.4}  z {:+.2}",
        est.mean,
        est.std_error,
        exact,
        est.z_score(exact)
    );

    for alpha in [1.5, 2.5] {
        let sigma = cev::matched_cev_sigma(0.25, m.s0, alpha);
        let c = CevParams::new(m.with_sigma(sigma)?, alpha)?;
        let run = mc::cev_terminal_euler(&p, &c, 256, 100_000, 11, Driver::Martingale)?;
        let est = mc::mc_price(&run.prices, m.strike, m.rate, m.maturity)?;
        let exact = cev::call_price_cev(&p, &c)?.price;
        println!(
            "CEV α={alpha} mc {:.4} ± {:.4}  closed {:.4}  z {:+.2}  absorbed {:.4}",
            est.mean,
            est.std_error,
            exact,
            est.z_score(exact),
            run.absorption_fraction
        );
    }

    // sample covariance of exact gfBm paths at two grid points
    let grid = mc::TimeGrid::uniform(1.0, 4)?;
    let batch = mc::gfbm_paths(&p, &grid, 50_000, 3)?;
    let (i, j) = (1, 3);
    let cov: f64 = batch.paths().map(|x| x[i] * x[j]).sum::<f64>() / batch.n_paths as f64;
    let (s, t) = (grid.points()[i], grid.points()[j]);
    println!("cov(Z_{s}, Z_{t}): sample {cov:.4} exact {:.4}", p.covariance(s, t)?);
    Ok(())
}
