//! gfBm CEV calls on both sides of `α = 2`, with the transformation
//! constants that feed the noncentral χ² formula.

use gfbm::cev::{self, matched_cev_sigma};
use gfbm::{CevParams, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let p = GfbmParams::new(1.0, 0.5, 0.7)?;
    let s0 = 100.0;
    println!("{:>6} {:>10} {:>12} {:>12} {:>12} {:>12}", "alpha", "sigma", "phi", "l", "F", "call");
    for alpha in [0.5, 1.0, 1.5, 2.5, 3.0] {
        // same local volatility at the spot as a 20% Black–Scholes model
        let sigma = matched_cev_sigma(0.2, s0, alpha);
        let c = CevParams::new(MarketParams::new(s0, 100.0, 0.05, sigma, 1.0)?, alpha)?;
        let tr = cev::transform(&p, &c)?;
        let call = cev::call_price_cev(&p, &c)?;
        println!(
            "{alpha:>6} {sigma:>10.5} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.6}",
            tr.phi, tr.l, tr.f, call.price
        );
    }
    Ok(())
}
