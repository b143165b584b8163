//! Price densities at maturity written as CSV, the same table the
//! `gfbm density` subcommand prints.

use std::io::Write;

use gfbm::{bs, cev, CevParams, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let p = GfbmParams::new(1.0, 0.5, 0.7)?;
    let m = MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0)?;
    let c = CevParams::new(m.with_sigma(cev::matched_cev_sigma(0.2, m.s0, 1.0))?, 1.0)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "s,bs,cev_alpha_1")?;
    for i in 1..=40 {
        let s = 5.0 * i as f64;
        let f_bs = bs::price_density(&p, &m, s)?;
        let f_cev = cev::transition_density_s(&p, &c, s, m.maturity)?;
        writeln!(out, "{s},{f_bs:.6e},{f_cev:.6e}")?;
    }
    Ok(())
}
