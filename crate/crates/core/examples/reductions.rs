//! The general Black–Scholes formula against independently coded textbook,
//! fractional and sub-fractional formulas.

use std::f64::consts::FRAC_1_SQRT_2;

use gfbm::{bs, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let market = MarketParams::new(100.0, 95.0, 0.03, 0.25, 0.75)?;
    let points = [
        GfbmParams::standard(),
        GfbmParams::new(1.0, 0.0, 0.3)?,
        GfbmParams::new(1.0, 0.0, 0.8)?,
        GfbmParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.4)?,
        GfbmParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.9)?,
    ];
    for p in points {
        let r = bs::reduction_report(&p, &market);
        println!(
            "({:.4}, {:.4}, {:.1}) {:?}: general {:.12} special {:.12} via {} gap {:.2e}",
            p.a(),
            p.b(),
            p.hurst(),
            r.kind,
            r.general,
            r.special.unwrap_or(f64::NAN),
            r.special_formula.unwrap_or("-"),
            r.gap.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
