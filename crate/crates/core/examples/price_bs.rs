//! Closed-form gfBm Black–Scholes call and put across the three named
//! special cases and a general `(a, b)` pair.

use gfbm::{bs, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let market = MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0)?;
    let cases = [
        ("standard", GfbmParams::standard()),
        ("fractional H=0.7", GfbmParams::fractional(0.7)?),
        ("sub-fractional H=0.6", GfbmParams::sub_fractional(0.6)?),
        ("general (1, 0.5, 0.7)", GfbmParams::new(1.0, 0.5, 0.7)?),
    ];
    println!("{:<24} {:>8} {:>12} {:>12}", "process", "K", "call", "put");
    for (name, p) in cases {
        let call = bs::call_price(&p, &market);
        let put = bs::put_price(&p, &market);
        println!(
            "{name:<24} {:>8.5} {:>12.6} {:>12.6}",
            p.k_factor(),
            call.price,
            put.price
        );
    }
    let (d1, d2) = bs::d1_d2(&GfbmParams::standard(), &market);
    println!("\nstandard d1 = {d1:.4}, d2 = {d2:.4}");
    Ok(())
}
