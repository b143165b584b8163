//! Crank–Nicolson evolution of both Fokker–Planck equations compared with
//! the closed-form densities, plus a direct residual check.

use gfbm::bs::log_price_law;
use gfbm::pde::{self, FokkerPlanck, Grid1D};
use gfbm::{cev, CevParams, GfbmParams, MarketParams};

fn main() -> gfbm::Result<()> {
    let p = GfbmParams::new(1.0, 0.5, 0.7)?;
    let m = MarketParams::new(100.0, 100.0, 0.05, 0.2, 1.0)?;

    let law = log_price_law(&p, &m, m.maturity)?;
    let sd = law.std_dev();
    let mut g = Grid1D::new(law.mean - 8.0 * sd, law.mean + 8.0 * sd, 250, 0.05, 1.0, 250)?;
    for _ in 0..4 {
        let slice = pde::evolve_fp_bs(&p, &m, &g)?;
        println!(
            "BS  n_x {:>5} n_t {:>5}: L1 {:.3e} mass {:.10}",
            g.n_x,
            g.n_t,
            slice.l1_distance(|x| law.pdf(x)),
            slice.mass
        );
        g = g.refined();
    }

    let c = CevParams::new(MarketParams::new(1.0, 1.0, 0.02, 0.8, 1.0)?, 1.0)?;
    let g = Grid1D::new(0.0, 8.0, 2000, 0.05, 1.0, 1000)?;
    let slice = pde::evolve_fp_cev(&p, &c, &g)?;
    let l1 = slice.l1_distance(|y| {
        if y > 0.0 {
            cev::transition_density_y(&p, &c, 1.0, y, 1.0).unwrap_or(f64::NAN)
        } else {
            0.0
        }
    });
    println!(
        "CEV α=1: L1 {l1:.3e} absorbed {:.6} (closed form {:.6})",
        slice.absorbed,
        cev::absorption_probability(&p, &c, 1.0)?
    );

    let eq = FokkerPlanck::bs_log_price(p, m);
    let density = |x: f64, t: f64| log_price_law(&p, &m, t).map_or(f64::NAN, |l| l.pdf(x));
    let points: Vec<(f64, f64)> = (0..21).map(|i| (law.mean + sd * (0.2 * i as f64 - 2.0), 0.8)).collect();
    println!("residual {:.2e}", pde::residual_check(&eq, &density, &points, (1e-4, 1e-4)));
    Ok(())
}
