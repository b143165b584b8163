use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{in_pool, path_rng, CovarianceFactor, PathBatch, TimeGrid};
use crate::cev::CevParams;
use crate::error::{Error, Result};
use crate::process::GfbmParams;

/// Noise driving the Euler scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Driver {
    /// Independent Gaussian increments with variance `K·(t_i^{2H} - t_{i-1}^{2H})`:
    /// the Gaussian martingale whose quadratic variation is `K·t^{2H}`. This is
    /// the noise for which the gfBm Itô rule and Fokker–Planck equation hold.
    Martingale,
    /// Increments of an exact gfBm path (correlated for `H ≠ 1/2`).
    Gfbm,
}

pub const MIN_EULER_STEPS: usize = 64;

/// Euler paths of `y = S^{2-α}` with the absorption flag per path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CevPathBatch {
    pub batch: PathBatch,
    pub absorbed: Vec<bool>,
    pub absorption_fraction: f64,
    /// Steps where an `α > 2` path crossed zero and was reflected.
    pub reflections: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CevTerminal {
    /// `S_T` per path; absorbed paths hold 0.
    pub prices: Vec<f64>,
    pub absorption_fraction: f64,
    pub reflections: usize,
}

struct Stepper<'a> {
    grid: &'a TimeGrid,
    /// `K·(t_i^{2H} - t_{i-1}^{2H})` per step
    var_inc: Vec<f64>,
    power: f64,
    rate: f64,
    sigma: f64,
    drift_ratio: f64,
    absorbing: bool,
    y0: f64,
    factor: Option<CovarianceFactor>,
}

struct PathOutcome {
    y_end: f64,
    absorbed: bool,
    reflections: usize,
}

impl<'a> Stepper<'a> {
    fn new(p: &GfbmParams, c: &CevParams, grid: &'a TimeGrid, driver: Driver) -> Result<Self> {
        if grid.len() < MIN_EULER_STEPS {
            return Err(Error::InvalidGrid(format!(
                "Euler scheme needs at least {MIN_EULER_STEPS} steps, got {}",
                grid.len()
            )));
        }
        let k = p.k_factor();
        let var_inc = grid
            .steps()
            .map(|(a, b)| k * (p.time_power(b) - p.time_power(a)))
            .collect();
        let factor = match driver {
            Driver::Martingale => None,
            Driver::Gfbm => Some(CovarianceFactor::new(p, grid)?),
        };
        let q = c.power();
        Ok(Self {
            grid,
            var_inc,
            power: q,
            rate: c.market.rate,
            sigma: c.market.sigma,
            drift_ratio: c.drift_ratio(),
            absorbing: c.alpha() < 2.0,
            y0: (q * c.market.s0.ln()).exp(),
            factor,
        })
    }

    /// One path; `record` sees the state after every step.
    fn run<R: Rng>(
        &self,
        rng: &mut R,
        scratch: &mut (Vec<f64>, Vec<f64>),
        mut record: impl FnMut(usize, f64),
    ) -> PathOutcome {
        let (xi, z) = scratch;
        if let Some(f) = &self.factor {
            f.sample_into(rng, xi, z);
        }
        let q = self.power;
        let diff = q * self.sigma;
        // ∫C(s)ds over a step = D·q²σ²/2 · (variance increment)
        let c_scale = self.drift_ratio * q * q * self.sigma * self.sigma * 0.5;
        let mut y = self.y0;
        let mut absorbed = false;
        let mut reflections = 0;
        let mut z_prev = 0.0;
        for (i, (t0, t1)) in self.grid.steps().enumerate() {
            let dm = match &self.factor {
                None => {
                    let xi: f64 = StandardNormal.sample(rng);
                    self.var_inc[i].sqrt() * xi
                }
                Some(_) => {
                    let d = z[i] - z_prev;
                    z_prev = z[i];
                    d
                }
            };
            if !absorbed {
                let next = y
                    + q * self.rate * y * (t1 - t0)
                    + c_scale * self.var_inc[i]
                    + diff * y.max(0.0).sqrt() * dm;
                if next <= 0.0 {
                    if self.absorbing {
                        absorbed = true;
                        y = 0.0;
                    } else {
                        reflections += 1;
                        y = -next;
                    }
                } else {
                    y = next;
                }
            }
            record(i, y);
        }
        PathOutcome {
            y_end: y,
            absorbed,
            reflections,
        }
    }

    fn scratch(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.factor {
            Some(f) => (vec![0.0; f.dim()], vec![0.0; f.dim()]),
            None => (Vec::new(), Vec::new()),
        }
    }
}

/// Euler–Maruyama paths of
/// `dy = (2-α){r·y + (1-α)σ²H·K·t^{2H-1}} dt + (2-α)σ√y dZ`, frozen at zero
/// once absorbed. The time-dependent drift is integrated exactly over each
/// step, which removes the `t^{2H-1}` singularity at the origin.
pub fn cev_paths_euler(
    p: &GfbmParams,
    c: &CevParams,
    grid: &TimeGrid,
    n_paths: usize,
    seed: u64,
    driver: Driver,
) -> Result<CevPathBatch> {
    if n_paths == 0 {
        return Err(Error::param("n_paths", "must be at least 1"));
    }
    let stepper = Stepper::new(p, c, grid, driver)?;
    let n = grid.len();
    let mut values = vec![0.0; n_paths * n];
    let mut outcomes: Vec<(bool, usize)> = vec![(false, 0); n_paths];
    in_pool(|| {
        values
            .par_chunks_mut(n)
            .zip(outcomes.par_iter_mut())
            .enumerate()
            .for_each_init(
                || stepper.scratch(),
                |scratch, (i, (row, out))| {
                    let mut rng = path_rng(seed, i as u64);
                    let o = stepper.run(&mut rng, scratch, |j, y| row[j] = y);
                    *out = (o.absorbed, o.reflections);
                },
            )
    });
    let absorbed: Vec<bool> = outcomes.iter().map(|o| o.0).collect();
    let n_abs = absorbed.iter().filter(|&&a| a).count();
    Ok(CevPathBatch {
        batch: PathBatch {
            grid: grid.clone(),
            n_paths,
            seed,
            values,
            jitter: stepper.factor.as_ref().map_or(0.0, |f| f.jitter),
        },
        absorbed,
        absorption_fraction: n_abs as f64 / n_paths as f64,
        reflections: outcomes.iter().map(|o| o.1).sum(),
    })
}

/// Terminal prices `S_T = y_T^{1/(2-α)}` from `n_steps` uniform Euler steps,
/// without storing whole paths.
pub fn cev_terminal_euler(
    p: &GfbmParams,
    c: &CevParams,
    n_steps: usize,
    n_paths: usize,
    seed: u64,
    driver: Driver,
) -> Result<CevTerminal> {
    if n_paths == 0 {
        return Err(Error::param("n_paths", "must be at least 1"));
    }
    let grid = TimeGrid::uniform(c.market.maturity, n_steps)?;
    let stepper = Stepper::new(p, c, &grid, driver)?;
    let inv_power = 1.0 / c.power();
    let mut prices = vec![0.0; n_paths];
    let mut outcomes: Vec<(bool, usize)> = vec![(false, 0); n_paths];
    in_pool(|| {
        prices
            .par_iter_mut()
            .zip(outcomes.par_iter_mut())
            .enumerate()
            .for_each_init(
                || stepper.scratch(),
                |scratch, (i, (s, out))| {
                    let mut rng = path_rng(seed, i as u64);
                    let o = stepper.run(&mut rng, scratch, |_, _| {});
                    *s = if o.absorbed {
                        0.0
                    } else {
                        (inv_power * o.y_end.ln()).exp()
                    };
                    *out = (o.absorbed, o.reflections);
                },
            )
    });
    let n_abs = outcomes.iter().filter(|o| o.0).count();
    Ok(CevTerminal {
        prices,
        absorption_fraction: n_abs as f64 / n_paths as f64,
        reflections: outcomes.iter().map(|o| o.1).sum(),
    })
}
