//! Monte Carlo oracle for the closed forms.
//!
//! Every path draws from its own ChaCha stream keyed by `(seed, path index)`,
//! and draws within a path are consumed in step order, so results do not
//! depend on how paths are scheduled across threads. The `GFBM_THREADS`
//! environment variable caps the worker count.

mod estimate;
mod euler;
mod grid;
mod paths;
mod stats;
mod terminal;

pub use estimate::{mc_price, McEstimate};
pub use euler::{cev_paths_euler, cev_terminal_euler, CevPathBatch, CevTerminal, Driver};
pub use grid::TimeGrid;
pub use paths::{cholesky_lower, gfbm_paths, CovarianceFactor, PathBatch};
pub use stats::{chi_square_gof, kolmogorov_smirnov, ChiSquareResult, KsResult};
pub use terminal::bs_terminal;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generator for one path.
pub fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

/// Runs `f` on a pool sized by `GFBM_THREADS` when set, else on the global pool.
pub(crate) fn in_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match std::env::var("GFBM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}
