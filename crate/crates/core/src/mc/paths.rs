use std::io::Write;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{in_pool, path_rng, TimeGrid};
use crate::error::{Error, Result};
use crate::process::GfbmParams;

/// Lower-triangular factor of a symmetric positive definite matrix, row-major.
///
/// On failure reports the 1-based order of the first non-positive leading minor.
pub fn cholesky_lower(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(matrix.len(), n * n, "matrix must be n×n");
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = matrix[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(sum > 0.0) {
                    return Err(Error::Factorization {
                        minor: i + 1,
                        pivot: sum,
                    });
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Ok(l)
}

/// Factorized covariance of `(Z_{t_1}, …, Z_{t_n})`, computed once per grid.
#[derive(Debug, Clone)]
pub struct CovarianceFactor {
    n: usize,
    lower: Vec<f64>,
    /// Diagonal jitter added to make the factorization succeed (0 if none).
    pub jitter: f64,
}

impl CovarianceFactor {
    pub fn new(p: &GfbmParams, grid: &TimeGrid) -> Result<Self> {
        let t = grid.points();
        let n = t.len();
        let mut cov = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let c = p.covariance(t[i], t[j])?;
                cov[i * n + j] = c;
                cov[j * n + i] = c;
            }
        }
        match cholesky_lower(&cov, n) {
            Ok(lower) => Ok(Self {
                n,
                lower,
                jitter: 0.0,
            }),
            Err(first) => {
                let max_diag = (0..n).map(|i| cov[i * n + i]).fold(0.0, f64::max);
                let jitter = 1e-12 * max_diag;
                for i in 0..n {
                    cov[i * n + i] += jitter;
                }
                cholesky_lower(&cov, n)
                    .map(|lower| Self { n, lower, jitter })
                    .map_err(|_| first)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Writes `L·ξ` into `out`, drawing `ξ` from `rng`.
    pub fn sample_into<R: rand::Rng>(&self, rng: &mut R, xi: &mut [f64], out: &mut [f64]) {
        for v in xi.iter_mut() {
            *v = StandardNormal.sample(rng);
        }
        for i in 0..self.n {
            let row = &self.lower[i * self.n..i * self.n + i + 1];
            out[i] = row.iter().zip(&xi[..=i]).map(|(a, b)| a * b).sum();
        }
    }
}

/// Sampled paths on a grid, one row per path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathBatch {
    pub grid: TimeGrid,
    pub n_paths: usize,
    pub seed: u64,
    /// Row-major `n_paths × grid.len()`.
    pub values: Vec<f64>,
    pub jitter: f64,
}

impl PathBatch {
    pub fn path(&self, i: usize) -> &[f64] {
        let n = self.grid.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn paths(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.grid.len())
    }

    /// CSV with the grid times as header and one row per path.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let header: Vec<String> = self.grid.points().iter().map(|t| format!("{t}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for path in self.paths() {
            let row: Vec<String> = path.iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Exact draws of `(Z_{t_1}, …, Z_{t_n})` through the Cholesky factor of the
/// gfBm covariance.
pub fn gfbm_paths(p: &GfbmParams, grid: &TimeGrid, n_paths: usize, seed: u64) -> Result<PathBatch> {
    if n_paths == 0 {
        return Err(Error::param("n_paths", "must be at least 1"));
    }
    let factor = CovarianceFactor::new(p, grid)?;
    let n = grid.len();
    let mut values = vec![0.0; n_paths * n];
    in_pool(|| {
        values
            .par_chunks_mut(n)
            .enumerate()
            .for_each_init(
                || vec![0.0; n],
                |xi, (i, row)| {
                    let mut rng = path_rng(seed, i as u64);
                    factor.sample_into(&mut rng, xi, row);
                },
            )
    });
    Ok(PathBatch {
        grid: grid.clone(),
        n_paths,
        seed,
        values,
        jitter: factor.jitter,
    })
}
