use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing positive observation times. Paths start at time 0
/// implicitly; the origin itself is never a grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    points: Vec<f64>,
}

impl TimeGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if !(points[0] > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "first point {} must be positive",
                points[0]
            )));
        }
        if let Some(w) = points.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(format!(
                "points must increase strictly ({} then {})",
                w[0], w[1]
            )));
        }
        if points.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("points must be finite".into()));
        }
        Ok(Self { points })
    }

    /// `n` equal steps ending at `horizon`: `horizon/n, 2·horizon/n, …, horizon`.
    pub fn uniform(horizon: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrid("need at least one step".into()));
        }
        let dt = horizon / n as f64;
        Self::new((1..=n).map(|i| if i == n { horizon } else { dt * i as f64 }).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        *self.points.last().expect("grid is nonempty")
    }

    /// `(t_{i-1}, t_i)` pairs starting from the implicit origin.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        std::iter::once(0.0)
            .chain(self.points.iter().copied())
            .zip(self.points.iter().copied())
    }
}
