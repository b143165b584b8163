//! Finite-difference checks of the gfBm Fokker–Planck equation
//!
//! ```text
//! ∂P/∂t = H·K·t^{2H-1}·∂²(σ²(v,t)·P)/∂v² - ∂(μ(v,t)·P)/∂v
//! ```
//!
//! Two Crank–Nicolson solvers evolve the log-price density of the
//! Black–Scholes model and the density of the transformed CEV process from
//! an initial time `t0 > 0`, where the closed-form density stands in for the
//! Dirac initial condition. [`residual_check`] plugs a closed-form density
//! straight into the equation.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bs::{log_price_law, MarketParams};
use crate::cev::{self, drift_diffusion_coefficients, CevParams};
use crate::error::{Error, Result};
use crate::process::GfbmParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub t0: f64,
    pub t1: f64,
    pub n_t: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_x: usize, t0: f64, t1: f64, n_t: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidGrid(format!("need x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n_x < 16 || n_t < 16 {
            return Err(Error::InvalidGrid("n_x and n_t must be at least 16".into()));
        }
        if !(t0 > 0.0 && t0 < t1) {
            return Err(Error::InvalidGrid(format!("need 0 < t0 < t1, got {t0}, {t1}")));
        }
        Ok(Self {
            x_min,
            x_max,
            n_x,
            t0,
            t1,
            n_t,
        })
    }

    /// Same domain with twice the nodes and time steps.
    pub fn refined(&self) -> Self {
        Self {
            n_x: 2 * self.n_x - 1,
            n_t: 2 * self.n_t,
            ..*self
        }
    }
}

/// A density tabulated on a grid at a fixed time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySlice {
    pub nodes: Vec<f64>,
    pub density: Vec<f64>,
    pub time: f64,
    /// Mass remaining on the grid.
    pub mass: f64,
    /// Mass that left through an absorbing boundary (zero for the BS solver).
    pub absorbed: f64,
}

impl DensitySlice {
    /// `Σ |P_i - f(x_i)|·w_i` with trapezoid weights.
    pub fn l1_distance(&self, f: impl Fn(f64) -> f64) -> f64 {
        let w = trapezoid_weights(&self.nodes);
        self.nodes
            .iter()
            .zip(&self.density)
            .zip(&w)
            .map(|((&x, &p), &wi)| (p - f(x)).abs() * wi)
            .sum()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,density")?;
        for (x, p) in self.nodes.iter().zip(&self.density) {
            writeln!(w, "{x},{p}")?;
        }
        Ok(())
    }
}

fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { nodes[i] - nodes[i - 1] } else { 0.0 };
            let right = if i + 1 < n { nodes[i + 1] - nodes[i] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

/// Tridiagonal system `lower[i]·x[i-1] + diag[i]·x[i] + upper[i]·x[i+1] = rhs[i]`.
fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64]) -> Result<()> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    if beta == 0.0 {
        return Err(Error::Instability("singular tridiagonal system".into()));
    }
    rhs[0] /= beta;
    for i in 1..n {
        c[i] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * c[i];
        if beta == 0.0 {
            return Err(Error::Instability("singular tridiagonal system".into()));
        }
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c[i + 1] * rhs[i + 1];
    }
    Ok(())
}

/// One Crank–Nicolson step for `dP/dt = M·P` with tridiagonal `M` given by
/// `(sub, main, sup)` rows.
fn crank_nicolson_step(p: &mut [f64], sub: &[f64], main: &[f64], sup: &[f64], dt: f64) -> Result<()> {
    let n = p.len();
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        let mut v = (1.0 + 0.5 * dt * main[i]) * p[i];
        if i > 0 {
            v += 0.5 * dt * sub[i] * p[i - 1];
        }
        if i + 1 < n {
            v += 0.5 * dt * sup[i] * p[i + 1];
        }
        rhs[i] = v;
    }
    let lower: Vec<f64> = sub.iter().map(|s| -0.5 * dt * s).collect();
    let diag: Vec<f64> = main.iter().map(|m| 1.0 - 0.5 * dt * m).collect();
    let upper: Vec<f64> = sup.iter().map(|s| -0.5 * dt * s).collect();
    solve_tridiagonal(&lower, &diag, &upper, &mut rhs)?;
    p.copy_from_slice(&rhs);
    Ok(())
}

const MASS_DRIFT_LIMIT: f64 = 1e-2;

/// Evolves the density of `x = ln S - rt` under
/// `∂P/∂t = σ²·H·K·t^{2H-1}·(∂²P/∂x² + ∂P/∂x)` with zero boundary values.
pub fn evolve_fp_bs(p: &GfbmParams, m: &MarketParams, g: &Grid1D) -> Result<DensitySlice> {
    let n = g.n_x;
    let h = (g.x_max - g.x_min) / (n - 1) as f64;
    let nodes: Vec<f64> = (0..n).map(|i| g.x_min + h * i as f64).collect();
    let law0 = log_price_law(p, m, g.t0)?;
    let mut dens: Vec<f64> = nodes.iter().map(|&x| law0.pdf(x)).collect();
    dens[0] = 0.0;
    dens[n - 1] = 0.0;
    let w = trapezoid_weights(&nodes);
    let mass_of = |d: &[f64]| d.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
    let mass0 = mass_of(&dens);

    let dt = (g.t1 - g.t0) / g.n_t as f64;
    let interior = n - 2;
    let (diff, conv) = (1.0 / (h * h), 1.0 / (2.0 * h));
    let mut sub = vec![0.0; interior];
    let mut main = vec![0.0; interior];
    let mut sup = vec![0.0; interior];
    for step in 0..g.n_t {
        let t_mid = g.t0 + (step as f64 + 0.5) * dt;
        let c = m.sigma * m.sigma * p.ito_drift_coeff(t_mid)?;
        for i in 0..interior {
            sub[i] = c * (diff - conv);
            main[i] = -2.0 * c * diff;
            sup[i] = c * (diff + conv);
        }
        crank_nicolson_step(&mut dens[1..n - 1], &sub, &main, &sup, dt)?;
    }
    let mass = mass_of(&dens);
    if !mass.is_finite() || (mass - mass0).abs() > MASS_DRIFT_LIMIT {
        return Err(Error::Instability(format!(
            "mass moved from {mass0} to {mass}"
        )));
    }
    Ok(DensitySlice {
        nodes,
        density: dens,
        time: g.t1,
        mass,
        absorbed: 0.0,
    })
}

/// Nodes on `[0, y_max]` stretched toward the absorbing origin:
/// `y = y_max·sinh(β·ξ)/sinh(β)` with uniform `ξ`.
pub fn stretched_nodes(y_max: f64, n: usize, beta: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let xi = i as f64 / (n - 1) as f64;
            if beta == 0.0 {
                y_max * xi
            } else {
                y_max * (beta * xi).sinh() / beta.sinh()
            }
        })
        .collect()
}

const CEV_STRETCH: f64 = 2.0;

/// Evolves the density of `y = S^{2-α}` under
/// `∂P/∂t = ∂²(A(t)·y·P)/∂y² - ∂((B·y + C(t))·P)/∂y` on `(0, x_max]`.
///
/// Conservative finite volumes on a grid stretched toward `y = 0`. The
/// origin is absorbing: probability flowing through it is removed and
/// reported in `absorbed`, together with the mass already absorbed by `t0`.
/// `g.x_min` is ignored; the domain always starts at the origin.
pub fn evolve_fp_cev(p: &GfbmParams, c: &CevParams, g: &Grid1D) -> Result<DensitySlice> {
    let nodes = stretched_nodes(g.x_max, g.n_x, CEV_STRETCH);
    let n = nodes.len();
    let q = c.power();
    let y0 = (q * c.market.s0.ln()).exp();
    let mut dens = vec![0.0; n];
    for i in 1..n - 1 {
        dens[i] = cev::transition_density_y(p, c, y0, nodes[i], g.t0)?;
    }
    // control-volume widths and spacings; the half cell next to the origin
    // carries the density of node 1 so that a nonzero boundary density is
    // not booked as absorbed
    let h: Vec<f64> = nodes.windows(2).map(|w| w[1] - w[0]).collect();
    let mut width: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                0.0
            } else {
                0.5 * (nodes[i + 1] - nodes[i - 1])
            }
        })
        .collect();
    width[1] += 0.5 * h[0];
    let mass_of = |d: &[f64]| d.iter().zip(&width).map(|(a, b)| a * b).sum::<f64>();
    let mass0 = mass_of(&dens);
    let absorbed0 = cev::absorption_probability(p, c, g.t0)?;

    let dt = (g.t1 - g.t0) / g.n_t as f64;
    let interior = n - 2;
    let mut sub = vec![0.0; interior];
    let mut main = vec![0.0; interior];
    let mut sup = vec![0.0; interior];
    for step in 0..g.n_t {
        let t_mid = g.t0 + (step as f64 + 0.5) * dt;
        let coef = drift_diffusion_coefficients(p, c, t_mid)?;
        let d = |i: usize| coef.a * nodes[i];
        let v_face = |i: usize| coef.b * 0.5 * (nodes[i] + nodes[i + 1]) + coef.c;
        for i in 1..n - 1 {
            let inv_w = 1.0 / width[i];
            let k = i - 1;
            sub[k] = inv_w * (d(i - 1) / h[i - 1] + 0.5 * v_face(i - 1));
            main[k] = -inv_w * (d(i) / h[i] + d(i) / h[i - 1] + 0.5 * (v_face(i) - v_face(i - 1)));
            sup[k] = inv_w * (d(i + 1) / h[i] - 0.5 * v_face(i));
        }
        // the first cell reaches down to the origin, where the flux is
        // (C - A)·P(0) with P(0) taken from node 1
        main[0] = -(d(1) / h[1] + coef.a + 0.5 * v_face(1) - coef.c) / width[1];
        crank_nicolson_step(&mut dens[1..n - 1], &sub, &main, &sup, dt)?;
    }
    let mass = mass_of(&dens);
    if !mass.is_finite() || mass > mass0 + MASS_DRIFT_LIMIT {
        return Err(Error::Instability(format!(
            "mass moved from {mass0} to {mass}"
        )));
    }
    Ok(DensitySlice {
        nodes,
        density: dens,
        time: g.t1,
        mass,
        absorbed: (absorbed0 + mass0 - mass).max(0.0),
    })
}

/// The coefficients of one gfBm Fokker–Planck equation.
pub struct FokkerPlanck<'a> {
    params: GfbmParams,
    drift: Box<dyn Fn(f64, f64) -> f64 + Send + Sync + 'a>,
    vol: Box<dyn Fn(f64, f64) -> f64 + Send + Sync + 'a>,
}

impl<'a> FokkerPlanck<'a> {
    pub fn new(
        params: GfbmParams,
        drift: impl Fn(f64, f64) -> f64 + Send + Sync + 'a,
        vol: impl Fn(f64, f64) -> f64 + Send + Sync + 'a,
    ) -> Self {
        Self {
            params,
            drift: Box::new(drift),
            vol: Box::new(vol),
        }
    }

    /// `dx = -σ²HKt^{2H-1} dt + σ dZ` for `x = ln S - rt`.
    pub fn bs_log_price(p: GfbmParams, m: MarketParams) -> Self {
        let sigma = m.sigma;
        Self::new(
            p,
            move |_x, t| -sigma * sigma * p.ito_drift_coeff(t).unwrap_or(f64::NAN),
            move |_x, _t| sigma,
        )
    }

    /// `dy = (2-α){r·y + (1-α)σ²HKt^{2H-1}} dt + (2-α)σ√y dZ`.
    pub fn cev_transformed(p: GfbmParams, c: CevParams) -> Self {
        let q = c.power();
        let (r, s, alpha) = (c.market.rate, c.market.sigma, c.alpha());
        Self::new(
            p,
            move |y, t| {
                q * (r * y + (1.0 - alpha) * s * s * p.ito_drift_coeff(t).unwrap_or(f64::NAN))
            },
            move |y, _t| q * s * y.max(0.0).sqrt(),
        )
    }

    /// `(∂P/∂t, right-hand side)` at `(v, t)` by central differences.
    pub fn sides(&self, density: &dyn Fn(f64, f64) -> f64, v: f64, t: f64, hv: f64, ht: f64) -> (f64, f64) {
        let lhs = (density(v, t + ht) - density(v, t - ht)) / (2.0 * ht);
        let coeff = self.params.ito_drift_coeff(t).unwrap_or(f64::NAN);
        let g = |x: f64| {
            let s = (self.vol)(x, t);
            s * s * density(x, t)
        };
        let f = |x: f64| (self.drift)(x, t) * density(x, t);
        let second = (g(v + hv) - 2.0 * g(v) + g(v - hv)) / (hv * hv);
        let first = (f(v + hv) - f(v - hv)) / (2.0 * hv);
        (lhs, coeff * second - first)
    }
}

/// Largest `|∂P/∂t - RHS|` over `points`, divided by the largest `|∂P/∂t|`.
///
/// `steps` are the finite-difference half-widths `(h_space, h_time)`.
pub fn residual_check(
    eq: &FokkerPlanck<'_>,
    density: &dyn Fn(f64, f64) -> f64,
    points: &[(f64, f64)],
    steps: (f64, f64),
) -> f64 {
    let mut max_res: f64 = 0.0;
    let mut max_lhs: f64 = 0.0;
    for &(v, t) in points {
        let (lhs, rhs) = eq.sides(density, v, t, steps.0, steps.1);
        max_res = max_res.max((lhs - rhs).abs());
        max_lhs = max_lhs.max(lhs.abs());
    }
    if max_lhs == 0.0 {
        return max_res;
    }
    max_res / max_lhs
}
