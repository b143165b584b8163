//! European call pricing when the underlying is driven by a generalized
//! fractional Brownian motion (gfBm).
//!
//! The crate provides closed forms for the gfBm Black–Scholes and CEV
//! models, the special functions they need, and two independent families
//! of checks: a Monte Carlo engine and a Fokker–Planck finite-difference
//! solver. See the `examples/` directory for one runnable program per
//! capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bs;
pub mod cev;
pub mod cli;
mod error;
pub mod mc;
pub mod pde;
pub mod process;
pub mod quad;
pub mod quote;
pub mod specfun;

pub use bs::{GaussianLaw, MarketParams};
pub use cev::{CevParams, CevTransform};
pub use error::{Error, Result};
pub use process::{GfbmParams, ProcessKind};
pub use quote::{PriceQuote, Provenance};
pub use specfun::SeriesControl;
