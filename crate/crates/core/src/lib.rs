//! Exact Riemann solver and finite-volume simulator for the Aw-Rascle
//! traffic model on a road whose width changes in space.

// `!(x > y)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fvm;
pub mod harness;
pub mod model;
mod roots;
pub mod riemann;
pub mod waves;

pub use error::{Error, Result};
pub use model::{ModelParams, Region, State};
