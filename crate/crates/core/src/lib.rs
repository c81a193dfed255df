//! Weighted sum-rate optimization for the two-user binary-input
//! binary-output multiple-access channel.
//!
//! The entropy and objective formulas in [`info`] and [`objective`] are
//! generic over [`Real`] (`f32` or `f64`). Solvers, KKT analysis and the
//! brute-force oracle work in `f64`; the aliases below fix the scalar type
//! for them.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod kkt;
pub mod info;
pub mod model;
pub mod objective;
pub mod oracle;
pub mod real;
pub mod single_user;
pub mod solver;

pub use error::{Error, Result};
pub use model::{parse_scalar, Corner};
pub use real::Real;

pub type Channel = model::Channel<f64>;
pub type InputDist = model::InputDist<f64>;
pub type Weights = model::Weights<f64>;
pub type RatePair = model::RatePair<f64>;
