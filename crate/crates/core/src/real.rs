//! Scalar abstraction for the closed-form information-theoretic formulas.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Floating-point scalar the entropy and objective formulas are written against.
///
/// Implemented for `f32` and `f64`. The solvers, KKT analysis and oracle run
/// in `f64` only; see the aliases at the crate root.
pub trait Real: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal. Exact for `f64`, rounded for `f32`.
    fn lit(x: f64) -> Self;

    /// Lossless widening used for error payloads.
    fn as_f64(self) -> f64;

    /// Largest negative rounding residue tolerated on a mutual information
    /// before it is clamped to zero.
    fn mi_rounding_tol() -> Self;

    /// Half-width of the neighbourhood of the root of `h2` treated as excluded.
    fn h2_tol() -> Self;

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }

    #[inline]
    fn mi_rounding_tol() -> Self {
        1e-6
    }

    #[inline]
    fn h2_tol() -> Self {
        1e-6
    }
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }

    #[inline]
    fn mi_rounding_tol() -> Self {
        1e-15
    }

    #[inline]
    fn h2_tol() -> Self {
        1e-12
    }
}
