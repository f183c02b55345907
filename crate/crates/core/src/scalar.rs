//! Scalar abstraction shared by every numeric kernel in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`) plus the numerical tolerances
/// appropriate to its precision.
///
/// Tolerances are stored as `f64` and converted on use with [`Real::lit`], so
/// that the `f64` values are exactly the documented thresholds.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Maximum entrywise deviation from Hermiticity accepted on input.
    const HERMITIAN_TOL: f64;
    /// Accepted deviation of a density matrix trace from one.
    const TRACE_TOL: f64;
    /// Eigenvalues above `-PSD_TOL` are accepted as non-negative.
    const PSD_TOL: f64;
    /// Accepted deviation of a state-vector norm from one.
    const NORM_TOL: f64;
    /// Jacobi convergence threshold on the off-diagonal Frobenius norm,
    /// relative to `max(1, ‖H‖_F)`.
    const JACOBI_TOL: f64;
    /// Eigenvalues below this magnitude contribute nothing to an entropy.
    const ENTROPY_CLAMP: f64;
    /// Matrix elements and gaps below this are treated as exactly zero.
    const COUPLING_TOL: f64;
    /// Outcome probabilities below this are dropped from conditional entropies.
    const PROBABILITY_FLOOR: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal representable in every Real")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const HERMITIAN_TOL: f64 = 1e-10;
    const TRACE_TOL: f64 = 1e-10;
    const PSD_TOL: f64 = 1e-9;
    const NORM_TOL: f64 = 1e-12;
    const JACOBI_TOL: f64 = 1e-13;
    const ENTROPY_CLAMP: f64 = 1e-12;
    const COUPLING_TOL: f64 = 1e-10;
    const PROBABILITY_FLOOR: f64 = 1e-12;
}

impl Real for f32 {
    const HERMITIAN_TOL: f64 = 1e-5;
    const TRACE_TOL: f64 = 1e-5;
    const PSD_TOL: f64 = 1e-5;
    const NORM_TOL: f64 = 1e-5;
    const JACOBI_TOL: f64 = 1e-6;
    const ENTROPY_CLAMP: f64 = 1e-6;
    const COUPLING_TOL: f64 = 1e-5;
    const PROBABILITY_FLOOR: f64 = 1e-6;
}
