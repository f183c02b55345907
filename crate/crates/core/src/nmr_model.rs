//! Pseudo-pure mixed states `ρ = (1 − ζ) I/8 + ζ |ψ⟩⟨ψ|` standing in for the
//! NMR register, and discord evaluated on them.

use num_complex::Complex;

use crate::adiabatic::Trajectory;
use crate::correlations::discord_scores;
use crate::error::{Error, Result};
use crate::qla::{DensityMatrix, Matrix, StateVector};
use crate::scalar::Real;
use crate::spin_model::{DIM, N_SPINS};

/// Purity factor used for reporting.
pub const DEFAULT_ZETA: f64 = 1e-5;
/// Amplified purity factor at which mixed-state discord is well above
/// optimizer noise.
pub const TEST_ZETA: f64 = 1e-2;

/// Weight `ζ ∈ (0, 1]` of the pure component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PurityFactor<T>(T);

impl<T: Real> PurityFactor<T> {
    pub fn new(zeta: T) -> Result<Self> {
        if zeta > T::zero() && zeta <= T::one() {
            Ok(Self(zeta))
        } else {
            Err(Error::Config(format!("purity factor ζ = {zeta} outside (0, 1]")))
        }
    }

    pub fn value(self) -> T {
        self.0
    }
}

impl<T: Real> Default for PurityFactor<T> {
    fn default() -> Self {
        Self(T::lit(DEFAULT_ZETA))
    }
}

/// `σ¹_z + σ²_z + σ³_z`.
pub fn equilibrium_deviation<T: Real>() -> Matrix<T> {
    let diag: Vec<T> = (0..DIM)
        .map(|b| {
            let ones = b.count_ones() as f64;
            T::lit(N_SPINS as f64 - 2.0 * ones)
        })
        .collect();
    Matrix::from_real_diagonal(&diag)
}

pub fn pseudo_pure<T: Real>(psi: &StateVector<T>, zeta: PurityFactor<T>) -> DensityMatrix<T> {
    let z = zeta.value();
    let dim = psi.dim();
    let background = (T::one() - z) / T::lit(dim as f64);
    let a = psi.amplitudes();
    let m = Matrix::from_fn(dim, |i, j| {
        let mut e = (a[i] * a[j].conj()).scale(z);
        if i == j {
            e += Complex::new(background, T::zero());
        }
        e
    });
    DensityMatrix::new_unchecked(m, vec![2; psi.n_qubits()])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedScore<T> {
    /// Number of step unitaries applied.
    pub step: usize,
    pub delta_d: T,
    pub d12: T,
}

/// Discord monogamy score and `D₁₂` of the pseudo-pure state after each of
/// `sample_steps` (counted as steps applied, `1..=M+1`).
pub fn mixed_discord_scores<T: Real>(
    trajectory: &Trajectory<T>,
    zeta: PurityFactor<T>,
    sample_steps: &[usize],
) -> Result<Vec<MixedScore<T>>> {
    sample_steps
        .iter()
        .map(|&step| {
            let psi = trajectory.after_steps(step).ok_or_else(|| {
                Error::Usage(format!(
                    "sample step {step} outside 1..={}",
                    trajectory.states.len()
                ))
            })?;
            let scores = discord_scores(&pseudo_pure(psi, zeta))?;
            Ok(MixedScore {
                step,
                delta_d: scores.delta,
                d12: scores.d12,
            })
        })
        .collect()
}
