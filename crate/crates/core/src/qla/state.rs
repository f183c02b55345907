use num_complex::Complex;
use num_traits::{One, Zero};

use super::eig::hermitian_eigvals;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Pure state of `n` qubits: `2^n` amplitudes of unit Euclidean norm.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Usage(format!(
                "state vector length {len} is not 2^n for n >= 1"
            )));
        }
        if amplitudes.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Validation("state vector has non-finite amplitudes".into()));
        }
        let state = Self { amplitudes };
        let deviation = (state.norm() - T::one()).abs();
        if deviation > T::lit(T::NORM_TOL) {
            return Err(Error::Validation(format!(
                "state vector norm deviates from 1 by {:e}",
                deviation.as_f64()
            )));
        }
        Ok(state)
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::Validation("cannot normalize a zero or non-finite vector".into()));
        }
        for z in &mut amplitudes {
            *z = z.unscale(norm);
        }
        Self::new(amplitudes)
    }

    /// Computational basis state `|index⟩` of `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Usage(format!("basis index {index} out of range for {n_qubits} qubits")));
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[index] = Complex::one();
        Self::new(amps)
    }

    /// Tensor product of single-qubit states, first factor most significant.
    pub fn product(factors: &[[Complex<T>; 2]]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Usage("product state of zero qubits".into()));
        }
        let mut amps = vec![Complex::one()];
        for f in factors {
            amps = amps.iter().flat_map(|&a| [a * f[0], a * f[1]]).collect();
        }
        Self::normalized(amps)
    }

    /// Wraps amplitudes that are unit-norm by construction (e.g. the image of
    /// a unit vector under a unitary) without re-checking the norm.
    pub(crate) fn from_unitary_image(amplitudes: Vec<Complex<T>>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sqr(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// `U|ψ⟩` for unitary `U`.
    pub fn evolve(&self, unitary: &Matrix<T>) -> Self {
        Self::from_unitary_image(unitary.apply(&self.amplitudes))
    }

    /// `|ψ⟩⟨ψ|` as a qubit density matrix.
    pub fn projector(&self) -> DensityMatrix<T> {
        DensityMatrix {
            matrix: Matrix::outer(&self.amplitudes, &self.amplitudes),
            dims: vec![2; self.n_qubits()],
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator with an explicit
/// subsystem layout (first subsystem most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: Matrix<T>,
    dims: Vec<usize>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: Matrix<T>, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(Error::Usage(format!("invalid subsystem dimensions {dims:?}")));
        }
        let total: usize = dims.iter().product();
        if total != matrix.dim() {
            return Err(Error::Usage(format!(
                "subsystem dimensions {dims:?} do not match matrix dimension {}",
                matrix.dim()
            )));
        }
        // hermitian_eigvals checks finiteness and Hermiticity.
        let spectrum = hermitian_eigvals(&matrix)?;
        let trace = matrix.trace();
        if (trace.re - T::one()).abs() > T::lit(T::TRACE_TOL)
            || trace.im.abs() > T::lit(T::TRACE_TOL)
        {
            return Err(Error::Validation(format!(
                "trace {}{:+}i is not 1",
                trace.re, trace.im
            )));
        }
        let min = spectrum[0];
        if min < -T::lit(T::PSD_TOL) {
            return Err(Error::Validation(format!(
                "not positive semidefinite (min eigenvalue {:e})",
                min.as_f64()
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Qubit layout inferred from the matrix dimension.
    pub fn qubits(matrix: Matrix<T>) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::Usage(format!("dimension {dim} is not 2^n")));
        }
        Self::new(matrix, vec![2; dim.trailing_zeros() as usize])
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn new_unchecked(matrix: Matrix<T>, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.dim());
        Self { matrix, dims }
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        Self::new(
            Matrix::identity(total).scale_real(T::one() / T::lit(total as f64)),
            dims,
        )
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        self.matrix.trace_product(&self.matrix).re
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, unitary: &Matrix<T>) -> Self {
        let m = &(unitary * &self.matrix) * &unitary.adjoint();
        Self::new_unchecked(m, self.dims.clone())
    }

    /// `ρ ⊗ σ`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::new_unchecked(self.matrix.kron(&other.matrix), dims)
    }

    pub fn spectrum(&self) -> Result<Vec<T>> {
        hermitian_eigvals(&self.matrix)
    }
}
