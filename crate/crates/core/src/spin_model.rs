//! Three-spin transverse-field Ising triangle
//! `H = h(σ¹ₓ+σ²ₓ+σ³ₓ) + J(σ¹_zσ²_z+σ²_zσ³_z+σ¹_zσ³_z)`.
//!
//! `J > 0` is the antiferromagnetic (frustrated) regime, `J < 0` the
//! ferromagnetic (non-frustrated) one.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qla::{embed_single, hermitian_eig, pauli_x, Eigen, Matrix, StateVector};
use crate::scalar::Real;

pub const N_SPINS: usize = 3;
pub const DIM: usize = 1 << N_SPINS;

const BONDS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// Transverse field `h` and Ising coupling `J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams<T> {
    h: T,
    j: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(h: T, j: T) -> Result<Self> {
        if !(h > T::zero()) || !h.is_finite() {
            return Err(Error::Config(format!("transverse field h = {h} must be finite and > 0")));
        }
        if !j.is_finite() {
            return Err(Error::Config(format!("coupling J = {j} must be finite")));
        }
        Ok(Self { h, j })
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn j(&self) -> T {
        self.j
    }

    pub fn is_frustrated(&self) -> bool {
        self.j > T::zero()
    }
}

/// `σᵢ_z σⱼ_z` summed over the three bonds, as its diagonal.
pub fn bond_energies<T: Real>() -> [T; DIM] {
    let mut out = [T::zero(); DIM];
    for (idx, e) in out.iter_mut().enumerate() {
        let spin = |k: usize| {
            if (idx >> (N_SPINS - 1 - k)) & 1 == 0 { 1i32 } else { -1 }
        };
        let total: i32 = BONDS.iter().map(|&(a, b)| spin(a) * spin(b)).sum();
        *e = T::lit(total as f64);
    }
    out
}

/// `σ¹_zσ²_z+σ²_zσ³_z+σ¹_zσ³_z`.
pub fn bond_operator<T: Real>() -> Matrix<T> {
    Matrix::from_real_diagonal(&bond_energies::<T>())
}

/// `h(σ¹ₓ+σ²ₓ+σ³ₓ)`.
pub fn field_term<T: Real>(h: T) -> Matrix<T> {
    let x = pauli_x::<T>();
    (0..N_SPINS)
        .map(|k| embed_single(&x, k, N_SPINS))
        .fold(Matrix::zeros(DIM), |acc, m| &acc + &m)
        .scale_real(h)
}

/// `J(σ¹_zσ²_z+σ²_zσ³_z+σ¹_zσ³_z)`; diagonal in the computational basis.
pub fn ising_term<T: Real>(j: T) -> Matrix<T> {
    bond_operator::<T>().scale_real(j)
}

/// Hamiltonian for raw coefficients; `h = 0` is allowed here.
pub fn hamiltonian<T: Real>(h: T, j: T) -> Matrix<T> {
    &field_term(h) + &ising_term(j)
}

pub fn build_hamiltonian<T: Real>(p: &ModelParams<T>) -> Matrix<T> {
    hamiltonian(p.h, p.j)
}

/// `|---⟩`, the ground state of the field term for `h > 0`.
pub fn all_minus<T: Real>() -> StateVector<T> {
    let s = T::FRAC_1_SQRT_2();
    let minus = [Complex::new(s, T::zero()), Complex::new(-s, T::zero())];
    StateVector::product(&[minus; N_SPINS]).expect("three qubits")
}

#[derive(Clone, Debug)]
pub struct GroundState<T> {
    pub energy: T,
    pub state: StateVector<T>,
    /// `E₁ − E₀` to the next eigenvalue, degenerate or not.
    pub gap: T,
    /// Set when `gap < 1e-8·h`: the ground state is numerically ill-defined.
    pub degenerate: bool,
}

fn ground_from_eigen<T: Real>(eig: &Eigen<T>, h: T) -> GroundState<T> {
    let gap = eig.values[1] - eig.values[0];
    GroundState {
        energy: eig.values[0],
        state: StateVector::from_unitary_image(eig.vector(0)),
        gap,
        degenerate: gap < T::lit(1e-8) * h,
    }
}

/// Lowest eigenpair of the Hamiltonian.
pub fn ground_state<T: Real>(p: &ModelParams<T>) -> Result<GroundState<T>> {
    let eig = hermitian_eig(&build_hamiltonian(p))?;
    Ok(ground_from_eigen(&eig, p.h))
}

/// An excited energy level (degenerate eigenvalues merged) and the norm of
/// the projection of `B|0⟩` onto it, where `B` is the bond operator.
#[derive(Clone, Copy, Debug)]
pub struct LevelCoupling<T> {
    pub energy: T,
    pub coupling: T,
}

/// Couplings from the ground state to every distinct excited level, ascending
/// in energy. Degenerate eigenvalues are grouped so the result does not
/// depend on the basis chosen inside a degenerate eigenspace.
pub fn level_couplings<T: Real>(p: &ModelParams<T>) -> Result<(GroundState<T>, Vec<LevelCoupling<T>>)> {
    let eig = hermitian_eig(&build_hamiltonian(p))?;
    let ground = ground_from_eigen(&eig, p.h);
    let b0 = bond_operator::<T>().apply(ground.state.amplitudes());

    let scale = eig.values.iter().fold(T::one(), |m, e| m.max(e.abs()));
    let same_level = T::lit(T::PSD_TOL) * scale;
    let e0 = eig.values[0];

    let mut levels: Vec<LevelCoupling<T>> = Vec::new();
    let mut acc = T::zero();
    let mut current: Option<T> = None;
    for k in 0..DIM {
        let e = eig.values[k];
        if e - e0 <= same_level {
            continue;
        }
        let amp = eig
            .vector(k)
            .iter()
            .zip(&b0)
            .fold(Complex::zero(), |s, (v, w)| s + v.conj() * w);
        match current {
            Some(c) if e - c <= same_level => acc += amp.norm_sqr(),
            _ => {
                if let Some(c) = current {
                    levels.push(LevelCoupling { energy: c, coupling: acc.sqrt() });
                }
                current = Some(e);
                acc = amp.norm_sqr();
            }
        }
    }
    if let Some(c) = current {
        levels.push(LevelCoupling { energy: c, coupling: acc.sqrt() });
    }
    Ok((ground, levels))
}

/// Adiabaticity functional: the maximum over excited levels of
/// `|⟨k|dH/dt|0⟩| / (E_k − E_0)²` with `dH/dt = (dJ/dt)·B`.
///
/// Couplings below `1e-10` are treated as exactly zero. A vanishing gap to a
/// coupled level is an error.
pub fn adiabatic_epsilon<T: Real>(p: &ModelParams<T>, dj_dt: T) -> Result<T> {
    let (ground, levels) = level_couplings(p)?;
    epsilon_from_levels(ground.energy, &levels, dj_dt)
}

fn epsilon_from_levels<T: Real>(e0: T, levels: &[LevelCoupling<T>], dj_dt: T) -> Result<T> {
    let tol = T::lit(T::COUPLING_TOL);
    let mut eps = T::zero();
    for level in levels {
        let element = level.coupling * dj_dt.abs();
        if element < tol {
            continue;
        }
        let gap = level.energy - e0;
        if gap < tol {
            return Err(Error::DegenerateGap { gap: gap.as_f64() });
        }
        eps = eps.max(element / (gap * gap));
    }
    Ok(eps)
}

/// Spectrum, ground state and ε at one coupling value.
#[derive(Clone, Debug)]
pub struct SpectrumPoint<T> {
    pub j_over_h: T,
    /// Ascending, in units of `h`.
    pub energies: Vec<T>,
    pub ground_state: StateVector<T>,
    pub epsilon: T,
}

pub fn spectrum_point<T: Real>(p: &ModelParams<T>, dj_dt: T) -> Result<SpectrumPoint<T>> {
    let eig = hermitian_eig(&build_hamiltonian(p))?;
    let (ground, levels) = level_couplings(p)?;
    Ok(SpectrumPoint {
        j_over_h: p.j / p.h,
        energies: eig.values.iter().map(|&e| e / p.h).collect(),
        ground_state: ground.state,
        epsilon: epsilon_from_levels(ground.energy, &levels, dj_dt)?,
    })
}
