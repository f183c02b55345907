//! Dense complex linear algebra for registers of a few qubits.
//!
//! Everything here is sized for Hilbert spaces of dimension ≤ 8 and favours
//! simple, deterministic algorithms over asymptotic speed: products are
//! naive triple loops and the Hermitian eigensolver is cyclic Jacobi.
//!
//! Subsystem indices are 0-based and the first subsystem is the most
//! significant digit of a basis index.

mod eig;
mod matrix;
mod ops;
mod random;
mod state;

pub use eig::{exp_minus_i, hermitian_eig, hermitian_eigvals, Eigen};
pub use matrix::{embed_single, pauli_x, pauli_y, pauli_z, tensor, Matrix};
pub use ops::{fidelity, partial_trace, partial_transpose, von_neumann_entropy};
pub use random::{random_density, random_local_unitary, random_pure_state, random_su2};
pub use state::{DensityMatrix, StateVector};

pub(crate) use ops::{entropy_of_matrix, qubit_conditional_block};
