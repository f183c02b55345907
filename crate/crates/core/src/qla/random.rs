//! Seedable random states and unitaries for property checks.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{tensor, Matrix};
use super::state::{DensityMatrix, StateVector};
use crate::scalar::Real;

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Unitarily invariant random pure state of `n_qubits` qubits.
pub fn random_pure_state<T: Real, R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> StateVector<T> {
    let amps = (0..1usize << n_qubits).map(|_| gaussian(rng)).collect();
    StateVector::normalized(amps).expect("Gaussian vector is non-zero almost surely")
}

/// Ginibre random density matrix `G G† / tr(G G†)` with `G` of shape
/// `2^n × rank`.
pub fn random_density<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n_qubits: usize,
    rank: usize,
) -> DensityMatrix<T> {
    let dim = 1usize << n_qubits;
    let g: Vec<Vec<Complex<T>>> = (0..dim)
        .map(|_| (0..rank.max(1)).map(|_| gaussian(rng)).collect())
        .collect();
    let gg = Matrix::from_fn(dim, |i, j| {
        g[i].iter()
            .zip(&g[j])
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj())
    });
    let tr = gg.trace().re;
    DensityMatrix::new_unchecked(gg.scale_real(T::one() / tr), vec![2; n_qubits])
}

/// Haar random element of SU(2).
pub fn random_su2<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Matrix<T> {
    let (a, b) = (gaussian::<T, _>(rng), gaussian::<T, _>(rng));
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a.unscale(norm), b.unscale(norm));
    Matrix::from_vec(vec![a, -b.conj(), b, a.conj()]).expect("2x2")
}

/// Independent Haar random single-qubit unitaries on each of `n_qubits`.
pub fn random_local_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> Matrix<T> {
    let factors: Vec<Matrix<T>> = (0..n_qubits).map(|_| random_su2(rng)).collect();
    tensor(&factors).expect("at least one qubit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn random_objects_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for rank in 1..=4 {
            let rho = random_density::<f64, _>(&mut rng, 2, rank);
            assert!(DensityMatrix::new(rho.matrix().clone(), vec![2, 2]).is_ok());
        }
        let u = random_local_unitary::<f64, _>(&mut rng, 3);
        assert!((&u * &u.adjoint()).max_abs_diff(&Matrix::identity(8)) < 1e-12);
        let psi = random_pure_state::<f64, _>(&mut rng, 3);
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seeded_streams_repeat() {
        let a = random_pure_state::<f64, _>(&mut StdRng::seed_from_u64(1), 3);
        let b = random_pure_state::<f64, _>(&mut StdRng::seed_from_u64(1), 3);
        assert_eq!(a, b);
    }
}
