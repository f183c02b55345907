//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors as columns, in the order of `values`. Each
    /// column's largest-magnitude component is real and positive.
    pub vectors: Matrix<T>,
}

impl<T: Real> Eigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> Complex<T>) -> Matrix<T> {
        let n = self.vectors.dim();
        let weights: Vec<_> = self.values.iter().map(|&l| f(l)).collect();
        Matrix::from_fn(n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| {
                acc + self.vectors[(i, k)] * weights[k] * self.vectors[(j, k)].conj()
            })
        })
    }
}

fn check_hermitian<T: Real>(h: &Matrix<T>) -> Result<()> {
    if !h.is_finite() {
        return Err(Error::Validation("matrix has non-finite entries".into()));
    }
    let err = h.hermiticity_error();
    if err > T::lit(T::HERMITIAN_TOL) {
        return Err(Error::Validation(format!(
            "matrix is not Hermitian (deviation {:e})",
            err.as_f64()
        )));
    }
    Ok(())
}

fn off_diagonal_norm<T: Real>(a: &Matrix<T>) -> T {
    let n = a.dim();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Runs the Jacobi iteration in place. Returns the accumulated rotation when
/// `want_vectors` is set.
fn jacobi<T: Real>(a: &mut Matrix<T>, want_vectors: bool) -> Result<Option<Matrix<T>>> {
    let n = a.dim();
    let mut v = want_vectors.then(|| Matrix::identity(n));
    let threshold = T::lit(T::JACOBI_TOL) * T::one().max(a.frobenius_norm());

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(a);
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off.as_f64(),
            });
        }
        sweeps += 1;

        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r.is_zero() {
                    continue;
                }
                // Phase e^{-iα} on column q makes a_pq real; a real Jacobi
                // rotation then annihilates it.
                let phase = apq.unscale(r).conj();
                let theta = (a[(q, q)].re - a[(p, p)].re) / (r + r);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let sign = if theta < T::zero() { -T::one() } else { T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let (cc, sc) = (Complex::new(c, T::zero()), Complex::new(s, T::zero()));

                // A <- A J with J_pp = c, J_pq = s, J_qp = -s e^{-iα}, J_qq = c e^{-iα}.
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = cc * akp - sc * phase * akq;
                    a[(k, q)] = sc * akp + cc * phase * akq;
                }
                // A <- J† A.
                let phase_c = phase.conj();
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = cc * apk - sc * phase_c * aqk;
                    a[(q, k)] = sc * apk + cc * phase_c * aqk;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)].im = T::zero();
                a[(q, q)].im = T::zero();

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = cc * vkp - sc * phase * vkq;
                        v[(k, q)] = sc * vkp + cc * phase * vkq;
                    }
                }
            }
        }
    }
    Ok(v)
}

fn sorted_order<T: Real>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite eigenvalues"));
    order
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig<T: Real>(h: &Matrix<T>) -> Result<Eigen<T>> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.clone();
    let v = jacobi(&mut a, true)?.expect("vectors requested");
    let raw: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    let order = sorted_order(&raw);

    let values = order.iter().map(|&k| raw[k]).collect();
    let mut vectors = Matrix::zeros(n);
    // Ties in magnitude are broken towards the lowest index so the
    // convention survives rounding noise on equal-weight vectors.
    let tie = T::epsilon().sqrt();
    for (col, &k) in order.iter().enumerate() {
        let max = (0..n).fold(T::zero(), |m, i| m.max(v[(i, k)].norm()));
        let pivot = (0..n)
            .find(|&i| v[(i, k)].norm() >= max * (T::one() - tie))
            .unwrap_or(0);
        let z = v[(pivot, k)];
        let fix = if z.norm().is_zero() {
            Complex::one()
        } else {
            z.conj().unscale(z.norm())
        };
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)] * fix;
        }
        vectors[(pivot, col)].im = T::zero();
    }
    Ok(Eigen { values, vectors })
}

/// Eigenvalues only, ascending. 2×2 inputs use the closed form.
pub fn hermitian_eigvals<T: Real>(h: &Matrix<T>) -> Result<Vec<T>> {
    check_hermitian(h)?;
    if h.dim() == 2 {
        let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
        let two = T::lit(2.0);
        let mean = (a + d) / two;
        let half = (a - d) / two;
        let r = (half * half + b.norm_sqr()).sqrt();
        return Ok(vec![mean - r, mean + r]);
    }
    let mut a = h.clone();
    jacobi(&mut a, false)?;
    let mut values: Vec<T> = (0..h.dim()).map(|i| a[(i, i)].re).collect();
    values.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(values)
}

/// `exp(-i H s)` for Hermitian `H`.
pub fn exp_minus_i<T: Real>(h: &Matrix<T>, s: T) -> Result<Matrix<T>> {
    if s.is_zero() {
        check_hermitian(h)?;
        return Ok(Matrix::identity(h.dim()));
    }
    let eig = hermitian_eig(h)?;
    Ok(eig.reconstruct_with(|l| {
        let phase = -(l * s);
        Complex::new(phase.cos(), phase.sin())
    }))
}
