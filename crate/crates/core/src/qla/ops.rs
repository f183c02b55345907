//! Subsystem operations and scalar functionals on density matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::eig::hermitian_eigvals;
use super::matrix::Matrix;
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Splits a flat index into per-subsystem digits (first subsystem most significant).
fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = index % d;
        index /= d;
    }
}

fn validate_indices(keep: &[usize], n: usize) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::Usage("partial trace must keep at least one subsystem".into()));
    }
    for (pos, &k) in keep.iter().enumerate() {
        if k >= n {
            return Err(Error::Usage(format!("subsystem index {k} out of range (0..{n})")));
        }
        if keep[..pos].contains(&k) {
            return Err(Error::Usage(format!("subsystem index {k} repeated")));
        }
    }
    Ok(())
}

/// Traces out every subsystem not listed in `keep` (0-based). The result's
/// subsystems appear in the order given by `keep`.
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    let dims = rho.dims();
    let n = dims.len();
    validate_indices(keep, n)?;
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();

    let full = rho.dim();
    let m = rho.matrix();
    let mut out = Matrix::zeros(out_dim);
    let (mut di, mut dj) = (vec![0; n], vec![0; n]);
    for i in 0..full {
        digits(i, dims, &mut di);
        let ri = keep.iter().fold(0, |acc, &k| acc * dims[k] + di[k]);
        for j in 0..full {
            digits(j, dims, &mut dj);
            if traced.iter().any(|&k| di[k] != dj[k]) {
                continue;
            }
            let rj = keep.iter().fold(0, |acc, &k| acc * dims[k] + dj[k]);
            out[(ri, rj)] += m[(i, j)];
        }
    }
    Ok(DensityMatrix::new_unchecked(out, kept_dims))
}

/// Transposes the indices of subsystem `party` (0-based), leaving the rest intact.
pub fn partial_transpose<T: Real>(rho: &DensityMatrix<T>, party: usize) -> Result<Matrix<T>> {
    let dims = rho.dims();
    let n = dims.len();
    if party >= n {
        return Err(Error::Usage(format!("party {party} out of range (0..{n})")));
    }
    let stride: usize = dims[party + 1..].iter().product();
    let d = dims[party];
    let m = rho.matrix();
    let full = rho.dim();
    let mut out = Matrix::zeros(full);
    for i in 0..full {
        let a = (i / stride) % d;
        for j in 0..full {
            let b = (j / stride) % d;
            // swap digit `party` between row and column
            let ii = i - a * stride + b * stride;
            let jj = j - b * stride + a * stride;
            out[(ii, jj)] = m[(i, j)];
        }
    }
    Ok(out)
}

/// `-Σ λ log₂ λ` over a spectrum, clamping `|λ| ≤ ENTROPY_CLAMP` to zero.
/// Eigenvalues below `-PSD_TOL` are a validation error.
pub(crate) fn entropy_of_spectrum<T: Real>(spectrum: &[T]) -> Result<T> {
    let clamp = T::lit(T::ENTROPY_CLAMP);
    let mut s = T::zero();
    for &l in spectrum {
        if l < -T::lit(T::PSD_TOL) {
            return Err(Error::Validation(format!(
                "negative eigenvalue {:e} in entropy",
                l.as_f64()
            )));
        }
        if l > clamp {
            s -= l * l.log2();
        }
    }
    Ok(s.max(T::zero()))
}

/// Entropy of a raw Hermitian matrix assumed unit-trace and PSD.
pub(crate) fn entropy_of_matrix<T: Real>(m: &Matrix<T>) -> Result<T> {
    entropy_of_spectrum(&hermitian_eigvals(m)?)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    entropy_of_matrix(rho.matrix())
}

/// Normalized trace overlap `tr(ρσ) / √(tr ρ² · tr σ²)`.
pub fn fidelity<T: Real>(rho_th: &DensityMatrix<T>, rho_exp: &DensityMatrix<T>) -> Result<T> {
    if rho_th.dims() != rho_exp.dims() {
        return Err(Error::Usage(format!(
            "fidelity of mismatched layouts {:?} and {:?}",
            rho_th.dims(),
            rho_exp.dims()
        )));
    }
    let overlap = rho_th.matrix().trace_product(rho_exp.matrix()).re;
    let (pa, pb) = (rho_th.purity(), rho_exp.purity());
    if !(pa > T::zero() && pb > T::zero()) {
        return Err(Error::DegenerateInput("zero purity in fidelity".into()));
    }
    Ok(overlap / (pa * pb).sqrt())
}

/// Block `⟨v|_A ρ |v⟩_A` of a bipartite operator whose first subsystem is a qubit:
/// an unnormalized operator on the remainder.
pub(crate) fn qubit_conditional_block<T: Real>(
    rho: &Matrix<T>,
    rest_dim: usize,
    v: [Complex<T>; 2],
) -> Matrix<T> {
    let mut out = Matrix::zeros(rest_dim);
    for a in 0..2 {
        for b in 0..2 {
            let w = v[a].conj() * v[b];
            if w.is_zero() {
                continue;
            }
            for i in 0..rest_dim {
                for j in 0..rest_dim {
                    out[(i, j)] += w * rho[(a * rest_dim + i, b * rest_dim + j)];
                }
            }
        }
    }
    out
}
