use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a perfect square.
    pub fn from_vec(data: Vec<Complex<T>>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::Usage(format!(
                "{} entries do not form a non-empty square matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        m
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Complex<T>], b: &[Complex<T>]) -> Self {
        assert_eq!(a.len(), b.len(), "outer product of unequal lengths");
        Self::from_fn(a.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim, other.dim, "trace_product dimension mismatch");
        let n = self.dim;
        let mut acc = Complex::zero();
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim, "apply dimension mismatch");
        let n = self.dim;
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).norm()))
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Largest entrywise deviation `|A_ij - conj(A_ji)|`.
    pub fn hermiticity_error(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Converts the scalar type, e.g. to compare an `f32` computation against `f64`.
    pub fn cast<U: Real>(&self) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = &self.data[i * self.dim + j];
                write!(f, "{:+.6?}{:+.6?}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn pauli_x<T: Real>() -> Matrix<T> {
    let (o, l) = (Complex::zero(), Complex::one());
    Matrix { dim: 2, data: vec![o, l, l, o] }
}

pub fn pauli_y<T: Real>() -> Matrix<T> {
    let o = Complex::zero();
    let i = Complex::new(T::zero(), T::one());
    Matrix { dim: 2, data: vec![o, -i, i, o] }
}

pub fn pauli_z<T: Real>() -> Matrix<T> {
    Matrix::from_real_diagonal(&[T::one(), -T::one()])
}

/// Kronecker product of `factors` in the given order.
pub fn tensor<T: Real>(factors: &[Matrix<T>]) -> Result<Matrix<T>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Usage("tensor product of an empty factor list".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, f| acc.kron(f)))
}

/// `op` acting on qubit `site` of an `n`-qubit register; qubit 0 is the most
/// significant bit of the basis index.
pub fn embed_single<T: Real>(op: &Matrix<T>, site: usize, n: usize) -> Matrix<T> {
    let factors: Vec<_> = (0..n)
        .map(|k| if k == site { op.clone() } else { Matrix::identity(2) })
        .collect();
    tensor(&factors).expect("n >= 1")
}
