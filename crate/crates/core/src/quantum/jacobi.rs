//! Cyclic Jacobi eigendecomposition of Hermitian matrices.

use num_complex::Complex;
use num_traits::{Float, Zero};

use super::matrix::ComplexMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching unit eigenvectors
/// (columns of the returned matrix).
#[derive(Debug, Clone)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Eigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.vectors.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    pub fn max_value(&self) -> T {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn min_value(&self) -> T {
        self.values[0]
    }
}

fn off_diagonal_mass<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    Float::sqrt(s)
}

/// Sweeps until the off-diagonal Frobenius mass is below
/// `strict_tol · max(1, ‖A‖_F)`. The input is symmetrized first.
pub fn hermitian_eigen<T: Real>(m: &ComplexMatrix<T>) -> Eigen<T> {
    let n = m.dim();
    let half = T::from_ratio(1, 2);
    let mut a = (m + &m.adjoint()).scale(half);
    let mut v = ComplexMatrix::identity(n);
    let norm = Float::sqrt(a.data().iter().fold(T::zero(), |s, z| s + z.norm_sqr()));
    let threshold = T::strict_tol() * Float::max(T::one(), norm);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)];
                let magnitude = g.norm();
                if magnitude <= T::min_positive_value() {
                    continue;
                }
                // diag(1, e^{-iφ}) makes the (p, q) entry real positive, then a
                // real rotation with tan 2θ = 2|g| / (a_qq - a_pp).
                let phase = g.unscale(magnitude);
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let two = T::from_int(2);
                let theta = Float::atan2(two * magnitude, aqq - app) / two;
                let (s, c) = Float::sin_cos(theta);
                let mut u = ComplexMatrix::identity(n);
                let conj = phase.conj();
                u[(p, p)] = Complex::new(c, T::zero());
                u[(p, q)] = Complex::new(s, T::zero());
                u[(q, p)] = conj * -s;
                u[(q, q)] = conj * c;
                a = &(&u.adjoint() * &a) * &u;
                v = &v * &u;
                // Clean the annihilated pair and the diagonal imaginary parts.
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
                a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, k)] = v[(r, i)];
        }
    }
    Eigen { values, vectors }
}
