use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use crate::scalar::Real;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Panics unless `data.len()` is a perfect square.
    pub fn from_vec(data: Vec<Complex<T>>) -> Self {
        let n = (data.len() as f64).sqrt().round() as usize;
        assert_eq!(n * n, data.len(), "matrix data must be square");
        ComplexMatrix { n, data }
    }

    pub fn from_real(rows: &[&[T]]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n);
                r.iter().map(|&x| Complex::new(x, T::zero()))
            })
            .collect();
        ComplexMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).fold(Complex::zero(), |s, i| s + self[(i, i)])
    }

    pub fn scale(&self, k: T) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z.scale(k)).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut m = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        m[(i * other.n + k, j * other.n + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// `max |M - M†|`.
    pub fn hermiticity_error(&self) -> T {
        let mut err = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                err = Float::max(err, (self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        err
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `Re Tr(self · other)`.
    pub fn trace_product_re(&self, other: &Self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for k in 0..self.n {
                s = s + (self[(i, k)] * other[(k, i)]).re;
            }
        }
        s
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| Float::max(m, (*a - *b).norm()))
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex<T>]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    /// Partial trace over the second factor of a `2 ⊗ 2` operator.
    pub fn partial_trace_second(&self) -> Self {
        assert_eq!(self.n, 4);
        let mut m = Self::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self[(2 * i, 2 * j)] + self[(2 * i + 1, 2 * j + 1)];
            }
        }
        m
    }

    /// Partial trace over the first factor of a `2 ⊗ 2` operator.
    pub fn partial_trace_first(&self) -> Self {
        assert_eq!(self.n, 4);
        let mut m = Self::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self[(i, j)] + self[(2 + i, 2 + j)];
            }
        }
        m
    }
}

impl<T> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] = m[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

/// Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn paulis<T: Real>() -> [ComplexMatrix<T>; 3] {
    let (o, l) = (T::zero(), T::one());
    let c = |re: T, im: T| Complex::new(re, im);
    [
        ComplexMatrix::from_vec(vec![c(o, o), c(l, o), c(l, o), c(o, o)]),
        ComplexMatrix::from_vec(vec![c(o, o), c(o, -l), c(o, l), c(o, o)]),
        ComplexMatrix::from_vec(vec![c(l, o), c(o, o), c(o, o), c(-l, o)]),
    ]
}
