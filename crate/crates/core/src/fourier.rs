//! Characteristic functions of outcome distributions and the sign-functional
//! bound on correlation matrices.
//!
//! The outcome count `d` is explicit in the formulas but only `d = 2` is
//! supported: the phase `e^{i2πk/d}` is then the real sign `(-1)^k`, so all
//! quantities stay in the behavior's scalar type (exact for rationals).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scenario::Behavior;

/// Outcomes per setting.
pub const OUTCOMES: u32 = 2;

/// `e^{i2πk/d}`; real only for `d = 2`, every other `d` is rejected.
pub fn fourier_phase(d: u32, k: usize) -> Result<i64> {
    if d != 2 {
        return Err(Error::UnsupportedOutcomeCount(d));
    }
    Ok(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn check_label(l: usize) -> Result<()> {
    if l < 2 {
        Ok(())
    } else {
        Err(Error::InvalidLabel(l))
    }
}

/// `φ(r1 r2|xy) = Σ_{a,b} e^{i2π(a r1 + b r2)/d} p(ab|xy)` with `d` outcomes.
pub fn characteristic_function_d<T: Scalar>(
    b: &Behavior<T>,
    d: u32,
    r1: usize,
    r2: usize,
    x: usize,
    y: usize,
) -> Result<T> {
    if !b.scenario().is_chsh() {
        return Err(Error::UnsupportedScenario(b.scenario()));
    }
    for l in [r1, r2, x, y] {
        check_label(l)?;
    }
    let mut sum = T::zero();
    for a in 0..2 {
        for o in 0..2 {
            let phase = fourier_phase(d, a * r1 + o * r2)?;
            sum = sum + T::from_int(phase) * b.p(a, o, x, y).clone();
        }
    }
    Ok(sum)
}

pub fn characteristic_function<T: Scalar>(b: &Behavior<T>, r1: usize, r2: usize, x: usize, y: usize) -> Result<T> {
    characteristic_function_d(b, OUTCOMES, r1, r2, x, y)
}

/// Correlation matrix `E^{xy}`, rows indexed by `x`, columns by `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EMatrix<T> {
    pub entries: [[T; 2]; 2],
}

impl<T: Scalar> EMatrix<T> {
    pub fn get(&self, x: usize, y: usize) -> &T {
        &self.entries[x][y]
    }

    pub fn zero() -> Self {
        EMatrix {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| T::zero())),
        }
    }

    pub fn from_ints(e: [[i64; 2]; 2]) -> Self {
        EMatrix {
            entries: e.map(|row| row.map(T::from_int)),
        }
    }

    /// Row-major `(E^{00}, E^{01}, E^{10}, E^{11})`.
    pub fn flat(&self) -> [T; 4] {
        std::array::from_fn(|k| self.entries[k / 2][k % 2].clone())
    }
}

/// `E^{xy} = φ(11|xy) = p(00|xy) - p(01|xy) - p(10|xy) + p(11|xy)`.
pub fn e_matrix<T: Scalar>(b: &Behavior<T>) -> Result<EMatrix<T>> {
    let mut e = EMatrix::zero();
    for x in 0..2 {
        for y in 0..2 {
            e.entries[x][y] = characteristic_function(b, 1, 1, x, y)?;
        }
    }
    Ok(e)
}

fn sign_vector(l0: usize, l1: usize) -> [i64; 2] {
    [l0, l1].map(|l| if l == 0 { 1 } else { -1 })
}

fn outer(u: [i64; 2], v: [i64; 2]) -> [[i64; 2]; 2] {
    [[u[0] * v[0], u[0] * v[1]], [u[1] * v[0], u[1] * v[1]]]
}

/// `((-1)^{ℓ1}, (-1)^{ℓ2})ᵀ ⊗ ((-1)^{ℓ3}, (-1)^{ℓ4})ᵀ`.
pub fn deterministic_e<T: Scalar>(l: [usize; 4]) -> Result<EMatrix<T>> {
    for &x in &l {
        check_label(x)?;
    }
    Ok(EMatrix::from_ints(outer(
        sign_vector(l[0], l[1]),
        sign_vector(l[2], l[3]),
    )))
}

/// The sixteen tuples `(ℓ1, ℓ2, ℓ3, ℓ4)`, index `8ℓ1 + 4ℓ2 + 2ℓ3 + ℓ4`.
pub fn label_tuples() -> Vec<[usize; 4]> {
    (0..16)
        .map(|k| [(k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1])
        .collect()
}

/// Convex weights over the sixteen deterministic tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicWeights<T> {
    weights: [T; 16],
}

impl<T: Scalar> DeterministicWeights<T> {
    /// Weights indexed as in [`label_tuples`]; must be nonnegative and sum
    /// to one within [`Scalar::default_tol`].
    pub fn new(weights: [T; 16]) -> Result<Self> {
        let tol = T::default_tol();
        if let Some(i) = weights.iter().position(|w| *w < -tol.clone()) {
            return Err(Error::InvalidWeights(format!("weight {i} is negative")));
        }
        let sum = weights.iter().fold(T::zero(), |s, w| s + w.clone());
        if !sum.close_to(&T::one(), &tol) {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
        }
        Ok(DeterministicWeights { weights })
    }

    pub fn point(l: [usize; 4]) -> Result<Self> {
        for &x in &l {
            check_label(x)?;
        }
        let k = 8 * l[0] + 4 * l[1] + 2 * l[2] + l[3];
        Ok(DeterministicWeights {
            weights: std::array::from_fn(|i| if i == k { T::one() } else { T::zero() }),
        })
    }

    pub fn weights(&self) -> &[T; 16] {
        &self.weights
    }
}

/// `Σ_ℓ p_ℓ · deterministic_e(ℓ)`.
pub fn mix_e<T: Scalar>(w: &DeterministicWeights<T>) -> EMatrix<T> {
    let mut e = EMatrix::<T>::zero();
    for (weight, l) in w.weights.iter().zip(label_tuples()) {
        let d = outer(sign_vector(l[0], l[1]), sign_vector(l[2], l[3]));
        for x in 0..2 {
            for y in 0..2 {
                e.entries[x][y] = e.entries[x][y].clone() + weight.clone() * T::from_int(d[x][y]);
            }
        }
    }
    e
}

/// `q^{m1 m2} = (1, (-1)^{m1})ᵀ ⊗ (1, (-1)^{m2})ᵀ`; the two basis vectors
/// are left unnormalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignFunctional {
    pub m1: usize,
    pub m2: usize,
}

impl SignFunctional {
    pub fn alice_vector(&self) -> [i64; 2] {
        sign_vector(0, self.m1)
    }

    pub fn bob_vector(&self) -> [i64; 2] {
        sign_vector(0, self.m2)
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        outer(self.alice_vector(), self.bob_vector())
    }

    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.matrix()[x][y]
    }

    pub fn all() -> [SignFunctional; 4] {
        [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(m1, m2)| SignFunctional { m1, m2 })
    }

    /// `"m1m2"`, e.g. `"01"`.
    pub fn key(&self) -> String {
        format!("{}{}", self.m1, self.m2)
    }
}

impl fmt::Display for SignFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.key())
    }
}

pub fn q_functional(m1: usize, m2: usize) -> Result<SignFunctional> {
    check_label(m1)?;
    check_label(m2)?;
    Ok(SignFunctional { m1, m2 })
}

/// `⟨((-1)^{ℓ1}, (-1)^{ℓ2}), (1, (-1)^m)⟩ ∈ {-2, 0, 2}`.
pub fn basis_scalar_product(l1: usize, l2: usize, m: usize) -> i64 {
    let u = sign_vector(l1, l2);
    let v = sign_vector(0, m);
    u[0] * v[0] + u[1] * v[1]
}

/// `⟨E|q⟩_HS = Σ_{xy} E^{xy} q^{xy}`.
pub fn hs_inner<T: Scalar>(e: &EMatrix<T>, q: &SignFunctional) -> T {
    let mut s = T::zero();
    for x in 0..2 {
        for y in 0..2 {
            s = s + e.entries[x][y].clone() * T::from_int(q.get(x, y));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localset::DeterministicStrategy;
    use crate::nosignaling::pr_boxes;
    use crate::scenario::{to_correlators, Scenario};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn only_two_outcomes_supported() {
        assert_eq!(fourier_phase(3, 1), Err(Error::UnsupportedOutcomeCount(3)));
        let u = Behavior::<Rational>::uniform(Scenario::CHSH);
        assert!(characteristic_function_d(&u, 4, 1, 1, 0, 0).is_err());
    }

    #[test]
    fn zero_frequency_is_normalization() {
        let b = DeterministicStrategy::all()[11].behavior::<Rational>();
        let u = Behavior::<Rational>::uniform(Scenario::CHSH);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(characteristic_function(&b, 0, 0, x, y).unwrap(), r(1));
                assert_eq!(characteristic_function(&u, 1, 1, x, y).unwrap(), r(0));
            }
        }
    }

    #[test]
    fn e_matrix_values() {
        let zero = DeterministicStrategy::all()[0].behavior::<Rational>();
        assert_eq!(e_matrix(&zero).unwrap(), EMatrix::from_ints([[1, 1], [1, 1]]));
        let u = Behavior::<Rational>::uniform(Scenario::CHSH);
        assert_eq!(e_matrix(&u).unwrap(), EMatrix::zero());
        let pr = pr_boxes()
            .into_iter()
            .find(|b| b.label.i == 1 && b.label.j == 1 && b.label.s == 1)
            .unwrap();
        assert_eq!(e_matrix(&pr.behavior).unwrap(), EMatrix::from_ints([[1, 1], [1, -1]]));
    }

    #[test]
    fn e_matrix_equals_correlations() {
        for s in DeterministicStrategy::all() {
            let b = s.behavior::<Rational>();
            let e = e_matrix(&b).unwrap();
            assert_eq!(e.flat(), to_correlators(&b).unwrap().c);
        }
    }

    #[test]
    fn deterministic_outer_products() {
        assert_eq!(
            deterministic_e::<Rational>([0; 4]).unwrap(),
            EMatrix::from_ints([[1, 1], [1, 1]])
        );
        assert_eq!(
            deterministic_e::<Rational>([0, 1, 0, 0]).unwrap(),
            EMatrix::from_ints([[1, 1], [-1, -1]])
        );
        for l in label_tuples() {
            let w = DeterministicWeights::<Rational>::point(l).unwrap();
            assert_eq!(mix_e(&w), deterministic_e(l).unwrap());
        }
        assert!(deterministic_e::<Rational>([0, 2, 0, 0]).is_err());
    }

    #[test]
    fn uniform_and_paired_mixtures() {
        let uniform = DeterministicWeights::new(std::array::from_fn(|_| Rational::from_ratio(1, 16))).unwrap();
        assert_eq!(mix_e(&uniform), EMatrix::zero());
        // (0,0,0,0) and (1,1,1,1) share the same outer product.
        let mut w: [Rational; 16] = std::array::from_fn(|_| r(0));
        w[0] = Rational::from_ratio(1, 2);
        w[15] = Rational::from_ratio(1, 2);
        let w = DeterministicWeights::new(w).unwrap();
        assert_eq!(mix_e(&w), deterministic_e([0; 4]).unwrap());
    }

    #[test]
    fn weights_validated() {
        let mut w: [Rational; 16] = std::array::from_fn(|_| r(0));
        w[0] = Rational::from_ratio(1, 2);
        assert!(matches!(
            DeterministicWeights::new(w.clone()),
            Err(Error::InvalidWeights(_))
        ));
        w[1] = Rational::from_ratio(3, 4);
        w[2] = Rational::from_ratio(-1, 4);
        assert!(matches!(DeterministicWeights::new(w), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn q_matrices() {
        assert_eq!(q_functional(0, 0).unwrap().matrix(), [[1, 1], [1, 1]]);
        assert_eq!(q_functional(1, 1).unwrap().matrix(), [[1, -1], [-1, 1]]);
        assert!(q_functional(2, 0).is_err());
        for q in SignFunctional::all() {
            let m = q.matrix();
            assert_eq!(m[0][0] * m[0][1] * m[1][0] * m[1][1], 1);
        }
    }

    #[test]
    fn scalar_product_cases() {
        for l1 in 0..2 {
            for l2 in 0..2 {
                for m in 0..2 {
                    let v = basis_scalar_product(l1, l2, m);
                    let expected = match (l1, (l2 + m) % 2) {
                        (0, 0) => 2,
                        (1, 1) => -2,
                        _ => 0,
                    };
                    assert_eq!(v, expected);
                }
            }
        }
    }

    #[test]
    fn hs_inner_factorizes() {
        for l in label_tuples() {
            let e = deterministic_e::<Rational>(l).unwrap();
            for q in SignFunctional::all() {
                let product = basis_scalar_product(l[0], l[1], q.m1) * basis_scalar_product(l[2], l[3], q.m2);
                assert_eq!(hs_inner(&e, &q), r(product));
            }
        }
        let q = q_functional(0, 0).unwrap();
        assert_eq!(hs_inner(&deterministic_e::<Rational>([0; 4]).unwrap(), &q), r(4));
        assert_eq!(hs_inner(&deterministic_e::<Rational>([1, 0, 0, 0]).unwrap(), &q), r(0));
        assert_eq!(hs_inner(&deterministic_e::<Rational>([1, 1, 0, 0]).unwrap(), &q), r(-4));
        assert_eq!(hs_inner(&EMatrix::<Rational>::zero(), &q), r(0));
    }
}
