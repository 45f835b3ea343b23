//! Bell scenarios, behaviors and correlator coordinates.
//!
//! Outcomes are stored by label `o ∈ {0, 1}`; the physical value of a label
//! is `(-1)^o` (see [`outcome_value`]). Every module goes through that one
//! map when it needs `±1` values.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Physical value `(-1)^label` of an outcome label.
pub fn outcome_value(label: usize) -> i64 {
    if label.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Settings and outcome counts `(mA, mB, dA, dB)` of a bipartite Bell scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    alice_settings: usize,
    bob_settings: usize,
    alice_outcomes: usize,
    bob_outcomes: usize,
}

impl Scenario {
    /// Two settings and two outcomes per party.
    pub const CHSH: Scenario = Scenario {
        alice_settings: 2,
        bob_settings: 2,
        alice_outcomes: 2,
        bob_outcomes: 2,
    };

    pub fn new(alice_settings: usize, bob_settings: usize, alice_outcomes: usize, bob_outcomes: usize) -> Result<Self> {
        let s = Scenario {
            alice_settings,
            bob_settings,
            alice_outcomes,
            bob_outcomes,
        };
        if s.as_array().contains(&0) {
            return Err(Error::InvalidScenario(s.as_array()));
        }
        Ok(s)
    }

    pub fn alice_settings(&self) -> usize {
        self.alice_settings
    }

    pub fn bob_settings(&self) -> usize {
        self.bob_settings
    }

    pub fn alice_outcomes(&self) -> usize {
        self.alice_outcomes
    }

    pub fn bob_outcomes(&self) -> usize {
        self.bob_outcomes
    }

    pub fn as_array(&self) -> [usize; 4] {
        [
            self.alice_settings,
            self.bob_settings,
            self.alice_outcomes,
            self.bob_outcomes,
        ]
    }

    pub fn is_chsh(&self) -> bool {
        *self == Self::CHSH
    }

    /// Number of probabilities `mA·mB·dA·dB`.
    pub fn len(&self) -> usize {
        self.alice_settings * self.bob_settings * self.alice_outcomes * self.bob_outcomes
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index `((x·mB + y)·dA + a)·dB + b`.
    pub fn index(&self, a: usize, b: usize, x: usize, y: usize) -> usize {
        debug_assert!(a < self.alice_outcomes && b < self.bob_outcomes);
        debug_assert!(x < self.alice_settings && y < self.bob_settings);
        ((x * self.bob_settings + y) * self.alice_outcomes + a) * self.bob_outcomes + b
    }

    /// Dimension of the no-signaling affine hull,
    /// `(dA-1)mA + (dB-1)mB + (dA-1)(dB-1)mA·mB`.
    pub fn ns_dimension(&self) -> usize {
        let (ma, mb) = (self.alice_settings, self.bob_settings);
        let (da, db) = (self.alice_outcomes - 1, self.bob_outcomes - 1);
        da * ma + db * mb + da * db * ma * mb
    }

    fn require_chsh(&self) -> Result<()> {
        if self.is_chsh() {
            Ok(())
        } else {
            Err(Error::UnsupportedScenario(*self))
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [ma, mb, da, db] = self.as_array();
        write!(f, "({ma},{mb},{da},{db})")
    }
}

pub fn ns_dimension(s: &Scenario) -> usize {
    s.ns_dimension()
}

/// A conditional probability table `p(ab|xy)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior<T> {
    scenario: Scenario,
    probs: Vec<T>,
}

impl<T: Scalar> Behavior<T> {
    /// Validates range and normalization with [`Scalar::default_tol`].
    pub fn new(scenario: Scenario, probs: Vec<T>) -> Result<Self> {
        Self::with_tolerance(scenario, probs, &T::default_tol())
    }

    pub fn with_tolerance(scenario: Scenario, probs: Vec<T>, tol: &T) -> Result<Self> {
        if probs.len() != scenario.len() {
            return Err(Error::WrongLength {
                expected: scenario.len(),
                got: probs.len(),
            });
        }
        let (zero, one) = (T::zero(), T::one());
        for (index, p) in probs.iter().enumerate() {
            if *p < zero.clone() - tol.clone() || *p > one.clone() + tol.clone() {
                return Err(Error::ProbabilityOutOfRange {
                    index,
                    value: p.to_string(),
                });
            }
        }
        let b = Behavior { scenario, probs };
        for x in 0..scenario.alice_settings {
            for y in 0..scenario.bob_settings {
                let sum = b.setting_sum(x, y);
                if !sum.close_to(&one, tol) {
                    return Err(Error::NotNormalized {
                        x,
                        y,
                        sum: sum.to_string(),
                    });
                }
            }
        }
        Ok(b)
    }

    pub fn uniform(scenario: Scenario) -> Self {
        let n = (scenario.alice_outcomes * scenario.bob_outcomes) as i64;
        Behavior {
            scenario,
            probs: vec![T::from_ratio(1, n); scenario.len()],
        }
    }

    /// Product of deterministic local responses: Alice answers label
    /// `alice[x]` to setting `x`, Bob answers `bob[y]`.
    pub fn deterministic(scenario: Scenario, alice: &[usize], bob: &[usize]) -> Result<Self> {
        if alice.len() != scenario.alice_settings {
            return Err(Error::WrongLength {
                expected: scenario.alice_settings,
                got: alice.len(),
            });
        }
        if bob.len() != scenario.bob_settings {
            return Err(Error::WrongLength {
                expected: scenario.bob_settings,
                got: bob.len(),
            });
        }
        if let Some(&l) = alice.iter().find(|&&l| l >= scenario.alice_outcomes) {
            return Err(Error::InvalidLabel(l));
        }
        if let Some(&l) = bob.iter().find(|&&l| l >= scenario.bob_outcomes) {
            return Err(Error::InvalidLabel(l));
        }
        let mut probs = vec![T::zero(); scenario.len()];
        for x in 0..scenario.alice_settings {
            for y in 0..scenario.bob_settings {
                probs[scenario.index(alice[x], bob[y], x, y)] = T::one();
            }
        }
        Ok(Behavior { scenario, probs })
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<T> {
        self.probs
    }

    pub fn p(&self, a: usize, b: usize, x: usize, y: usize) -> &T {
        &self.probs[self.scenario.index(a, b, x, y)]
    }

    fn setting_sum(&self, x: usize, y: usize) -> T {
        let mut sum = T::zero();
        for a in 0..self.scenario.alice_outcomes {
            for b in 0..self.scenario.bob_outcomes {
                sum = sum + self.p(a, b, x, y).clone();
            }
        }
        sum
    }

    /// `p(a|x)` computed at Bob's setting `y`.
    pub fn alice_marginal(&self, a: usize, x: usize, y: usize) -> T {
        (0..self.scenario.bob_outcomes).fold(T::zero(), |s, b| s + self.p(a, b, x, y).clone())
    }

    /// `p(b|y)` computed at Alice's setting `x`.
    pub fn bob_marginal(&self, b: usize, x: usize, y: usize) -> T {
        (0..self.scenario.alice_outcomes).fold(T::zero(), |s, a| s + self.p(a, b, x, y).clone())
    }

    /// Both marginal-consistency families hold within `tol`.
    pub fn is_no_signaling(&self, tol: &T) -> bool {
        let s = self.scenario;
        for x in 0..s.alice_settings {
            for a in 0..s.alice_outcomes {
                let reference = self.alice_marginal(a, x, 0);
                if (1..s.bob_settings).any(|y| !self.alice_marginal(a, x, y).close_to(&reference, tol)) {
                    return false;
                }
            }
        }
        for y in 0..s.bob_settings {
            for b in 0..s.bob_outcomes {
                let reference = self.bob_marginal(b, 0, y);
                if (1..s.alice_settings).any(|x| !self.bob_marginal(b, x, y).close_to(&reference, tol)) {
                    return false;
                }
            }
        }
        true
    }

    /// `weight·self + (1 - weight)·other`.
    pub fn mix(&self, other: &Self, weight: &T) -> Result<Self> {
        if self.scenario != other.scenario {
            return Err(Error::WrongLength {
                expected: self.probs.len(),
                got: other.probs.len(),
            });
        }
        let rest = T::one() - weight.clone();
        let probs = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(p, q)| weight.clone() * p.clone() + rest.clone() * q.clone())
            .collect();
        Behavior::new(self.scenario, probs)
    }

    pub fn to_f64(&self) -> Behavior<f64> {
        Behavior {
            scenario: self.scenario,
            probs: self.probs.iter().map(Scalar::as_f64).collect(),
        }
    }

    /// Rebuilds a behavior from a table already known to be valid.
    pub(crate) fn from_raw(scenario: Scenario, probs: Vec<T>) -> Self {
        debug_assert_eq!(probs.len(), scenario.len());
        Behavior { scenario, probs }
    }
}

pub fn is_no_signaling<T: Scalar>(b: &Behavior<T>, tol: &T) -> bool {
    b.is_no_signaling(tol)
}

/// Marginal and two-point correlators of a (2,2) behavior.
///
/// `m = (⟨A0⟩, ⟨A1⟩, ⟨B0⟩, ⟨B1⟩)`, `c = (⟨A0B0⟩, ⟨A0B1⟩, ⟨A1B0⟩, ⟨A1B1⟩)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorPoint<T> {
    pub m: [T; 4],
    pub c: [T; 4],
}

impl<T: Scalar> CorrelatorPoint<T> {
    pub fn new(m: [T; 4], c: [T; 4]) -> Self {
        CorrelatorPoint { m, c }
    }

    pub fn zero() -> Self {
        CorrelatorPoint {
            m: std::array::from_fn(|_| T::zero()),
            c: std::array::from_fn(|_| T::zero()),
        }
    }

    /// `⟨A_x⟩`.
    pub fn alice(&self, x: usize) -> &T {
        &self.m[x]
    }

    /// `⟨B_y⟩`.
    pub fn bob(&self, y: usize) -> &T {
        &self.m[2 + y]
    }

    /// `⟨A_x B_y⟩`.
    pub fn joint(&self, x: usize, y: usize) -> &T {
        &self.c[2 * x + y]
    }

    /// The 8-vector `(m, c)`.
    pub fn to_vec(&self) -> Vec<T> {
        self.m.iter().chain(self.c.iter()).cloned().collect()
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        if v.len() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: v.len(),
            });
        }
        Ok(CorrelatorPoint {
            m: std::array::from_fn(|i| v[i].clone()),
            c: std::array::from_fn(|i| v[4 + i].clone()),
        })
    }

    pub fn dot(&self, other: &Self) -> T {
        self.m
            .iter()
            .chain(self.c.iter())
            .zip(other.m.iter().chain(other.c.iter()))
            .fold(T::zero(), |s, (a, b)| s + a.clone() * b.clone())
    }
}

/// Correlators of a normalized, no-signaling (2,2) behavior.
pub fn to_correlators<T: Scalar>(b: &Behavior<T>) -> Result<CorrelatorPoint<T>> {
    b.scenario.require_chsh()?;
    if !b.is_no_signaling(&T::default_tol()) {
        return Err(Error::Signaling);
    }
    let val = |o: usize| T::from_int(outcome_value(o));
    let mut m: [T; 4] = std::array::from_fn(|_| T::zero());
    for x in 0..2 {
        m[x] = (0..2).fold(T::zero(), |s, a| s + val(a) * b.alice_marginal(a, x, 0));
    }
    for y in 0..2 {
        m[2 + y] = (0..2).fold(T::zero(), |s, o| s + val(o) * b.bob_marginal(o, 0, y));
    }
    let mut c: [T; 4] = std::array::from_fn(|_| T::zero());
    for x in 0..2 {
        for y in 0..2 {
            let mut sum = T::zero();
            for a in 0..2 {
                for o in 0..2 {
                    sum = sum + val(a) * val(o) * b.p(a, o, x, y).clone();
                }
            }
            c[2 * x + y] = sum;
        }
    }
    Ok(CorrelatorPoint { m, c })
}

/// `p(ab|xy) = (1 + a⟨A_x⟩ + b⟨B_y⟩ + ab⟨A_xB_y⟩)/4` with `a, b = ±1`.
pub fn from_correlators<T: Scalar>(p: &CorrelatorPoint<T>) -> Result<Behavior<T>> {
    let s = Scenario::CHSH;
    let tol = T::default_tol();
    let four = T::from_int(4);
    let mut probs = vec![T::zero(); s.len()];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for o in 0..2 {
                    let (va, vb) = (T::from_int(outcome_value(a)), T::from_int(outcome_value(o)));
                    let value = (T::one()
                        + va.clone() * p.alice(x).clone()
                        + vb.clone() * p.bob(y).clone()
                        + va * vb * p.joint(x, y).clone())
                        / four.clone();
                    if value < -tol.clone() {
                        return Err(Error::NotABehavior {
                            a: outcome_value(a),
                            b: outcome_value(o),
                            x,
                            y,
                            value: value.to_string(),
                        });
                    }
                    probs[s.index(a, o, x, y)] = value;
                }
            }
        }
    }
    Behavior::new(s, probs)
}
