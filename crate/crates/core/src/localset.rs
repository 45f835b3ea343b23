//! The local polytope of the (2,2) scenario.
//!
//! Coordinates are the correlator 8-vectors `(m, c)` of [`CorrelatorPoint`].
//! The sixteen deterministic strategies are listed in label order on
//! `(A0, A1, B0, B1)` (label 0, value +1, first).

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::exactgeom::{facet_enumeration, HPolytope, Halfspace, VPolytope};
use crate::scalar::{Exact, Scalar};
use crate::scenario::{outcome_value, to_correlators, Behavior, CorrelatorPoint, Scenario};
use crate::Rational;

/// A `±1` sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// Deterministic local responses, stored as outcome labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    pub alice_labels: [usize; 2],
    pub bob_labels: [usize; 2],
}

impl DeterministicStrategy {
    /// All sixteen strategies in canonical order.
    pub fn all() -> Vec<DeterministicStrategy> {
        (0..16)
            .map(|k| DeterministicStrategy {
                alice_labels: [(k >> 3) & 1, (k >> 2) & 1],
                bob_labels: [(k >> 1) & 1, k & 1],
            })
            .collect()
    }

    /// Value of `A_x`.
    pub fn alice_value(&self, x: usize) -> i64 {
        outcome_value(self.alice_labels[x])
    }

    /// Value of `B_y`.
    pub fn bob_value(&self, y: usize) -> i64 {
        outcome_value(self.bob_labels[y])
    }

    /// `r_A` with `⟨A_x⟩ = ⟨A_0⟩(-1)^{x r_A}`.
    pub fn r_alice(&self) -> usize {
        self.alice_labels[0] ^ self.alice_labels[1]
    }

    /// `r_B` with `⟨B_y⟩ = ⟨B_0⟩(-1)^{y r_B}`.
    pub fn r_bob(&self) -> usize {
        self.bob_labels[0] ^ self.bob_labels[1]
    }

    /// Sign of `⟨A_0⟩⟨B_0⟩`.
    pub fn s(&self) -> Sign {
        if self.alice_value(0) * self.bob_value(0) > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn behavior<T: Scalar>(&self) -> Behavior<T> {
        Behavior::deterministic(Scenario::CHSH, &self.alice_labels, &self.bob_labels).expect("labels are binary")
    }

    pub fn correlators<T: Scalar>(&self) -> CorrelatorPoint<T> {
        let a = [self.alice_value(0), self.alice_value(1)];
        let b = [self.bob_value(0), self.bob_value(1)];
        CorrelatorPoint::new(
            [a[0], a[1], b[0], b[1]].map(T::from_int),
            [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]].map(T::from_int),
        )
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: i64| if v > 0 { '+' } else { '-' };
        write!(
            f,
            "A=({}{}) B=({}{})",
            s(self.alice_value(0)),
            s(self.alice_value(1)),
            s(self.bob_value(0)),
            s(self.bob_value(1))
        )
    }
}

/// The sixteen deterministic behaviors with their correlators.
pub fn deterministic_vertices<T: Scalar>() -> Vec<(Behavior<T>, CorrelatorPoint<T>)> {
    DeterministicStrategy::all()
        .iter()
        .map(|s| (s.behavior(), s.correlators()))
        .collect()
}

/// The local polytope as a V-polytope in `(m, c)` coordinates.
pub fn local_polytope() -> VPolytope<Rational> {
    let vertices = DeterministicStrategy::all()
        .iter()
        .map(|s| s.correlators::<Rational>().to_vec())
        .collect();
    VPolytope::new(8, vertices).expect("8-dimensional points")
}

/// `c^s_{rA rB} = s(1, (-1)^{rB}, (-1)^{rA}, (-1)^{rA+rB})`.
pub fn correlation_vertex(s: Sign, r_alice: usize, r_bob: usize) -> [i64; 4] {
    let p = |r: usize| outcome_value(r);
    [1, p(r_bob), p(r_alice), p(r_alice + r_bob)].map(|v| s.value() * v)
}

/// The tetrahedron `{c^s_{rA rB}}` inside `R^4`.
pub fn correlation_tetrahedron(s: Sign) -> VPolytope<Rational> {
    let vertices = [(0, 0), (0, 1), (1, 1), (1, 0)]
        .iter()
        .map(|&(ra, rb)| correlation_vertex(s, ra, rb).map(Rational::from_int).to_vec())
        .collect();
    VPolytope::new(4, vertices).expect("4-dimensional points")
}

/// The correlation polytope: both tetrahedra together.
pub fn correlation_polytope() -> VPolytope<Rational> {
    let vertices = Sign::both()
        .iter()
        .flat_map(|&s| correlation_tetrahedron(s).vertices().to_vec())
        .collect();
    VPolytope::new(4, vertices).expect("4-dimensional points")
}

/// Linear functional `β·(m, c) <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellFunctional<T> {
    pub beta: CorrelatorPoint<T>,
    pub bound: T,
}

impl<T: Scalar> BellFunctional<T> {
    pub fn new(beta: CorrelatorPoint<T>, bound: T) -> Self {
        BellFunctional { beta, bound }
    }

    /// `β·p`.
    pub fn evaluate(&self, p: &CorrelatorPoint<T>) -> T {
        self.beta.dot(p)
    }

    pub fn is_satisfied_by(&self, p: &CorrelatorPoint<T>) -> bool {
        self.evaluate(p) <= self.bound
    }

    pub fn has_zero_marginal_part(&self) -> bool {
        self.beta.m.iter().all(|x| x.is_zero())
    }
}

impl<T: Exact> BellFunctional<T> {
    pub fn to_halfspace(&self) -> Halfspace<T> {
        Halfspace::new(self.beta.to_vec(), self.bound.clone())
    }

    pub fn from_halfspace(h: &Halfspace<T>) -> Result<Self> {
        Ok(BellFunctional::new(
            CorrelatorPoint::from_slice(&h.normal)?,
            h.bound.clone(),
        ))
    }
}

/// `⟨A0B0⟩ + ⟨A0B1⟩ + ⟨A1B0⟩ - ⟨A1B1⟩ <= 2`.
pub fn chsh_functional<T: Scalar>() -> BellFunctional<T> {
    BellFunctional::new(
        CorrelatorPoint::new([0; 4].map(T::from_int), [1, 1, 1, -1].map(T::from_int)),
        T::from_int(2),
    )
}

/// Label `(i, j, s)` of a CHSH-type facet; the facet is opposite to the
/// correlation vertex `c^s_{ij}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacetLabel {
    pub i: usize,
    pub j: usize,
    pub s: i64,
}

impl FacetLabel {
    pub fn all() -> Vec<FacetLabel> {
        Sign::both()
            .iter()
            .flat_map(|&s| [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| FacetLabel { i, j, s: s.value() }))
            .collect()
    }

    pub fn sign(&self) -> Sign {
        if self.s > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Normal `f^s_{ij}`: first component `s`, remaining components the negated
/// tail of the opposite vertex `c^s_{ij}`.
pub fn chsh_normal(label: FacetLabel) -> [i64; 4] {
    let c = correlation_vertex(label.sign(), label.i, label.j);
    [c[0], -c[1], -c[2], -c[3]]
}

pub fn chsh_facet<T: Scalar>(label: FacetLabel) -> BellFunctional<T> {
    BellFunctional::new(
        CorrelatorPoint::new([0; 4].map(T::from_int), chsh_normal(label).map(T::from_int)),
        T::from_int(2),
    )
}

/// The eight functionals `β^s_{ij} = (0, f^s_{ij})` with bound 2.
pub fn chsh_facets<T: Scalar>() -> Vec<(FacetLabel, BellFunctional<T>)> {
    FacetLabel::all().into_iter().map(|l| (l, chsh_facet(l))).collect()
}

/// The sixteen positivity inequalities `p(ab|xy) >= 0` written as
/// `-a⟨A_x⟩ - b⟨B_y⟩ - ab⟨A_xB_y⟩ <= 1`, in table index order.
pub fn positivity_functionals<T: Scalar>() -> Vec<BellFunctional<T>> {
    let s = Scenario::CHSH;
    let mut out = vec![BellFunctional::new(CorrelatorPoint::zero(), T::one()); s.len()];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let (va, vb) = (outcome_value(a), outcome_value(b));
                    let mut beta = CorrelatorPoint::<T>::zero();
                    beta.m[x] = T::from_int(-va);
                    beta.m[2 + y] = T::from_int(-vb);
                    beta.c[2 * x + y] = T::from_int(-va * vb);
                    out[s.index(a, b, x, y)] = BellFunctional::new(beta, T::one());
                }
            }
        }
    }
    out
}

/// CHSH expression `⟨A0B0⟩ + ⟨A0B1⟩ + ⟨A1B0⟩ - ⟨A1B1⟩`.
pub fn chsh_value<T: Scalar>(p: &CorrelatorPoint<T>) -> T {
    p.c[0].clone() + p.c[1].clone() + p.c[2].clone() - p.c[3].clone()
}

/// Facets of the local polytope, split into CHSH-type and positivity.
#[derive(Debug, Clone)]
pub struct LocalFacets {
    pub hrep: HPolytope<Rational>,
    pub chsh: Vec<BellFunctional<Rational>>,
    pub positivity: Vec<BellFunctional<Rational>>,
}

/// Facet enumeration of the sixteen deterministic vertices, classified by
/// whether the marginal part of the normal vanishes.
pub fn local_facets() -> Result<LocalFacets> {
    let hrep = facet_enumeration(&local_polytope())?;
    let (mut chsh, mut positivity) = (Vec::new(), Vec::new());
    for h in hrep.inequalities() {
        let f = BellFunctional::from_halfspace(h)?;
        if f.has_zero_marginal_part() {
            chsh.push(f);
        } else {
            positivity.push(f);
        }
    }
    Ok(LocalFacets { hrep, chsh, positivity })
}

/// Deterministic vertices saturating a functional.
#[derive(Debug, Clone)]
pub struct FacetVertices {
    pub count: usize,
    pub strategies: Vec<DeterministicStrategy>,
    pub points: Vec<CorrelatorPoint<Rational>>,
}

/// Brute-force search of the deterministic vertices with `β·v = bound`.
pub fn facet_vertex_count(f: &BellFunctional<Rational>) -> FacetVertices {
    let strategies: Vec<DeterministicStrategy> = DeterministicStrategy::all()
        .into_iter()
        .filter(|s| f.evaluate(&s.correlators()) == f.bound)
        .collect();
    let points = strategies.iter().map(|s| s.correlators()).collect();
    FacetVertices {
        count: strategies.len(),
        strategies,
        points,
    }
}

/// Relabeling of settings, outcomes and parties.
///
/// Acting on an event `(a, b, x, y)`: outcomes are flipped first
/// (`a ^= flip_alice[x]`, `b ^= flip_bob[y]`), then settings are swapped
/// (`x ^= swap_inputs_alice`, `y ^= swap_inputs_bob`), then the parties are
/// exchanged if `swap_parties`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Relabeling {
    pub swap_parties: bool,
    pub swap_inputs_alice: bool,
    pub swap_inputs_bob: bool,
    pub flip_alice: [bool; 2],
    pub flip_bob: [bool; 2],
}

impl Relabeling {
    pub fn identity() -> Self {
        Self::default()
    }

    /// All 128 group elements in a fixed order.
    pub fn all() -> Vec<Relabeling> {
        (0..128u32)
            .map(|k| {
                let bit = |i: u32| (k >> i) & 1 == 1;
                Relabeling {
                    swap_parties: bit(6),
                    swap_inputs_alice: bit(5),
                    swap_inputs_bob: bit(4),
                    flip_alice: [bit(3), bit(2)],
                    flip_bob: [bit(1), bit(0)],
                }
            })
            .collect()
    }

    /// Image of the event `(a, b, x, y)`.
    pub fn map_event(&self, a: usize, b: usize, x: usize, y: usize) -> (usize, usize, usize, usize) {
        let a1 = a ^ self.flip_alice[x] as usize;
        let b1 = b ^ self.flip_bob[y] as usize;
        let x1 = x ^ self.swap_inputs_alice as usize;
        let y1 = y ^ self.swap_inputs_bob as usize;
        if self.swap_parties {
            (b1, a1, y1, x1)
        } else {
            (a1, b1, x1, y1)
        }
    }

    /// `perm[i]` is the table index that entry `i` is moved to.
    pub fn event_permutation(&self) -> [usize; 16] {
        let s = Scenario::CHSH;
        let mut perm = [0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        let (a1, b1, x1, y1) = self.map_event(a, b, x, y);
                        perm[s.index(a, b, x, y)] = s.index(a1, b1, x1, y1);
                    }
                }
            }
        }
        perm
    }

    fn from_permutation(perm: &[usize; 16]) -> Relabeling {
        *Relabeling::all()
            .iter()
            .find(|r| r.event_permutation() == *perm)
            .expect("relabelings form a group")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Relabeling) -> Relabeling {
        let (p, q) = (self.event_permutation(), other.event_permutation());
        Relabeling::from_permutation(&std::array::from_fn(|i| p[q[i]]))
    }

    pub fn inverse(&self) -> Relabeling {
        let p = self.event_permutation();
        let mut inv = [0; 16];
        for (i, &j) in p.iter().enumerate() {
            inv[j] = i;
        }
        Relabeling::from_permutation(&inv)
    }

    /// Induced signed permutation on correlator coordinates.
    pub fn apply_to_correlators<T: Scalar>(&self, p: &CorrelatorPoint<T>) -> CorrelatorPoint<T> {
        let sign = |flip: bool| if flip { -T::one() } else { T::one() };
        let mut out = CorrelatorPoint::<T>::zero();
        for x in 0..2 {
            let x1 = x ^ self.swap_inputs_alice as usize;
            let fa = sign(self.flip_alice[x]);
            let a_val = fa.clone() * p.alice(x).clone();
            for y in 0..2 {
                let y1 = y ^ self.swap_inputs_bob as usize;
                let fb = sign(self.flip_bob[y]);
                let joint = fa.clone() * fb * p.joint(x, y).clone();
                if self.swap_parties {
                    out.c[2 * y1 + x1] = joint;
                } else {
                    out.c[2 * x1 + y1] = joint;
                }
            }
            if self.swap_parties {
                out.m[2 + x1] = a_val;
            } else {
                out.m[x1] = a_val;
            }
        }
        for y in 0..2 {
            let y1 = y ^ self.swap_inputs_bob as usize;
            let b_val = sign(self.flip_bob[y]) * p.bob(y).clone();
            if self.swap_parties {
                out.m[y1] = b_val;
            } else {
                out.m[2 + y1] = b_val;
            }
        }
        out
    }

    /// Transformed functional `β'` with `β'·(r·p) = β·p`.
    pub fn apply_to_functional<T: Scalar>(&self, f: &BellFunctional<T>) -> BellFunctional<T> {
        // Signed permutations are orthogonal, so β transforms like p.
        BellFunctional::new(self.apply_to_correlators(&f.beta), f.bound.clone())
    }
}

/// Permutes the sixteen probabilities as prescribed by `r`.
pub fn apply_relabeling<T: Scalar>(b: &Behavior<T>, r: &Relabeling) -> Result<Behavior<T>> {
    if !b.scenario().is_chsh() {
        return Err(crate::Error::UnsupportedScenario(b.scenario()));
    }
    let perm = r.event_permutation();
    let mut probs = vec![T::zero(); 16];
    for (i, p) in b.probs().iter().enumerate() {
        probs[perm[i]] = p.clone();
    }
    Ok(Behavior::from_raw(Scenario::CHSH, probs))
}

/// Lexicographically smallest image of `f` under the relabeling group.
pub fn canonical_functional<T: Exact>(f: &BellFunctional<T>) -> BellFunctional<T> {
    Relabeling::all()
        .iter()
        .map(|r| r.apply_to_functional(f))
        .min()
        .expect("group is non-empty")
}

/// Some relabeling mapping `from` onto `to`, by search over the group.
pub fn find_relabeling<T: Exact>(from: &BellFunctional<T>, to: &BellFunctional<T>) -> Option<Relabeling> {
    Relabeling::all()
        .into_iter()
        .find(|r| r.apply_to_functional(from) == *to)
}

/// Correlators of a deterministic behavior, if it is one of the sixteen.
pub fn strategy_of<T: Scalar>(b: &Behavior<T>) -> Option<DeterministicStrategy> {
    let p = to_correlators(b).ok()?;
    DeterministicStrategy::all()
        .into_iter()
        .find(|s| s.correlators::<T>() == p)
}
