//! Double description method for polyhedral cones.
//!
//! Computes generators of `{y : A y >= 0, E y = 0}` as a lineality basis
//! plus extreme rays (modulo lineality). Lineality is eliminated constraint
//! by constraint; once a constraint is orthogonal to the remaining lineality
//! the classic Motzkin step runs, combining adjacent ray pairs. Adjacency is
//! decided by the algebraic rank test on the constraints tight at both rays.

use crate::exactgeom::linalg::{dot, rank_of};
use crate::scalar::Exact;

#[derive(Debug, Clone)]
pub struct ConeGenerators<T> {
    pub lineality: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

struct Cone<T> {
    dim: usize,
    lineality: Vec<Vec<T>>,
    rays: Vec<Vec<T>>,
    /// Processed constraint rows; `ker(rows)` is spanned by `lineality`.
    rows: Vec<Vec<T>>,
}

fn axpy<T: Exact>(target: &mut [T], factor: &T, v: &[T]) {
    for (t, x) in target.iter_mut().zip(v) {
        *t = t.clone() + factor.clone() * x.clone();
    }
}

impl<T: Exact> Cone<T> {
    fn whole_space(dim: usize) -> Self {
        let lineality = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        Cone {
            dim,
            lineality,
            rays: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Removes one lineality direction not orthogonal to `a` and projects the
    /// other generators onto `a·y = 0`. Returns that direction, oriented so
    /// that `a·l > 0`, or `None` if `a` is orthogonal to the lineality.
    fn split_lineality(&mut self, a: &[T]) -> Option<Vec<T>> {
        let pos = self.lineality.iter().position(|l| !dot(a, l).is_zero())?;
        let mut l0 = self.lineality.remove(pos);
        let mut s0 = dot(a, &l0);
        if s0.is_negative() {
            l0.iter_mut().for_each(|x| *x = -x.clone());
            s0 = -s0;
        }
        for g in self.lineality.iter_mut().chain(self.rays.iter_mut()) {
            let s = dot(a, g);
            if !s.is_zero() {
                axpy(g, &(-(s / s0.clone())), &l0);
                *g = T::make_primitive(g);
            }
        }
        Some(T::make_primitive(&l0))
    }

    /// New rays from adjacent pairs `(p, n)` with `a·p > 0 > a·n`.
    fn combine(&self, a: &[T], plus: &[usize], minus: &[usize], values: &[T]) -> Vec<Vec<T>> {
        let target = self.dim - self.lineality.len();
        let zero_sets: Vec<Vec<bool>> = self
            .rays
            .iter()
            .map(|r| self.rows.iter().map(|row| dot(row, r).is_zero()).collect())
            .collect();
        let mut out = Vec::new();
        for &p in plus {
            for &n in minus {
                let common: Vec<usize> = (0..self.rows.len())
                    .filter(|&k| zero_sets[p][k] && zero_sets[n][k])
                    .collect();
                if target < 2 || common.len() + 2 < target {
                    continue;
                }
                if rank_of(&self.rows, common.iter().copied()) != target - 2 {
                    continue;
                }
                // (a·p) n - (a·n) p
                let mut r: Vec<T> = self.rays[n].iter().map(|x| x.clone() * values[p].clone()).collect();
                axpy(&mut r, &(-values[n].clone()), &self.rays[p]);
                debug_assert!(dot(a, &r).is_zero());
                out.push(T::make_primitive(&r));
            }
        }
        out
    }

    fn partition(&self, a: &[T]) -> (Vec<T>, Vec<usize>, Vec<usize>, Vec<usize>) {
        let values: Vec<T> = self.rays.iter().map(|r| dot(a, r)).collect();
        let (mut plus, mut zero, mut minus) = (Vec::new(), Vec::new(), Vec::new());
        for (i, v) in values.iter().enumerate() {
            if v.is_positive() {
                plus.push(i);
            } else if v.is_negative() {
                minus.push(i);
            } else {
                zero.push(i);
            }
        }
        (values, plus, zero, minus)
    }

    fn add_inequality(&mut self, a: &[T]) {
        if let Some(l0) = self.split_lineality(a) {
            self.rays.push(l0);
        } else {
            let (values, plus, zero, minus) = self.partition(a);
            if !minus.is_empty() {
                let created = self.combine(a, &plus, &minus, &values);
                let mut kept: Vec<Vec<T>> = plus.iter().chain(zero.iter()).map(|&i| self.rays[i].clone()).collect();
                kept.extend(created);
                self.rays = kept;
            }
        }
        self.rows.push(a.to_vec());
    }

    fn add_equality(&mut self, a: &[T]) {
        if self.split_lineality(a).is_none() {
            let (values, plus, zero, minus) = self.partition(a);
            let created = self.combine(a, &plus, &minus, &values);
            let mut kept: Vec<Vec<T>> = zero.iter().map(|&i| self.rays[i].clone()).collect();
            kept.extend(created);
            self.rays = kept;
        }
        self.rows.push(a.to_vec());
    }
}

/// Generators of `{y ∈ T^dim : ineqs·y >= 0, eqs·y = 0}`.
///
/// Equalities are processed first. Inequalities are then inserted one at a
/// time, always picking the pending row with the fewest current rays on its
/// hyperplane (ties by input order).
pub fn cone_generators<T: Exact>(dim: usize, ineqs: &[Vec<T>], eqs: &[Vec<T>]) -> ConeGenerators<T> {
    let mut cone = Cone::whole_space(dim);
    for e in eqs {
        cone.add_equality(e);
    }
    let mut pending: Vec<usize> = (0..ineqs.len()).collect();
    while !pending.is_empty() {
        let (slot, _) = pending
            .iter()
            .enumerate()
            .map(|(slot, &k)| {
                let tight = cone.rays.iter().filter(|r| dot(&ineqs[k], r).is_zero()).count();
                (slot, tight)
            })
            .min_by_key(|&(slot, tight)| (tight, slot))
            .expect("pending is non-empty");
        let k = pending.remove(slot);
        cone.add_inequality(&ineqs[k]);
    }
    ConeGenerators {
        lineality: cone.lineality,
        rays: cone.rays,
    }
}
