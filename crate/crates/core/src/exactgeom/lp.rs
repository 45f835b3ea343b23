//! Dense two-phase simplex over an exact field with Bland's rule.
//!
//! Solves `min c·x` subject to `A x = b`, `x >= 0`. Phase one adds one
//! artificial column per row; when its optimum is positive the dual of the
//! phase-one problem is returned as a Farkas certificate `y` with
//! `yᵀA <= 0` and `yᵀb > 0`.

use crate::scalar::Exact;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible { farkas: Vec<T> },
    Unbounded,
}

pub struct LinearProgram<T> {
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

struct Tableau<T> {
    /// Rows of `[B⁻¹A | B⁻¹ (artificial block) | B⁻¹b]`.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl<T: Exact> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.n + self.m]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = T::one() / self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        self.basis[r] = col;
    }

    /// Reduced costs `c_j - c_B·column_j` for every column.
    fn reduced_costs(&self, cost: &[T]) -> Vec<T> {
        (0..self.n + self.m)
            .map(|j| {
                self.rows
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |s, (row, &bi)| s - cost[bi].clone() * row[j].clone())
            })
            .collect()
    }

    /// Runs simplex iterations; `allowed` filters entering columns.
    /// Returns `false` on unboundedness.
    fn optimize(&mut self, cost: &[T], allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            // Bland: lowest-index improving column.
            let Some(enter) = (0..self.n + self.m).find(|&j| allowed(j) && rc[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if a.is_positive() {
                    let ratio = self.rhs(i).clone() / a.clone();
                    let better = match &leave {
                        None => true,
                        Some((li, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub fn solve<T: Exact>(lp: &LinearProgram<T>) -> LpOutcome<T> {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));
    debug_assert_eq!(lp.b.len(), m);

    let signs: Vec<T> =
        lp.b.iter()
            .map(|b| if b.is_negative() { -T::one() } else { T::one() })
            .collect();
    let rows = (0..m)
        .map(|i| {
            let mut row: Vec<T> = lp.a[i].iter().map(|v| v.clone() * signs[i].clone()).collect();
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(lp.b[i].clone() * signs[i].clone());
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        n,
        m,
    };

    // Phase one: minimize the sum of artificials.
    let phase1: Vec<T> = (0..n + m).map(|j| if j < n { T::zero() } else { T::one() }).collect();
    t.optimize(&phase1, |_| true);
    let infeasibility = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &bi)| bi >= n)
        .fold(T::zero(), |s, (row, _)| s + row[n + m].clone());
    if infeasibility.is_positive() {
        let rc = t.reduced_costs(&phase1);
        // Artificial column i has reduced cost 1 - y_i.
        let farkas = (0..m)
            .map(|i| (T::one() - rc[n + i].clone()) * signs[i].clone())
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut phase2: Vec<T> = lp.c.clone();
    phase2.extend((0..m).map(|_| T::zero()));
    if !t.optimize(&phase2, |j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![T::zero(); n];
    for (row, &bi) in t.rows.iter().zip(&t.basis) {
        x[bi] = row[n + m].clone();
    }
    let value = x
        .iter()
        .zip(&lp.c)
        .fold(T::zero(), |s, (xi, ci)| s + xi.clone() * ci.clone());
    LpOutcome::Optimal { x, value }
}
