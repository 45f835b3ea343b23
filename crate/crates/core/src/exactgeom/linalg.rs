//! Small dense exact linear algebra.

use crate::scalar::Exact;

pub fn dot<T: Exact>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

/// In-place reduced row echelon form; returns pivot columns. Zero rows are
/// removed.
pub fn rref<T: Exact>(rows: &mut Vec<Vec<T>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let delta = f.clone() * rows[r][j].clone();
                    rows[i][j] = rows[i][j].clone() - delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<T: Exact>(rows: &[Vec<T>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Rank of the rows selected by `idx`.
pub fn rank_of<T: Exact>(rows: &[Vec<T>], idx: impl Iterator<Item = usize>) -> usize {
    let mut m: Vec<Vec<T>> = idx.map(|i| rows[i].clone()).collect();
    rref(&mut m).len()
}

/// Rank of `{v_i - v_0}`.
pub fn affine_rank<T: Exact>(points: &[Vec<T>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    rank(&diffs)
}

/// Subtracts multiples of the RREF rows so that `v` vanishes on their pivots.
pub fn reduce_against<T: Exact>(v: &mut [T], rref_rows: &[Vec<T>], pivots: &[usize]) {
    for (row, &p) in rref_rows.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * r.clone();
            }
        }
    }
}
