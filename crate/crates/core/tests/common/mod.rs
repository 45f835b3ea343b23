//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the library's geometry code.

#![allow(dead_code)]

use bellpoly::quantum::{ComplexMatrix, QuantumModel, QubitObservable, Settings};
use bellpoly::{Rational, Scalar};
use num_complex::Complex;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Correlation-space coordinates `(A0, A1, B0, B1, A0B0, A0B1, A1B0, A1B1)`
/// of the deterministic strategy with outcome signs `(a0, a1, b0, b1)`.
pub fn deterministic_point(a: [i64; 2], b: [i64; 2]) -> Vec<Rational> {
    vec![
        a[0],
        a[1],
        b[0],
        b[1],
        a[0] * b[0],
        a[0] * b[1],
        a[1] * b[0],
        a[1] * b[1],
    ]
    .into_iter()
    .map(r)
    .collect()
}

/// All sixteen, enumerated directly from sign choices.
pub fn deterministic_points() -> Vec<Vec<Rational>> {
    let signs = [1, -1];
    let mut out = Vec::new();
    for a0 in signs {
        for a1 in signs {
            for b0 in signs {
                for b1 in signs {
                    out.push(deterministic_point([a0, a1], [b0, b1]));
                }
            }
        }
    }
    out
}

/// Row echelon rank by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for k in c..cols {
                    let t = &f * &m[rank][k];
                    m[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Unique solution of the square system `A x = b`, if nonsingular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut row = row.clone();
            row.push(v.clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for k in c..=n {
            m[c][k] = &m[c][k] / &pivot;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(r(0), |s, (x, y)| s + x * y)
}

/// Reduced row echelon form and pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    for c in 0..cols {
        let row = pivots.len();
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pv = m[row][c].clone();
        for k in 0..cols {
            m[row][k] = &m[row][k] / &pv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &f * &m[row][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
    }
    m.truncate(pivots.len());
    (m, pivots)
}

/// Normal `(a, b)` of the hyperplane `a·x = b` through `points` (affine
/// rank `d - 1` in dimension `d`), as coprime integers with the first
/// nonzero entry positive: the one-dimensional kernel of rows `[p, -1]`.
pub fn hyperplane_through(points: &[Vec<Rational>]) -> Option<(Vec<Rational>, Rational)> {
    let d = points[0].len();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(r(-1));
            row
        })
        .collect();
    let (m, pivots) = rref(&rows);
    if pivots.len() != d {
        return None;
    }
    let free = (0..=d).find(|c| !pivots.contains(c))?;
    let mut w = vec![r(0); d + 1];
    w[free] = r(1);
    for (i, &pc) in pivots.iter().enumerate() {
        w[pc] = -m[i][free].clone();
    }
    Some(normalize(w))
}

fn normalize(w: Vec<Rational>) -> (Vec<Rational>, Rational) {
    use num_integer::Integer;
    let lcm = w.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = w
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |g, x| g.gcd(x));
    let first_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let sign = if first_negative { -1 } else { 1 };
    let scaled: Vec<Rational> = ints.iter().map(|x| Rational::from_integer(x / &g) * r(sign)).collect();
    let (a, b) = scaled.split_at(scaled.len() - 1);
    (a.to_vec(), b[0].clone())
}

/// Facets of `conv(points)` (full-dimensional) by brute force over all
/// `dim`-subsets: keep hyperplanes through affinely independent subsets
/// that have every point on one side. Oriented as `a·x <= b`.
pub fn brute_force_facets(points: &[Vec<Rational>]) -> Vec<(Vec<Rational>, Rational)> {
    let d = points[0].len();
    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let n = points.len();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let subset: Vec<Vec<Rational>> = idx.iter().map(|&i| points[i].clone()).collect();
        if affine_rank(&subset) == d - 1 {
            if let Some((a, b)) = hyperplane_through(&subset) {
                let vals: Vec<Rational> = points.iter().map(|p| dot(&a, p) - &b).collect();
                let le = vals.iter().all(|v| !v.is_positive());
                let ge = vals.iter().all(|v| !v.is_negative());
                let oriented = if le {
                    Some((a, b))
                } else if ge {
                    Some((a.iter().map(|x| -x).collect(), -b))
                } else {
                    None
                };
                if let Some(f) = oriented {
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Random point of `{1,...,denominator}`-grid weights normalized to one.
pub fn random_weights(rng: &mut impl Rng, n: usize, max: i64) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    let total: i64 = raw.iter().sum::<i64>().max(1);
    if raw.iter().all(|&x| x == 0) {
        let mut w = vec![r(0); n];
        w[rng.gen_range(0..n)] = r(1);
        return w;
    }
    raw.into_iter().map(|x| q(x, total)).collect()
}

pub fn random_unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

pub fn random_observable(rng: &mut impl Rng) -> QubitObservable<f64> {
    QubitObservable::from_direction(random_unit_vector(rng)).unwrap()
}

pub fn random_settings(rng: &mut impl Rng) -> Settings<f64> {
    Settings {
        alice: [random_observable(rng), random_observable(rng)],
        bob: [random_observable(rng), random_observable(rng)],
    }
}

/// `G G† / Tr(G G†)` for a random complex `4×k` matrix `G`; rank `k`.
pub fn random_state(rng: &mut impl Rng, k: usize) -> ComplexMatrix<f64> {
    let mut rho = ComplexMatrix::zeros(4);
    for _ in 0..k {
        let v: Vec<Complex<f64>> = (0..4)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        rho = &rho + &ComplexMatrix::outer(&v);
    }
    let tr = rho.trace().re;
    let rho = rho.scale(1.0 / tr);
    // Enforce exact Hermiticity after rounding.
    (&rho + &rho.adjoint()).scale(0.5)
}

pub fn random_model(rng: &mut impl Rng) -> QuantumModel<f64> {
    let k = rng.gen_range(1..=4);
    QuantumModel::new(random_state(rng, k), random_settings(rng)).unwrap()
}

/// Small perturbation of the maximally entangled state with optimal CHSH
/// settings, to probe the Tsirelson ceiling from close by.
pub fn near_optimal_model(rng: &mut impl Rng, noise: f64) -> QuantumModel<f64> {
    let p = rng.gen_range(0.0..noise);
    let rho = &bellpoly::quantum::phi_plus::<f64>().scale(1.0 - p) + &random_state(rng, 2).scale(p);
    let rho = (&rho + &rho.adjoint()).scale(0.5);
    let base = Settings::<f64>::tsirelson();
    let jitter = |o: &QubitObservable<f64>, rng: &mut dyn rand::RngCore| {
        let n = o.bloch();
        let d: [f64; 3] = std::array::from_fn(|i| n[i] + rng.gen_range(-noise..noise));
        QubitObservable::from_direction(d).unwrap()
    };
    let settings = Settings {
        alice: [jitter(&base.alice[0], rng), jitter(&base.alice[1], rng)],
        bob: [jitter(&base.bob[0], rng), jitter(&base.bob[1], rng)],
    };
    QuantumModel::new(rho, settings).unwrap()
}
