//! Exact convex geometry: vertex and inequality representations, conversion
//! between them, and LP membership with checkable certificates.

pub mod dd;
pub mod linalg;
pub mod lp;

use crate::error::{Error, Result};
use crate::scalar::Exact;

use self::dd::cone_generators;
use self::linalg::{affine_rank, dot, reduce_against, rref};
use self::lp::{solve, LinearProgram, LpOutcome};

/// Convex hull of a finite point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope<T> {
    ambient_dim: usize,
    vertices: Vec<Vec<T>>,
}

impl<T: Exact> VPolytope<T> {
    /// Sorts the points lexicographically and drops duplicates.
    pub fn new(ambient_dim: usize, mut vertices: Vec<Vec<T>>) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: v.len(),
            });
        }
        vertices.sort();
        vertices.dedup();
        Ok(VPolytope { ambient_dim, vertices })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: &[T]) -> bool {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).is_ok()
    }

    pub fn affine_dimension(&self) -> usize {
        affine_dimension(self)
    }
}

/// `normal·x <= bound` (or `= bound` for equalities).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace<T> {
    pub normal: Vec<T>,
    pub bound: T,
}

impl<T: Exact> Halfspace<T> {
    pub fn new(normal: Vec<T>, bound: T) -> Self {
        Halfspace { normal, bound }
    }

    pub fn value(&self, x: &[T]) -> T {
        dot(&self.normal, x)
    }

    pub fn satisfied_by(&self, x: &[T]) -> bool {
        self.value(x) <= self.bound
    }

    pub fn is_tight_at(&self, x: &[T]) -> bool {
        self.value(x) == self.bound
    }

    /// Positive rescaling making the normal a primitive integer vector.
    pub fn canonical(&self) -> Self {
        let k = T::primitive_factor(&self.normal);
        Halfspace {
            normal: self.normal.iter().map(|x| x.clone() * k.clone()).collect(),
            bound: self.bound.clone() * k,
        }
    }

    /// Canonical form of an equality: primitive normal, first nonzero positive.
    fn canonical_equality(&self) -> Self {
        let mut h = self.canonical();
        if h.normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            h.normal.iter_mut().for_each(|x| *x = -x.clone());
            h.bound = -h.bound;
        }
        h
    }
}

/// Intersection of half-spaces inside an affine subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope<T> {
    ambient_dim: usize,
    inequalities: Vec<Halfspace<T>>,
    equalities: Vec<Halfspace<T>>,
}

impl<T: Exact> HPolytope<T> {
    /// Canonicalizes every row; order is preserved.
    pub fn new(ambient_dim: usize, inequalities: Vec<Halfspace<T>>, equalities: Vec<Halfspace<T>>) -> Result<Self> {
        if let Some(h) = inequalities
            .iter()
            .chain(&equalities)
            .find(|h| h.normal.len() != ambient_dim)
        {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: h.normal.len(),
            });
        }
        Ok(HPolytope {
            ambient_dim,
            inequalities: inequalities.iter().map(Halfspace::canonical).collect(),
            equalities: equalities.iter().map(Halfspace::canonical_equality).collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn inequalities(&self) -> &[Halfspace<T>] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Halfspace<T>] {
        &self.equalities
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.inequalities.iter().all(|h| h.satisfied_by(x)) && self.equalities.iter().all(|h| h.is_tight_at(x))
    }
}

/// Outcome of a membership query, carrying an exact certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult<T> {
    /// Convex weights, one per vertex of the polytope (in its order).
    Inside { weights: Vec<T> },
    /// `functional·v <= bound` on every vertex, `functional·point > bound`.
    Separated { functional: Vec<T>, bound: T },
}

impl<T: Exact> MembershipResult<T> {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipResult::Inside { .. })
    }

    /// Re-checks the certificate by direct substitution.
    pub fn verify(&self, point: &[T], polytope: &VPolytope<T>) -> bool {
        match self {
            MembershipResult::Inside { weights } => {
                if weights.len() != polytope.len() || weights.iter().any(|w| w.is_negative()) {
                    return false;
                }
                let total = weights.iter().fold(T::zero(), |s, w| s + w.clone());
                let combo = (0..polytope.ambient_dim).map(|i| {
                    weights
                        .iter()
                        .zip(&polytope.vertices)
                        .fold(T::zero(), |s, (w, v)| s + w.clone() * v[i].clone())
                });
                total.is_one() && combo.zip(point).all(|(c, p)| c == *p)
            }
            MembershipResult::Separated { functional, bound } => {
                functional.len() == polytope.ambient_dim
                    && polytope.vertices.iter().all(|v| dot(functional, v) <= *bound)
                    && dot(functional, point) > *bound
            }
        }
    }
}

/// Decides `point ∈ conv(vertices)` by linear programming.
///
/// Inside points get the convex weights maximizing the smallest weight.
/// Outside points get a Farkas certificate from the feasibility LP; when the
/// polytope is full-dimensional it is then sharpened to a facet-defining
/// hyperplane (the vertex of the polar that is most violated), which makes
/// certificates for symmetric inputs reproducible.
pub fn membership<T: Exact>(point: &[T], polytope: &VPolytope<T>) -> Result<MembershipResult<T>> {
    let d = polytope.ambient_dim;
    if point.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: point.len(),
        });
    }
    if polytope.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let k = polytope.len();
    let verts = &polytope.vertices;
    let column_rows = |extra: &dyn Fn(usize) -> T| -> Vec<Vec<T>> {
        let mut rows: Vec<Vec<T>> = (0..d).map(|i| verts.iter().map(|v| v[i].clone()).collect()).collect();
        rows.push((0..k).map(|_| T::one()).collect());
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(0, extra(i));
        }
        rows
    };
    let mut rhs: Vec<T> = point.to_vec();
    rhs.push(T::one());

    // Feasibility: λ >= 0, Σλ v = p, Σλ = 1.
    let feasibility = LinearProgram {
        a: column_rows(&|_| T::zero())
            .into_iter()
            .map(|mut r| {
                r.remove(0);
                r
            })
            .collect(),
        b: rhs.clone(),
        c: vec![T::zero(); k],
    };
    match solve(&feasibility) {
        LpOutcome::Infeasible { farkas } => {
            // y = (β, -β_c)
            let mut functional = farkas[..d].to_vec();
            let mut bound = -farkas[d].clone();
            if affine_rank(verts) == d {
                if let Some((f, b)) = sharpen_separation(point, polytope) {
                    functional = f;
                    bound = b;
                }
            }
            let mut joint = functional.clone();
            joint.push(bound);
            let joint = T::make_primitive(&joint);
            Ok(MembershipResult::Separated {
                functional: joint[..d].to_vec(),
                bound: joint[d].clone(),
            })
        }
        LpOutcome::Optimal { x, .. } => {
            // Balanced weights: λ_j = t + μ_j, maximize t.
            let sums: Vec<T> = (0..d)
                .map(|i| verts.iter().fold(T::zero(), |s, v| s + v[i].clone()))
                .chain(std::iter::once(T::from_int(k as i64)))
                .collect();
            let balanced = LinearProgram {
                a: column_rows(&|i| sums[i].clone()),
                b: rhs,
                c: std::iter::once(-T::one()).chain((0..k).map(|_| T::zero())).collect(),
            };
            let weights = match solve(&balanced) {
                LpOutcome::Optimal { x: y, .. } => y[1..].iter().map(|mu| mu.clone() + y[0].clone()).collect(),
                _ => x,
            };
            Ok(MembershipResult::Inside { weights })
        }
        LpOutcome::Unbounded => unreachable!("feasibility LP has zero objective"),
    }
}

/// Maximizes `β·(p - g)` subject to `β·(v - g) <= 1`, with `g` the vertex
/// centroid (interior for a full-dimensional polytope).
fn sharpen_separation<T: Exact>(point: &[T], polytope: &VPolytope<T>) -> Option<(Vec<T>, T)> {
    let d = polytope.ambient_dim;
    let k = polytope.len();
    let count = T::from_int(k as i64);
    let centroid: Vec<T> = (0..d)
        .map(|i| polytope.vertices.iter().fold(T::zero(), |s, v| s + v[i].clone()) / count.clone())
        .collect();
    let shifted = |v: &[T]| -> Vec<T> { v.iter().zip(&centroid).map(|(a, g)| a.clone() - g.clone()).collect() };
    // Variables: β⁺ (d), β⁻ (d), slack (k).
    let a = polytope
        .vertices
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let s = shifted(v);
            let mut row: Vec<T> = s.clone();
            row.extend(s.into_iter().map(|x| -x));
            row.extend((0..k).map(|i| if i == j { T::one() } else { T::zero() }));
            row
        })
        .collect();
    let target = shifted(point);
    let c = target
        .iter()
        .map(|x| -x.clone())
        .chain(target.iter().cloned())
        .chain((0..k).map(|_| T::zero()))
        .collect();
    let lp = LinearProgram {
        a,
        b: vec![T::one(); k],
        c,
    };
    let LpOutcome::Optimal { x, .. } = solve(&lp) else {
        return None;
    };
    let beta: Vec<T> = (0..d).map(|i| x[i].clone() - x[d + i].clone()).collect();
    let bound = T::one() + dot(&beta, &centroid);
    let ok = dot(&beta, point) > bound;
    ok.then_some((beta, bound))
}

/// Dimension of the affine hull.
pub fn affine_dimension<T: Exact>(polytope: &VPolytope<T>) -> usize {
    affine_rank(&polytope.vertices)
}

/// Irredundant inequality description of `conv(vertices)` relative to its
/// affine hull, in canonical form and lexicographic order.
pub fn facet_enumeration<T: Exact>(polytope: &VPolytope<T>) -> Result<HPolytope<T>> {
    let d = polytope.ambient_dim;
    if polytope.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    // w = (a, b) encodes a·x <= b; validity on v is b - a·v >= 0.
    let rows: Vec<Vec<T>> = polytope
        .vertices
        .iter()
        .map(|v| v.iter().map(|x| -x.clone()).chain(std::iter::once(T::one())).collect())
        .collect();
    let gens = cone_generators(d + 1, &rows, &[]);

    let mut eq_basis = gens.lineality;
    let pivots = rref(&mut eq_basis);
    let equalities: Vec<Halfspace<T>> = eq_basis
        .iter()
        .map(|w| Halfspace::new(w[..d].to_vec(), w[d].clone()).canonical_equality())
        .collect();

    let mut facets: Vec<Halfspace<T>> = gens
        .rays
        .into_iter()
        .filter_map(|mut w| {
            reduce_against(&mut w, &eq_basis, &pivots);
            let h = Halfspace::new(w[..d].to_vec(), w[d].clone());
            (!h.normal.iter().all(|x| x.is_zero())).then(|| h.canonical())
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(HPolytope {
        ambient_dim: d,
        inequalities: facets,
        equalities,
    })
}

/// Vertices of a bounded, nonempty H-polytope.
///
/// Fails with [`Error::Unbounded`] carrying a recession ray, or
/// [`Error::Infeasible`].
pub fn vertex_enumeration<T: Exact>(h: &HPolytope<T>) -> Result<VPolytope<T>> {
    let (vertices, recession) = homogenized_generators(h);
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    if let Some(ray) = recession.first() {
        return Err(Error::Unbounded {
            ray: ray.iter().map(ToString::to_string).collect(),
        });
    }
    VPolytope::new(h.ambient_dim, vertices)
}

/// Recession directions of an H-polytope (empty iff bounded, for nonempty
/// input). Each returned `r` satisfies `normal·r <= 0` for every inequality
/// and `normal·r = 0` for every equality.
pub fn recession_rays<T: Exact>(h: &HPolytope<T>) -> Vec<Vec<T>> {
    homogenized_generators(h).1
}

fn homogenized_generators<T: Exact>(h: &HPolytope<T>) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
    let d = h.ambient_dim;
    // y = (t, x): b t - a·x >= 0, t >= 0, c t - e·x = 0.
    let row = |hs: &Halfspace<T>| -> Vec<T> {
        std::iter::once(hs.bound.clone())
            .chain(hs.normal.iter().map(|x| -x.clone()))
            .collect()
    };
    let mut ineqs: Vec<Vec<T>> = h.inequalities.iter().map(row).collect();
    ineqs.push((0..=d).map(|i| if i == 0 { T::one() } else { T::zero() }).collect());
    let eqs: Vec<Vec<T>> = h.equalities.iter().map(row).collect();
    let gens = cone_generators(d + 1, &ineqs, &eqs);

    let mut vertices = Vec::new();
    let mut recession: Vec<Vec<T>> = gens.lineality.iter().map(|l| l[1..].to_vec()).collect();
    for r in gens.rays {
        if r[0].is_zero() {
            recession.push(r[1..].to_vec());
        } else {
            let t = r[0].clone();
            vertices.push(r[1..].iter().map(|x| x.clone() / t.clone()).collect());
        }
    }
    (vertices, recession)
}
