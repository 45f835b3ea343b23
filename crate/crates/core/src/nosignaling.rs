//! The no-signaling polytope of the (2,2) scenario and its PR boxes.
//!
//! In `(m, c)` coordinates the normalization and no-signaling constraints
//! are built in, so positivity of the sixteen reconstructed probabilities is
//! the only inequality family.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::Result;
use crate::exactgeom::{vertex_enumeration, HPolytope, VPolytope};
use crate::localset::{chsh_normal, correlation_vertex, positivity_functionals, FacetLabel, Sign};
use crate::scalar::Scalar;
use crate::scenario::{from_correlators, Behavior, CorrelatorPoint};
use crate::Rational;

#[derive(Debug, Clone)]
pub struct NsPolytope {
    pub hrep: HPolytope<Rational>,
}

/// Sixteen inequalities `p(ab|xy) >= 0`, in table index order.
pub fn ns_hrep() -> NsPolytope {
    let ineqs = positivity_functionals::<Rational>()
        .iter()
        .map(|f| f.to_halfspace())
        .collect();
    NsPolytope {
        hrep: HPolytope::new(8, ineqs, vec![]).expect("8-dimensional rows"),
    }
}

/// A Popescu–Rohrlich box: zero marginals, correlations `f^s_{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrBox {
    pub label: FacetLabel,
    pub behavior: Behavior<Rational>,
}

impl PrBox {
    pub fn correlators(&self) -> CorrelatorPoint<Rational> {
        pr_correlators(self.label)
    }
}

pub fn pr_correlators<T: Scalar>(label: FacetLabel) -> CorrelatorPoint<T> {
    CorrelatorPoint::new([0; 4].map(T::from_int), chsh_normal(label).map(T::from_int))
}

/// The eight PR boxes, built analytically from the CHSH facet normals.
pub fn pr_boxes() -> Vec<PrBox> {
    FacetLabel::all()
        .into_iter()
        .map(|label| PrBox {
            label,
            behavior: from_correlators(&pr_correlators(label)).expect("PR box is a behavior"),
        })
        .collect()
}

/// Vertex enumeration of [`ns_hrep`].
pub fn ns_vertices() -> Result<VPolytope<Rational>> {
    vertex_enumeration(&ns_hrep().hrep)
}

/// Which family an NS vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    Local,
    Pr,
}

impl VertexClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexClass::Local => "local",
            VertexClass::Pr => "pr",
        }
    }
}

/// Deterministic vertices have unit marginals; PR boxes have zero marginals.
pub fn classify(p: &CorrelatorPoint<Rational>) -> VertexClass {
    if p.m.iter().all(|x| x.is_zero()) {
        VertexClass::Pr
    } else {
        VertexClass::Local
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TesseractReport {
    pub holds: bool,
    /// Sign vectors of `{±1}^4` not covered.
    pub missing: Vec<[i64; 4]>,
    /// Points that are not sign vectors, or repeated.
    pub unexpected: Vec<[i64; 4]>,
}

/// Checks that the given correlation vectors are exactly the sixteen
/// vertices of `[-1, 1]^4`.
pub fn tesseract_check_points(points: &[[i64; 4]]) -> TesseractReport {
    let mut seen = BTreeSet::new();
    let mut unexpected = Vec::new();
    for p in points {
        if p.iter().any(|v| v.abs() != 1) || !seen.insert(*p) {
            unexpected.push(*p);
        }
    }
    let missing: Vec<[i64; 4]> = (0..16)
        .map(|k| std::array::from_fn(|i| if (k >> (3 - i)) & 1 == 0 { 1 } else { -1 }))
        .filter(|v| !seen.contains(v))
        .collect();
    TesseractReport {
        holds: missing.is_empty() && unexpected.is_empty(),
        missing,
        unexpected,
    }
}

/// The eight local correlation vertices (both tetrahedra) together with the
/// eight PR correlation vectors.
pub fn tesseract_points() -> Vec<[i64; 4]> {
    let mut pts: Vec<[i64; 4]> = Sign::both()
        .iter()
        .flat_map(|&s| [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(ra, rb)| correlation_vertex(s, ra, rb)))
        .collect();
    pts.extend(FacetLabel::all().into_iter().map(chsh_normal));
    pts
}

pub fn tesseract_check() -> TesseractReport {
    tesseract_check_points(&tesseract_points())
}
