//! Recomputes the published numeric claims about the (2,2) polytopes and
//! records where the computation agrees with the stated value.
//!
//! `status` compares against the published value; `consistent` is about the
//! computation itself (independent routes to the same quantity agree) and
//! does not depend on the published numbers.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::exactgeom::{affine_dimension, VPolytope};
use crate::fourier::{deterministic_e, hs_inner, label_tuples, SignFunctional};
use crate::localset::{
    canonical_functional, chsh_facet, chsh_facets, chsh_normal, chsh_value, correlation_vertex, facet_vertex_count,
    find_relabeling, local_facets, local_polytope, BellFunctional, DeterministicStrategy, FacetLabel,
};
use crate::nosignaling::{classify, ns_vertices, pr_boxes, tesseract_check, VertexClass};
use crate::scalar::Scalar;
use crate::scenario::CorrelatorPoint;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Deviation,
    /// No published value to compare against.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub paper: Value,
    pub computed: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimRecord {
    fn new(claim: &str, paper: Value, computed: Value, note: Option<&str>) -> Self {
        let status = if paper.is_null() {
            Status::Info
        } else if paper == computed {
            Status::Pass
        } else {
            Status::Deviation
        };
        ClaimRecord {
            claim: claim.to_string(),
            paper,
            computed,
            status,
            note: note.map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub records: Vec<ClaimRecord>,
    pub consistent: bool,
    /// Cross-checks that failed; empty when `consistent`.
    pub inconsistencies: Vec<String>,
}

fn rational_value(r: &Rational) -> Value {
    match r.to_integer().to_i64() {
        Some(n) if r.is_integer() => json!(n),
        _ => json!(r.to_string()),
    }
}

fn vector_string(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// The `f_{01}` normal as printed, which coincides with a local vertex.
const PRINTED_F01: [i64; 4] = [1, -1, -1, 1];

pub fn check_claims() -> Result<ClaimReport> {
    let mut records = Vec::new();
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };

    let local = local_polytope();
    records.push(ClaimRecord::new(
        "local_vertex_count",
        json!(16),
        json!(local.len()),
        None,
    ));
    check(
        DeterministicStrategy::all().len() == local.len(),
        "deterministic strategies are distinct",
    );

    let ns = ns_vertices()?;
    let local_dim = local.affine_dimension();
    let ns_dim = affine_dimension(&ns);
    records.push(ClaimRecord::new("local_dimension", json!(8), json!(local_dim), None));
    records.push(ClaimRecord::new("ns_dimension", json!(8), json!(ns_dim), None));
    check(
        local_dim == crate::Scenario::CHSH.ns_dimension(),
        "local dimension equals the NS parameter count",
    );

    let facets = local_facets()?;
    records.push(ClaimRecord::new(
        "local_facet_count",
        Value::Null,
        json!(facets.hrep.inequalities().len()),
        Some("not stated; 8 CHSH-type plus 16 positivity"),
    ));
    records.push(ClaimRecord::new(
        "tight_bell_inequalities",
        json!(8),
        json!(facets.chsh.len()),
        None,
    ));
    let analytic: Vec<BellFunctional<Rational>> = chsh_facets().into_iter().map(|(_, f)| f).collect();
    check(
        facets.chsh.len() == analytic.len() && analytic.iter().all(|f| facets.chsh.contains(f)),
        "enumerated zero-marginal facets equal the analytic CHSH family",
    );

    let reference = crate::localset::chsh_functional::<Rational>();
    let orbits: BTreeSet<BellFunctional<Rational>> = facets.chsh.iter().map(canonical_functional).collect();
    let orbits = orbits.len();
    check(
        facets.chsh.iter().all(|f| find_relabeling(f, &reference).is_some()),
        "every CHSH-type facet is a relabeling of the CHSH functional",
    );
    records.push(ClaimRecord::new("chsh_orbits", json!(1), json!(orbits), None));

    let counts: Vec<usize> = facets.chsh.iter().map(|f| facet_vertex_count(f).count).collect();
    let count = if counts.iter().all(|&c| c == counts[0]) {
        json!(counts[0])
    } else {
        json!(counts)
    };
    records.push(ClaimRecord::new(
        "facet_vertex_count",
        json!(6),
        count,
        Some("besides the six with (rA,rB) != (i,j), the two vertices of the opposite tetrahedron also saturate"),
    ));
    for f in &facets.chsh {
        let fv = facet_vertex_count(f);
        let pts: Vec<Vec<Rational>> = fv.points.iter().map(CorrelatorPoint::to_vec).collect();
        let dim = VPolytope::new(8, pts).map(|p| p.affine_dimension()).unwrap_or(0);
        let tight = facets
            .hrep
            .inequalities()
            .iter()
            .find(|h| h.normal == f.to_halfspace().normal)
            .map(|h| local.vertices().iter().filter(|v| h.is_tight_at(v)).count());
        check(dim == 7, "CHSH facet vertices span dimension 7");
        check(
            tight == Some(fv.count),
            "brute-force facet vertex count matches the H-description",
        );
    }

    let f01 = chsh_normal(FacetLabel { i: 0, j: 1, s: 1 });
    records.push(ClaimRecord::new(
        "f01_normal",
        json!(vector_string(&PRINTED_F01)),
        json!(vector_string(&f01)),
        Some("the printed vector has sign product +1, so it is a local correlation vertex, not a facet normal"),
    ));
    check(
        facets.chsh.contains(&chsh_facet(FacetLabel { i: 0, j: 1, s: 1 })),
        "corrected f01 normal is an enumerated facet",
    );

    let mut off_label = BTreeSet::new();
    for label in FacetLabel::all() {
        let f = chsh_facet::<Rational>(label);
        for (ra, rb) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let c = correlation_vertex(label.sign(), ra, rb).map(Rational::from_int);
            let value = f.evaluate(&CorrelatorPoint::new([0; 4].map(Rational::from_int), c));
            if (ra, rb) == (label.i, label.j) {
                check(value == Rational::from_int(-2), "the labelled vertex attains -2");
            } else {
                off_label.insert(value);
            }
        }
    }
    let off_label: Vec<Value> = off_label.iter().map(rational_value).collect();
    let computed = if off_label.len() == 1 {
        off_label[0].clone()
    } else {
        json!(off_label)
    };
    records.push(ClaimRecord::new("saturation_off_label", json!(2), computed, None));

    let nonlocal = ns.vertices().iter().filter(|v| {
        let p = CorrelatorPoint::from_slice(v).expect("8 coordinates");
        classify(&p) == VertexClass::Pr
    });
    let nonlocal_count = nonlocal.count();
    records.push(ClaimRecord::new(
        "ns_nonlocal_vertices",
        json!(8),
        json!(nonlocal_count),
        None,
    ));
    records.push(ClaimRecord::new("ns_vertex_count", Value::Null, json!(ns.len()), None));
    let analytic_pr: Vec<Vec<Rational>> = pr_boxes().iter().map(|b| b.correlators().to_vec()).collect();
    check(
        analytic_pr.iter().all(|p| ns.contains_vertex(p)),
        "analytic PR boxes are NS vertices",
    );
    check(
        local.vertices().iter().all(|v| ns.contains_vertex(v)),
        "deterministic behaviors are NS vertices",
    );

    let tesseract = tesseract_check();
    records.push(ClaimRecord::new("tesseract", json!(true), json!(tesseract.holds), None));

    let local_max = DeterministicStrategy::all()
        .iter()
        .map(|s| chsh_value(&s.correlators::<Rational>()))
        .max()
        .expect("16 strategies");
    records.push(ClaimRecord::new(
        "local_chsh_bound",
        json!(2),
        rational_value(&local_max),
        None,
    ));

    let fourier_max = label_tuples()
        .into_iter()
        .flat_map(|l| {
            SignFunctional::all().map(move |q| {
                let e = deterministic_e::<Rational>(l).expect("labels in range");
                hs_inner(&e, &q)
            })
        })
        .max()
        .expect("64 pairs");
    records.push(ClaimRecord::new(
        "fourier_bound",
        json!(4),
        rational_value(&fourier_max),
        None,
    ));

    Ok(ClaimReport {
        records,
        consistent: bad.is_empty(),
        inconsistencies: bad,
    })
}
