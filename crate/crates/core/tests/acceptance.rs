//! Acceptance criteria. Runs as a plain binary (`harness = false`) so every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use bellpoly::claims::{check_claims, Status};
use bellpoly::cli::{run, VerticesDoc};
use bellpoly::exactgeom::{affine_dimension, membership, MembershipResult, VPolytope};
use bellpoly::fourier::{hs_inner, label_tuples, mix_e, DeterministicWeights, SignFunctional};
use bellpoly::localset::{
    chsh_facet, chsh_functional, chsh_value, correlation_vertex, facet_vertex_count, find_relabeling, local_facets,
    local_polytope, FacetLabel,
};
use bellpoly::nosignaling::{ns_vertices, pr_boxes, tesseract_check, tesseract_points};
use bellpoly::quantum::{
    behavior_from_quantum, maximize_chsh, maximize_sign_functional, witness, witness_value, SeesawOptions,
};
use bellpoly::scenario::to_correlators;
use bellpoly::{CorrelatorPoint, Rational, Scalar};
use common::*;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_vertex_count() -> Check {
    let out = run(["bellpoly", "vertices"]);
    ensure(out.code == 0, format!("exit code {}", out.code))?;
    let doc: VerticesDoc = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    ensure(doc.vertices.len() == 16, format!("{} vertices", doc.vertices.len()))?;
    let mut by_c: BTreeMap<[Rational; 4], Vec<[Rational; 4]>> = BTreeMap::new();
    for v in &doc.vertices {
        let b = v.to_behavior::<Rational>().map_err(|e| e.to_string())?;
        let p = to_correlators(&b).map_err(|e| e.to_string())?;
        by_c.entry(p.c.clone()).or_default().push(p.m.clone());
    }
    ensure(by_c.len() == 8, format!("{} distinct correlation vectors", by_c.len()))?;
    for ms in by_c.values() {
        let negated = ms[0].clone().map(|x| -x);
        ensure(
            ms.len() == 2 && ms[1] == negated,
            "pair does not differ by a global sign",
        )?;
    }
    Ok("16 vertices in 8 ± pairs sharing c".into())
}

fn c2_dimension() -> Check {
    let local = local_polytope().affine_dimension();
    let ns = affine_dimension(&ns_vertices().map_err(|e| e.to_string())?);
    ensure(local == 8 && ns == 8, format!("local {local}, ns {ns}"))?;
    Ok("local 8, ns 8".into())
}

fn c3_facets() -> Check {
    let lf = local_facets().map_err(|e| e.to_string())?;
    let total = lf.hrep.inequalities().len();
    ensure(total == 24, format!("{total} facets"))?;
    ensure(lf.chsh.len() == 8, format!("{} zero-marginal facets", lf.chsh.len()))?;
    let reference = chsh_functional::<Rational>();
    for f in &lf.chsh {
        let r = find_relabeling(f, &reference).ok_or("facet not a relabeled CHSH")?;
        ensure(r.apply_to_functional(f) == reference, "relabeling check failed")?;
    }
    Ok("24 facets, 8 CHSH-type, all relabelings of CHSH".into())
}

fn c4_ns_vertices() -> Check {
    let ns: BTreeSet<Vec<Rational>> = ns_vertices()
        .map_err(|e| e.to_string())?
        .vertices()
        .iter()
        .cloned()
        .collect();
    let mut expected: BTreeSet<Vec<Rational>> = deterministic_points().into_iter().collect();
    expected.extend(pr_boxes().iter().map(|b| b.correlators().to_vec()));
    ensure(expected.len() == 24, "analytic set is not 24 points")?;
    ensure(
        ns == expected,
        format!("{} enumerated vertices differ from 16 + 8", ns.len()),
    )?;
    Ok("24 = 16 deterministic + 8 PR".into())
}

fn c5_saturation() -> Check {
    for label in FacetLabel::all() {
        let f = chsh_facet::<Rational>(label);
        for (ra, rb) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            if (ra, rb) == (label.i, label.j) {
                continue;
            }
            let c = correlation_vertex(label.sign(), ra, rb).map(Rational::from_int);
            let v = f.evaluate(&CorrelatorPoint::new([0; 4].map(Rational::from_int), c));
            ensure(v == r(2), format!("{label:?} at ({ra},{rb}) = {v}"))?;
        }
    }
    Ok("f·c = 2 off the label for all 8 functionals".into())
}

fn c6_facet_vertices() -> Check {
    for (label, f) in bellpoly::localset::chsh_facets::<Rational>() {
        let fv = facet_vertex_count(&f);
        ensure(fv.count == 8, format!("{label:?}: {} saturating vertices", fv.count))?;
        let pts: Vec<Vec<Rational>> = fv.points.iter().map(CorrelatorPoint::to_vec).collect();
        let dim = VPolytope::new(8, pts).map_err(|e| e.to_string())?.affine_dimension();
        ensure(dim == 7, format!("{label:?}: affine dimension {dim}"))?;
    }
    let report = check_claims().map_err(|e| e.to_string())?;
    let rec = report
        .records
        .iter()
        .find(|r| r.claim == "facet_vertex_count")
        .ok_or("no facet_vertex_count record")?;
    ensure(
        rec.paper == serde_json::json!(6) && rec.computed == serde_json::json!(8) && rec.status == Status::Deviation,
        format!("record {rec:?}"),
    )?;
    Ok("8 vertices per CHSH facet, dimension 7; deviation from 6 recorded".into())
}

fn c7_membership() -> Check {
    let poly = local_polytope();
    let uniform = CorrelatorPoint::<Rational>::zero();
    for pr in pr_boxes() {
        let p = pr.correlators().to_vec();
        let res = membership(&p, &poly).map_err(|e| e.to_string())?;
        ensure(!res.is_inside(), format!("{:?} reported inside", pr.label))?;
        ensure(
            res.verify(&p, &poly),
            format!("{:?}: certificate fails verification", pr.label),
        )?;
        if let MembershipResult::Separated { functional, bound } = &res {
            ensure(
                poly.vertices().iter().all(|v| dot(functional, v) <= *bound) && dot(functional, &p) > *bound,
                "independent certificate check failed",
            )?;
        }
    }

    // v·PR + (1 - v)·uniform; the uniform behavior has all-zero correlators.
    let pr = pr_boxes()[0].correlators();
    let point_at = |v: &Rational| -> Vec<Rational> {
        pr.to_vec()
            .iter()
            .zip(uniform.to_vec())
            .map(|(a, u)| v * a + (r(1) - v) * u)
            .collect()
    };
    let inside = |v: &Rational| -> Result<bool, String> {
        let p = point_at(v);
        let res = membership(&p, &poly).map_err(|e| e.to_string())?;
        ensure(res.verify(&p, &poly), format!("certificate at v = {v} fails"))?;
        Ok(res.is_inside())
    };
    for k in 0..=100 {
        let v = q(k, 100);
        let got = inside(&v)?;
        ensure(got == (k <= 50), format!("v = {v}: inside = {got}"))?;
    }
    // Exact bisection for the threshold on [0, 1].
    let (mut lo, mut hi) = (r(0), r(1));
    for _ in 0..20 {
        let mid = (&lo + &hi) / r(2);
        if inside(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ensure(lo == q(1, 2), format!("bisection threshold {lo}"))?;
    Ok("8 PR certificates verified; inside iff v <= 1/2 on 101-point grid".into())
}

fn c8_tsirelson() -> Check {
    let best = maximize_chsh::<f64>();
    let target = 2.0 * 2f64.sqrt();
    ensure(
        (best.value - target).abs() <= 1e-6,
        format!("seesaw value {}", best.value),
    )?;
    let mut g = rng(8);
    let mut max = f64::MIN;
    for i in 0..10_000 {
        let qm = if i % 2 == 0 {
            random_model(&mut g)
        } else {
            near_optimal_model(&mut g, 0.05)
        };
        let b = behavior_from_quantum(&qm).map_err(|e| e.to_string())?;
        let v = chsh_value(&to_correlators(&b).map_err(|e| e.to_string())?);
        max = max.max(v);
    }
    ensure(max <= target + 1e-9, format!("random model reached {max}"))?;
    Ok(format!("seesaw {:.10}, random max {max:.6}", best.value))
}

fn c9_fourier() -> Check {
    let mut g = rng(9);
    let four = r(4);
    for _ in 0..10_000 {
        let w: [Rational; 16] = random_weights(&mut g, 16, 20).try_into().unwrap();
        let e = mix_e(&DeterministicWeights::new(w).map_err(|e| e.to_string())?);
        for qf in SignFunctional::all() {
            let v = hs_inner(&e, &qf);
            ensure(v.clone() <= four && -v.clone() <= four, format!("|⟨E|q⟩| = {v}"))?;
        }
    }
    for qf in SignFunctional::all() {
        let attained = label_tuples().into_iter().any(|l| {
            let e = mix_e(&DeterministicWeights::<Rational>::point(l).unwrap());
            hs_inner(&e, &qf) == four
        });
        ensure(attained, format!("4 not attained for {qf}"))?;
    }
    Ok("|⟨E|q⟩| <= 4 on 10^4 mixtures, 4 attained".into())
}

fn c10_witness() -> Check {
    let mut g = rng(10);
    let mut min = f64::MAX;
    let mut worst = 0.0f64;
    // Random models plus the seesaw minimizers of each Tr(Wρ).
    let mut models: Vec<_> = (0..1000).map(|_| random_model(&mut g)).collect();
    for qf in SignFunctional::all() {
        models.push(maximize_sign_functional(&qf, &SeesawOptions::default()).model);
    }
    for qm in &models {
        let e = bellpoly::fourier::e_matrix(&behavior_from_quantum(qm).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for qf in SignFunctional::all() {
            let w = witness(qm.settings(), &qf).map_err(|e| e.to_string())?;
            let tr = witness_value(&w, qm.state());
            worst = worst.max((tr - (4.0 - hs_inner(&e, &qf))).abs());
            min = min.min(tr);
        }
    }
    ensure(worst <= 1e-9, format!("consistency error {worst:e}"))?;
    ensure(min >= -1e-9, format!("Tr(Wρ) = {min}"))?;
    Ok(format!("max deviation {worst:.1e}, min Tr(Wρ) {min:.2e}"))
}

fn c11_tesseract() -> Check {
    let rep = tesseract_check();
    ensure(rep.holds, format!("{rep:?}"))?;
    let got: BTreeSet<[i64; 4]> = tesseract_points().into_iter().collect();
    let mut cube = BTreeSet::new();
    for k in 0..16 {
        cube.insert(std::array::from_fn(|i| if (k >> i) & 1 == 0 { 1 } else { -1 }));
    }
    ensure(got == cube, "points differ from {±1}^4")?;
    Ok("16 points = {±1}^4".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        ("1 vertex count", c1_vertex_count, Duration::from_secs(1)),
        ("2 dimension", c2_dimension, Duration::from_secs(1)),
        ("3 facet recovery", c3_facets, Duration::from_secs(60)),
        ("4 ns vertices", c4_ns_vertices, Duration::from_secs(60)),
        ("5 saturation pattern", c5_saturation, Duration::from_secs(1)),
        ("6 facet-vertex claim", c6_facet_vertices, Duration::from_secs(1)),
        ("7 membership certificates", c7_membership, Duration::from_secs(10)),
        ("8 tsirelson bound", c8_tsirelson, Duration::from_secs(60)),
        ("9 fourier bound", c9_fourier, Duration::from_secs(10)),
        ("10 witness consistency", c10_witness, Duration::from_secs(30)),
        ("11 tesseract", c11_tesseract, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {name}: {status} ({elapsed:.2?}) {detail}");
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
