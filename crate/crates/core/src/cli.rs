//! Command-line driver. JSON goes to standard output (or `--out`), short
//! summaries to standard error.
//!
//! Exit codes: 0 success, 2 domain error (with an error object on stdout),
//! 64 usage error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::claims::{check_claims, ClaimReport};
use crate::error::{Error, Result};
use crate::exactgeom::{membership, MembershipResult};
use crate::fourier::{e_matrix, hs_inner, q_functional, SignFunctional};
use crate::json::{
    from_json_str, matrix_entries, to_json_string, BehaviorJson, FunctionalJson, JsonScalar, Mode, Number,
    QuantumModelJson, TaggedBehaviorJson, VPolytopeJson,
};
use crate::localset::{chsh_facets, chsh_value, local_facets, local_polytope, BellFunctional, DeterministicStrategy};
use crate::nosignaling::{classify, ns_vertices};
use crate::quantum::{behavior_from_quantum, maximize_chsh, witness, witness_value};
use crate::scalar::Scalar;
use crate::scenario::{from_correlators, to_correlators, Behavior, CorrelatorPoint};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bellpoly",
    version,
    about = "Local, quantum and no-signaling correlations of the CHSH scenario"
)]
struct Cli {
    /// Numeric mode; defaults to exact, or to the input document's mode.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,

    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance for validating float behaviors.
    #[arg(long, global = true, value_parser = parse_tol)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The sixteen deterministic local behaviors.
    Vertices,
    /// Facets of the local polytope, tagged chsh or positivity.
    Facets,
    /// Vertices of the no-signaling polytope, tagged local or pr.
    NsVertices,
    /// Membership in the local polytope, or in an arbitrary V-polytope.
    Member {
        #[arg(long, conflicts_with_all = ["polytope", "point"], required_unless_present = "polytope")]
        behavior: Option<PathBuf>,
        #[arg(long, requires = "point")]
        polytope: Option<PathBuf>,
        #[arg(long, requires = "polytope")]
        point: Option<PathBuf>,
    },
    /// CHSH value of a behavior.
    Chsh {
        #[arg(long)]
        behavior: PathBuf,
    },
    /// Seesaw maximization of CHSH over qubit models.
    ChshMax,
    /// Behavior of a quantum model.
    Quantum {
        #[arg(long)]
        model: PathBuf,
    },
    /// Correlation matrix E and the four sign-functional values.
    Fourier {
        #[arg(long)]
        behavior: PathBuf,
    },
    /// Witness operator and its value on a quantum model.
    Witness {
        #[arg(long)]
        model: PathBuf,
        /// Sign functional `m1m2`, one of 00, 01, 10, 11.
        #[arg(long, value_parser = parse_q)]
        q: SignFunctional,
    },
    /// Recompute the published claims and report deviations.
    CheckClaims,
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!("{s:?} is not a non-negative number")),
    }
}

fn parse_q(s: &str) -> std::result::Result<SignFunctional, String> {
    let bytes = s.as_bytes();
    let digit = |b: u8| match b {
        b'0' => Some(0),
        b'1' => Some(1),
        _ => None,
    };
    match bytes {
        [a, b] => match (digit(*a), digit(*b)) {
            (Some(m1), Some(m2)) => q_functional(m1, m2).map_err(|e| e.to_string()),
            _ => Err(format!("{s:?} is not one of 00, 01, 10, 11")),
        },
        _ => Err(format!("{s:?} is not one of 00, 01, 10, 11")),
    }
}

/// Result of a CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerticesDoc {
    pub count: usize,
    pub vertices: Vec<BehaviorJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetDoc {
    pub class: String,
    #[serde(flatten)]
    pub functional: FunctionalJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetsDoc {
    pub count: usize,
    pub classes: BTreeMap<String, usize>,
    pub facets: Vec<FacetDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NsVerticesDoc {
    pub count: usize,
    pub vertices: Vec<TaggedBehaviorJson>,
}

/// Membership result. For behaviors the weights follow the order of the
/// `vertices` command and the certificate is a Bell functional; for generic
/// polytopes the weights follow the input vertex order (after sorting and
/// deduplication) and the certificate is a plain normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum MemberDoc {
    Inside {
        weights: Vec<Number>,
        verified: bool,
    },
    Separated {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        functional: Option<FunctionalJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal: Option<Vec<Number>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<Number>,
        /// Value of the certificate at the point.
        value: Number,
        verified: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshDoc {
    /// `⟨A0B0⟩ + ⟨A0B1⟩ + ⟨A1B0⟩ - ⟨A1B1⟩`.
    pub value: Number,
    /// Largest value over the eight CHSH-type facets.
    pub max_facet_value: Number,
    pub local_bound: Number,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChshMaxDoc {
    pub value: f64,
    pub model: QuantumModelJson,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierDoc {
    #[serde(rename = "E")]
    pub e: Vec<Vec<Number>>,
    pub q_values: BTreeMap<String, Number>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub q: String,
    /// `Re Tr(Wρ)`.
    pub value: f64,
    /// `⟨E|q⟩_HS` of the model's behavior.
    pub hs_inner: f64,
    pub operator: Vec<[f64; 2]>,
}

struct Ctx {
    mode: Option<Mode>,
    tol: Option<f64>,
    summary: Vec<String>,
}

impl Ctx {
    fn note(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    fn output_mode(&self) -> Mode {
        self.mode.unwrap_or(Mode::Exact)
    }

    fn float_only(&self, what: &str) -> Result<()> {
        if self.mode == Some(Mode::Exact) {
            return Err(Error::Mode(format!("{what} works in float mode only")));
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_doc<D: for<'de> Deserialize<'de>>(path: &Path) -> Result<D> {
    from_json_str(&read(path)?)
}

fn float_behavior(doc: &BehaviorJson, ctx: &Ctx) -> Result<Behavior<f64>> {
    match ctx.tol {
        Some(t) => doc.to_behavior_with_tolerance(&t),
        None => doc.to_behavior(),
    }
}

fn behaviors_doc<T: JsonScalar>(bs: &[Behavior<T>]) -> VerticesDoc {
    VerticesDoc {
        count: bs.len(),
        vertices: bs.iter().map(BehaviorJson::from_behavior).collect(),
    }
}

fn cmd_vertices(ctx: &mut Ctx) -> Result<String> {
    let strategies = DeterministicStrategy::all();
    ctx.note(format!("{} deterministic vertices", strategies.len()));
    Ok(match ctx.output_mode() {
        Mode::Exact => to_json_string(&behaviors_doc(
            &strategies.iter().map(|s| s.behavior::<Rational>()).collect::<Vec<_>>(),
        )),
        Mode::Float => to_json_string(&behaviors_doc(
            &strategies.iter().map(|s| s.behavior::<f64>()).collect::<Vec<_>>(),
        )),
    })
}

fn functional_json(f: &BellFunctional<Rational>, mode: Mode) -> FunctionalJson {
    match mode {
        Mode::Exact => FunctionalJson::from_functional(f),
        Mode::Float => FunctionalJson::from_functional(&BellFunctional::new(
            CorrelatorPoint::new(
                f.beta.m.clone().map(|v| v.as_f64()),
                f.beta.c.clone().map(|v| v.as_f64()),
            ),
            f.bound.as_f64(),
        )),
    }
}

fn cmd_facets(ctx: &mut Ctx) -> Result<String> {
    let lf = local_facets()?;
    let mut facets = Vec::new();
    let mut classes = BTreeMap::new();
    for h in lf.hrep.inequalities() {
        let f = BellFunctional::from_halfspace(h)?;
        let class = if f.has_zero_marginal_part() {
            "chsh"
        } else {
            "positivity"
        };
        *classes.entry(class.to_string()).or_insert(0) += 1;
        facets.push(FacetDoc {
            class: class.to_string(),
            functional: functional_json(&f, ctx.output_mode()),
        });
    }
    ctx.note(format!(
        "{} facets: {} chsh, {} positivity",
        facets.len(),
        lf.chsh.len(),
        lf.positivity.len()
    ));
    Ok(to_json_string(&FacetsDoc {
        count: facets.len(),
        classes,
        facets,
    }))
}

fn cmd_ns_vertices(ctx: &mut Ctx) -> Result<String> {
    let vp = ns_vertices()?;
    let mut vertices = Vec::new();
    for v in vp.vertices() {
        let p = CorrelatorPoint::from_slice(v)?;
        let b = from_correlators(&p)?;
        let behavior = match ctx.output_mode() {
            Mode::Exact => BehaviorJson::from_behavior(&b),
            Mode::Float => BehaviorJson::from_behavior(&b.to_f64()),
        };
        vertices.push(TaggedBehaviorJson {
            class: classify(&p).as_str().to_string(),
            behavior,
        });
    }
    let pr = vertices.iter().filter(|v| v.class == "pr").count();
    ctx.note(format!(
        "{} NS vertices: {} local, {} pr",
        vertices.len(),
        vertices.len() - pr,
        pr
    ));
    Ok(to_json_string(&NsVerticesDoc {
        count: vertices.len(),
        vertices,
    }))
}

fn exact_only(ctx: &Ctx, what: &str) -> Result<()> {
    if ctx.mode == Some(Mode::Float) {
        return Err(Error::Mode(format!("{what} is exact only")));
    }
    Ok(())
}

fn cmd_member_behavior(ctx: &mut Ctx, path: &Path) -> Result<String> {
    exact_only(ctx, "membership")?;
    let doc: BehaviorJson = read_doc(path)?;
    let b: Behavior<Rational> = doc.to_behavior()?;
    let point = to_correlators(&b)?.to_vec();
    let poly = local_polytope();
    let result = membership(&point, &poly)?;
    let verified = result.verify(&point, &poly);
    let out = match result {
        MembershipResult::Inside { weights } => {
            // Reorder from the polytope's vertex order to strategy order.
            let order: Vec<Number> = DeterministicStrategy::all()
                .iter()
                .map(|s| {
                    let v = s.correlators::<Rational>().to_vec();
                    let k = poly
                        .vertices()
                        .iter()
                        .position(|w| *w == v)
                        .expect("strategy is a vertex");
                    weights[k].to_json()
                })
                .collect();
            ctx.note("inside the local polytope");
            MemberDoc::Inside {
                weights: order,
                verified,
            }
        }
        MembershipResult::Separated { functional, bound } => {
            let f = BellFunctional::new(CorrelatorPoint::from_slice(&functional)?, bound);
            let value = f.evaluate(&CorrelatorPoint::from_slice(&point)?);
            ctx.note(format!(
                "outside the local polytope: certificate value {value} > {}",
                f.bound
            ));
            MemberDoc::Separated {
                functional: Some(FunctionalJson::from_functional(&f)),
                normal: None,
                bound: None,
                value: value.to_json(),
                verified,
            }
        }
    };
    Ok(to_json_string(&out))
}

fn cmd_member_polytope(ctx: &mut Ctx, polytope: &Path, point: &Path) -> Result<String> {
    exact_only(ctx, "membership")?;
    let poly = read_doc::<VPolytopeJson>(polytope)?.to_polytope()?;
    let raw: Vec<Number> = read_doc(point)?;
    let point: Vec<Rational> = raw.iter().map(Rational::from_json).collect::<Result<_>>()?;
    let result = membership(&point, &poly)?;
    let verified = result.verify(&point, &poly);
    let out = match result {
        MembershipResult::Inside { weights } => {
            ctx.note("inside");
            MemberDoc::Inside {
                weights: weights.iter().map(JsonScalar::to_json).collect(),
                verified,
            }
        }
        MembershipResult::Separated { functional, bound } => {
            let value = functional
                .iter()
                .zip(&point)
                .fold(Rational::from_int(0), |s, (a, x)| s + a * x);
            ctx.note("separated");
            MemberDoc::Separated {
                functional: None,
                normal: Some(functional.iter().map(JsonScalar::to_json).collect()),
                bound: Some(bound.to_json()),
                value: value.to_json(),
                verified,
            }
        }
    };
    Ok(to_json_string(&out))
}

fn doc_mode(ctx: &Ctx, doc: &BehaviorJson) -> Mode {
    ctx.mode.unwrap_or(doc.mode)
}

fn chsh_doc<T: JsonScalar>(b: &Behavior<T>, slack: T) -> Result<ChshDoc> {
    let p = to_correlators(b)?;
    let value = chsh_value(&p);
    let max = chsh_facets::<T>()
        .iter()
        .map(|(_, f)| f.evaluate(&p))
        .reduce(|a, b| if b > a { b } else { a })
        .expect("eight facets");
    let bound = T::from_int(2);
    Ok(ChshDoc {
        violated: max > bound.clone() + slack,
        value: value.to_json(),
        max_facet_value: max.to_json(),
        local_bound: bound.to_json(),
    })
}

fn cmd_chsh(ctx: &mut Ctx, path: &Path) -> Result<String> {
    let doc: BehaviorJson = read_doc(path)?;
    let out = match doc_mode(ctx, &doc) {
        Mode::Exact => chsh_doc(&doc.to_behavior::<Rational>()?, Rational::from_int(0))?,
        Mode::Float => chsh_doc(&float_behavior(&doc, ctx)?, ctx.tol.unwrap_or(f64::default_tol()))?,
    };
    ctx.note(format!("CHSH violated: {}", out.violated));
    Ok(to_json_string(&out))
}

fn cmd_chsh_max(ctx: &mut Ctx) -> Result<String> {
    ctx.float_only("chsh-max")?;
    let r = maximize_chsh::<f64>();
    ctx.note(format!("seesaw maximum {} after {} iterations", r.value, r.iterations));
    Ok(to_json_string(&ChshMaxDoc {
        value: r.value,
        model: QuantumModelJson::from_model(&r.model),
        iterations: r.iterations,
    }))
}

fn cmd_quantum(ctx: &mut Ctx, path: &Path) -> Result<String> {
    ctx.float_only("quantum")?;
    let qm = read_doc::<QuantumModelJson>(path)?.to_model()?;
    let b = behavior_from_quantum(&qm)?;
    ctx.note("behavior of the quantum model");
    Ok(to_json_string(&BehaviorJson::from_behavior(&b)))
}

fn fourier_doc<T: JsonScalar>(b: &Behavior<T>) -> Result<FourierDoc> {
    let e = e_matrix(b)?;
    let q_values = SignFunctional::all()
        .iter()
        .map(|q| (q.key(), hs_inner(&e, q).to_json()))
        .collect();
    Ok(FourierDoc {
        e: e.entries
            .iter()
            .map(|row| row.iter().map(JsonScalar::to_json).collect())
            .collect(),
        q_values,
    })
}

fn cmd_fourier(ctx: &mut Ctx, path: &Path) -> Result<String> {
    let doc: BehaviorJson = read_doc(path)?;
    let out = match doc_mode(ctx, &doc) {
        Mode::Exact => fourier_doc(&doc.to_behavior::<Rational>()?)?,
        Mode::Float => fourier_doc(&float_behavior(&doc, ctx)?)?,
    };
    ctx.note("correlation matrix and sign-functional values");
    Ok(to_json_string(&out))
}

fn cmd_witness(ctx: &mut Ctx, path: &Path, q: &SignFunctional) -> Result<String> {
    ctx.float_only("witness")?;
    let qm = read_doc::<QuantumModelJson>(path)?.to_model()?;
    let w = witness(qm.settings(), q)?;
    let value = witness_value(&w, qm.state());
    let e = e_matrix(&behavior_from_quantum(&qm)?)?;
    ctx.note(format!("Tr(W rho) = {value} for {q}"));
    Ok(to_json_string(&WitnessDoc {
        q: q.key(),
        value,
        hs_inner: hs_inner(&e, q),
        operator: matrix_entries(&w),
    }))
}

fn cmd_check_claims(ctx: &mut Ctx) -> Result<(String, bool)> {
    let report: ClaimReport = check_claims()?;
    for r in &report.records {
        ctx.note(format!(
            "{:<24} {:?} (stated {}, computed {})",
            r.claim, r.status, r.paper, r.computed
        ));
    }
    for i in &report.inconsistencies {
        ctx.note(format!("INCONSISTENT: {i}"));
    }
    Ok((to_json_string(&report), report.consistent))
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<(String, i32)> {
    let ok = |s: String| Ok((s, EXIT_OK));
    match &cli.command {
        Command::Vertices => ok(cmd_vertices(ctx)?),
        Command::Facets => ok(cmd_facets(ctx)?),
        Command::NsVertices => ok(cmd_ns_vertices(ctx)?),
        Command::Member { behavior: Some(b), .. } => ok(cmd_member_behavior(ctx, b)?),
        Command::Member {
            polytope: Some(p),
            point: Some(x),
            ..
        } => ok(cmd_member_polytope(ctx, p, x)?),
        Command::Member { .. } => unreachable!("clap enforces the argument groups"),
        Command::Chsh { behavior } => ok(cmd_chsh(ctx, behavior)?),
        Command::ChshMax => ok(cmd_chsh_max(ctx)?),
        Command::Quantum { model } => ok(cmd_quantum(ctx, model)?),
        Command::Fourier { behavior } => ok(cmd_fourier(ctx, behavior)?),
        Command::Witness { model, q } => ok(cmd_witness(ctx, model, q)?),
        Command::CheckClaims => {
            let (s, consistent) = cmd_check_claims(ctx)?;
            Ok((s, if consistent { EXIT_OK } else { EXIT_DOMAIN }))
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut ctx = Ctx {
        mode: cli.mode.map(Mode::from),
        tol: cli.tol,
        summary: Vec::new(),
    };
    let result = dispatch(&cli, &mut ctx).and_then(|(json, code)| {
        if let Some(path) = &cli.out {
            std::fs::write(path, &json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            ctx.note(format!("wrote {}", path.display()));
            Ok((String::new(), code))
        } else {
            Ok((json, code))
        }
    });
    match result {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: join_lines(&ctx.summary),
        },
        Err(e) => {
            let doc = ErrorDoc {
                error: ErrorBody {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                },
            };
            ctx.note(format!("error: {e}"));
            Outcome {
                code: EXIT_DOMAIN,
                stdout: to_json_string(&doc),
                stderr: join_lines(&ctx.summary),
            }
        }
    }
}

fn join_lines(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}
