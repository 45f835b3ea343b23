//! JSON documents for behaviors, correlators, polytopes, functionals and
//! quantum models.
//!
//! Exact numbers are strings (`"n"` or `"n/d"`); float numbers are JSON
//! numbers. Reading a float where an exact value is expected is an error:
//! rationals are never produced from floats.

use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::{HPolytope, Halfspace, VPolytope};
use crate::localset::BellFunctional;
use crate::quantum::{ComplexMatrix, QuantumModel, QubitObservable, Settings};
use crate::scalar::Scalar;
use crate::scenario::{Behavior, CorrelatorPoint, Scenario};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Mode(format!("unknown mode {other:?}"))),
        }
    }
}

/// A number as it appears in a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Exact(String),
    Float(f64),
}

/// Scalars with a JSON representation.
pub trait JsonScalar: Scalar {
    const MODE: Mode;

    fn to_json(&self) -> Number;

    fn from_json(n: &Number) -> Result<Self>;
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

impl JsonScalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn to_json(&self) -> Number {
        Number::Exact(self.to_string())
    }

    fn from_json(n: &Number) -> Result<Self> {
        match n {
            Number::Exact(s) => parse_rational(s),
            Number::Float(v) => Err(Error::Mode(format!(
                "float value {v} where an exact rational string is required"
            ))),
        }
    }
}

impl JsonScalar for f64 {
    const MODE: Mode = Mode::Float;

    fn to_json(&self) -> Number {
        Number::Float(*self)
    }

    fn from_json(n: &Number) -> Result<Self> {
        match n {
            Number::Float(v) => Ok(*v),
            Number::Exact(s) => Ok(parse_rational(s)?.as_f64()),
        }
    }
}

fn to_numbers<T: JsonScalar>(v: &[T]) -> Vec<Number> {
    v.iter().map(JsonScalar::to_json).collect()
}

fn from_numbers<T: JsonScalar>(v: &[Number]) -> Result<Vec<T>> {
    v.iter().map(T::from_json).collect()
}

fn array4<T: JsonScalar>(v: &[Number]) -> Result<[T; 4]> {
    let v = from_numbers::<T>(v)?;
    v.try_into().map_err(|v: Vec<T>| Error::WrongLength {
        expected: 4,
        got: v.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorJson {
    pub scenario: [usize; 4],
    pub mode: Mode,
    pub probs: Vec<Number>,
}

impl BehaviorJson {
    pub fn from_behavior<T: JsonScalar>(b: &Behavior<T>) -> Self {
        BehaviorJson {
            scenario: b.scenario().as_array(),
            mode: T::MODE,
            probs: to_numbers(b.probs()),
        }
    }

    /// Validates with the scalar's default tolerance.
    pub fn to_behavior<T: JsonScalar>(&self) -> Result<Behavior<T>> {
        self.to_behavior_with_tolerance(&T::default_tol())
    }

    pub fn to_behavior_with_tolerance<T: JsonScalar>(&self, tol: &T) -> Result<Behavior<T>> {
        if T::MODE == Mode::Exact && self.mode == Mode::Float {
            return Err(Error::Mode("a float behavior cannot be read in exact mode".into()));
        }
        let [ma, mb, da, db] = self.scenario;
        let s = Scenario::new(ma, mb, da, db)?;
        Behavior::with_tolerance(s, from_numbers(&self.probs)?, tol)
    }
}

/// A behavior with its vertex class, as emitted for NS vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedBehaviorJson {
    pub class: String,
    #[serde(flatten)]
    pub behavior: BehaviorJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorJson {
    pub m: Vec<Number>,
    pub c: Vec<Number>,
}

impl CorrelatorJson {
    pub fn from_point<T: JsonScalar>(p: &CorrelatorPoint<T>) -> Self {
        CorrelatorJson {
            m: to_numbers(&p.m),
            c: to_numbers(&p.c),
        }
    }

    pub fn to_point<T: JsonScalar>(&self) -> Result<CorrelatorPoint<T>> {
        Ok(CorrelatorPoint::new(array4(&self.m)?, array4(&self.c)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub beta_m: Vec<Number>,
    pub beta_c: Vec<Number>,
    pub bound: Number,
}

impl FunctionalJson {
    pub fn from_functional<T: JsonScalar>(f: &BellFunctional<T>) -> Self {
        FunctionalJson {
            beta_m: to_numbers(&f.beta.m),
            beta_c: to_numbers(&f.beta.c),
            bound: f.bound.to_json(),
        }
    }

    pub fn to_functional<T: JsonScalar>(&self) -> Result<BellFunctional<T>> {
        Ok(BellFunctional::new(
            CorrelatorPoint::new(array4(&self.beta_m)?, array4(&self.beta_c)?),
            T::from_json(&self.bound)?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VPolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<Number>>,
}

impl VPolytopeJson {
    pub fn from_polytope(p: &VPolytope<Rational>) -> Self {
        VPolytopeJson {
            dim: p.ambient_dim(),
            vertices: p.vertices().iter().map(|v| to_numbers(v)).collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<VPolytope<Rational>> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| from_numbers(v))
            .collect::<Result<Vec<_>>>()?;
        VPolytope::new(self.dim, vertices)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceJson {
    pub a: Vec<Number>,
    pub b: Number,
}

impl HalfspaceJson {
    pub fn from_halfspace(h: &Halfspace<Rational>) -> Self {
        HalfspaceJson {
            a: to_numbers(&h.normal),
            b: h.bound.to_json(),
        }
    }

    pub fn to_halfspace(&self) -> Result<Halfspace<Rational>> {
        Ok(Halfspace::new(from_numbers(&self.a)?, Rational::from_json(&self.b)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HPolytopeJson {
    pub dim: usize,
    pub ineqs: Vec<HalfspaceJson>,
    #[serde(default)]
    pub eqs: Vec<HalfspaceJson>,
}

impl HPolytopeJson {
    pub fn from_polytope(p: &HPolytope<Rational>) -> Self {
        HPolytopeJson {
            dim: p.ambient_dim(),
            ineqs: p.inequalities().iter().map(HalfspaceJson::from_halfspace).collect(),
            eqs: p.equalities().iter().map(HalfspaceJson::from_halfspace).collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<HPolytope<Rational>> {
        let ineqs = self
            .ineqs
            .iter()
            .map(HalfspaceJson::to_halfspace)
            .collect::<Result<_>>()?;
        let eqs = self
            .eqs
            .iter()
            .map(HalfspaceJson::to_halfspace)
            .collect::<Result<_>>()?;
        HPolytope::new(self.dim, ineqs, eqs)
    }
}

/// Row-major state entries `[re, im]` and Bloch vectors per party.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumModelJson {
    pub state: Vec<[f64; 2]>,
    pub alice: Vec<[f64; 3]>,
    pub bob: Vec<[f64; 3]>,
}

fn observables(v: &[[f64; 3]]) -> Result<[QubitObservable<f64>; 2]> {
    if v.len() != 2 {
        return Err(Error::WrongLength {
            expected: 2,
            got: v.len(),
        });
    }
    Ok([QubitObservable::new(v[0])?, QubitObservable::new(v[1])?])
}

impl QuantumModelJson {
    pub fn from_model(qm: &QuantumModel<f64>) -> Self {
        QuantumModelJson {
            state: matrix_entries(qm.state()),
            alice: qm.alice().iter().map(QubitObservable::bloch).collect(),
            bob: qm.bob().iter().map(QubitObservable::bloch).collect(),
        }
    }

    pub fn to_model(&self) -> Result<QuantumModel<f64>> {
        if self.state.len() != 16 {
            return Err(Error::WrongLength {
                expected: 16,
                got: self.state.len(),
            });
        }
        let state = ComplexMatrix::from_vec(self.state.iter().map(|&[re, im]| Complex::new(re, im)).collect());
        let settings = Settings {
            alice: observables(&self.alice)?,
            bob: observables(&self.bob)?,
        };
        QuantumModel::new(state, settings)
    }
}

pub fn matrix_entries(m: &ComplexMatrix<f64>) -> Vec<[f64; 2]> {
    m.data().iter().map(|z| [z.re, z.im]).collect()
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json_string<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json_str<D: for<'de> Deserialize<'de>>(s: &str) -> Result<D> {
    Ok(serde_json::from_str(s)?)
}
