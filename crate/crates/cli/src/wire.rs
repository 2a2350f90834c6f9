//! JSON documents read and written by the command-line tool.
//!
//! Indices are 1-based everywhere on the wire. Exact rationals are written as
//! `"p/q"` strings and accepted as strings (`"p/q"`, integers or decimals) or
//! JSON numbers; a JSON number is taken to be the binary double it parses to
//! and converted to a rational without rounding. Floating-point values that
//! may be non-finite (residuals) are written as `null` when infinite or NaN
//! and read back as `+∞`.

use std::fmt;
use std::str::FromStr;

use hypstokes::coefficients::PairClassification;
use hypstokes::ode::OdeSystem;
use hypstokes::stokes::StokesData;
use hypstokes::verify::CheckReport;
use hypstokes::{AffineForm, Analysis, Arrangement, Complex64, Error as CoreError, IntegralValue, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Failure of a command, carrying its exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input document (exit 2).
    Schema(String),
    /// Well-formed input with an impossible request (exit 2).
    Request(String),
    /// The arrangement is not in generic position (exit 3).
    Genericity(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Request(_) => 2,
            CliError::Genericity(_) => 3,
        }
    }

    pub fn document(&self) -> ErrorDocument {
        let (kind, message, violations) = match self {
            CliError::Schema(m) => ("schema", m.clone(), Vec::new()),
            CliError::Request(m) => ("request", m.clone(), Vec::new()),
            CliError::Genericity(v) => {
                ("genericity", format!("arrangement is not in generic position ({} violations)", v.len()), v.clone())
            }
        };
        ErrorDocument {
            error: ErrorBody { kind: kind.to_string(), message, violations, exit_code: self.exit_code() },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "invalid input: {m}"),
            CliError::Request(m) => write!(f, "invalid request: {m}"),
            CliError::Genericity(v) => write!(f, "arrangement is not generic: {}", v.join("; ")),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidArrangement(m) => CliError::Schema(m),
            CoreError::NotGeneric(v) => CliError::Genericity(v.iter().map(ToString::to_string).collect()),
            other => CliError::Request(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    pub exit_code: i32,
}

/// Parses `"p/q"`, an integer or a decimal such as `"-1.25e-3"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if let Ok(r) = Rational::from_str(s) {
        return Ok(r);
    }
    parse_decimal(s).ok_or_else(|| format!("not a rational number: {text:?}"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = BigInt::from_str(&format!("0{int}{frac}")).ok()?;
    let shift = exponent.checked_sub(frac.len() as i64)?;
    if shift.unsigned_abs() > 10_000 {
        return None;
    }
    let power = num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize);
    let value = if shift >= 0 {
        Rational::from_integer(digits * power)
    } else {
        Rational::new(digits, power)
    };
    Some(if negative { -value } else { value })
}

fn rational_from_f64(x: f64) -> Result<Rational, String> {
    Rational::from_float(x).ok_or_else(|| format!("not a finite number: {x}"))
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as a number or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        rational_from_f64(v).map_err(E::custom)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).map_err(E::custom)
    }
}

/// Serde adapter for a single [`Rational`].
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

/// Serde adapter for a list of [`Rational`]s.
pub mod rational_vec {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Item(#[serde(with = "rational")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<Item>::deserialize(d)?.into_iter().map(|i| i.0).collect())
    }
}

/// Serde adapter writing non-finite floats as `null`, read back as `+∞`.
pub mod lossy_f64 {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// `[re, im]`.
pub type ComplexPair = [f64; 2];

pub fn pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|j| j + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    #[serde(with = "rational_vec")]
    pub linear: Vec<Rational>,
    #[serde(with = "rational")]
    pub constant: Rational,
}

/// Input document: hyperplanes `f_j(z) = linear · z + constant`, their
/// weights and the linear form `f0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementSpec {
    pub k: usize,
    pub forms: Vec<FormSpec>,
    pub weights: Vec<f64>,
    #[serde(with = "rational_vec")]
    pub f0: Vec<Rational>,
}

impl ArrangementSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn from_arrangement(arr: &Arrangement) -> Self {
        Self {
            k: arr.dim(),
            forms: arr
                .forms()
                .iter()
                .map(|f| FormSpec { linear: f.linear.clone(), constant: f.constant.clone() })
                .collect(),
            weights: arr.weights().to_vec(),
            f0: arr.f0().to_vec(),
        }
    }

    /// Shape checks, then the genericity test.
    pub fn to_arrangement(&self) -> Result<Arrangement, CliError> {
        if self.k == 0 {
            return Err(CliError::Schema("k must be at least 1".into()));
        }
        if self.f0.len() != self.k {
            return Err(CliError::Schema(format!("f0 has {} coefficients, expected k = {}", self.f0.len(), self.k)));
        }
        if self.f0.iter().all(Zero::is_zero) {
            return Err(CliError::Schema("f0 must be a nonzero linear form".into()));
        }
        let forms = self.forms.iter().map(|f| AffineForm::new(f.linear.clone(), f.constant.clone())).collect();
        let arr = Arrangement::new(forms, self.weights.clone(), self.f0.clone())?;
        let violations = arr.validate_genericity();
        if !violations.is_empty() {
            return Err(CliError::Genericity(violations.iter().map(ToString::to_string).collect()));
        }
        Ok(arr)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub index: usize,
    pub hyperplanes: Vec<usize>,
    #[serde(with = "rational_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "rational")]
    pub f0: Rational,
    pub f0_approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberRecord {
    pub index: usize,
    pub signs: Vec<i8>,
    #[serde(with = "rational_vec")]
    pub interior_point: Vec<Rational>,
    pub bounded: bool,
    pub in_dplus: bool,
    pub min_vertex: Option<usize>,
}

/// One entry of the bijection between vertices and `D+`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DplusRecord {
    pub vertex: usize,
    pub chamber: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub x: usize,
    pub x_prime: usize,
    pub positive_exceptional: bool,
    pub negative_exceptional: bool,
    pub exceptional_hyperplanes: Vec<usize>,
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
}

impl PairRecord {
    fn new(x: usize, xp: usize, c: &PairClassification) -> Self {
        Self {
            x: x + 1,
            x_prime: xp + 1,
            positive_exceptional: c.positive_exceptional,
            negative_exceptional: c.negative_exceptional,
            exceptional_hyperplanes: one_based(&c.exceptional_hyperplanes),
            set_a: one_based(&c.set_a),
            set_b: one_based(&c.set_b),
        }
    }
}

/// `I' = -(A + B/λ) I` with rows and columns in vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeRecord {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

impl From<&OdeSystem> for OdeRecord {
    fn from(ode: &OdeSystem) -> Self {
        let m = ode.len();
        let a = (0..m).map(|i| (0..m).map(|j| if i == j { ode.mat_a[i] } else { 0.0 }).collect()).collect();
        Self { a, b: ode.mat_b.clone() }
    }
}

/// Entry `[i][j]` is `C(X_i, X_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StokesRecord {
    pub c0: Vec<Vec<ComplexPair>>,
    pub c1: Vec<Vec<ComplexPair>>,
}

impl From<&StokesData> for StokesRecord {
    fn from(st: &StokesData) -> Self {
        let conv = |m: &[Vec<Complex64>]| m.iter().map(|row| row.iter().map(|z| pair(*z)).collect()).collect();
        Self { c0: conv(&st.c0), c1: conv(&st.c1) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetailRecord {
    pub lambda: ComplexPair,
    #[serde(with = "lossy_f64")]
    pub residual: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub instance: String,
    pub lambdas: Vec<ComplexPair>,
    #[serde(with = "lossy_f64")]
    pub max_relative_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: Vec<DetailRecord>,
}

impl From<&CheckReport> for CheckRecord {
    fn from(r: &CheckReport) -> Self {
        Self {
            name: r.name.clone(),
            instance: r.instance.clone(),
            lambdas: r.lambdas.iter().map(|z| pair(*z)).collect(),
            max_relative_residual: r.max_relative_residual,
            tolerance: r.tolerance,
            pass: r.pass,
            details: r
                .details
                .iter()
                .map(|d| DetailRecord { lambda: pair(d.lambda), residual: d.residual, note: d.note.clone() })
                .collect(),
        }
    }
}

/// Comparison of the computed Stokes matrices with a closed-form reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleRecord {
    pub name: String,
    pub max_entry_difference: f64,
}

/// Output of `analyze`, `stokes`, `verify` and `demo`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultBundle {
    pub command: String,
    pub arrangement: ArrangementSpec,
    /// Sorted by increasing `f0`; this order indexes every matrix below.
    pub vertices: Vec<VertexRecord>,
    pub chambers: Vec<ChamberRecord>,
    pub dplus: Vec<DplusRecord>,
    pub pairs: Vec<PairRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ode: Option<OdeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stokes: Option<StokesRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

impl ResultBundle {
    /// Combinatorial part of the bundle.
    pub fn combinatorics(command: &str, an: &Analysis) -> Self {
        let g = &an.plus;
        let m = g.vertices().len();
        let vertices = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| VertexRecord {
                index: i + 1,
                hyperplanes: one_based(&v.indices),
                point: v.point.clone(),
                f0: v.f0_value.clone(),
                f0_approx: v.f0_f64(),
            })
            .collect();
        let chambers = g
            .chambers()
            .iter()
            .enumerate()
            .map(|(i, c)| ChamberRecord {
                index: i + 1,
                signs: c.signs.clone(),
                interior_point: c.interior_point.clone(),
                bounded: c.bounded,
                in_dplus: c.in_dplus,
                min_vertex: c.min_vertex.map(|x| x + 1),
            })
            .collect();
        let dplus = (0..m).map(|x| DplusRecord { vertex: x + 1, chamber: g.delta(x) + 1 }).collect();
        let pairs = (0..m)
            .flat_map(|x| (0..m).filter(move |&xp| xp != x).map(move |xp| (x, xp)))
            .map(|(x, xp)| PairRecord::new(x, xp, &hypstokes::coefficients::classify_pair(an, x, xp)))
            .collect();
        Self {
            command: command.to_string(),
            arrangement: ArrangementSpec::from_arrangement(an.arrangement()),
            vertices,
            chambers,
            dplus,
            pairs,
            ode: None,
            stokes: None,
            checks: Vec::new(),
            oracle: None,
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }
}

/// Output of `integrate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralRecord {
    pub kind: String,
    /// Hyperplanes of the vertex `X`.
    pub target: Vec<usize>,
    /// Hyperplanes of the vertex `X'` whose form is integrated.
    pub form: Vec<usize>,
    /// The chamber `Δ_X`, for chamber integrals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<usize>,
    pub lambda: ComplexPair,
    /// Rotation of the integration cone, for cone integrals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<ComplexPair>,
    pub value: ComplexPair,
    #[serde(with = "lossy_f64")]
    pub error_estimate: f64,
    pub nodes_used: usize,
    pub converged: bool,
}

impl IntegralRecord {
    pub fn fill(&mut self, v: &IntegralValue) {
        self.value = pair(v.value);
        self.error_estimate = v.error_estimate;
        self.nodes_used = v.nodes_used;
        self.converged = v.converged;
    }
}

