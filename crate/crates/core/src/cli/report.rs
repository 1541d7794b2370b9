//! The JSON document written to stdout.
//!
//! Rationals are strings `"num/den"` (just `"num"` for integers), so values
//! stay exact; keys come out sorted because documents go through
//! `serde_json::Value`, whose maps are ordered.

use std::fmt::Write as _;

use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::gamma::{ClosedForm, Fact, GammaReport, VerificationReport};
use crate::invariants::InvariantRecord;
use crate::poly::{parse_polynomial, Polynomial, Rational};
use crate::standard_basis::HilbertSamuelData;

pub const SCHEMA: &str = "gamma-sing/1";

/// An exact rational that serializes as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            s.serialize_str(&self.0.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(D::Error::custom)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: {s:?}");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Polynomials are written in the input grammar and parsed back on reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Polynomial);

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_polynomial(&s).map(Poly).map_err(D::Error::custom)
    }
}

pub fn polys(gens: &[Polynomial]) -> Vec<Poly> {
    gens.iter().cloned().map(Poly).collect()
}

/// What was asked for.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub command: String,
    pub spec: Option<String>,
    pub polynomial: Option<Poly>,
    pub ideal: Option<Vec<Poly>>,
    pub alpha: Option<Q>,
    pub flavor: Option<String>,
    pub order: Option<String>,
    pub max_degree: Option<u32>,
    pub seed: u64,
    pub budget: Option<BudgetEcho>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetEcho {
    pub random_ideals: usize,
    pub pool_size: usize,
    pub coefficients: Vec<i64>,
    pub g_budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaWitness {
    pub a: Q,
    pub b: Q,
    /// `a f_x + b f_y`.
    pub g: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsResult {
    pub mu: usize,
    pub tau: usize,
    pub tau_es: usize,
    pub kappa: usize,
    pub delta: usize,
    pub branches: usize,
    pub multiplicity: u32,
    pub tjurina_ideal: Vec<Poly>,
    pub equisingularity_ideal: Vec<Poly>,
    pub kappa_witness: KappaWitness,
}

impl InvariantsResult {
    pub fn record(&self) -> InvariantRecord {
        InvariantRecord {
            mu: self.mu,
            tau: self.tau,
            tau_es: self.tau_es,
            kappa: self.kappa,
            delta: self.delta,
            branches: self.branches,
            multiplicity: self.multiplicity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertResult {
    pub h0: Vec<usize>,
    pub h1: Vec<usize>,
    pub mult: u32,
    pub degbound: u32,
    pub colength: usize,
    pub staircase: Vec<Poly>,
    pub standard_basis: Vec<Poly>,
    pub min_generators: usize,
    pub complete_intersection: bool,
}

impl HilbertResult {
    pub fn data(&self) -> HilbertSamuelData {
        HilbertSamuelData {
            h0: self.h0.clone(),
            h1: self.h1.clone(),
            mult: self.mult,
            degbound: self.degbound,
            colength: self.colength,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormDoc {
    pub exact: bool,
    pub lower: Q,
    pub upper: Q,
}

impl From<&ClosedForm> for ClosedFormDoc {
    fn from(c: &ClosedForm) -> Self {
        ClosedFormDoc {
            exact: matches!(c, ClosedForm::Exact(_)),
            lower: Q(c.lower().clone()),
            upper: Q(c.upper().clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResult {
    pub alpha: Q,
    pub gamma: Q,
    pub witness_ideal: Vec<Poly>,
    pub witness_colength: usize,
    pub witness_g: Option<Poly>,
    pub intersection: Option<u64>,
    pub lambda: Option<Q>,
    pub closed_form: Option<ClosedFormDoc>,
    pub status: String,
    pub candidates: usize,
}

impl From<&GammaReport> for GammaResult {
    fn from(r: &GammaReport) -> Self {
        GammaResult {
            alpha: Q(r.alpha.clone()),
            gamma: Q(r.gamma_value.clone()),
            witness_ideal: polys(&r.witness_ideal),
            witness_colength: r.witness_colength,
            witness_g: r.witness_g.clone().map(Poly),
            intersection: r.intersection,
            lambda: r.lambda.clone().map(Q),
            closed_form: r.closed_form.as_ref().map(ClosedFormDoc::from),
            status: r.status.to_string(),
            candidates: r.candidates,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauCiResult {
    pub tau_ci: usize,
    pub witness_ideal: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub passed: usize,
    pub failed: usize,
    pub facts: Vec<Fact>,
}

impl From<&VerificationReport> for VerificationResult {
    fn from(r: &VerificationReport) -> Self {
        let failed = r.failures().count();
        VerificationResult {
            passed: r.facts.len() - failed,
            failed,
            facts: r.facts.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultBody {
    Invariants(InvariantsResult),
    Hilbert(HilbertResult),
    Gamma(GammaResult),
    TauCi(TauCiResult),
    Verification(VerificationResult),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub input: InputEcho,
    pub result: ResultBody,
}

impl ReportDocument {
    pub fn new(input: InputEcho, result: ResultBody) -> Self {
        ReportDocument {
            schema: SCHEMA.to_string(),
            input,
            result,
        }
    }
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn serialize(doc: &ReportDocument) -> String {
    let value = serde_json::to_value(doc).expect("report documents are plain data");
    let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
    out.push('\n');
    out
}

pub fn parse(text: &str) -> serde_json::Result<ReportDocument> {
    serde_json::from_str(text)
}

/// One `path  value` line per leaf; facts of a verification get one line each.
pub fn render_table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    if let ResultBody::Verification(v) = &doc.result {
        for fact in &v.facts {
            let mark = if fact.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark}  {}  expected {}  observed {}", fact.id, fact.expected, fact.observed);
        }
        let _ = writeln!(out, "{} passed, {} failed", v.passed, v.failed);
        return out;
    }
    let value = serde_json::to_value(doc).expect("report documents are plain data");
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        let _ = writeln!(out, "{k:width$}  {v}");
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            rows.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        _ => rows.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn gamma_doc(witness_g: Option<&str>) -> ReportDocument {
        let result = GammaResult {
            alpha: Q(rat(1, 2)),
            gamma: Q(int(2) * rat(7, 2) * rat(7, 2)),
            witness_ideal: vec![Poly(parse_polynomial("y^3").unwrap()), Poly(parse_polynomial("x^2").unwrap())],
            witness_colength: 6,
            witness_g: witness_g.map(|g| Poly(parse_polynomial(g).unwrap())),
            intersection: Some(8),
            lambda: None,
            closed_form: Some(ClosedFormDoc {
                exact: true,
                lower: Q(rat(49, 2)),
                upper: Q(rat(49, 2)),
            }),
            status: "MatchesClosedForm".into(),
            candidates: 12,
        };
        let input = InputEcho {
            command: "gamma-search".into(),
            spec: Some("M_4".into()),
            alpha: Some(Q(rat(1, 2))),
            ..InputEcho::default()
        };
        ReportDocument::new(input, ResultBody::Gamma(result))
    }

    #[test]
    fn rationals_are_exact_strings() {
        // 2 (k - 1 + alpha)^2 at k = 3, alpha = 0.
        assert_eq!(serde_json::to_string(&Q(int(8))).unwrap(), "\"8\"");
        assert_eq!(serde_json::to_string(&Q(rat(-49, 2))).unwrap(), "\"-49/2\"");
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn missing_witness_is_null() {
        let text = serialize(&gamma_doc(None));
        assert!(text.contains("\"witness_g\": null"), "{text}");
        assert!(text.contains("\"gamma\": \"49/2\""));
        assert!(text.contains("\"schema\": \"gamma-sing/1\""));
    }

    #[test]
    fn round_trip_and_sorted_keys() {
        let doc = gamma_doc(Some("x^2 + 3*y^3"));
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        let keys: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn table_lists_leaves() {
        let table = render_table(&gamma_doc(None));
        assert!(table.lines().any(|l| l.starts_with("result.gamma") && l.ends_with("49/2")));
        assert!(table.lines().any(|l| l.starts_with("result.witness_ideal") && l.ends_with("[y^3, x^2]")));
    }
}
