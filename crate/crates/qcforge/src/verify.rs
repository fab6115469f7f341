//! Rebuilds recorded codes and checks their claimed parameters.
//!
//! QC records are rebuilt from their generator strings, Construction X and
//! modification records from the records they reference, and any record
//! with explicit `rows` from those rows. The dimension is always checked.
//! The distance is computed exactly within the engine budget; above it the
//! claim is tested against a structural lower bound (the index times a BCH
//! bound of `<g>` for QC codes, propagated through Construction X and the
//! modifications) and a sampled upper bound.

use std::collections::BTreeMap;
use std::fmt;

use qcforge_core::codec::decode_gen;
use qcforge_core::constructx::{construction_x, modify, CxTriple, Modify};
use qcforge_core::cyclic::{bch_bound, cyclic_code_from_gen};
use qcforge_core::linalg::{
    classify_properties, min_distance_exact, weight_upper_bound, DistanceBudget, DistanceEngine, GenMatrix,
};
use qcforge_core::qc::{build_qc_matrix, CodeRecord, Exactness, ModifyMethod, Property, ProvenanceKind};
use qcforge_core::Error;
use serde::Serialize;

use crate::corpus::RecordIndex;

const MAX_DEPTH: usize = 8;
const UPPER_SEED: u64 = 0x7163_666f_7267_6500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// `n`, `k`, exact `d` and the claimed properties all match.
    Confirmed,
    /// Everything checked matches; `d` is only bracketed.
    BoundOnly,
    ParameterMismatch,
    ParseError,
    /// Nothing to rebuild: parameters only, or a missing reference.
    Unverifiable,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [
        Outcome::Confirmed,
        Outcome::BoundOnly,
        Outcome::ParameterMismatch,
        Outcome::ParseError,
        Outcome::Unverifiable,
    ];
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Confirmed => "confirmed",
            Outcome::BoundOnly => "bound-only",
            Outcome::ParameterMismatch => "parameter-mismatch",
            Outcome::ParseError => "parse-error",
            Outcome::Unverifiable => "unverifiable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistanceCheck {
    Exact { d: usize },
    Bounds { lower: usize, upper: usize },
}

impl fmt::Display for DistanceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceCheck::Exact { d } => write!(f, "d={d}"),
            DistanceCheck::Bounds { lower, upper } => write!(f, "{lower}<=d<={upper}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<u8>,
    pub claimed: String,
    pub outcome: Outcome,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub distance: Option<DistanceCheck>,
    pub claimed_properties: Vec<Property>,
    pub properties: Option<Vec<Property>>,
    pub issues: Vec<String>,
}

impl VerifyEntry {
    fn new(r: &CodeRecord) -> Self {
        VerifyEntry {
            id: r.id.clone(),
            table: r.table,
            claimed: r.label(),
            outcome: Outcome::Confirmed,
            n: None,
            k: None,
            distance: None,
            claimed_properties: r.properties.clone(),
            properties: None,
            issues: Vec::new(),
        }
    }

    fn fail(mut self, outcome: Outcome, issue: String) -> Self {
        self.outcome = outcome;
        self.issues.push(issue);
        self
    }
}

impl fmt::Display for VerifyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} {:<16} {:<18}", self.id.as_deref().unwrap_or("-"), self.claimed, self.outcome.to_string())?;
        if let (Some(n), Some(k)) = (self.n, self.k) {
            write!(f, " n={n} k={k}")?;
        }
        if let Some(d) = &self.distance {
            write!(f, " {d}")?;
        }
        if let Some(props) = &self.properties {
            let names: Vec<String> = props.iter().map(Property::to_string).collect();
            write!(f, " [{}]", names.join(", "))?;
        }
        if !self.issues.is_empty() {
            write!(f, " : {}", self.issues.join("; "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn counts(&self) -> BTreeMap<Outcome, usize> {
        let mut c: BTreeMap<Outcome, usize> = Outcome::ALL.iter().map(|&o| (o, 0)).collect();
        for e in &self.entries {
            *c.entry(e.outcome).or_default() += 1;
        }
        c
    }

    /// Whether any entry is a parameter mismatch; bound-only entries never
    /// count.
    pub fn has_mismatch(&self) -> bool {
        self.entries.iter().any(|e| e.outcome == Outcome::ParameterMismatch)
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.counts().iter().map(|(o, c)| format!("{o} {c}")).collect();
        format!("{} records: {}", self.entries.len(), parts.join(", "))
    }

    /// One line per entry plus the summary.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        s.push_str(&self.summary());
        s.push('\n');
        s
    }

    /// The same content as line-delimited JSON.
    pub fn to_json_lines(&self) -> String {
        self.entries.iter().map(|e| serde_json::to_string(e).expect("entries serialize") + "\n").collect()
    }
}

/// Why a record could not be rebuilt.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("{0}")]
    Parse(String),
    /// The provenance is internally inconsistent (e.g. `g` does not divide
    /// `x^m - 1`, or `C2` is not a subcode of `C1`).
    #[error("{0}")]
    Inconsistent(String),
    #[error("{0}")]
    Unavailable(String),
}

fn inconsistent(e: Error) -> BuildError {
    match e {
        Error::Parse { .. } => BuildError::Parse(e.to_string()),
        e => BuildError::Inconsistent(e.to_string()),
    }
}

/// A rebuilt code: a basis plus a lower bound on its distance that needs no
/// enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltCode {
    pub basis: GenMatrix,
    pub lower: usize,
}

/// Rebuilds the code of `r`, following references through `index`.
pub fn build_code(r: &CodeRecord, index: &RecordIndex) -> Result<BuiltCode, BuildError> {
    build_at(r, index, 0)
}

fn resolve<'a>(index: &'a RecordIndex, id: &str) -> Result<&'a CodeRecord, BuildError> {
    index.get(id).ok_or_else(|| BuildError::Unavailable(format!("referenced record {id} is not available")))
}

fn build_at(r: &CodeRecord, index: &RecordIndex, depth: usize) -> Result<BuiltCode, BuildError> {
    if depth > MAX_DEPTH {
        return Err(BuildError::Inconsistent("reference chain too deep".into()));
    }
    let field = r.field().map_err(inconsistent)?;
    if !r.rows.is_empty() {
        let basis = r.catalog_matrix().map_err(inconsistent)?.rref().matrix;
        let small = DistanceBudget::default().allows(field, basis.rows());
        let lower = match small {
            true => min_distance_exact(&basis, None).map_err(inconsistent)?.weight,
            false => 1,
        };
        return Ok(BuiltCode { basis, lower });
    }
    match r.provenance_kind {
        ProvenanceKind::Qc | ProvenanceKind::QcProducts => {
            let strings = r.g_encoded.iter().chain(&r.fs_encoded);
            for s in strings {
                decode_gen(field, s).map_err(|e| BuildError::Parse(format!("{s:?}: {e}")))?;
            }
            let spec = r.qc_spec().map_err(inconsistent)?;
            let cyclic = cyclic_code_from_gen(spec.g(), spec.m()).map_err(inconsistent)?;
            let bch = bch_bound(&cyclic).map_err(inconsistent)?;
            let lower = if spec.satisfies_hypotheses() { spec.ell() * bch } else { bch };
            Ok(BuiltCode { basis: build_qc_matrix(&spec).rref().matrix, lower })
        }
        ProvenanceKind::ConstructionX => {
            let cx = r
                .cx_components
                .as_ref()
                .ok_or_else(|| BuildError::Inconsistent("construction_x record without components".into()))?;
            let c1 = build_at(resolve(index, &cx.c1)?, index, depth + 1)?;
            let c2 = build_at(resolve(index, &cx.c2)?, index, depth + 1)?;
            let c3 = build_at(resolve(index, &cx.c3)?, index, depth + 1)?;
            let lower = c2.lower.min(c1.lower + c3.lower);
            let triple = CxTriple::new(c1.basis, c2.basis, c3.basis).map_err(inconsistent)?;
            let g = construction_x(&triple).map_err(inconsistent)?;
            Ok(BuiltCode { basis: g.rref().matrix, lower })
        }
        ProvenanceKind::Modification => {
            let m = r
                .modification
                .as_ref()
                .ok_or_else(|| BuildError::Inconsistent("modification record without details".into()))?;
            let src = build_at(resolve(index, &m.source)?, index, depth + 1)?;
            let positions: Vec<usize> = m.positions.iter().map(|&p| p.saturating_sub(1)).collect();
            let (method, lower) = match m.method {
                ModifyMethod::Shorten => (Modify::Shorten, src.lower),
                ModifyMethod::Puncture => (Modify::Puncture, src.lower.saturating_sub(positions.len()).max(1)),
                // the even-weight subcode has even distance
                ModifyMethod::Expurgate => (Modify::Expurgate, src.lower + src.lower % 2),
            };
            let basis = modify(&src.basis, method, &positions).map_err(inconsistent)?;
            Ok(BuiltCode { basis, lower })
        }
        ProvenanceKind::ParamsOnly => Err(BuildError::Unavailable("parameters only, no generator".into())),
        ProvenanceKind::Catalog => Err(BuildError::Inconsistent("catalog record without rows".into())),
    }
}

/// Checks records against rebuilt codes.
pub struct Verifier<'a> {
    pub index: &'a RecordIndex,
    pub engine: &'a dyn DistanceEngine,
    /// Random codewords drawn for the upper bound above the budget.
    pub upper_samples: usize,
}

impl<'a> Verifier<'a> {
    pub fn new(index: &'a RecordIndex, engine: &'a dyn DistanceEngine) -> Self {
        Verifier { index, engine, upper_samples: 4096 }
    }

    /// Exact distance within the budget, otherwise the structural lower
    /// bound and a sampled upper bound.
    pub fn measure(&self, built: &BuiltCode) -> qcforge_core::Result<DistanceCheck> {
        let basis = &built.basis;
        if self.engine.budget().allows(basis.field(), basis.rows()) {
            let d = self.engine.min_distance(basis, None)?.weight;
            return Ok(DistanceCheck::Exact { d });
        }
        let upper = weight_upper_bound(basis, self.upper_samples, UPPER_SEED).unwrap_or(0);
        Ok(DistanceCheck::Bounds { lower: built.lower, upper })
    }

    pub fn verify_all<'r>(&self, records: impl IntoIterator<Item = &'r CodeRecord>) -> VerifyReport {
        VerifyReport { entries: records.into_iter().map(|r| self.verify(r)).collect() }
    }

    pub fn verify(&self, r: &CodeRecord) -> VerifyEntry {
        let mut e = VerifyEntry::new(r);
        let built = match build_code(r, self.index) {
            Ok(b) => b,
            Err(BuildError::Parse(m)) => return e.fail(Outcome::ParseError, m),
            Err(BuildError::Inconsistent(m)) => return e.fail(Outcome::ParameterMismatch, m),
            Err(BuildError::Unavailable(m)) => return e.fail(Outcome::Unverifiable, m),
        };
        let basis = &built.basis;
        let (n, k) = (basis.cols(), basis.rows());
        e.n = Some(n);
        e.k = Some(k);
        if n != r.n {
            e.issues.push(format!("length {n}, claimed {}", r.n));
        }
        if k != r.k {
            e.issues.push(format!("dimension {k}, claimed {}", r.k));
        }
        if k == 0 {
            e.issues.push("the rebuilt code is zero".into());
            e.outcome = Outcome::ParameterMismatch;
            return e;
        }

        match classify_properties(basis) {
            Ok(flags) => {
                for p in &r.properties {
                    if !p.holds(&flags) {
                        e.issues.push(format!("claimed {p} does not hold"));
                    }
                }
                e.properties = Some(Property::list(&flags));
            }
            Err(err) => e.issues.push(format!("property check failed: {err}")),
        }

        let claim = r.d;
        match self.measure(&built) {
            Ok(DistanceCheck::Exact { d }) => {
                e.distance = Some(DistanceCheck::Exact { d });
                let ok = match r.d_exactness_flag {
                    Exactness::Exact | Exactness::Claimed => d == claim,
                    Exactness::LowerBound => d >= claim,
                    Exactness::UpperBound => d <= claim,
                };
                if !ok {
                    e.issues.push(format!("minimum distance {d}, claimed {claim}"));
                }
            }
            Ok(DistanceCheck::Bounds { lower, upper }) => {
                e.distance = Some(DistanceCheck::Bounds { lower, upper });
                if claim > upper && r.d_exactness_flag != Exactness::UpperBound {
                    e.issues.push(format!("a codeword of weight {upper} is below the claimed d = {claim}"));
                }
                if claim < lower && r.d_exactness_flag != Exactness::LowerBound {
                    e.issues.push(format!("d >= {lower} exceeds the claimed d = {claim}"));
                }
            }
            Err(err) => e.issues.push(format!("distance computation failed: {err}")),
        }

        e.outcome = match (&e.issues.is_empty(), &e.distance) {
            (false, _) => Outcome::ParameterMismatch,
            (true, Some(DistanceCheck::Exact { .. })) => Outcome::Confirmed,
            (true, _) => Outcome::BoundOnly,
        };
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcforge_core::linalg::SequentialEngine;
    use qcforge_core::qc::{CxComponents, CxDirection, Modification};

    fn qc(id: &str, m: usize, g: &str, fs: &[&str], k: usize, d: usize) -> CodeRecord {
        let mut r = CodeRecord::params(2, m * fs.len(), k, d, Exactness::Claimed, ProvenanceKind::Qc);
        r.id = Some(id.into());
        r.m = Some(m);
        r.ell = Some(fs.len());
        r.g_encoded = Some(g.into());
        r.fs_encoded = fs.iter().map(|s| s.to_string()).collect();
        r
    }

    fn catalog(id: &str, rows: &[&str], d: usize) -> CodeRecord {
        let mut r = CodeRecord::params(2, rows[0].len(), rows.len(), d, Exactness::Exact, ProvenanceKind::Catalog);
        r.id = Some(id.into());
        r.rows = rows.iter().map(|s| s.to_string()).collect();
        r
    }

    #[test]
    fn qc_outcomes() {
        let engine = SequentialEngine::default();
        let index = RecordIndex::default();
        let v = Verifier::new(&index, &engine);
        // [14,4] from two copies of the Hamming code
        let good = qc("h", 7, "31", &["1", "1"], 4, 6);
        assert_eq!(v.verify(&good).outcome, Outcome::Confirmed);
        let wrong_d = qc("h", 7, "31", &["1", "1"], 4, 7);
        assert_eq!(v.verify(&wrong_d).outcome, Outcome::ParameterMismatch);
        let wrong_k = qc("h", 7, "31", &["1", "1"], 5, 6);
        assert_eq!(v.verify(&wrong_k).outcome, Outcome::ParameterMismatch);
        let bad = qc("h", 7, "39", &["1", "1"], 4, 6);
        assert_eq!(v.verify(&bad).outcome, Outcome::ParseError);
        let mut lcd = good.clone();
        lcd.properties = vec![Property::Lcd];
        let entry = v.verify(&lcd);
        assert_eq!(entry.outcome, Outcome::ParameterMismatch);
        assert!(entry.issues[0].contains("LCD"));
    }

    #[test]
    fn bounds_above_the_budget() {
        let engine = SequentialEngine { budget: DistanceBudget::uniform(2) };
        let index = RecordIndex::default();
        let v = Verifier::new(&index, &engine);
        let entry = v.verify(&qc("h", 7, "31", &["1", "1"], 4, 6));
        assert_eq!(entry.outcome, Outcome::BoundOnly);
        assert_eq!(entry.distance, Some(DistanceCheck::Bounds { lower: 6, upper: 6 }));
        assert_eq!(v.verify(&qc("h", 7, "31", &["1", "1"], 4, 2)).outcome, Outcome::ParameterMismatch);
    }

    #[test]
    fn references_are_followed() {
        let ham = qc("ham", 7, "31", &["1"], 4, 3);
        let even = qc("even", 7, "53", &["1"], 3, 4);
        let c3 = catalog("c3", &["1"], 1);
        let mut cx = CodeRecord::params(2, 8, 4, 4, Exactness::Claimed, ProvenanceKind::ConstructionX);
        cx.id = Some("cx".into());
        cx.cx_components =
            Some(CxComponents { c1: "ham".into(), c2: "even".into(), c3: "c3".into(), direction: CxDirection::Super });
        let mut sh = CodeRecord::params(2, 6, 2, 4, Exactness::Claimed, ProvenanceKind::Modification);
        sh.modification =
            Some(Modification { method: ModifyMethod::Shorten, positions: vec![1], source: "even".into() });
        let all = [ham, even, c3, cx.clone(), sh];
        let index = RecordIndex::new(&all);
        let engine = SequentialEngine::default();
        let v = Verifier::new(&index, &engine);
        let report = v.verify_all(&all);
        assert!(report.entries.iter().all(|e| e.outcome == Outcome::Confirmed), "{}", report.render());

        let mut missing = cx;
        missing.cx_components.as_mut().unwrap().c3 = "nope".into();
        assert_eq!(v.verify(&missing).outcome, Outcome::Unverifiable);
        let params = CodeRecord::params(2, 10, 3, 4, Exactness::Claimed, ProvenanceKind::ParamsOnly);
        assert_eq!(v.verify(&params).outcome, Outcome::Unverifiable);
    }

    #[test]
    fn report_rendering() {
        let engine = SequentialEngine::default();
        let index = RecordIndex::default();
        let v = Verifier::new(&index, &engine);
        let report = v.verify_all(&[qc("h", 7, "31", &["1", "1"], 4, 6)]);
        assert!(!report.has_mismatch());
        assert!(report.render().contains("confirmed"));
        assert!(report.summary().starts_with("1 records: confirmed 1"));
        assert!(report.to_json_lines().contains("\"outcome\":\"confirmed\""));
    }
}
