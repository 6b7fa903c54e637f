//! The case registry and its audit.
//!
//! A registry lists candidate affine groups, each with the route by which it
//! is ruled out and the quantities that route needs. The audit recomputes
//! every inequality and every cap dimension that can be recomputed, and
//! compares the outcome with the recorded expectations.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{
    corollary_check, decimal, evaluate_dataset, lemma_verdict, refined_bound_check, Certificate, Dataset,
    EngineError, Verdict, VerdictKind,
};
use crate::rep::MeatAxeOptions;
use crate::weights::{spin_fixed_dim, uniform_wedge_cap, wedge_fixed_dim, ExponentMultiset, SpinExponentVector, SpinKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    #[serde(rename = "corollary")]
    Corollary,
    #[serde(rename = "fvalue")]
    FValue,
    #[serde(rename = "refined")]
    Refined,
    #[serde(rename = "out-of-scope")]
    OutOfScope,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Corollary => "corollary",
            Self::FValue => "fvalue",
            Self::Refined => "refined",
            Self::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictKind>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub f: Option<BigUint>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub sum: Option<BigUint>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub lhs: Option<BigUint>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub rhs: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSpec {
    pub kind: SpinKind,
    pub r: u32,
    pub t: Vec<u32>,
}

/// How a part's cap dimension can be recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CapWitness {
    /// `dim C_{Λ^m W}(x)` for an element with the given eigenvalue exponents.
    Wedge { r: u32, exponents: Vec<u32>, m: usize },
    /// Fixed dimension on a spin module.
    Spin(SpinSpec),
    /// The largest of several spin fixed dimensions.
    SpinMax(Vec<SpinSpec>),
    /// The largest `dim C_{Λ³W}(x)` over elements of order 7, 11, 13 in `GL_k(2)`.
    MaxWedge { k: usize },
}

impl CapWitness {
    pub fn cap_dim(&self) -> Result<u64, EngineError> {
        let spin = |s: &SpinSpec| -> Result<u64, EngineError> {
            Ok(spin_fixed_dim(&SpinExponentVector::new(s.kind, s.r, s.t.clone())?))
        };
        match self {
            Self::Wedge { r, exponents, m } => Ok(wedge_fixed_dim(&ExponentMultiset::new(*r, exponents.clone())?, *m)?),
            Self::Spin(s) => spin(s),
            Self::SpinMax(list) => list
                .iter()
                .map(spin)
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .ok_or_else(|| EngineError::Malformed("empty spin_max witness".into())),
            Self::MaxWedge { k } => Ok(uniform_wedge_cap(*k)?.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Part {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub cap_dim: u32,
    #[serde(with = "decimal")]
    pub count: BigUint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CapWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseRecord {
    pub row: u32,
    pub d: u32,
    pub socle: String,
    pub module: String,
    pub route: Route,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Part>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    /// When present, every row `1..=table_rows` must have a case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_rows: Option<u32>,
    pub cases: Vec<CaseRecord>,
}

impl Registry {
    pub fn parse(text: &str) -> Result<Self, EngineError> {
        serde_json::from_str(text).map_err(|e| EngineError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "discrepancy")]
    Discrepancy,
    #[serde(rename = "data-required")]
    DataRequired,
    #[serde(rename = "out-of-scope")]
    OutOfScope,
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ok => "ok",
            Self::Discrepancy => "discrepancy",
            Self::DataRequired => "data-required",
            Self::OutOfScope => "out-of-scope",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub row: u32,
    pub d: u32,
    pub socle: String,
    pub module: String,
    pub route: Route,
    pub status: CaseStatus,
    /// `recomputed` (from a dataset), `reported` (a recorded f value) or `bound`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub values: BTreeMap<String, String>,
    pub issues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowOutcome {
    pub row: u32,
    pub cases: Vec<CaseOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rows: Vec<RowOutcome>,
    pub missing_rows: Vec<u32>,
    pub discrepancies: usize,
    pub data_required: usize,
}

impl AuditReport {
    /// 0 when consistent, 2 on any discrepancy, 3 when only data is missing.
    pub fn exit_code(&self) -> i32 {
        if self.discrepancies > 0 {
            2
        } else if self.data_required > 0 {
            3
        } else {
            0
        }
    }

    pub fn cases(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.rows.iter().flat_map(|r| &r.cases)
    }

    /// One line per case, then one line per missing row and a summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in self.cases() {
            let verdict = c.verdict.as_ref().map_or("-".to_string(), |v| v.kind.to_string());
            write!(out, "row {:>2} | d={} | {} | {} | {} | {} | {}", c.row, c.d, c.socle, c.module, c.route, verdict, c.status).unwrap();
            if let Some(src) = c.source {
                write!(out, " ({src})").unwrap();
            }
            if let Some(cert) = c.verdict.as_ref().and_then(|v| v.certificate.as_ref()) {
                write!(out, " | {cert}").unwrap();
            }
            for issue in &c.issues {
                write!(out, " | {issue}").unwrap();
            }
            out.push('\n');
        }
        for r in &self.missing_rows {
            writeln!(out, "row {r:>2} | missing from registry | discrepancy").unwrap();
        }
        let total = self.cases().count();
        writeln!(out, "audit: {total} cases, {} discrepancies, {} data-required", self.discrepancies, self.data_required)
            .unwrap();
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct AuditOptions {
    /// Directory that dataset paths are relative to.
    pub base_dir: PathBuf,
    pub meataxe: MeatAxeOptions,
}

fn check_value(issues: &mut Vec<String>, what: &str, expected: &Option<BigUint>, actual: &BigUint) {
    if let Some(e) = expected {
        if e != actual {
            issues.push(format!("{what} recomputed as {actual}, recorded {e}"));
        }
    }
}

fn inequality_values(values: &mut BTreeMap<String, String>, v: &Verdict) -> Option<(BigUint, BigUint)> {
    if let Some(Certificate::Inequality(b)) = &v.certificate {
        values.insert("lhs".into(), b.lhs.to_string());
        values.insert("rhs".into(), b.rhs.to_string());
        Some((b.lhs.clone(), b.rhs.clone()))
    } else {
        None
    }
}

fn load_dataset(base: &Path, rel: &str) -> Result<Dataset, String> {
    let path = base.join(rel);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Dataset::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn audit_case(c: &CaseRecord, opts: &AuditOptions) -> Result<CaseOutcome, EngineError> {
    let mut values = BTreeMap::new();
    let mut issues = Vec::new();
    let mut source = None;
    let malformed = |msg: &str| EngineError::Malformed(format!("row {} ({}): {msg}", c.row, c.socle));
    let verdict = match c.route {
        Route::OutOfScope => None,
        Route::Corollary => {
            let alpha = c.alpha.as_ref().ok_or_else(|| malformed("corollary route needs alpha"))?;
            source = Some("bound");
            let v = corollary_check(alpha, c.d);
            if let Some((lhs, rhs)) = inequality_values(&mut values, &v) {
                check_value(&mut issues, "lhs", &c.expected.lhs, &lhs);
                check_value(&mut issues, "rhs", &c.expected.rhs, &rhs);
            }
            Some(v)
        }
        Route::Refined => {
            if c.parts.is_empty() {
                return Err(malformed("refined route needs parts"));
            }
            source = Some("bound");
            for (i, p) in c.parts.iter().enumerate() {
                if let Some(w) = &p.witness {
                    let cap = w.cap_dim()?;
                    values.insert(format!("cap{}", i + 1), cap.to_string());
                    if cap != u64::from(p.cap_dim) {
                        issues.push(format!("part {} cap recomputed as {cap}, recorded {}", i + 1, p.cap_dim));
                    }
                }
            }
            let parts: Vec<(u32, BigUint)> = c.parts.iter().map(|p| (p.cap_dim, p.count.clone())).collect();
            match refined_bound_check(&parts, c.d) {
                Ok(v) => {
                    if let Some((lhs, rhs)) = inequality_values(&mut values, &v) {
                        check_value(&mut issues, "sum", &c.expected.sum, &lhs);
                        check_value(&mut issues, "rhs", &c.expected.rhs, &rhs);
                    }
                    Some(v)
                }
                Err(e) => {
                    issues.push(e.to_string());
                    None
                }
            }
        }
        Route::FValue => match &c.dataset {
            Some(rel) => match load_dataset(&opts.base_dir, rel).and_then(|ds| {
                let d = ds.module_dim().map_err(|e| e.to_string())?;
                evaluate_dataset(&ds, opts.meataxe).map(|ev| (d, ev)).map_err(|e| e.to_string())
            }) {
                Ok((d, ev)) => {
                    source = Some("recomputed");
                    if d != c.d as usize {
                        issues.push(format!("dataset module has dimension {d}, recorded {}", c.d));
                    }
                    values.insert("f".into(), ev.report.total.to_string());
                    check_value(&mut issues, "f", &c.expected.f, &ev.report.total);
                    Some(ev.verdict)
                }
                Err(e) => {
                    issues.push(e);
                    None
                }
            },
            None => match &c.expected.f {
                Some(f) => {
                    source = Some("reported");
                    values.insert("f".into(), f.to_string());
                    match lemma_verdict(f, c.d) {
                        Ok(v) => Some(v),
                        Err(e) => {
                            issues.push(e.to_string());
                            None
                        }
                    }
                }
                None => None,
            },
        },
    };
    if c.route != Route::OutOfScope {
        let expected = c.expected.verdict.unwrap_or(VerdictKind::NotEp);
        if let Some(v) = &verdict {
            if !v.verify_arithmetic() {
                issues.push("certificate does not re-verify".into());
            }
            if v.kind != expected {
                issues.push(format!("verdict {} but {expected} recorded", v.kind));
            }
        }
    }
    let status = if !issues.is_empty() {
        CaseStatus::Discrepancy
    } else if c.route == Route::OutOfScope {
        CaseStatus::OutOfScope
    } else if verdict.is_none() {
        CaseStatus::DataRequired
    } else {
        CaseStatus::Ok
    };
    Ok(CaseOutcome {
        row: c.row,
        d: c.d,
        socle: c.socle.clone(),
        module: c.module.clone(),
        route: c.route,
        status,
        source,
        verdict,
        values,
        issues,
    })
}

/// Audits every case; the report groups cases by row in increasing order.
pub fn audit_registry(registry: &Registry, opts: &AuditOptions) -> Result<AuditReport, EngineError> {
    let mut by_row: BTreeMap<u32, Vec<CaseOutcome>> = BTreeMap::new();
    for c in &registry.cases {
        if c.row == 0 || registry.table_rows.is_some_and(|n| c.row > n) {
            return Err(EngineError::Malformed(format!("row {} is outside the table", c.row)));
        }
        by_row.entry(c.row).or_default().push(audit_case(c, opts)?);
    }
    let missing_rows: Vec<u32> = registry
        .table_rows
        .map(|n| (1..=n).filter(|r| !by_row.contains_key(r)).collect())
        .unwrap_or_default();
    let rows: Vec<RowOutcome> = by_row.into_iter().map(|(row, cases)| RowOutcome { row, cases }).collect();
    let all = || rows.iter().flat_map(|r| &r.cases);
    let discrepancies = all().filter(|c| c.status == CaseStatus::Discrepancy).count() + missing_rows.len();
    let data_required = all().filter(|c| c.status == CaseStatus::DataRequired).count();
    Ok(AuditReport { rows, missing_rows, discrepancies, data_required })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(route: Route) -> CaseRecord {
        CaseRecord {
            row: 1,
            d: 40,
            socle: "PSp4(9)".into(),
            module: "Weil".into(),
            route,
            alpha: Some(BigUint::from(612624u32)),
            parts: vec![],
            dataset: None,
            expected: Expected::default(),
            note: None,
        }
    }

    #[test]
    fn empty_registry() {
        let r = audit_registry(&Registry::default(), &AuditOptions::default()).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn tampered_alpha_is_flagged() {
        let mut c = case(Route::Corollary);
        let reg = Registry { table_rows: None, cases: vec![c.clone()] };
        assert_eq!(audit_registry(&reg, &AuditOptions::default()).unwrap().exit_code(), 0);
        c.alpha = Some(BigUint::from(1u32) << 40u32);
        let reg = Registry { table_rows: None, cases: vec![c] };
        let r = audit_registry(&reg, &AuditOptions::default()).unwrap();
        assert_eq!(r.discrepancies, 1);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn missing_data_and_rows() {
        let mut c = case(Route::FValue);
        c.alpha = None;
        let reg = Registry { table_rows: Some(2), cases: vec![c] };
        let r = audit_registry(&reg, &AuditOptions::default()).unwrap();
        assert_eq!(r.data_required, 1);
        assert_eq!(r.missing_rows, vec![2]);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn witnesses_recompute_caps() {
        let w = CapWitness::Wedge { r: 7, exponents: vec![0, 0, 0, 0, 0, 1, 2, 4], m: 3 };
        assert_eq!(w.cap_dim().unwrap(), 11);
        let s = |kind, r, t: &[u32]| SpinSpec { kind, r, t: t.to_vec() };
        let max = CapWitness::SpinMax(vec![
            s(SpinKind::DEven, 7, &[0, 0, 0, 0, 0, 1, 2, 3]),
            s(SpinKind::DEven, 7, &[0, 0, 1, 1, 2, 2, 3, 3]),
            s(SpinKind::DEven, 5, &[0, 0, 1, 1, 1, 2, 2, 2]),
        ]);
        assert_eq!(max.cap_dim().unwrap(), 32);
        assert_eq!(CapWitness::MaxWedge { k: 8 }.cap_dim().unwrap(), 11);
    }

    #[test]
    fn registry_json_round_trip() {
        let text = r#"{"table_rows": 1, "cases": [{"row": 1, "d": 40, "socle": "PSp4(9)", "module": "Weil",
            "route": "corollary", "alpha": "612624", "expected": {"verdict": "notEP"}}]}"#;
        let reg = Registry::parse(text).unwrap();
        assert_eq!(Registry::parse(&reg.to_json()).unwrap(), reg);
        assert!(Registry::parse(&text.replace("corollary", "guess")).is_err());
        assert!(Registry::parse(&text.replace("612624", "6e5")).is_err());
    }
}
