//! Maximal-class datasets (`.mxl`, JSON syntax):
//!
//! ```json
//! {
//!   "group": "L7(2)",
//!   "order": "163849992929280",
//!   "complete": true,
//!   "generators": ["GF2 7 7\n...", "..."],
//!   "missing_bound": "0",
//!   "classes": [
//!     {"label": "P1", "class_size": "127", "module_tag": "wedge3", "gens": ["GF2 7 7\n..."]}
//!   ]
//! }
//! ```
//!
//! `generators` (of the whole group) and `missing_bound` (an upper bound on
//! the contributions of classes not listed) are optional.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{
    decimal, f_value, lemma_verdict, nonzero_count, Certificate, EngineError, FValueReport, MaximalClassRecord,
    Verdict,
};
use crate::gf2::text::{format_matrix, parse_matrix};
use crate::gf2::BitMatrix;
use crate::rep::{is_irreducible_with, MeatAxeOptions, ModuleTag};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    label: String,
    #[serde(with = "decimal")]
    class_size: BigUint,
    module_tag: ModuleTag,
    gens: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    group: String,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    order: Option<BigUint>,
    complete: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<String>,
    #[serde(default, with = "decimal::option", skip_serializing_if = "Option::is_none")]
    missing_bound: Option<BigUint>,
    classes: Vec<RawClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub group: String,
    pub order: Option<BigUint>,
    pub complete: bool,
    pub generators: Vec<BitMatrix>,
    pub missing_bound: Option<BigUint>,
    pub classes: Vec<MaximalClassRecord>,
}

fn parse_gens(what: &str, blocks: &[String]) -> Result<Vec<BitMatrix>, EngineError> {
    blocks
        .iter()
        .enumerate()
        .map(|(i, b)| parse_matrix(b).map_err(|e| EngineError::Malformed(format!("{what}, matrix {}: {e}", i + 1))))
        .collect()
}

impl Dataset {
    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let raw: RawDataset = serde_json::from_str(text).map_err(|e| EngineError::Json(e.to_string()))?;
        let classes = raw
            .classes
            .into_iter()
            .map(|c| {
                Ok(MaximalClassRecord {
                    generators: parse_gens(&format!("class {}", c.label), &c.gens)?,
                    label: c.label,
                    class_size: c.class_size,
                    module_tag: c.module_tag,
                })
            })
            .collect::<Result<_, EngineError>>()?;
        Ok(Self {
            group: raw.group,
            order: raw.order,
            complete: raw.complete,
            generators: parse_gens("group generators", &raw.generators)?,
            missing_bound: raw.missing_bound,
            classes,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawDataset {
            group: self.group.clone(),
            order: self.order.clone(),
            complete: self.complete,
            generators: self.generators.iter().map(format_matrix).collect(),
            missing_bound: self.missing_bound.clone(),
            classes: self
                .classes
                .iter()
                .map(|c| RawClass {
                    label: c.label.clone(),
                    class_size: c.class_size.clone(),
                    module_tag: c.module_tag.clone(),
                    gens: c.generators.iter().map(format_matrix).collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// The module tag shared by all classes.
    pub fn module_tag(&self) -> Result<ModuleTag, EngineError> {
        let first = self.classes.first().ok_or(EngineError::NoClasses)?;
        Ok(first.module_tag.clone())
    }

    /// Dimension `k` of the natural module, from any matrix in the file.
    pub fn natural_dim(&self) -> Result<usize, EngineError> {
        self.generators
            .iter()
            .chain(self.classes.iter().flat_map(|c| &c.generators))
            .map(|g| g.nrows())
            .next()
            .ok_or_else(|| EngineError::Malformed("dataset contains no matrices".into()))
    }

    pub fn module_dim(&self) -> Result<usize, EngineError> {
        Ok(self.module_tag()?.induced_dim(self.natural_dim()?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatasetEvaluation {
    pub report: FValueReport,
    /// Irreducibility of the whole group on the module, when its generators
    /// are in the file.
    pub irreducible: Option<bool>,
    pub verdict: Verdict,
}

/// Computes `f` from a dataset and turns it into a verdict. Equality with
/// `2^d - 1` only counts for complete datasets; an incomplete one can still
/// rule out extreme primitivity through its `missing_bound`.
pub fn evaluate_dataset(ds: &Dataset, opts: MeatAxeOptions) -> Result<DatasetEvaluation, EngineError> {
    let tag = ds.module_tag()?;
    let d = ds.module_dim()?;
    let report = f_value(&ds.classes, &tag, d)?;
    let irreducible = if ds.generators.is_empty() {
        None
    } else {
        let induced = tag.induce_all(&ds.generators)?;
        Some(is_irreducible_with(&induced, opts)?)
    };
    match irreducible {
        Some(false) => return Err(EngineError::Reducible),
        Some(true) => report.check_fix_bound()?,
        None => {}
    }
    let d32 = d as u32;
    let verdict = if ds.complete {
        lemma_verdict(&report.total, d32)?
    } else if let Some(missing) = &ds.missing_bound {
        let padded = &report.total + missing;
        let rhs = nonzero_count(d32);
        let cert = Certificate::Lemma { f: padded.clone(), d: d32, rhs: rhs.clone() };
        if padded < rhs {
            Verdict { kind: super::VerdictKind::NotEp, certificate: Some(cert) }
        } else {
            Verdict::inconclusive(Some(cert))
        }
    } else {
        Verdict::inconclusive(None)
    };
    Ok(DatasetEvaluation { report, irreducible, verdict })
}
