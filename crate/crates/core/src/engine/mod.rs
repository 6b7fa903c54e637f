//! Verdicts on extreme primitivity of `V:H`: the direct orbit check, the
//! fixed-point count `f` over maximal subgroups, counting bounds, and the
//! audit of a case registry.

mod dataset;
pub mod decimal;
mod direct;
mod fvalue;
mod registry;
mod verdict;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gf2::Gf2Error;
use crate::group::GroupError;
use crate::rep::RepError;
use crate::weights::WeightsError;

pub use dataset::{evaluate_dataset, Dataset, DatasetEvaluation};
pub use direct::{direct_ep_check, verify_block_certificate, DirectOptions};
pub use fvalue::{f_value, gaussian_binomial, ClassFix, FValueReport, MaximalClassRecord};
pub use registry::{
    audit_registry, AuditOptions, AuditReport, CapWitness, CaseOutcome, CaseRecord, CaseStatus, Expected, Part,
    Registry, Route, RowOutcome, SpinSpec,
};
pub use verdict::{
    corollary_check, lemma_verdict, nonzero_count, refined_bound_check, BoundInstance, BoundTerm, Certificate,
    Verdict, VerdictKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error("f = {f} exceeds 2^{d}-1, so the class list is wrong")]
    LemmaViolation { f: BigUint, d: u32 },
    #[error("cap dimension {cap} exceeds module dimension {d}")]
    CapAboveDimension { cap: u32, d: u32 },
    #[error("class {label} fixes a {dim}-dimensional subspace of a {d}-dimensional module")]
    FixTooLarge { label: String, dim: usize, d: usize },
    #[error("no maximal classes given")]
    NoClasses,
    #[error("class {label} has module tag {found}, expected {expected}")]
    TagMismatch { label: String, expected: String, found: String },
    #[error("module dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("class {label}: generator {index} is not invertible")]
    NonInvertible { label: String, index: usize },
    #[error("{0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(String),
    #[error("the group is reducible on the module")]
    Reducible,
    #[error("the group is trivial")]
    TrivialGroup,
    #[error("{0}")]
    Io(String),
}
