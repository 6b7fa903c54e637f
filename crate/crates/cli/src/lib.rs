//! The `ep` command line: argument definitions and a `run` entry point that
//! returns the exit code, the text for stdout/stderr and a JSON report.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use epcheck::engine::{
    audit_registry, corollary_check, decimal, direct_ep_check, evaluate_dataset, f_value, lemma_verdict,
    refined_bound_check, AuditOptions, Dataset, DirectOptions, EngineError, MaximalClassRecord, Registry,
};
use epcheck::group::{parse_grp, tiny_maximal_subgroups, GroupError, MatrixGroup, DEFAULT_CAP_DIM, DEFAULT_CAP_ORDER};
use epcheck::rep::{MeatAxeOptions, ModuleTag, RepError};
use epcheck::weights::{
    max_wedge_dim_over_order_r, spin_fixed_dim, uniform_wedge_cap, wedge_fixed_dim, ExponentMultiset, SpinExponentVector,
    SpinKind, WedgeMax,
};
use num_bigint::BigUint;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISCREPANCY: i32 = 2;
pub const EXIT_DATA_REQUIRED: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ep", about = "Extreme primitivity checks for affine groups over GF(2)")]
pub struct RunConfig {
    /// Largest module dimension for orbit enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_DIM, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub cap_dim: usize,
    /// Largest group order for element enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_ORDER, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_order: u64,
    /// Seed for the randomized irreducibility test.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write a JSON report to this path.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide EP by checking primitivity on every orbit of H.
    Direct(GroupArgs),
    /// Compute f from a maximal-class dataset, or from the enumerated maximal subgroups of a small group.
    Fvalue(FvalueArgs),
    /// Check (2^{floor(d/2)}-1)*alpha < 2^d-1.
    Bound {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        d: u32,
    },
    /// Check sum (2^cap-1)*count < 2^d-1 over parts given as cap:count.
    RefinedBound {
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
        #[arg(long)]
        d: u32,
    },
    /// Fixed-space dimension on the m-th exterior power.
    WedgeDim {
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long)]
        m: usize,
    },
    /// Fixed-space dimension on a spin or half-spin module.
    SpinDim {
        #[arg(long)]
        kind: SpinKind,
        #[arg(long)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u32>,
    },
    /// Largest fixed-space dimension on the wedge cube over elements of order 7, 11, 13 in GL_k(2).
    MaxWedge {
        #[arg(long)]
        k: usize,
        /// Restrict to one element order.
        #[arg(long)]
        r: Option<u32>,
    },
    /// Conjugacy classes of maximal subgroups of a small matrix group.
    TinyMaximals(GroupArgs),
    /// Re-derive every case of a registry.
    Audit {
        #[arg(long)]
        registry: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Module to act on; defaults to the one in the group file.
    #[arg(long)]
    pub module: Option<ModuleTag>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).multiple(false))]
pub struct FvalueArgs {
    #[arg(long, group = "input")]
    pub dataset: Option<PathBuf>,
    #[arg(long, group = "input")]
    pub group: Option<PathBuf>,
    #[arg(long, requires = "group")]
    pub module: Option<ModuleTag>,
}

/// What a run produced. `report` is written to `--report` by [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Value,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_ERROR, message: message.into() }
    }
}

fn group_code(e: &GroupError) -> i32 {
    match e {
        GroupError::CapExceeded { .. } => EXIT_CAP,
        GroupError::Rep(RepError::WedgeTooWide { .. }) => EXIT_CAP,
        _ => EXIT_ERROR,
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match &e {
            EngineError::Group(g) => group_code(g),
            EngineError::Rep(RepError::WedgeTooWide { .. }) => EXIT_CAP,
            EngineError::LemmaViolation { .. } | EngineError::FixTooLarge { .. } => EXIT_DISCREPANCY,
            _ => EXIT_ERROR,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Self { code: group_code(&e), message: e.to_string() }
    }
}

impl From<epcheck::weights::WeightsError> for Failure {
    fn from(e: epcheck::weights::WeightsError) -> Self {
        Self::parse(e.to_string())
    }
}

struct Output {
    code: i32,
    text: String,
    report: Value,
}

impl Output {
    fn ok(text: String, report: Value) -> Self {
        Self { code: EXIT_OK, text, report }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<MatrixGroup, Failure> {
    parse_grp(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn big(s: &str) -> Result<BigUint, Failure> {
    decimal::parse(s).ok_or_else(|| Failure::parse(format!("expected a decimal natural, got {s:?}")))
}

fn meataxe(cfg: &RunConfig) -> MeatAxeOptions {
    MeatAxeOptions { seed: cfg.seed, ..MeatAxeOptions::default() }
}

fn wedge_max_line(w: &WedgeMax) -> String {
    let max = w.max.map_or("none".to_string(), |m| m.to_string());
    let wit: Vec<String> = w.witnesses.iter().map(ToString::to_string).collect();
    format!("k={} r={} max={max} witnesses={}\n", w.k, w.r, wit.join(" "))
}

fn execute(cfg: &RunConfig) -> Result<Output, Failure> {
    match &cfg.command {
        Command::Direct(args) => {
            let h = load_group(&args.group)?;
            h.check_declared_order(cfg.cap_order)?;
            let tag = args.module.clone().unwrap_or_else(|| h.module_tag());
            let v = direct_ep_check(&h, &tag, DirectOptions { cap_dim: cfg.cap_dim, meataxe: meataxe(cfg) })?;
            let text = format!("{v}\n");
            Ok(Output::ok(text, json!({"command": "direct", "module": tag, "verdict": v})))
        }
        Command::Fvalue(args) => {
            let (report, verdict, extra) = if let Some(path) = &args.dataset {
                let ds = Dataset::parse(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
                let ev = evaluate_dataset(&ds, meataxe(cfg))?;
                (ev.report, ev.verdict, json!({"group": ds.group, "complete": ds.complete, "irreducible": ev.irreducible}))
            } else {
                let path = args.group.as_ref().expect("clap requires one input");
                let h = load_group(path)?;
                let tag = args.module.clone().unwrap_or_else(|| h.module_tag());
                let d = tag.induced_dim(h.dim()).map_err(|e| Failure::parse(e.to_string()))?;
                let classes: Vec<MaximalClassRecord> = tiny_maximal_subgroups(&h, cfg.cap_order)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| MaximalClassRecord {
                        label: format!("M{}(order {})", i + 1, c.order),
                        class_size: c.class_size.into(),
                        generators: c.generators,
                        module_tag: tag.clone(),
                    })
                    .collect();
                let report = f_value(&classes, &tag, d)?;
                let verdict = lemma_verdict(&report.total, d as u32)?;
                (report, verdict, json!({"group": h.name, "complete": true}))
            };
            let mut text = String::new();
            for c in &report.classes {
                text += &format!("class {} | size {} | fix dim {} | contribution {}\n", c.label, c.class_size, c.fix_dim, c.contribution);
            }
            text += &format!("f = {} (d = {})\n{verdict}\n", report.total, report.d);
            Ok(Output::ok(text, json!({"command": "fvalue", "input": extra, "f_value": report, "verdict": verdict})))
        }
        Command::Bound { alpha, d } => {
            let v = corollary_check(&big(alpha)?, *d);
            Ok(Output::ok(format!("{v}\n"), json!({"command": "bound", "verdict": v})))
        }
        Command::RefinedBound { parts, d } => {
            let parsed = parts
                .iter()
                .map(|p| {
                    let (cap, count) = p.split_once(':').ok_or_else(|| Failure::parse(format!("expected cap:count, got {p:?}")))?;
                    let cap: u32 = cap.trim().parse().map_err(|_| Failure::parse(format!("bad cap dimension in {p:?}")))?;
                    Ok((cap, big(count)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let v = refined_bound_check(&parsed, *d)?;
            Ok(Output::ok(format!("{v}\n"), json!({"command": "refined-bound", "verdict": v})))
        }
        Command::WedgeDim { r, exponents, m } => {
            let e = ExponentMultiset::new(*r, exponents.clone())?;
            let dim = wedge_fixed_dim(&e, *m)?;
            Ok(Output::ok(format!("{dim}\n"), json!({"command": "wedge-dim", "r": r, "exponents": e.entries(), "m": m, "dim": dim})))
        }
        Command::SpinDim { kind, r, t } => {
            let s = SpinExponentVector::new(*kind, *r, t.clone())?;
            let dim = spin_fixed_dim(&s);
            Ok(Output::ok(
                format!("{dim}\n"),
                json!({"command": "spin-dim", "kind": kind, "r": r, "t": t, "dim": dim, "module_dim": s.module_dim()}),
            ))
        }
        Command::MaxWedge { k, r } => match r {
            Some(r) => {
                let w = max_wedge_dim_over_order_r(*k, *r)?;
                Ok(Output::ok(wedge_max_line(&w), json!({"command": "max-wedge", "results": [w]})))
            }
            None => {
                let (cap, per_order) = uniform_wedge_cap(*k)?;
                let mut text: String = per_order.iter().map(wedge_max_line).collect();
                text += &format!("k={k} cap={cap}\n");
                Ok(Output::ok(text, json!({"command": "max-wedge", "cap": cap, "results": per_order})))
            }
        },
        Command::TinyMaximals(args) => {
            let h = load_group(&args.group)?;
            h.check_declared_order(cfg.cap_order)?;
            let classes = tiny_maximal_subgroups(&h, cfg.cap_order)?;
            let tag = args.module.clone().unwrap_or_else(|| h.module_tag());
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, c) in classes.iter().enumerate() {
                let induced = tag.induce_all(&c.generators).map_err(|e| Failure::parse(e.to_string()))?;
                let d = tag.induced_dim(h.dim()).map_err(|e| Failure::parse(e.to_string()))?;
                let fix = epcheck::gf2::common_fixed_space(d, &induced).map_err(|e| Failure::parse(e.to_string()))?.dim();
                text += &format!("M{} | order {} | class size {} | fix dim {fix}\n", i + 1, c.order, c.class_size);
                rows.push(json!({"order": c.order, "class_size": c.class_size, "fix_dim": fix,
                    "generators": c.generators.iter().map(epcheck::gf2::text::format_matrix).collect::<Vec<_>>()}));
            }
            text += &format!("{} classes\n", classes.len());
            Ok(Output::ok(text, json!({"command": "tiny-maximals", "classes": rows})))
        }
        Command::Audit { registry } => {
            let reg = Registry::parse(&read(registry)?).map_err(|e| Failure::parse(format!("{}: {e}", registry.display())))?;
            let base_dir = registry.parent().map(Path::to_path_buf).unwrap_or_default();
            let report = audit_registry(&reg, &AuditOptions { base_dir, meataxe: meataxe(cfg) })?;
            Ok(Output { code: report.exit_code(), text: report.to_text(), report: json!({"command": "audit", "audit": report}) })
        }
    }
}

/// Runs one command. The report, when requested, is written even for
/// failures so that callers always find a file.
pub fn run(cfg: &RunConfig) -> Outcome {
    let (code, stdout, stderr, report) = match execute(cfg) {
        Ok(out) => (out.code, out.text, String::new(), out.report),
        Err(f) => (f.code, String::new(), format!("error: {}\n", f.message), json!({"error": f.message, "exit_code": f.code})),
    };
    let mut outcome = Outcome { code, stdout, stderr, report };
    if let Some(path) = &cfg.report {
        let mut body = serde_json::to_string_pretty(&outcome.report).expect("json values serialize");
        body.push('\n');
        if let Err(e) = std::fs::write(path, body) {
            outcome.stderr += &format!("error: cannot write report {}: {e}\n", path.display());
            if outcome.code == EXIT_OK {
                outcome.code = EXIT_ERROR;
            }
        }
    }
    outcome
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            Outcome { code, stdout, stderr, report: Value::Null }
        }
    }
}
