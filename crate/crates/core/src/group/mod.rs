//! Matrix groups over GF(2) and their actions on vectors.

mod blocks;
mod orbits;
mod tiny;

use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::gf2::{text, BitMatrix, Gf2Error};
use crate::rep::{ModuleTag, RepError};

pub use blocks::{is_primitive, verify_block_system, Primitivity};
pub use orbits::{induced_permutation, orbit_decomposition, Orbit, OrbitDecomposition, PermAction, DEFAULT_CAP_DIM};
pub use tiny::{enumerate_elements, tiny_maximal_subgroups, SubgroupClass, DEFAULT_CAP_ORDER, MAX_TINY_DIM};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator {index} is {found}x{found}, expected {expected}x{expected}")]
    SizeMismatch { index: usize, expected: usize, found: usize },
    #[error("generator {0} is not invertible")]
    NonInvertible(usize),
    #[error("{what} exceeds the cap ({value} > {cap})")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("point set is not closed under generator {0}")]
    NotClosed(usize),
    #[error("action on {0} points is not transitive")]
    Intransitive(usize),
    #[error("declared order {declared} but the group has order {actual}")]
    OrderMismatch { declared: BigUint, actual: u64 },
    #[error("tiny-group routines need dimension at most {max} (got {found})")]
    TooWide { found: usize, max: usize },
    #[error("at most 255 generators are supported (got {0})")]
    TooManyGenerators(usize),
}

/// A subgroup of `GL_k(2)` given by generators, with optional metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    dim: usize,
    generators: Vec<BitMatrix>,
    pub order: Option<BigUint>,
    pub name: Option<String>,
    /// The module the group is meant to act on; `natural` when absent.
    pub module: Option<ModuleTag>,
}

impl MatrixGroup {
    pub fn new(dim: usize, generators: Vec<BitMatrix>) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(Gf2Error::Empty.into());
        }
        if generators.len() > 255 {
            return Err(GroupError::TooManyGenerators(generators.len()));
        }
        for (index, g) in generators.iter().enumerate() {
            let found = g.require_square()?;
            if found != dim {
                return Err(GroupError::SizeMismatch { index, expected: dim, found });
            }
            if !g.is_invertible() {
                return Err(GroupError::NonInvertible(index));
            }
        }
        Ok(Self { dim, generators, order: None, name: None, module: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_order(mut self, order: impl Into<BigUint>) -> Self {
        self.order = Some(order.into());
        self
    }

    pub fn with_module(mut self, tag: ModuleTag) -> Self {
        self.module = Some(tag);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.generators
    }

    pub fn module_tag(&self) -> ModuleTag {
        self.module.clone().unwrap_or(ModuleTag::Natural)
    }

    /// Generators of the induced action on `tag`'s module.
    pub fn induced_generators(&self, tag: &ModuleTag) -> Result<Vec<BitMatrix>, GroupError> {
        Ok(tag.induce_all(&self.generators)?)
    }

    /// Checks a declared order against enumeration when the group has at most
    /// `cap` elements. Returns the enumerated order when it was computed.
    pub fn check_declared_order(&self, cap: u64) -> Result<Option<u64>, GroupError> {
        if self.dim > MAX_TINY_DIM {
            return Ok(None);
        }
        match enumerate_elements(self, cap) {
            Ok(elems) => {
                let actual = elems.len() as u64;
                match &self.order {
                    Some(declared) if *declared != BigUint::from(actual) => {
                        Err(GroupError::OrderMismatch { declared: declared.clone(), actual })
                    }
                    _ => Ok(Some(actual)),
                }
            }
            Err(GroupError::CapExceeded { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GroupError {
    GroupError::Parse { line: line + 1, msg: msg.into() }
}

/// Parses a `.grp` file:
///
/// ```text
/// GF2GROUP <k> <ngens> [order=<decimal>] [name=<string>] [module=<tag>]
/// GF2 <k> <k>
/// ...
/// ```
///
/// Lines starting with `#` are comments.
pub fn parse_grp(input: &str) -> Result<MatrixGroup, GroupError> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (n, header) = lines.next().ok_or_else(|| parse_err(0, "empty group file"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("GF2GROUP") {
        return Err(parse_err(n, "expected `GF2GROUP <k> <ngens>`"));
    }
    let mut number = |what: &str| -> Result<usize, GroupError> {
        fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(n, format!("missing or invalid {what}")))
    };
    let dim = number("dimension")?;
    let ngens = number("generator count")?;
    let (mut order, mut name, mut module) = (None, None, None);
    for field in header.split_whitespace().skip(3) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(n, format!("expected key=value, got {field:?}")))?;
        match key {
            "order" => {
                let v: BigUint = value.parse().map_err(|_| parse_err(n, "order must be a decimal integer"))?;
                order = Some(v);
            }
            "name" => name = Some(value.to_string()),
            "module" => module = Some(value.parse::<ModuleTag>().map_err(|e| parse_err(n, e.to_string()))?),
            other => return Err(parse_err(n, format!("unknown header field {other:?}"))),
        }
    }
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        gens.push(text::parse_block(&mut lines).map_err(|e| match e {
            Gf2Error::Parse { line, msg } => GroupError::Parse { line, msg },
            other => other.into(),
        })?);
    }
    if let Some((n, _)) = lines.next() {
        return Err(parse_err(n, "trailing content after the last generator"));
    }
    let mut group = MatrixGroup::new(dim, gens)?;
    group.order = order;
    group.name = name;
    group.module = module;
    Ok(group)
}

pub fn format_grp(group: &MatrixGroup) -> String {
    let mut out = format!("GF2GROUP {} {}", group.dim, group.generators.len());
    if let Some(o) = &group.order {
        write!(out, " order={o}").unwrap();
    }
    if let Some(name) = &group.name {
        write!(out, " name={name}").unwrap();
    }
    if let Some(m) = &group.module {
        write!(out, " module={m}").unwrap();
    }
    out.push('\n');
    for g in &group.generators {
        out.push_str(&text::format_matrix(g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GL3: &str = "GF2GROUP 3 2 order=168 name=GL3(2)\nGF2 3 3\n110\n010\n001\nGF2 3 3\n010\n001\n100\n";

    #[test]
    fn grp_round_trip() {
        let g = parse_grp(GL3).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.order, Some(BigUint::from(168u32)));
        assert_eq!(format_grp(&g), GL3);
        assert_eq!(g.check_declared_order(DEFAULT_CAP_ORDER).unwrap(), Some(168));
    }

    #[test]
    fn grp_rejects_bad_input() {
        assert!(parse_grp("GF2GROUP 3 1\nGF2 3 3\n110\n110\n001\n").is_err());
        assert!(parse_grp("GF2GROUP 3 2\nGF2 3 3\n100\n010\n001\n").is_err());
        assert!(parse_grp("GF2GROUP 2 1 colour=red\nGF2 2 2\n10\n01\n").is_err());
        assert!(parse_grp("GF2GROUP 2 1\nGF2 3 3\n100\n010\n001\n").is_err());
        let wrong = GL3.replace("order=168", "order=167");
        assert!(matches!(
            parse_grp(&wrong).unwrap().check_declared_order(DEFAULT_CAP_ORDER),
            Err(GroupError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn module_field() {
        let g = parse_grp("GF2GROUP 2 1 module=wedge2\nGF2 2 2\n01\n11\n").unwrap();
        assert_eq!(g.module_tag(), ModuleTag::Wedge(2));
        assert_eq!(format_grp(&g), "GF2GROUP 2 1 module=wedge2\nGF2 2 2\n01\n11\n");
    }
}
