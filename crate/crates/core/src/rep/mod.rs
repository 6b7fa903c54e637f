//! Module actions induced from the natural module `W = GF(2)^k`.
//!
//! A [`ModuleTag`] says how a matrix on `W` becomes a matrix on `V`: as is,
//! through an exterior power, or through a tensor product of such. The
//! semisimple witness builds an explicit matrix over GF(2) with prescribed
//! eigenvalue exponents, which ties the matrix world back to the counting in
//! [`crate::weights`].

mod field;
mod meataxe;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::{BitMatrix, Gf2Error};
use crate::weights::{doubling_orbits, validate_f2_realizable, ExponentMultiset};

pub use meataxe::{find_invariant_subspace, is_irreducible, is_irreducible_with, spin, MeatAxeOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("wedge degree {m} out of range for a {k}-dimensional module")]
    WedgeOutOfRange { m: usize, k: usize },
    #[error("exterior powers are limited to {max}-dimensional modules (got {k})")]
    WedgeTooWide { k: usize, max: usize },
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generator {index} has size {found}, expected {expected}")]
    SizeMismatch { index: usize, expected: usize, found: usize },
    #[error("generator {0} is not invertible")]
    NonInvertible(usize),
    #[error("exponents {0} are not closed under doubling")]
    NotRealizable(ExponentMultiset),
    #[error("elements of order {r} need GF(2^{degree}), beyond the supported GF(2^63)")]
    FieldTooLarge { r: u32, degree: u32 },
    #[error("invalid module tag {0:?}")]
    BadTag(String),
    #[error("irreducibility undecided after {0} random algebra elements")]
    Undecided(usize),
}

/// How a matrix on the natural module induces a matrix on `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleTag {
    Natural,
    Wedge(usize),
    Tensor(Vec<ModuleTag>),
}

impl ModuleTag {
    /// Dimension of the induced module when `W` has dimension `k`.
    pub fn induced_dim(&self, k: usize) -> Result<usize, RepError> {
        match self {
            Self::Natural => Ok(k),
            Self::Wedge(m) => {
                if *m < 2 || *m > k {
                    return Err(RepError::WedgeOutOfRange { m: *m, k });
                }
                Ok(binomial(k, *m))
            }
            Self::Tensor(parts) => parts.iter().try_fold(1usize, |acc, t| Ok(acc * t.induced_dim(k)?)),
        }
    }

    pub fn induce(&self, g: &BitMatrix) -> Result<BitMatrix, RepError> {
        g.require_square()?;
        match self {
            Self::Natural => Ok(g.clone()),
            Self::Wedge(m) => wedge_action(g, *m),
            Self::Tensor(parts) => {
                let mut iter = parts.iter();
                let first = iter.next().ok_or_else(|| RepError::BadTag("tensor()".into()))?;
                iter.try_fold(first.induce(g)?, |acc, t| tensor_action(&acc, &t.induce(g)?))
            }
        }
    }

    pub fn induce_all(&self, gens: &[BitMatrix]) -> Result<Vec<BitMatrix>, RepError> {
        gens.iter().map(|g| self.induce(g)).collect()
    }
}

impl fmt::Display for ModuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Natural => f.write_str("natural"),
            Self::Wedge(m) => write!(f, "wedge{m}"),
            Self::Tensor(parts) => {
                f.write_str("tensor(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for ModuleTag {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RepError::BadTag(s.to_string());
        let s = s.trim();
        if s == "natural" {
            return Ok(Self::Natural);
        }
        if let Some(m) = s.strip_prefix("wedge") {
            return m.parse().map(Self::Wedge).map_err(|_| bad());
        }
        let inner = s
            .strip_prefix("tensor(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        // split on top-level commas
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0usize, 0usize);
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                ',' if depth == 0 => {
                    parts.push(inner[start..i].parse()?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(bad());
        }
        parts.push(inner[start..].parse()?);
        Ok(Self::Tensor(parts))
    }
}

impl Serialize for ModuleTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModuleTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The `m`-subsets of `0..k` in colexicographic order, which indexes the
/// basis `e_S` of `Λ^m W`.
pub fn wedge_basis(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(k, m));
    let mut s: Vec<usize> = (0..m).collect();
    if m > k {
        return out;
    }
    loop {
        out.push(s.clone());
        // colex successor: bump the first entry that has room
        let mut i = 0;
        while i < m && (if i + 1 < m { s[i] + 1 == s[i + 1] } else { s[i] + 1 == k }) {
            i += 1;
        }
        if i == m {
            return out;
        }
        s[i] += 1;
        for (j, x) in s.iter_mut().enumerate().take(i) {
            *x = j;
        }
    }
}

/// Determinant over GF(2) of a square matrix given as row bitmasks.
fn det_masks(mut rows: Vec<u64>) -> bool {
    let n = rows.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| rows[r] >> col & 1 == 1) else {
            return false;
        };
        rows.swap(col, p);
        for r in col + 1..n {
            if rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[col];
            }
        }
    }
    true
}

pub const MAX_WEDGE_WIDTH: usize = 64;

/// Matrix of `Λ^m g` in the colex basis: entry `(S, T)` is the minor
/// `det g[S, T]`, so that `e_S · Λ^m g = Σ_T det g[S,T] e_T`.
pub fn wedge_action(g: &BitMatrix, m: usize) -> Result<BitMatrix, RepError> {
    let k = g.require_square()?;
    if m < 2 || m > k {
        return Err(RepError::WedgeOutOfRange { m, k });
    }
    if k > MAX_WEDGE_WIDTH {
        return Err(RepError::WedgeTooWide { k, max: MAX_WEDGE_WIDTH });
    }
    let basis = wedge_basis(k, m);
    let row_masks: Vec<u64> = g.rows().iter().map(|r| r.to_code()).collect();
    let n = basis.len();
    let mut out = BitMatrix::zeros(n, n);
    for (si, s) in basis.iter().enumerate() {
        let sub: Vec<u64> = s.iter().map(|&i| row_masks[i]).collect();
        // skip column sets that meet no row of the minor
        let support = sub.iter().fold(0u64, |a, &b| a | b);
        for (ti, t) in basis.iter().enumerate() {
            if t.iter().any(|&j| support >> j & 1 == 0) {
                continue;
            }
            let minor = sub
                .iter()
                .map(|&row| t.iter().enumerate().fold(0u64, |acc, (c, &j)| acc | ((row >> j & 1) << c)))
                .collect();
            if det_masks(minor) {
                out.set(si, ti, true);
            }
        }
    }
    Ok(out)
}

/// Kronecker product `g ⊗ h` with basis `(i, j) ↦ i * h.rows + j`.
pub fn tensor_action(g: &BitMatrix, h: &BitMatrix) -> Result<BitMatrix, RepError> {
    let (a, b) = (g.require_square()?, h.require_square()?);
    let mut out = BitMatrix::zeros(a * b, a * b);
    for i in 0..a {
        for ip in g.row(i).iter_ones() {
            for j in 0..b {
                for jp in h.row(j).iter_ones() {
                    out.set(i * b + j, ip * b + jp, true);
                }
            }
        }
    }
    Ok(out)
}

/// A matrix over GF(2) of order dividing `r` whose eigenvalues over the
/// splitting field are `ω^e` for `e` in `exps`.
///
/// One companion block per Frobenius orbit of nonzero exponents (the
/// companion matrix of the minimal polynomial of `ω^a`), identity entries for
/// zero exponents. Blocks appear in order of the orbits' least elements.
pub fn semisimple_witness(exps: &ExponentMultiset) -> Result<BitMatrix, RepError> {
    if !validate_f2_realizable(exps) {
        return Err(RepError::NotRealizable(exps.clone()));
    }
    let r = exps.r();
    let degree = field::order_of_two(r);
    if degree > 63 {
        return Err(RepError::FieldTooLarge { r, degree });
    }
    let n = exps.len();
    if n == 0 {
        return Err(RepError::NoGenerators);
    }
    let mut out = BitMatrix::zeros(n, n);
    let mut at = 0;
    for orbit in doubling_orbits(r) {
        let copies = exps.multiplicity(orbit[0]);
        if copies == 0 {
            continue;
        }
        let block = if orbit[0] == 0 {
            BitMatrix::identity(1)
        } else {
            BitMatrix::companion(&field::minimal_polynomial(r, orbit[0]))
        };
        let b = block.nrows();
        for _ in 0..copies {
            for i in 0..b {
                for j in block.row(i).iter_ones() {
                    out.set(at + i, at + j, true);
                }
            }
            at += b;
        }
    }
    debug_assert_eq!(at, n);
    Ok(out)
}
