use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{decimal, EngineError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "EP")]
    Ep,
    #[serde(rename = "notEP")]
    NotEp,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ep => "EP",
            Self::NotEp => "notEP",
            Self::Inconclusive => "inconclusive",
        })
    }
}

impl std::str::FromStr for VerdictKind {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "EP" => Ok(Self::Ep),
            "notEP" => Ok(Self::NotEp),
            "inconclusive" => Ok(Self::Inconclusive),
            other => Err(EngineError::Malformed(format!("unknown verdict {other:?}"))),
        }
    }
}

/// `2^d - 1`, the number of nonzero vectors.
pub fn nonzero_count(d: u32) -> BigUint {
    (BigUint::one() << d) - 1u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTerm {
    pub cap_dim: u32,
    #[serde(with = "decimal")]
    pub count: BigUint,
}

/// `Σ (2^{cap_i} - 1) · count_i` against `2^d - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInstance {
    pub terms: Vec<BoundTerm>,
    pub d: u32,
    #[serde(with = "decimal")]
    pub lhs: BigUint,
    #[serde(with = "decimal")]
    pub rhs: BigUint,
}

impl BoundInstance {
    pub fn new(terms: Vec<BoundTerm>, d: u32) -> Self {
        let lhs = terms.iter().fold(BigUint::zero(), |acc, t| acc + nonzero_count(t.cap_dim) * &t.count);
        Self { terms, d, lhs, rhs: nonzero_count(d) }
    }

    pub fn holds(&self) -> bool {
        self.lhs < self.rhs
    }

    /// Recomputes both sides from the terms.
    pub fn verify(&self) -> bool {
        let fresh = Self::new(self.terms.clone(), self.d);
        fresh.lhs == self.lhs && fresh.rhs == self.rhs
    }
}

impl fmt::Display for BoundInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "(2^{}-1)*{}", t.cap_dim, t.count)?;
        }
        let rel = if self.holds() { "<" } else { ">=" };
        write!(f, " = {} {rel} 2^{}-1 = {}", self.lhs, self.d, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// A counting bound on `f(H)`.
    Inequality(BoundInstance),
    /// `f` (possibly padded by a bound on missing classes) against `2^d - 1`.
    Lemma {
        #[serde(with = "decimal")]
        f: BigUint,
        d: u32,
        #[serde(with = "decimal")]
        rhs: BigUint,
    },
    /// A nontrivial block system on one orbit; points are bit strings.
    Blocks { orbit_representative: String, orbit_size: usize, blocks: Vec<Vec<String>> },
    /// Every orbit was found primitive.
    PrimitiveOrbits { sizes: Vec<usize> },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Inequality(b) => write!(f, "{b}"),
            Self::Lemma { f: value, d, rhs } => {
                let rel = if value < rhs { "<" } else if value == rhs { "=" } else { ">" };
                write!(f, "f = {value} {rel} 2^{d}-1 = {rhs}")
            }
            Self::Blocks { orbit_representative, orbit_size, blocks } => write!(
                f,
                "orbit of {orbit_representative} (size {orbit_size}) has {} blocks of size {}",
                blocks.len(),
                blocks.first().map_or(0, Vec::len)
            ),
            Self::PrimitiveOrbits { sizes } => {
                let list: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "all orbits primitive (sizes {})", list.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn inconclusive(certificate: Option<Certificate>) -> Self {
        Self { kind: VerdictKind::Inconclusive, certificate }
    }

    /// Re-checks the arithmetic of inequality and lemma certificates, and that
    /// the verdict matches it. Block certificates need the group and are
    /// checked by [`super::verify_block_certificate`].
    pub fn verify_arithmetic(&self) -> bool {
        match &self.certificate {
            Some(Certificate::Inequality(b)) => {
                b.verify() && (b.holds() == (self.kind == VerdictKind::NotEp))
            }
            Some(Certificate::Lemma { f, d, rhs }) => {
                *rhs == nonzero_count(*d)
                    && match self.kind {
                        VerdictKind::NotEp => f < rhs,
                        VerdictKind::Ep => f == rhs,
                        VerdictKind::Inconclusive => true,
                    }
            }
            _ => true,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(c) = &self.certificate {
            write!(f, " [{c}]")?;
        }
        Ok(())
    }
}

/// `f < 2^d - 1` means not EP, equality means EP, and anything larger is
/// impossible for the full set of maximal subgroups.
pub fn lemma_verdict(f: &BigUint, d: u32) -> Result<Verdict, EngineError> {
    let rhs = nonzero_count(d);
    let kind = match f.cmp(&rhs) {
        std::cmp::Ordering::Less => VerdictKind::NotEp,
        std::cmp::Ordering::Equal => VerdictKind::Ep,
        std::cmp::Ordering::Greater => return Err(EngineError::LemmaViolation { f: f.clone(), d }),
    };
    Ok(Verdict { kind, certificate: Some(Certificate::Lemma { f: f.clone(), d, rhs }) })
}

/// `(2^{⌊d/2⌋} - 1) · α < 2^d - 1` rules out extreme primitivity.
pub fn corollary_check(alpha: &BigUint, d: u32) -> Verdict {
    let instance = BoundInstance::new(vec![BoundTerm { cap_dim: d / 2, count: alpha.clone() }], d);
    let kind = if instance.holds() { VerdictKind::NotEp } else { VerdictKind::Inconclusive };
    Verdict { kind, certificate: Some(Certificate::Inequality(instance)) }
}

/// `Σ (2^{c_i} - 1) · n_i < 2^d - 1` rules out extreme primitivity.
pub fn refined_bound_check(parts: &[(u32, BigUint)], d: u32) -> Result<Verdict, EngineError> {
    if let Some(&(cap, _)) = parts.iter().find(|(c, _)| *c > d) {
        return Err(EngineError::CapAboveDimension { cap, d });
    }
    let terms = parts.iter().map(|(c, n)| BoundTerm { cap_dim: *c, count: n.clone() }).collect();
    let instance = BoundInstance::new(terms, d);
    let kind = if instance.holds() { VerdictKind::NotEp } else { VerdictKind::Inconclusive };
    Ok(Verdict { kind, certificate: Some(Certificate::Inequality(instance)) })
}
