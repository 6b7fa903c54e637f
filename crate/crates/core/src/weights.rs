//! Fixed-space dimensions of odd-order semisimple elements, by counting.
//!
//! An element `x` of odd order `r` acting on `W` is diagonalizable over the
//! splitting field, with eigenvalues `ω^e` for a primitive `r`-th root of
//! unity `ω`. Its exponents form an [`ExponentMultiset`]. The eigenvalues of
//! `x` on `Λ^m W` are the products over `m`-subsets, so the 1-eigenspace has
//! dimension equal to the number of `m`-subsets whose exponents sum to zero
//! mod `r`. Spin modules are handled the same way: a coordinate `t_i`
//! contributes the pair `ω^{±t_i}`, and the weights of the (half-)spin module
//! are the signed sums `Σ ε_i t_i`.
//!
//! All counts are computed by dynamic programming over residues.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightsError {
    #[error("element order must be an odd integer >= 3, got {0}")]
    InvalidOrder(u32),
    #[error("exponent {value} is not a residue mod {r}")]
    ResidueOutOfRange { value: u32, r: u32 },
    #[error("wedge degree {m} out of range for a multiset of size {n}")]
    DegreeOutOfRange { m: usize, n: usize },
    #[error("orders other than 7, 11, 13 are outside the case analysis (got {0})")]
    UnsupportedOrder(u32),
    #[error("rank k = {0} outside 7..=14")]
    RankOutOfRange(usize),
    #[error("{what} of size {size} exceeds the supported maximum {max}")]
    TooLarge { what: &'static str, size: usize, max: usize },
    #[error("spin vector must have at least one coordinate")]
    EmptySpinVector,
    #[error("unknown spin kind {0:?} (expected B, Deven or Dodd)")]
    UnknownSpinKind(String),
    #[error("exponents are not closed under doubling mod {0}")]
    NotRealizable(u32),
}

/// Largest multiset for which counts are guaranteed to fit in a `u64`.
pub const MAX_ENTRIES: usize = 63;

fn check_order(r: u32) -> Result<(), WeightsError> {
    if r >= 3 && r % 2 == 1 {
        Ok(())
    } else {
        Err(WeightsError::InvalidOrder(r))
    }
}

/// Eigenvalue exponents of an element of odd order `r` on its natural module.
///
/// Entries are kept sorted; multiplicity of `0` is `dim C_W(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentMultiset {
    r: u32,
    entries: Vec<u32>,
}

impl ExponentMultiset {
    pub fn new(r: u32, mut entries: Vec<u32>) -> Result<Self, WeightsError> {
        check_order(r)?;
        if let Some(&value) = entries.iter().find(|&&e| e >= r) {
            return Err(WeightsError::ResidueOutOfRange { value, r });
        }
        if entries.len() > MAX_ENTRIES {
            return Err(WeightsError::TooLarge {
                what: "exponent multiset",
                size: entries.len(),
                max: MAX_ENTRIES,
            });
        }
        entries.sort_unstable();
        Ok(Self { r, entries })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, e: u32) -> usize {
        self.entries.iter().filter(|&&x| x == e).count()
    }

    /// Multiplicity of the eigenvalue 1, i.e. `dim C_W(x)`.
    pub fn zero_multiplicity(&self) -> usize {
        self.multiplicity(0)
    }

    /// Applies `e ↦ u·e mod r` to every entry.
    pub fn scaled(&self, u: u32) -> Self {
        let entries = self.entries.iter().map(|&e| ((e as u64 * u as u64) % self.r as u64) as u32).collect();
        Self::new(self.r, entries).expect("scaling preserves residues")
    }

    pub fn negated(&self) -> Self {
        self.scaled(self.r - 1)
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} {{", self.r)?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Orbits of `e ↦ 2e` on `Z/r`, each sorted, ordered by least element.
pub fn doubling_orbits(r: u32) -> Vec<Vec<u32>> {
    let mut seen = vec![false; r as usize];
    let mut orbits = Vec::new();
    for start in 0..r {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut e = start;
        while !seen[e as usize] {
            seen[e as usize] = true;
            orbit.push(e);
            e = (2 * e) % r;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// True iff the multiset is invariant under doubling mod `r`, which is what it
/// takes for the eigenvalues to come from a matrix over GF(2).
pub fn validate_f2_realizable(e: &ExponentMultiset) -> bool {
    let r = e.r;
    let mut counts = vec![0usize; r as usize];
    for &x in &e.entries {
        counts[x as usize] += 1;
    }
    (0..r).all(|x| counts[x as usize] == counts[((2 * x) % r) as usize])
}

/// Number of `m`-element sub-multisets (by position) with exponent sum `≡ 0`,
/// which is `dim C_{Λ^m W}(x)`.
pub fn wedge_fixed_dim(e: &ExponentMultiset, m: usize) -> Result<u64, WeightsError> {
    let n = e.len();
    if m == 0 || m > n {
        return Err(WeightsError::DegreeOutOfRange { m, n });
    }
    let r = e.r as usize;
    // ways[j][c]: j-subsets of the entries seen so far with sum c
    let mut ways = vec![vec![0u64; r]; m + 1];
    ways[0][0] = 1;
    for &x in &e.entries {
        let x = x as usize;
        for j in (1..=m).rev() {
            let (lower, upper) = ways.split_at_mut(j);
            let (prev, cur) = (&lower[j - 1], &mut upper[0]);
            for c in 0..r {
                cur[(c + x) % r] += prev[c];
            }
        }
    }
    Ok(ways[m][0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinKind {
    /// Full spin module, all `2^n` sign patterns.
    B,
    /// Half-spin module with an even number of minus signs.
    #[serde(rename = "Deven")]
    DEven,
    /// Half-spin module with an odd number of minus signs.
    #[serde(rename = "Dodd")]
    DOdd,
}

impl FromStr for SpinKind {
    type Err = WeightsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" => Ok(Self::B),
            "Deven" | "D" => Ok(Self::DEven),
            "Dodd" => Ok(Self::DOdd),
            other => Err(WeightsError::UnknownSpinKind(other.to_string())),
        }
    }
}

impl fmt::Display for SpinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::B => "B",
            Self::DEven => "Deven",
            Self::DOdd => "Dodd",
        })
    }
}

/// Spin coordinates of an odd-order element: coordinate `t_i` stands for the
/// tensor factor `diag(ω^{t_i}, ω^{-t_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinExponentVector {
    r: u32,
    t: Vec<u32>,
    kind: SpinKind,
}

impl SpinExponentVector {
    pub fn new(kind: SpinKind, r: u32, t: Vec<u32>) -> Result<Self, WeightsError> {
        check_order(r)?;
        if t.is_empty() {
            return Err(WeightsError::EmptySpinVector);
        }
        if t.len() > MAX_ENTRIES {
            return Err(WeightsError::TooLarge {
                what: "spin vector",
                size: t.len(),
                max: MAX_ENTRIES,
            });
        }
        if let Some(&value) = t.iter().find(|&&x| x >= r) {
            return Err(WeightsError::ResidueOutOfRange { value, r });
        }
        Ok(Self { r, t, kind })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn coords(&self) -> &[u32] {
        &self.t
    }

    pub fn kind(&self) -> SpinKind {
        self.kind
    }

    pub fn with_kind(&self, kind: SpinKind) -> Self {
        Self { kind, ..self.clone() }
    }

    /// Module dimension: `2^n` for B, `2^{n-1}` for either half-spin.
    pub fn module_dim(&self) -> u64 {
        match self.kind {
            SpinKind::B => 1 << self.t.len(),
            _ => 1 << (self.t.len() - 1),
        }
    }
}

/// `dist[c][p]`: sign patterns `ε` with `Σ ε_i t_i ≡ c (mod r)` and
/// `#{i : ε_i = -1} ≡ p (mod 2)`.
pub fn signed_sum_distribution(r: u32, t: &[u32]) -> Vec<[u64; 2]> {
    let r = r as usize;
    let mut dist = vec![[0u64; 2]; r];
    dist[0][0] = 1;
    for &x in t {
        let x = x as usize % r;
        let mut next = vec![[0u64; 2]; r];
        for c in 0..r {
            for p in 0..2 {
                let w = dist[c][p];
                if w == 0 {
                    continue;
                }
                next[(c + x) % r][p] += w;
                next[(c + r - x) % r][p ^ 1] += w;
            }
        }
        dist = next;
    }
    dist
}

/// `dim C_V(x)` on the spin module described by `s`.
pub fn spin_fixed_dim(s: &SpinExponentVector) -> u64 {
    let [even, odd] = signed_sum_distribution(s.r, &s.t)[0];
    match s.kind {
        SpinKind::B => even + odd,
        SpinKind::DEven => even,
        SpinKind::DOdd => odd,
    }
}

/// Result of the exhaustive search over order-`r` elements of `GL_k(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeMax {
    pub k: usize,
    pub r: u32,
    /// `None` when `GL_k(2)` has no element of order `r`.
    pub max: Option<u64>,
    pub witnesses: Vec<ExponentMultiset>,
}

/// Maximum of `dim C_{Λ³W}(x)` over elements `x ∈ GL_k(2)` of order `r`.
///
/// The search runs over multiplicity vectors on the doubling orbits, so each
/// GF(2)-realizable multiset of size `k` with a nonzero entry is visited once.
pub fn max_wedge_dim_over_order_r(k: usize, r: u32) -> Result<WedgeMax, WeightsError> {
    if !(7..=14).contains(&k) {
        return Err(WeightsError::RankOutOfRange(k));
    }
    if ![7, 11, 13].contains(&r) {
        return Err(WeightsError::UnsupportedOrder(r));
    }
    let orbits: Vec<Vec<u32>> = doubling_orbits(r).into_iter().filter(|o| o[0] != 0).collect();
    let mut best: Option<u64> = None;
    let mut witnesses = Vec::new();
    let mut mult = vec![0usize; orbits.len()];
    loop {
        let used: usize = mult.iter().zip(&orbits).map(|(m, o)| m * o.len()).sum();
        if used <= k && mult.iter().any(|&m| m > 0) {
            let mut entries = vec![0u32; k - used];
            for (m, o) in mult.iter().zip(&orbits) {
                for _ in 0..*m {
                    entries.extend_from_slice(o);
                }
            }
            let e = ExponentMultiset::new(r, entries)?;
            let dim = wedge_fixed_dim(&e, 3)?;
            match best {
                Some(b) if dim < b => {}
                Some(b) if dim == b => witnesses.push(e),
                _ => {
                    best = Some(dim);
                    witnesses = vec![e];
                }
            }
        }
        // odometer over multiplicities bounded by k / |orbit|
        let mut i = 0;
        loop {
            if i == mult.len() {
                witnesses.sort();
                return Ok(WedgeMax {
                    k,
                    r,
                    max: best,
                    witnesses,
                });
            }
            mult[i] += 1;
            if mult[i] * orbits[i].len() <= k {
                break;
            }
            mult[i] = 0;
            i += 1;
        }
    }
}

/// The largest `dim C_{Λ³W}(x)` over elements of order 7, 11 or 13 in
/// `GL_k(2)`, with the per-order breakdown.
pub fn uniform_wedge_cap(k: usize) -> Result<(u64, Vec<WedgeMax>), WeightsError> {
    let per_order = [7, 11, 13]
        .into_iter()
        .map(|r| max_wedge_dim_over_order_r(k, r))
        .collect::<Result<Vec<_>, _>>()?;
    let cap = per_order.iter().filter_map(|w| w.max).max().unwrap_or(0);
    Ok((cap, per_order))
}
