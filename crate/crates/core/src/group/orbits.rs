use std::collections::{HashMap, HashSet};

use super::{GroupError, MatrixGroup};
use crate::gf2::{BitMatrix, BitVector};
use crate::rep::ModuleTag;

pub const DEFAULT_CAP_DIM: usize = 28;

/// Codes are `u64`, so this is the absolute limit whatever the cap says.
const HARD_MAX_DIM: usize = 63;

const NO_GEN: u8 = u8::MAX;

/// `v ↦ v·g` on `u64` codes through one 256-entry table per byte of input.
struct CodeAction {
    chunks: usize,
    table: Vec<u64>,
}

impl CodeAction {
    fn new(g: &BitMatrix) -> Self {
        let d = g.nrows();
        let chunks = d.div_ceil(8);
        let rows: Vec<u64> = g.rows().iter().map(BitVector::to_code).collect();
        let mut table = vec![0u64; chunks * 256];
        for c in 0..chunks {
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let row = c * 8 + low;
                let rest = table[c * 256 + (byte & (byte - 1))];
                table[c * 256 + byte] = if row < d { rest ^ rows[row] } else { rest };
            }
        }
        Self { chunks, table }
    }

    fn apply(&self, code: u64) -> u64 {
        (0..self.chunks).fold(0, |acc, c| acc ^ self.table[c * 256 + ((code >> (8 * c)) & 0xff) as usize])
    }
}

/// Lexicographic sort key: coordinate 0 is the most significant.
fn lex_key(code: u64, d: usize) -> u64 {
    code.reverse_bits() >> (64 - d)
}

fn from_lex_key(key: u64, d: usize) -> u64 {
    (key << (64 - d)).reverse_bits()
}

/// One orbit, points sorted lexicographically; the first is the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    dim: usize,
    codes: Vec<u64>,
    /// Generator that carried the BFS parent to this point.
    via: Vec<u8>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn representative(&self) -> BitVector {
        BitVector::from_code(self.codes[0], self.dim)
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn points(&self) -> Vec<BitVector> {
        self.codes.iter().map(|&c| BitVector::from_code(c, self.dim)).collect()
    }

    pub fn position(&self, v: &BitVector) -> Option<usize> {
        if v.len() != self.dim {
            return None;
        }
        let key = lex_key(v.to_code(), self.dim);
        self.codes.binary_search_by_key(&key, |&c| lex_key(c, self.dim)).ok()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    dim: usize,
    generators: Vec<BitMatrix>,
    inverses: Vec<BitMatrix>,
    orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    /// Orbits of `⟨gens⟩` on the nonzero vectors of `GF(2)^d`, ordered by
    /// their lexicographically least points.
    pub fn compute(d: usize, gens: &[BitMatrix], cap_dim: usize) -> Result<Self, GroupError> {
        let limit = cap_dim.min(HARD_MAX_DIM);
        if d > limit {
            return Err(GroupError::CapExceeded { what: "module dimension", value: d as u64, cap: limit as u64 });
        }
        let group = MatrixGroup::new(d, gens.to_vec())?;
        let actions: Vec<CodeAction> = gens.iter().map(CodeAction::new).collect();
        let inverses = gens.iter().map(|g| g.inverse().expect("validated invertible")).collect();
        let total = 1u64 << d;
        let mut seen = vec![0u64; (total as usize).div_ceil(64)];
        let mark = |seen: &mut [u64], c: u64| -> bool {
            let (w, b) = ((c >> 6) as usize, c & 63);
            let fresh = seen[w] >> b & 1 == 0;
            seen[w] |= 1 << b;
            fresh
        };
        let mut orbits = Vec::new();
        for key in 1..total {
            let start = from_lex_key(key, d);
            if !mark(&mut seen, start) {
                continue;
            }
            let mut members = vec![(start, NO_GEN)];
            let mut head = 0;
            while head < members.len() {
                let c = members[head].0;
                head += 1;
                for (gi, act) in actions.iter().enumerate() {
                    let image = act.apply(c);
                    if mark(&mut seen, image) {
                        members.push((image, gi as u8));
                    }
                }
            }
            members.sort_unstable_by_key(|&(c, _)| lex_key(c, d));
            let (codes, via) = members.into_iter().unzip();
            orbits.push(Orbit { dim: d, codes, via });
        }
        Ok(Self { dim: d, generators: group.generators().to_vec(), inverses, orbits })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.generators
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::len).collect()
    }

    /// Generator indices `w` with `rep · g_{w_0} · g_{w_1} ⋯ = point`.
    pub fn transversal_word(&self, orbit: usize, point: usize) -> Vec<usize> {
        let o = &self.orbits[orbit];
        let mut word = Vec::new();
        let mut v = BitVector::from_code(o.codes[point], self.dim);
        let mut idx = point;
        while o.via[idx] != NO_GEN {
            let g = o.via[idx] as usize;
            word.push(g);
            v = self.inverses[g].apply(&v);
            idx = o.position(&v).expect("BFS parent lies in the orbit");
        }
        word.reverse();
        word
    }

    /// Schreier generators for the stabilizer of the orbit representative.
    /// Computed on demand; duplicates and the identity are dropped.
    pub fn stabilizer_generators(&self, orbit: usize) -> Vec<BitMatrix> {
        let o = &self.orbits[orbit];
        let n = self.dim;
        let mut transversal: Vec<Option<BitMatrix>> = vec![None; o.len()];
        transversal[0] = Some(BitMatrix::identity(n));
        for i in 1..o.len() {
            let mut m = BitMatrix::identity(n);
            for g in self.transversal_word(orbit, i) {
                m = &m * &self.generators[g];
            }
            transversal[i] = Some(m);
        }
        let inv: Vec<BitMatrix> = transversal
            .iter()
            .map(|t| t.as_ref().unwrap().inverse().expect("products of invertibles"))
            .collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, &c) in o.codes.iter().enumerate() {
            let u = transversal[i].as_ref().unwrap();
            for g in &self.generators {
                let image = g.apply(&BitVector::from_code(c, n));
                let j = o.position(&image).expect("orbit is closed");
                let s = &(u * g) * &inv[j];
                if !s.is_identity() && seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn permutation_action(&self, orbit: usize) -> Result<PermAction, GroupError> {
        induced_permutation(&self.generators, &self.orbits[orbit].points())
    }
}

/// Orbits of `h` on the nonzero vectors of the module described by `tag`.
pub fn orbit_decomposition(h: &MatrixGroup, tag: &ModuleTag, cap_dim: usize) -> Result<OrbitDecomposition, GroupError> {
    let d = tag.induced_dim(h.dim())?;
    if d > cap_dim.min(HARD_MAX_DIM) {
        return Err(GroupError::CapExceeded { what: "module dimension", value: d as u64, cap: cap_dim.min(HARD_MAX_DIM) as u64 });
    }
    OrbitDecomposition::compute(d, &h.induced_generators(tag)?, cap_dim)
}

/// Generators as permutations of a finite set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    degree: usize,
    images: Vec<Vec<u32>>,
}

impl PermAction {
    pub fn new(degree: usize, images: Vec<Vec<u32>>) -> Option<Self> {
        for p in &images {
            if p.len() != degree {
                return None;
            }
            let mut hit = vec![false; degree];
            for &x in p {
                if (x as usize) >= degree || std::mem::replace(&mut hit[x as usize], true) {
                    return None;
                }
            }
        }
        Some(Self { degree, images })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    /// The permutation of a generator word, applied left to right.
    pub fn word_image(&self, word: &[usize]) -> Vec<u32> {
        let mut perm: Vec<u32> = (0..self.degree as u32).collect();
        for &g in word {
            for x in perm.iter_mut() {
                *x = self.images[g][*x as usize];
            }
        }
        perm
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return false;
        }
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for p in &self.images {
                let y = p[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.degree
    }
}

/// Each generator's permutation of `points`, indexed by their given order.
pub fn induced_permutation(gens: &[BitMatrix], points: &[BitVector]) -> Result<PermAction, GroupError> {
    let index: HashMap<&BitVector, u32> = points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let mut images = Vec::with_capacity(gens.len());
    for (gi, g) in gens.iter().enumerate() {
        let mut perm = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != g.nrows() {
                return Err(GroupError::NotClosed(gi));
            }
            let image = g.apply(p);
            perm.push(*index.get(&image).ok_or(GroupError::NotClosed(gi))?);
        }
        images.push(perm);
    }
    Ok(PermAction { degree: points.len(), images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_bits(s.chars().map(|c| c == '1'))
    }

    fn sets(dec: &OrbitDecomposition) -> Vec<Vec<String>> {
        dec.orbits().iter().map(|o| o.points().iter().map(BitVector::to_bit_string).collect()).collect()
    }

    #[test]
    fn code_action_matches_apply() {
        let g = BitMatrix::from_fn(11, 11, |i, j| (i * 7 + j * 3) % 5 == 0 || i == j);
        let act = CodeAction::new(&g);
        for code in [1u64, 5, 1000, 2047, 1234] {
            let v = BitVector::from_code(code, 11);
            assert_eq!(act.apply(code), g.apply(&v).to_code());
        }
    }

    #[test]
    fn unipotent_plane() {
        // row convention: e2 is fixed, e1 ↦ e1 + e2
        let g = BitMatrix::from_strs(&["11", "01"]);
        let dec = OrbitDecomposition::compute(2, &[g.clone()], DEFAULT_CAP_DIM).unwrap();
        assert_eq!(sets(&dec), vec![vec!["01".to_string()], vec!["10".into(), "11".into()]]);
        let dec = OrbitDecomposition::compute(2, &[g.transpose()], DEFAULT_CAP_DIM).unwrap();
        assert_eq!(sets(&dec), vec![vec!["01".to_string(), "11".into()], vec!["10".into()]]);
    }

    #[test]
    fn singer_orbits_and_words() {
        let c = BitMatrix::companion(&[true, true, false, false]);
        let dec = OrbitDecomposition::compute(4, &[c.clone()], DEFAULT_CAP_DIM).unwrap();
        assert_eq!(dec.sizes(), vec![15]);
        let rep = dec.orbits()[0].representative();
        assert_eq!(rep, bv("0001"));
        for i in 0..15 {
            let w = dec.transversal_word(0, i);
            let v = w.iter().fold(rep.clone(), |v, _| c.apply(&v));
            assert_eq!(v, dec.orbits()[0].points()[i]);
        }
        assert!(dec.stabilizer_generators(0).is_empty());
        let p = dec.permutation_action(0).unwrap();
        assert!(p.is_transitive());
    }

    #[test]
    fn cap_is_enforced() {
        let g = BitMatrix::identity(30);
        assert!(matches!(
            OrbitDecomposition::compute(30, &[g], DEFAULT_CAP_DIM),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn open_sets_are_rejected() {
        let c = BitMatrix::permutation(&[1, 2, 0]);
        assert!(matches!(induced_permutation(&[c], &[bv("100")]), Err(GroupError::NotClosed(0))));
        let id = induced_permutation(&[BitMatrix::identity(3)], &[bv("100"), bv("011")]).unwrap();
        assert_eq!(id.images(), &[vec![0, 1]]);
    }

    #[test]
    fn stabilizer_of_a_vector_in_gl3() {
        let gens = [BitMatrix::from_strs(&["110", "010", "001"]), BitMatrix::permutation(&[1, 2, 0])];
        let dec = OrbitDecomposition::compute(3, &gens, DEFAULT_CAP_DIM).unwrap();
        assert_eq!(dec.sizes(), vec![7]);
        let stab = dec.stabilizer_generators(0);
        let rep = dec.orbits()[0].representative();
        assert!(!stab.is_empty());
        for s in &stab {
            assert_eq!(s.apply(&rep), rep);
        }
        let group = MatrixGroup::new(3, stab).unwrap();
        assert_eq!(super::super::enumerate_elements(&group, 1000).unwrap().len(), 24);
    }
}
