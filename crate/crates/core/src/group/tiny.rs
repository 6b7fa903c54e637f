//! Exhaustive machinery for groups small enough to list element by element.
//!
//! Elements of `GL_k(2)` with `k <= 8` are packed into `u64` codes (row `i`
//! in bits `k·i..`), and every subgroup is a sorted list of element indices.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{GroupError, MatrixGroup};
use crate::gf2::BitMatrix;

pub const DEFAULT_CAP_ORDER: u64 = 200_000;
pub const MAX_TINY_DIM: usize = 8;

/// Every element of `h`, in BFS order from the identity under right
/// multiplication by the generators.
pub fn enumerate_elements(h: &MatrixGroup, cap: u64) -> Result<Vec<BitMatrix>, GroupError> {
    let id = BitMatrix::identity(h.dim());
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in h.generators() {
            let y = &x * g;
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() as u64 > cap {
                    return Err(GroupError::CapExceeded { what: "group order", value: out.len() as u64, cap });
                }
            }
        }
    }
    Ok(out)
}

/// One conjugacy class of maximal subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub order: u64,
    /// Number of conjugates, `|H : N_H(M)|`.
    pub class_size: u64,
    pub generators: Vec<BitMatrix>,
}

enum Index {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

impl Index {
    fn get(&self, code: u64) -> Option<u32> {
        match self {
            Self::Dense(t) => t.get(code as usize).copied().filter(|&i| i != u32::MAX),
            Self::Sparse(m) => m.get(&code).copied(),
        }
    }

    fn insert(&mut self, code: u64, i: u32) {
        match self {
            Self::Dense(t) => t[code as usize] = i,
            Self::Sparse(m) => {
                m.insert(code, i);
            }
        }
    }
}

fn code_mul(a: u64, b: u64, k: usize) -> u64 {
    let mask = (1u64 << k) - 1;
    let mut out = 0;
    for i in 0..k {
        let mut row = (a >> (i * k)) & mask;
        let mut acc = 0;
        while row != 0 {
            let j = row.trailing_zeros() as usize;
            acc ^= (b >> (j * k)) & mask;
            row &= row - 1;
        }
        out |= acc << (i * k);
    }
    out
}

struct Sub {
    gens: Vec<u32>,
    members: Vec<u32>,
    mask: Vec<u64>,
    hist: Vec<u32>,
}

impl Sub {
    fn order(&self) -> u64 {
        self.members.len() as u64
    }

    fn contains(&self, x: u32) -> bool {
        self.mask[x as usize >> 6] >> (x & 63) & 1 == 1
    }
}

struct Tiny {
    k: usize,
    elems: Vec<u64>,
    index: Index,
    inv: Vec<u32>,
    gens: Vec<u32>,
    class_of: Vec<u32>,
    /// `τ_x` with `τ_x⁻¹ · rep · τ_x = x` for the representative of x's class.
    transporter: Vec<u32>,
    class_reps: Vec<u32>,
    centralizers: Vec<Vec<u32>>,
}

impl Tiny {
    fn new(h: &MatrixGroup, cap: u64) -> Result<Self, GroupError> {
        let k = h.dim();
        if k > MAX_TINY_DIM {
            return Err(GroupError::TooWide { found: k, max: MAX_TINY_DIM });
        }
        let gen_codes: Vec<u64> = h.generators().iter().map(BitMatrix::to_code).collect();
        let mut index = if k * k <= 20 { Index::Dense(vec![u32::MAX; 1 << (k * k)]) } else { Index::Sparse(HashMap::new()) };
        let id = BitMatrix::identity(k).to_code();
        let mut elems = vec![id];
        index.insert(id, 0);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            for &g in &gen_codes {
                let y = code_mul(x, g, k);
                if index.get(y).is_none() {
                    let i = elems.len() as u32;
                    index.insert(y, i);
                    elems.push(y);
                    if elems.len() as u64 > cap {
                        return Err(GroupError::CapExceeded { what: "group order", value: elems.len() as u64, cap });
                    }
                }
            }
            head += 1;
        }
        let mut t = Self {
            k,
            gens: gen_codes.iter().map(|&c| index.get(c).unwrap()).collect(),
            elems,
            index,
            inv: Vec::new(),
            class_of: Vec::new(),
            transporter: Vec::new(),
            class_reps: Vec::new(),
            centralizers: Vec::new(),
        };
        t.inv = t.elems.iter().map(|&x| t.index.get(t.inverse_code(x)).expect("group is closed")).collect();
        t.build_classes();
        Ok(t)
    }

    fn inverse_code(&self, code: u64) -> u64 {
        BitMatrix::from_code(code, self.k).inverse().expect("group elements are invertible").to_code()
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.index
            .get(code_mul(self.elems[a as usize], self.elems[b as usize], self.k))
            .expect("group is closed")
    }

    /// `h⁻¹ x h`.
    fn conj(&self, x: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv[h as usize], x), h)
    }

    fn build_classes(&mut self) {
        let n = self.n();
        self.class_of = vec![u32::MAX; n];
        self.transporter = vec![0; n];
        for x in 0..n as u32 {
            if self.class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = self.class_reps.len() as u32;
            self.class_reps.push(x);
            self.class_of[x as usize] = c;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for gi in 0..self.gens.len() {
                    let g = self.gens[gi];
                    let z = self.conj(y, g);
                    if self.class_of[z as usize] == u32::MAX {
                        self.class_of[z as usize] = c;
                        self.transporter[z as usize] = self.mul(self.transporter[y as usize], g);
                        stack.push(z);
                    }
                }
            }
        }
        self.centralizers = self
            .class_reps
            .iter()
            .map(|&r| (0..n as u32).filter(|&h| self.mul(h, r) == self.mul(r, h)).collect())
            .collect();
    }

    /// The subgroup generated by `gens`, or `None` once it outgrows `limit`.
    fn closure(&self, gens: &[u32], limit: usize) -> Option<Vec<u32>> {
        if limit == 0 {
            return None;
        }
        let mut inset = vec![false; self.n()];
        inset[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inset[y as usize] {
                    inset[y as usize] = true;
                    members.push(y);
                    if members.len() > limit {
                        return None;
                    }
                }
            }
        }
        members.sort_unstable();
        Some(members)
    }

    fn make_sub(&self, gens: Vec<u32>, members: Vec<u32>) -> Sub {
        let mut mask = vec![0u64; self.n().div_ceil(64)];
        let mut hist = vec![0u32; self.class_reps.len()];
        for &x in &members {
            mask[x as usize >> 6] |= 1 << (x & 63);
            hist[self.class_of[x as usize] as usize] += 1;
        }
        Sub { gens, members, mask, hist }
    }

    /// Elements `h` with `s^h ∈ t` for every generator `s`; stops at the first
    /// one when `first_only`.
    fn conjugators_into(&self, sgens: &[u32], t: &Sub, first_only: bool) -> Vec<u32> {
        let Some((&s0, rest)) = sgens.split_first() else {
            return if first_only { vec![0] } else { (0..self.n() as u32).collect() };
        };
        let c = self.class_of[s0 as usize];
        let tau_inv = self.inv[self.transporter[s0 as usize] as usize];
        let mut out = Vec::new();
        for &target in t.members.iter().filter(|&&x| self.class_of[x as usize] == c) {
            let tau_t = self.transporter[target as usize];
            for &cent in &self.centralizers[c as usize] {
                let h = self.mul(self.mul(tau_inv, cent), tau_t);
                if rest.iter().all(|&s| t.contains(self.conj(s, h))) {
                    out.push(h);
                    if first_only {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// A few elements generating the centralizer of the `i`-th class representative.
    fn centralizer_generators(&self, i: usize) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n()];
        inside[0] = true;
        for &c in &self.centralizers[i] {
            if !inside[c as usize] {
                gens.push(c);
                for x in self.closure(&gens, usize::MAX).expect("no limit") {
                    inside[x as usize] = true;
                }
            }
        }
        gens
    }

    /// Generator pairs covering every subgroup generated by at most two
    /// elements, up to conjugacy.
    fn generating_pairs(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let mut out = Vec::new();
        for (i, &a) in self.class_reps.iter().enumerate() {
            out.push(if a == 0 { vec![] } else { vec![a] });
            let cgens = self.centralizer_generators(i);
            let mut seen = vec![false; n];
            for b in 1..n as u32 {
                if seen[b as usize] || (self.class_of[b as usize] as usize) < i {
                    continue;
                }
                seen[b as usize] = true;
                let mut stack = vec![b];
                while let Some(y) = stack.pop() {
                    for &c in &cgens {
                        let z = self.conj(y, c);
                        if !seen[z as usize] {
                            seen[z as usize] = true;
                            stack.push(z);
                        }
                    }
                }
                if a != 0 && b != a {
                    out.push(vec![a, b]);
                }
            }
        }
        out
    }

    fn mark_coset(&self, marked: &mut [bool], s: &Sub, x: u32) {
        for &m in &s.members {
            marked[self.mul(m, x) as usize] = true;
        }
    }

    /// A proper subgroup strictly containing `s`, if one exists. Tries one
    /// element per double coset `S g S`.
    fn find_overgroup(&self, s: &Sub) -> Option<(Vec<u32>, Vec<u32>)> {
        let n = self.n();
        let mut marked = vec![false; n];
        for &x in &s.members {
            marked[x as usize] = true;
        }
        for g in 0..n as u32 {
            if marked[g as usize] {
                continue;
            }
            let mut gens = s.gens.clone();
            gens.push(g);
            if let Some(members) = self.closure(&gens, n / 2) {
                return Some((gens, members));
            }
            // mark S g S one right coset at a time
            let mut stack = vec![g];
            self.mark_coset(&mut marked, s, g);
            while let Some(x) = stack.pop() {
                for &sg in &s.gens {
                    let y = self.mul(x, sg);
                    if !marked[y as usize] {
                        self.mark_coset(&mut marked, s, y);
                        stack.push(y);
                    }
                }
            }
        }
        None
    }
}

#[derive(Default)]
struct Store {
    subs: Vec<Sub>,
    exact: HashSet<Vec<u32>>,
    by_hist: HashMap<Vec<u32>, Vec<usize>>,
}

impl Store {
    /// Adds a subgroup unless it, or a conjugate, is already stored.
    fn add(&mut self, t: &Tiny, gens: Vec<u32>, members: Vec<u32>) -> bool {
        if !self.exact.insert(members.clone()) {
            return false;
        }
        let sub = t.make_sub(gens, members);
        let bucket = self.by_hist.entry(sub.hist.clone()).or_default();
        if bucket.iter().any(|&j| !t.conjugators_into(&sub.gens, &self.subs[j], true).is_empty()) {
            return false;
        }
        bucket.push(self.subs.len());
        self.subs.push(sub);
        true
    }
}

fn dominated(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// All maximal subgroups of `h` up to conjugacy, with class sizes.
///
/// Candidates are the subgroups generated by at most two elements. A
/// candidate not contained in a conjugate of a larger candidate is checked
/// against every double coset; any proper overgroup found joins the
/// candidates and the pass repeats. Sorted by decreasing order.
pub fn tiny_maximal_subgroups(h: &MatrixGroup, cap: u64) -> Result<Vec<SubgroupClass>, GroupError> {
    let t = Tiny::new(h, cap)?;
    let n = t.n();
    let closures: Vec<_> = t
        .generating_pairs()
        .into_par_iter()
        .filter_map(|gens| t.closure(&gens, n / 2).map(|m| (gens, m)))
        .collect();
    let mut store = Store::default();
    for (gens, members) in closures {
        store.add(&t, gens, members);
    }
    let mut contained: Vec<bool> = Vec::new();
    let mut verified: Vec<bool> = Vec::new();
    loop {
        contained.resize(store.subs.len(), false);
        verified.resize(store.subs.len(), false);
        for i in 0..store.subs.len() {
            if contained[i] {
                continue;
            }
            let s = &store.subs[i];
            contained[i] = store.subs.iter().any(|u| {
                u.order() > s.order()
                    && u.order() % s.order() == 0
                    && dominated(&s.hist, &u.hist)
                    && !t.conjugators_into(&s.gens, u, true).is_empty()
            });
        }
        let mut grew = false;
        for i in 0..store.subs.len() {
            if contained[i] || verified[i] {
                continue;
            }
            match t.find_overgroup(&store.subs[i]) {
                None => verified[i] = true,
                Some((gens, members)) => {
                    store.add(&t, gens, members);
                    contained[i] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<SubgroupClass> = (0..store.subs.len())
        .filter(|&i| verified[i] && !contained[i])
        .map(|i| {
            let s = &store.subs[i];
            let normalizer = t.conjugators_into(&s.gens, s, false).len() as u64;
            SubgroupClass {
                order: s.order(),
                class_size: n as u64 / normalizer,
                generators: s.gens.iter().map(|&g| BitMatrix::from_code(t.elems[g as usize], t.k)).collect(),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.order
            .cmp(&a.order)
            .then(a.class_size.cmp(&b.class_size))
            .then_with(|| {
                let key = |c: &SubgroupClass| c.generators.iter().map(BitMatrix::to_code).collect::<Vec<_>>();
                key(a).cmp(&key(b))
            })
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: Vec<BitMatrix>) -> MatrixGroup {
        let k = gens[0].nrows();
        MatrixGroup::new(k, gens).unwrap()
    }

    fn gl3() -> MatrixGroup {
        group(vec![BitMatrix::from_strs(&["110", "010", "001"]), BitMatrix::permutation(&[1, 2, 0])])
    }

    fn singer(coeffs: &[bool]) -> MatrixGroup {
        group(vec![BitMatrix::companion(coeffs)])
    }

    #[test]
    fn element_counts() {
        assert_eq!(enumerate_elements(&group(vec![BitMatrix::identity(3)]), 10).unwrap().len(), 1);
        assert_eq!(enumerate_elements(&singer(&[true, true, false, false]), 100).unwrap().len(), 15);
        assert_eq!(enumerate_elements(&gl3(), 1000).unwrap().len(), 168);
        assert!(matches!(enumerate_elements(&gl3(), 100), Err(GroupError::CapExceeded { .. })));
    }

    #[test]
    fn code_mul_matches_matrices() {
        let a = BitMatrix::from_strs(&["110", "011", "101"]);
        let b = BitMatrix::from_strs(&["100", "111", "001"]);
        assert_eq!(code_mul(a.to_code(), b.to_code(), 3), (&a * &b).to_code());
    }

    #[test]
    fn prime_cyclic_has_trivial_maximal() {
        let m = tiny_maximal_subgroups(&singer(&[true, true, false]), DEFAULT_CAP_ORDER).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].order, m[0].class_size), (1, 1));
        assert!(m[0].generators.is_empty());
    }

    #[test]
    fn cyclic_fifteen() {
        let m = tiny_maximal_subgroups(&singer(&[true, true, false, false]), DEFAULT_CAP_ORDER).unwrap();
        let shape: Vec<_> = m.iter().map(|c| (c.order, c.class_size)).collect();
        assert_eq!(shape, vec![(5, 1), (3, 1)]);
    }

    #[test]
    fn gl3_maximals() {
        let m = tiny_maximal_subgroups(&gl3(), DEFAULT_CAP_ORDER).unwrap();
        let shape: Vec<_> = m.iter().map(|c| (c.order, c.class_size)).collect();
        assert_eq!(shape, vec![(24, 7), (24, 7), (21, 8)]);
        assert_eq!(m.iter().map(|c| c.class_size).sum::<u64>(), 22);
    }

    #[test]
    fn trivial_group_has_no_maximals() {
        assert!(tiny_maximal_subgroups(&group(vec![BitMatrix::identity(2)]), 10).unwrap().is_empty());
    }
}
