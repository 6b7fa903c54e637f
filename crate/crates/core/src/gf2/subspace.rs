use super::echelon::{eliminate, rref};
use super::{BitMatrix, BitVector, Gf2Error};

/// A subspace of `GF(2)^n`, held as its reduced row echelon basis.
///
/// Pivots ascend and every pivot column is cleared in the other rows, so two
/// subspaces are equal exactly when their bases are bitwise equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<BitVector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| BitVector::unit(ambient_dim, i)).collect(),
        }
    }

    /// The span of `vectors`, canonicalized.
    pub fn span(ambient_dim: usize, vectors: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Gf2Error::AmbientMismatch(ambient_dim, bad.len()));
        }
        Ok(Self {
            ambient_dim,
            basis: rref(vectors),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.first_one().expect("basis rows are nonzero")).collect()
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.clone();
        for b in &self.basis {
            let p = b.first_one().expect("basis rows are nonzero");
            if w.get(p) {
                w.xor_assign(b);
            }
        }
        w.is_zero()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// `self + other`.
    pub fn join(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check_ambient(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, all)
    }

    /// The image `{v · g : v ∈ self}`.
    pub fn image(&self, g: &BitMatrix) -> Result<Self, Gf2Error> {
        if g.nrows() != self.ambient_dim {
            return Err(Gf2Error::AmbientMismatch(self.ambient_dim, g.nrows()));
        }
        Self::span(g.ncols(), self.basis.iter().map(|b| g.apply(b)).collect())
    }

    /// Every vector of the subspace; only sensible for small dimensions.
    pub fn elements(&self) -> Vec<BitVector> {
        assert!(self.dim() < 32, "refusing to list 2^{} vectors", self.dim());
        (0u64..1 << self.dim())
            .map(|mask| {
                let mut v = BitVector::zeros(self.ambient_dim);
                for (i, b) in self.basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(b);
                    }
                }
                v
            })
            .collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Gf2Error::AmbientMismatch(self.ambient_dim, other.ambient_dim))
        }
    }
}

/// Left kernel `{v : v · a = 0}`, of dimension `a.rows - rank(a)`.
pub fn kernel(a: &BitMatrix) -> Subspace {
    let (n, m) = (a.nrows(), a.ncols());
    let mut aug: Vec<BitVector> = a
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| r.concat(&BitVector::unit(n, i)))
        .collect();
    let rank = eliminate(&mut aug, m).len();
    let vectors = aug[rank..].iter().map(|r| r.slice(m, n)).collect();
    Subspace {
        ambient_dim: n,
        basis: rref(vectors),
    }
}

pub fn rank(a: &BitMatrix) -> usize {
    a.rank()
}

/// The 1-eigenspace of `g`, i.e. `kernel(g + I)`.
pub fn fixed_space(g: &BitMatrix) -> Result<Subspace, Gf2Error> {
    let n = g.require_square()?;
    Ok(kernel(&(g + &BitMatrix::identity(n))))
}

/// Zassenhaus intersection: eliminate `[s | s]` stacked on `[t | 0]` over the
/// left half; rows whose left half vanishes carry `s ∩ t` on the right.
pub fn intersect(s: &Subspace, t: &Subspace) -> Result<Subspace, Gf2Error> {
    s.check_ambient(t)?;
    let n = s.ambient_dim;
    if s.is_zero() || t.is_full() {
        return Ok(s.clone());
    }
    if t.is_zero() || s.is_full() {
        return Ok(t.clone());
    }
    let zero = BitVector::zeros(n);
    let mut rows: Vec<BitVector> = s.basis.iter().map(|b| b.concat(b)).collect();
    rows.extend(t.basis.iter().map(|b| b.concat(&zero)));
    let rank = eliminate(&mut rows, n).len();
    let vectors = rows[rank..].iter().map(|r| r.slice(n, n)).collect();
    Ok(Subspace {
        ambient_dim: n,
        basis: rref(vectors),
    })
}

/// Vectors fixed by every matrix in `gens`; the whole space when `gens` is
/// empty (the trivial group).
pub fn common_fixed_space(dim: usize, gens: &[BitMatrix]) -> Result<Subspace, Gf2Error> {
    let mut acc = Subspace::full(dim);
    for g in gens {
        let n = g.require_square()?;
        if n != dim {
            return Err(Gf2Error::DimensionMismatch {
                op: "common_fixed_space",
                left: (dim, dim),
                right: (g.nrows(), g.ncols()),
            });
        }
        acc = intersect(&acc, &fixed_space(g)?)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> BitVector {
        BitVector::unit(n, i)
    }

    #[test]
    fn kernel_extremes() {
        assert_eq!(kernel(&BitMatrix::zeros(4, 4)).dim(), 4);
        assert_eq!(kernel(&BitMatrix::identity(4)).dim(), 0);
        // non-square: 3x2 matrix of rank 2 has a 1-dimensional left kernel
        let a = BitMatrix::from_strs(&["10", "01", "11"]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&BitVector::from_bits([true, true, true])));
    }

    #[test]
    fn fixed_space_of_cycle() {
        let p = BitMatrix::permutation(&[1, 2, 3, 4, 5, 6, 0]);
        let f = fixed_space(&p).unwrap();
        assert_eq!(f.dim(), 1);
        assert!(f.contains(&BitVector::from_bits([true; 7])));
        assert_eq!(fixed_space(&BitMatrix::identity(5)).unwrap().dim(), 5);
        assert!(fixed_space(&BitMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn companion_of_x3_x_1_fixes_nothing() {
        let c = BitMatrix::companion(&[true, true, false]);
        let fixed: Vec<u64> = (0u64..8)
            .filter(|&code| {
                let v = BitVector::from_code(code, 3);
                c.apply(&v) == v
            })
            .collect();
        assert_eq!(fixed, vec![0]);
        assert_eq!(fixed_space(&c).unwrap().dim(), 0);
    }

    #[test]
    fn small_intersections() {
        let s = Subspace::span(3, vec![e(3, 0), e(3, 1)]).unwrap();
        let t = Subspace::span(3, vec![e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(intersect(&s, &t).unwrap(), Subspace::span(3, vec![e(3, 1)]).unwrap());
        assert_eq!(intersect(&s, &Subspace::full(3)).unwrap(), s);
        assert!(intersect(&s, &Subspace::full(4)).is_err());
    }

    #[test]
    fn empty_generator_list() {
        assert_eq!(common_fixed_space(5, &[]).unwrap().dim(), 5);
        assert!(common_fixed_space(3, &[BitMatrix::identity(4)]).is_err());
    }

    #[test]
    fn gl3_fixes_nothing() {
        let a = BitMatrix::from_strs(&["110", "010", "001"]);
        let b = BitMatrix::permutation(&[1, 2, 0]);
        let f = common_fixed_space(3, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(f.dim(), 0);
        let by_exhaustion = (1u64..8)
            .map(|c| BitVector::from_code(c, 3))
            .filter(|v| a.apply(v) == *v && b.apply(v) == *v)
            .count();
        assert_eq!(by_exhaustion, 0);
    }
}
