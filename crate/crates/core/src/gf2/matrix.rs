use std::fmt;
use std::ops::{Add, Mul};

use super::echelon::eliminate;
use super::{BitVector, Gf2Error};

/// A dense matrix over GF(2), stored as packed rows.
///
/// Vectors are rows and act on the left: the image of `v` under `g` is
/// `v · g`. Every operation in the crate follows this convention.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        let Some(cols) = rows.first().map(BitVector::len) else {
            return Err(Gf2Error::Empty);
        };
        if cols == 0 {
            return Err(Gf2Error::Empty);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                op: "from_rows",
                left: (rows.len(), cols),
                right: (1, bad.len()),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows)
                .map(|i| BitVector::from_bits((0..cols).map(|j| f(i, j))))
                .collect(),
        }
    }

    /// Convenience constructor from `0`/`1` strings, one per row.
    ///
    /// # Panics
    /// Panics on ragged input or characters other than `0` and `1`.
    pub fn from_strs(rows: &[&str]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                BitVector::from_bits(r.chars().map(|c| match c {
                    '0' => false,
                    '1' => true,
                    other => panic!("invalid matrix character {other:?}"),
                }))
            })
            .collect();
        Self::from_rows(data).expect("ragged matrix literal")
    }

    /// Permutation matrix sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| perm[i] == j)
    }

    /// Companion matrix of the monic polynomial whose low coefficients are
    /// given by `coeffs` (`coeffs[i]` multiplies `x^i`, degree = `coeffs.len()`).
    ///
    /// In the basis `1, x, …, x^{m-1}` this is multiplication by `x` modulo the
    /// polynomial: `e_i ↦ e_{i+1}` and `e_{m-1} ↦ Σ coeffs[i] e_i`.
    pub fn companion(coeffs: &[bool]) -> Self {
        let m = coeffs.len();
        assert!(m > 0, "companion matrix of a constant polynomial");
        Self::from_fn(m, m, |i, j| if i + 1 < m { j == i + 1 } else { coeffs[j] })
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.data
    }

    pub fn require_square(&self) -> Result<usize, Gf2Error> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// `v · self`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.rows, "vector length does not match matrix rows");
        let mut out = BitVector::zeros(self.cols);
        for i in v.iter_ones() {
            out.xor_assign(&self.data[i]);
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                op: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data: self.data.iter().map(|r| other.apply(r)).collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Gf2Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Gf2Error::DimensionMismatch {
                op: "add",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.xor(b)).collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.iter_ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.data.iter().enumerate().all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        eliminate(&mut rows, self.cols).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<BitVector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::unit(n, i)))
            .collect();
        if eliminate(&mut aug, n).len() < n {
            return None;
        }
        Some(Self {
            rows: n,
            cols: n,
            data: aug.iter().map(|r| r.slice(n, n)).collect(),
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative order, if it is at most `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Packs a square matrix with `n * n <= 64` entries into a word, row `i`
    /// occupying bits `i*n .. (i+1)*n`.
    pub fn to_code(&self) -> u64 {
        let n = self.rows;
        assert!(self.is_square() && n * n <= 64, "to_code needs a square matrix with at most 64 entries");
        self.data
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, r)| acc | (r.to_code() << (i * n)))
    }

    pub fn from_code(code: u64, n: usize) -> Self {
        assert!(n * n <= 64 && n > 0);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| BitVector::from_code((code >> (i * n)) & mask, n)).collect(),
        }
    }
}

impl Mul for &BitMatrix {
    type Output = BitMatrix;

    /// # Panics
    /// Panics on a dimension mismatch; use [`BitMatrix::checked_mul`] for
    /// untrusted input.
    fn mul(self, rhs: &BitMatrix) -> BitMatrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Add for &BitMatrix {
    type Output = BitMatrix;

    fn add(self, rhs: &BitMatrix) -> BitMatrix {
        self.checked_add(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvection_squares_to_identity() {
        let t = BitMatrix::from_strs(&["11", "01"]);
        assert_eq!(&t * &t, BitMatrix::identity(2));
    }

    #[test]
    fn identity_is_neutral() {
        let a = BitMatrix::from_strs(&["101", "011", "110"]);
        assert_eq!(&BitMatrix::identity(3) * &a, a);
        assert_eq!(&a * &BitMatrix::identity(3), a);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = BitMatrix::zeros(2, 3);
        assert!(matches!(a.checked_mul(&a), Err(Gf2Error::DimensionMismatch { .. })));
        assert!(BitMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let c = BitMatrix::companion(&[true, true, false]); // x^3 + x + 1
        let inv = c.inverse().unwrap();
        assert!((&c * &inv).is_identity());
        assert_eq!(c.order(100), Some(7));
        assert!(BitMatrix::zeros(3, 3).inverse().is_none());
        assert_eq!(c.pow(7), BitMatrix::identity(3));
    }

    #[test]
    fn code_round_trip() {
        let a = BitMatrix::from_strs(&["101", "011", "110"]);
        assert_eq!(BitMatrix::from_code(a.to_code(), 3), a);
    }

    #[test]
    fn apply_is_row_action() {
        let a = BitMatrix::from_strs(&["110", "011", "001"]);
        let v = BitVector::from_bits([true, true, false]);
        assert_eq!(a.apply(&v).to_bit_string(), "101");
    }
}
