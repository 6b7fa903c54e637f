use std::fmt;

/// A vector over GF(2), packed into 64-bit words.
///
/// Bit `i` lives at `words[i / 64] >> (i % 64)`. Unused high bits of the last
/// word are always zero, so derived equality and hashing are bitwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1u64 << (len % 64);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Builds a vector of length `len <= 64` from the low bits of `code`
    /// (coordinate `i` is bit `i`).
    pub fn from_code(code: u64, len: usize) -> Self {
        assert!(len <= 64, "from_code supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == 64 { code } else { code & ((1u64 << len) - 1) };
        }
        v
    }

    /// Inverse of [`BitVector::from_code`].
    pub fn to_code(&self) -> u64 {
        assert!(self.len <= 64, "to_code supports at most 64 coordinates");
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Addition over GF(2).
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set coordinate (the pivot in echelon form).
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `start..start + len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len);
        let mut out = Self::zeros(len);
        for i in self.iter_ones() {
            if i >= start && i < start + len {
                out.set(i - start, true);
            }
        }
        out
    }

    /// True when the first `n` coordinates are all zero.
    pub fn prefix_is_zero(&self, n: usize) -> bool {
        let full = n / 64;
        if self.words[..full].iter().any(|&w| w != 0) {
            return false;
        }
        let rem = n % 64;
        rem == 0 || self.words[full] & ((1u64 << rem) - 1) == 0
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_round_trip() {
        let v = BitVector::from_code(0b1011, 5);
        assert_eq!(v.to_bit_string(), "11010");
        assert_eq!(v.to_code(), 0b1011);
        assert_eq!(BitVector::from_code(u64::MAX, 64).count_ones(), 64);
    }

    #[test]
    fn ones_and_pivot() {
        let mut v = BitVector::zeros(130);
        v.set(3, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(v.first_one(), Some(3));
        assert!(!v.prefix_is_zero(4));
        assert!(v.prefix_is_zero(3));
        v.set(3, false);
        assert!(v.prefix_is_zero(64));
        assert!(!v.prefix_is_zero(65));
    }

    #[test]
    fn concat_and_slice() {
        let a = BitVector::from_bits([true, false, true]);
        let b = BitVector::from_bits([false, true]);
        let c = a.concat(&b);
        assert_eq!(c.to_bit_string(), "10101");
        assert_eq!(c.slice(3, 2), b);
        assert_eq!(c.slice(0, 3), a);
    }

    #[test]
    fn dot_product() {
        let a = BitVector::from_bits([true, true, false, true]);
        let b = BitVector::from_bits([true, true, true, false]);
        assert!(!a.dot(&b));
        assert!(a.dot(&BitVector::unit(4, 3)));
    }
}
