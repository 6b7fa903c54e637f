use super::BitVector;

/// Gauss–Jordan elimination restricted to pivot columns `< pivot_limit`.
///
/// On return the first `pivots.len()` rows are in reduced echelon form on
/// those columns (ascending pivots, each pivot column cleared in every other
/// row), and every remaining row is zero on columns `< pivot_limit`.
pub(crate) fn eliminate(rows: &mut [BitVector], pivot_limit: usize) -> Vec<usize> {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..pivot_limit {
        if rank == rows.len() {
            break;
        }
        let (w, mask) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].words()[w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.words()[w] & mask != 0 {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Reduced row echelon form of the span of `rows`; zero rows are dropped.
pub(crate) fn rref(mut rows: Vec<BitVector>) -> Vec<BitVector> {
    let Some(width) = rows.first().map(BitVector::len) else {
        return rows;
    };
    let rank = eliminate(&mut rows, width).len();
    rows.truncate(rank);
    rows
}

/// Incrementally maintained echelon basis, used for spinning vectors.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBasis {
    len: usize,
    // Sorted by pivot; each row is zero on the pivots of the others.
    rows: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut BitVector) {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v` to the span; returns the reduced vector if it was new.
    pub fn insert(&mut self, mut v: BitVector) -> Option<BitVector> {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let p = v.first_one()?;
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v.clone()));
        Some(v)
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVector {
        BitVector::from_bits(s.chars().map(|c| c == '1'))
    }

    #[test]
    fn rref_is_canonical() {
        let a = rref(vec![v("1100"), v("0110"), v("1010")]);
        let b = rref(vec![v("1010"), v("0110")]);
        assert_eq!(a, b);
        assert_eq!(a, vec![v("1010"), v("0110")]);
    }

    #[test]
    fn incremental_matches_batch() {
        let input = [v("0111"), v("1001"), v("1110"), v("0001")];
        let mut inc = EchelonBasis::new(4);
        for r in &input {
            inc.insert(r.clone());
        }
        assert_eq!(inc.into_rows(), rref(input.to_vec()));
    }
}
