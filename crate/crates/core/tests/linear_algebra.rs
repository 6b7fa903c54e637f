use epcheck::gf2::{common_fixed_space, fixed_space, intersect, kernel, BitMatrix, BitVector, Subspace};
use epcheck::gf2::text::{format_matrix, parse_matrix};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<bool>(), rows * cols)
        .prop_map(move |bits| BitMatrix::from_fn(rows, cols, |i, j| bits[i * cols + j]))
}

fn any_matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..=70, 1usize..=70).prop_flat_map(|(r, c)| matrix(r, c))
}

fn square(max: usize) -> impl Strategy<Value = BitMatrix> {
    (1usize..=max).prop_flat_map(|n| matrix(n, n))
}

fn invertible(max: usize) -> impl Strategy<Value = BitMatrix> {
    square(max).prop_filter("invertible", BitMatrix::is_invertible)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_nullity(a in any_matrix()) {
        let k = kernel(&a);
        prop_assert_eq!(a.rank() + k.dim(), a.nrows());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        for v in k.basis() {
            prop_assert!(a.apply(v).is_zero());
        }
    }

    #[test]
    fn inverse_round_trip(g in invertible(40)) {
        let inv = g.inverse().unwrap();
        prop_assert!((&g * &inv).is_identity());
        prop_assert!((&inv * &g).is_identity());
    }

    #[test]
    fn product_acts_in_row_order(a in matrix(9, 9), b in matrix(9, 9), bits in prop::collection::vec(any::<bool>(), 9)) {
        let v = BitVector::from_bits(bits);
        prop_assert_eq!((&a * &b).apply(&v), b.apply(&a.apply(&v)));
    }

    #[test]
    fn fixed_space_is_fixed(g in square(30)) {
        let f = fixed_space(&g).unwrap();
        for v in f.basis() {
            prop_assert_eq!(&g.apply(v), v);
        }
        prop_assert_eq!(f.dim(), g.nrows() - (&g + &BitMatrix::identity(g.nrows())).rank());
    }

    #[test]
    fn intersection_dimension(n in 1usize..=20, seed in prop::collection::vec(any::<u64>(), 8)) {
        let vecs = |s: &[u64]| -> Vec<BitVector> { s.iter().map(|&x| BitVector::from_code(x & ((1u64 << n) - 1), n)).collect() };
        let s = Subspace::span(n, vecs(&seed[..4])).unwrap();
        let t = Subspace::span(n, vecs(&seed[4..])).unwrap();
        let meet = intersect(&s, &t).unwrap();
        let join = s.join(&t).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), s.dim() + t.dim());
        prop_assert!(s.contains_subspace(&meet) && t.contains_subspace(&meet));
    }

    #[test]
    fn common_fixed_space_meets_generators(gens in prop::collection::vec(matrix(8, 8), 0..4)) {
        let c = common_fixed_space(8, &gens).unwrap();
        for v in c.basis() {
            for g in &gens {
                prop_assert_eq!(&g.apply(v), v);
            }
        }
        // brute force count of fixed vectors
        let count = (0u64..256)
            .filter(|&x| {
                let v = BitVector::from_code(x, 8);
                gens.iter().all(|g| g.apply(&v) == v)
            })
            .count();
        prop_assert_eq!(count, 1usize << c.dim());
    }

    #[test]
    fn text_round_trip(a in any_matrix()) {
        prop_assert_eq!(parse_matrix(&format_matrix(&a)).unwrap(), a);
    }
}

#[test]
fn wide_matrix_spans_word_boundary() {
    let a = BitMatrix::from_fn(3, 130, |i, j| j == 64 + i);
    assert_eq!(a.rank(), 3);
    assert_eq!(kernel(&a.transpose()).dim(), 127);
}
