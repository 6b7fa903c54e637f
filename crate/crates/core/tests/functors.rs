use epcheck::gf2::{fixed_space, BitMatrix, BitVector, Subspace};
use epcheck::rep::{
    is_irreducible, semisimple_witness, spin, tensor_action, wedge_action, wedge_basis, ModuleTag,
};
use epcheck::weights::{doubling_orbits, wedge_fixed_dim, ExponentMultiset};
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| BitMatrix::from_fn(n, n, |i, j| bits[i * n + j]))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A realizable multiset: random multiplicities on the doubling orbits,
/// trimmed so the size stays at most `max`.
fn realizable(r: u32, max: usize) -> impl Strategy<Value = ExponentMultiset> {
    let orbits = doubling_orbits(r);
    let n = orbits.len();
    prop::collection::vec(0usize..=max, n).prop_filter_map("nonempty and small", move |mult| {
        let mut entries = Vec::new();
        for (o, &m) in orbits.iter().zip(&mult) {
            if entries.len() + m * o.len() <= max {
                for _ in 0..m {
                    entries.extend_from_slice(o);
                }
            }
        }
        (entries.len() >= 3).then(|| ExponentMultiset::new(r, entries).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn wedge_is_a_functor((k, g, h) in (3usize..=7).prop_flat_map(|k| (Just(k), matrix(k), matrix(k))), m in 2usize..=3) {
        let lhs = wedge_action(&(&g * &h), m).unwrap();
        let rhs = &wedge_action(&g, m).unwrap() * &wedge_action(&h, m).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(wedge_action(&BitMatrix::identity(k), m).unwrap().is_identity());
        prop_assert_eq!(wedge_action(&g, m).unwrap().nrows(), binom(k, m));
    }

    #[test]
    fn tensor_is_a_functor(a in matrix(3), b in matrix(3), c in matrix(4), d in matrix(4)) {
        let lhs = tensor_action(&(&a * &b), &(&c * &d)).unwrap();
        let rhs = &tensor_action(&a, &c).unwrap() * &tensor_action(&b, &d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tag_induction_matches_functors(g in matrix(4), h in matrix(4)) {
        let tag: ModuleTag = "tensor(natural,wedge2)".parse().unwrap();
        prop_assert_eq!(tag.induced_dim(4).unwrap(), 24);
        let lhs = tag.induce(&(&g * &h)).unwrap();
        prop_assert_eq!(lhs, &tag.induce(&g).unwrap() * &tag.induce(&h).unwrap());
    }

    #[test]
    fn witness_has_prescribed_order(e in prop_oneof![realizable(3, 10), realizable(5, 10), realizable(7, 10), realizable(15, 10), realizable(31, 10)]) {
        let g = semisimple_witness(&e).unwrap();
        prop_assert!(g.pow(u64::from(e.r())).is_identity());
        prop_assert_eq!(fixed_space(&g).unwrap().dim(), e.zero_multiplicity());
    }

    #[test]
    fn irreducibility_agrees_with_exhaustive_spin(gens in prop::collection::vec(matrix(5).prop_filter("invertible", BitMatrix::is_invertible), 1..3)) {
        // a proper invariant subspace exists iff some nonzero vector spins to one
        let exhaustive = (1u64..32).all(|x| spin(&gens, &BitVector::from_code(x, 5)).dim() == 5);
        prop_assert_eq!(is_irreducible(&gens).unwrap(), exhaustive);
    }
}

/// Fixed space on `Λ³` of a witness equals the combinatorial count, over 200
/// multisets spread across the orders 3, 5, 7, 15, 31.
#[test]
fn matrix_route_matches_counting_route() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, TestRng, RngAlgorithm, TestRunner};
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]));
    let mut checked = 0;
    for r in [3u32, 5, 7, 15, 31] {
        let strategy = realizable(r, 10);
        for _ in 0..40 {
            let e = strategy.new_tree(&mut runner).unwrap().current();
            let g = semisimple_witness(&e).unwrap();
            let by_matrix = fixed_space(&wedge_action(&g, 3).unwrap()).unwrap().dim() as u64;
            assert_eq!(by_matrix, wedge_fixed_dim(&e, 3).unwrap(), "{e}");
            checked += 1;
        }
    }
    assert_eq!(checked, 200);
}

#[test]
fn wedge_basis_is_colex() {
    assert_eq!(wedge_basis(4, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
}

#[test]
fn gl3_natural_and_wedge_square_are_irreducible() {
    let gens = [BitMatrix::from_strs(&["110", "010", "001"]), BitMatrix::permutation(&[1, 2, 0])];
    assert!(is_irreducible(&gens).unwrap());
    let w: Vec<BitMatrix> = gens.iter().map(|g| wedge_action(g, 2).unwrap()).collect();
    assert!(is_irreducible(&w).unwrap());
    let upper = [BitMatrix::from_strs(&["110", "010", "001"]), BitMatrix::from_strs(&["100", "011", "001"])];
    assert!(!is_irreducible(&upper).unwrap());
    let span = Subspace::span(3, vec![BitVector::unit(3, 1), BitVector::unit(3, 2)]).unwrap();
    for g in &upper {
        assert!(span.contains_subspace(&span.image(g).unwrap()));
    }
}
