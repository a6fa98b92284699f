use proptest::prelude::*;

use condensation_kit::funcmap::{enumerate_n_fixing, map_to_tree, tree_to_map};
use condensation_kit::identities::{
    abut_of, abut_omitting, build_condensed_b, generic_matrix, generic_ring,
};
use condensation_kit::verify::{self, Mode, VerifyConfig};
use condensation_kit::{EndoMap, Matrix, Ring, RingValue, Theorem, WeightedDigraph};

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        prop::sample::select(vec![2u64, 3, 6, 7, 12, 101]).prop_map(|m| Ring::modular(m).unwrap()),
    ]
}

fn square(max_n: usize, range: i64) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec(-range..=range, n * n)))
}

fn to_matrix(ring: &Ring, n: usize, vals: &[i64]) -> Matrix {
    Matrix::from_fn(ring.clone(), n, n, |i, j| {
        ring.from_i64(vals[(i - 1) * n + (j - 1)])
    })
}

/// Polynomials in `s, t` with small coefficients and degree at most 2.
fn poly_strategy() -> impl Strategy<Value = RingValue> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 0..5).prop_map(|terms| {
        let ring = Ring::polynomial(["s", "t"]);
        let s = ring.var("s").unwrap();
        let t = ring.var("t").unwrap();
        terms.into_iter().fold(ring.zero(), |acc, (c, a, b)| {
            let m = ring
                .from_i64(c)
                .mul(&s.pow(a))
                .unwrap()
                .mul(&t.pow(b))
                .unwrap();
            acc.add(&m).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomial_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(a.as_poly().unwrap().is_canonical());
        prop_assert!(a.mul(&b).unwrap().as_poly().unwrap().is_canonical());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).unwrap().exact_divide(&b).unwrap();
        prop_assert_eq!(q, Some(a));
    }

    #[test]
    fn integer_exact_division(a in -1000i64..1000, b in -50i64..50) {
        prop_assume!(b != 0);
        let z = Ring::Integers;
        let prod = z.from_i64(a * b);
        prop_assert_eq!(prod.exact_divide(&z.from_i64(b)).unwrap(), Some(z.from_i64(a)));
        if a % b != 0 {
            prop_assert_eq!(z.from_i64(a).exact_divide(&z.from_i64(b)).unwrap(), None);
        }
    }

    #[test]
    fn chio_det_matches_leibniz((n, vals) in square(6, 9)) {
        let a = to_matrix(&Ring::Integers, n, &vals);
        prop_assert_eq!(a.chio_det().unwrap(), a.leibniz_det().unwrap());
    }

    #[test]
    fn chio_det_matches_leibniz_mod_prime((n, vals) in square(5, 20), p in prop::sample::select(vec![2u64, 5, 13])) {
        let a = to_matrix(&Ring::modular(p).unwrap(), n, &vals);
        prop_assert_eq!(a.chio_det().unwrap(), a.leibniz_det().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(
        ring in ring_strategy(),
        (n, x) in square(4, 6),
        seed in prop::collection::vec(-6i64..=6, 16),
    ) {
        let a = to_matrix(&ring, n, &x);
        let b = to_matrix(&ring, n, &seed[..n * n]);
        let lhs = b.multiply(&a).unwrap().leibniz_det().unwrap();
        let rhs = b.leibniz_det().unwrap().mul(&a.leibniz_det().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn equal_rows_give_zero((n, vals) in square(5, 9), pick in any::<(usize, usize)>()) {
        prop_assume!(n >= 2);
        let (i, k) = (pick.0 % n + 1, pick.1 % n + 1);
        prop_assume!(i != k);
        let z = Ring::Integers;
        let a = to_matrix(&z, n, &vals);
        let dup = Matrix::from_fn(z.clone(), n, n, |r, c| a.get(if r == k { i } else { r }, c).clone());
        prop_assert!(dup.leibniz_det().unwrap().is_zero());
    }

    #[test]
    fn chio_identity_holds_over_any_ring(ring in ring_strategy(), (n, vals) in square(5, 9)) {
        prop_assume!(n >= 2);
        let a = to_matrix(&ring, n, &vals);
        let (c, factor) = a.chio_condense().unwrap();
        prop_assert_eq!(c.leibniz_det().unwrap(), factor.mul(&a.leibniz_det().unwrap()).unwrap());
    }

    #[test]
    fn n_potent_maps_are_trees(images in (1usize..=6).prop_flat_map(|n| prop::collection::vec(1..=n, n - 1).prop_map(move |mut v| { v.push(n); v }))) {
        let f = EndoMap::n_fixing(images).unwrap();
        match map_to_tree(&f) {
            Ok(t) => {
                prop_assert!(f.is_n_potent().unwrap());
                prop_assert_eq!(tree_to_map(&t), f);
            }
            Err(_) => prop_assert!(!f.is_n_potent().unwrap()),
        }
    }
}

#[test]
fn abut_is_independent_of_the_omitted_vertex() {
    for n in 2..=4 {
        let ring = generic_ring(n, &["x"]);
        let a = generic_matrix(&ring, "x", n).unwrap();
        for f in enumerate_n_fixing(n).filter(|f| f.is_n_potent().unwrap()) {
            let abut = abut_of(&f, &a).unwrap();
            for g in (1..n).filter(|&g| f.apply(g) == n) {
                assert_eq!(abut_omitting(&f, &a, g).unwrap(), abut, "f={f} g={g}");
            }
            let full = (1..n).fold(ring.one(), |acc, i| acc.mul(a.get(f.apply(i), n)).unwrap());
            assert_eq!(a.get(n, n).mul(&abut).unwrap(), full, "f={f}");
        }
    }
}

#[test]
fn constant_map_reduces_to_plain_condensation() {
    let ring = generic_ring(4, &["x"]);
    let a = generic_matrix(&ring, "x", 4).unwrap();
    let f = EndoMap::constant_n(4);
    let b = build_condensed_b(&f, &a).unwrap();
    let (c, _) = a.chio_condense().unwrap();
    assert_eq!(b, c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumerated_weights_sum_to_the_count((n, vals) in square(5, 3)) {
        prop_assume!(n >= 1);
        let g = WeightedDigraph::new(to_matrix(&Ring::Integers, n, &vals)).unwrap();
        let mut total = Ring::Integers.zero();
        for (tree, w) in g.enumerate_arborescences().unwrap() {
            prop_assert!(tree.is_tree());
            prop_assert_eq!(tree.parents().len(), n - 1);
            prop_assert!(!w.is_zero());
            total = total.add(&w).unwrap();
        }
        prop_assert_eq!(&total, &g.brute_arborescence_sum().unwrap());
        prop_assert_eq!(total, g.count_arborescences().unwrap());
    }
}

#[test]
fn matrix_tree_holds_symbolically() {
    for n in 2..=3 {
        let reports = verify::run(&VerifyConfig::new(Theorem::Mtt, n, Mode::Symbolic)).unwrap();
        assert!(reports.iter().all(|r| r.verdict), "n={n}");
    }
}
