use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use moufang::linalg::{rank_and_kernel, Echelon, SparseRow};
use moufang::loops::{linv, lmul, v_words, LoopWord};
use moufang::twisted::{associator, cmul, cube, odd_associator};
use moufang::words::{
    element_row, eval_tree, eval_tree_twisted, h_of_type, h_with_assignment, identity, word_vectors, TypeVector,
    Word3,
};
use moufang::{GElement, GenSym, Gf3, Monomial};

fn gf3() -> impl Strategy<Value = Gf3> {
    (0i64..3).prop_map(Gf3::new)
}

fn monomial(max_deg: usize) -> impl Strategy<Value = (Monomial, Gf3)> {
    prop::collection::vec((0u32..4, 0u32..3), 0..=max_deg).prop_map(|syms| {
        let syms: Vec<GenSym> = syms.into_iter().map(|(b, d)| GenSym::new(b, d)).collect();
        Monomial::from_symbols(&syms).unwrap_or((Monomial::one(), Gf3::ZERO))
    })
}

fn element() -> impl Strategy<Value = GElement> {
    prop::collection::vec((monomial(3), gf3()), 0..5)
        .prop_map(|ts| GElement::from_terms(ts.into_iter().map(|((m, s), c)| (m, s * c))))
}

fn odd_element() -> impl Strategy<Value = GElement> {
    element().prop_map(|x| x.odd_part())
}

fn even_element() -> impl Strategy<Value = GElement> {
    element().prop_map(|x| x.even_part())
}

fn homogeneous() -> impl Strategy<Value = (GElement, bool)> {
    prop_oneof![odd_element().prop_map(|x| (x, true)), even_element().prop_map(|x| (x, false))]
}

/// Moves every base past the bitmask range so products take the generic path.
fn shift(x: &GElement) -> GElement {
    GElement::from_terms(x.terms().iter().map(|(m, c)| {
        let syms: Vec<GenSym> = m.symbols().iter().map(|s| GenSym::new(s.base() + 8, s.der())).collect();
        (Monomial::from_symbols(&syms).expect("distinct").0, *c)
    }))
}

proptest! {
    #[test]
    fn packed_and_generic_paths_agree(x in element(), y in element()) {
        prop_assert_eq!(shift(&x).wedge(&shift(&y)), shift(&x.wedge(&y)));
        prop_assert_eq!(cmul(&shift(&x), &shift(&y)), shift(&cmul(&x, &y)));
        prop_assert_eq!(shift(&x).derive(), shift(&x.derive()));
    }

    #[test]
    fn gf3_field_axioms(a in gf3(), b in gf3(), c in gf3()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + (-a), Gf3::ZERO);
        if let Some(i) = a.inverse() {
            prop_assert_eq!(a * i, Gf3::ONE);
        }
    }

    #[test]
    fn wedge_associative(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.wedge(&y).wedge(&z), x.wedge(&y.wedge(&z)));
    }

    #[test]
    fn wedge_super_commutative((x, px) in homogeneous(), (y, py) in homogeneous()) {
        let swapped = y.wedge(&x).scale(Gf3::sign(px && py));
        prop_assert_eq!(x.wedge(&y), swapped);
    }

    #[test]
    fn derivation_leibniz(x in element(), y in element()) {
        let lhs = x.wedge(&y).derive();
        let rhs = &x.derive().wedge(&y) + &x.wedge(&y.derive());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cmul_commutative(x in element(), y in element()) {
        prop_assert_eq!(cmul(&x, &y), cmul(&y, &x));
    }

    #[test]
    fn cmul_alternative(x in element(), y in element()) {
        prop_assert!(associator(&x, &x, &y).is_zero());
    }

    #[test]
    fn odd_associator_shortcut(x in odd_element(), y in odd_element(), z in odd_element()) {
        prop_assert_eq!(associator(&x, &y, &z), odd_associator(&x, &y, &z));
    }

    #[test]
    fn rank_invariant_under_row_shuffle(
        rows in prop::collection::vec(prop::collection::vec((0u32..12, gf3()), 0..6), 0..10),
        seed in any::<u64>(),
    ) {
        let rows: Vec<SparseRow<u32>> = rows.into_iter().map(SparseRow::from_entries).collect();
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let a = rank_and_kernel(&rows);
        let b = rank_and_kernel(&shuffled);
        prop_assert_eq!(a.rank, b.rank);
        prop_assert_eq!(a.rank + a.kernel_basis.len(), rows.len());
        for k in &a.kernel_basis {
            let sum = rows.iter().zip(k).fold(SparseRow::new(), |acc, (r, c)| acc.add_scaled(*c, r));
            prop_assert!(sum.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_evaluations_agree(seed in any::<u64>(), size in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let leaves: Vec<u32> = (0..(2 * size + 3) as u32).collect();
        let w = Word3::random(&mut rng, &leaves);
        let leaf = |l: u32| Ok(GElement::generator(l));
        prop_assert_eq!(eval_tree(&w, &leaf).unwrap(), eval_tree_twisted(&w, &leaf).unwrap());
    }

    #[test]
    fn loop_inverse_and_cube(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = LoopWord::random(&mut rng, 4, 3).eval().unwrap();
        prop_assert!(lmul(&u, &linv(&u).unwrap()).is_one());
        prop_assert!(cube(&u.nilpotent_part()).is_zero());
    }

    #[test]
    fn h_independent_of_assignment(seed in any::<u64>()) {
        let a: TypeVector = "5,1".parse().unwrap();
        let mut gens: Vec<u32> = (0..7).collect();
        gens.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(h_with_assignment(&a, &gens[..a.letters() as usize]), h_of_type(&a));
    }
}

#[test]
fn random_words_stay_in_v_span() {
    let rows = word_vectors(&v_words(), identity).unwrap();
    let mut basis = Echelon::new();
    for r in rows {
        basis.insert(r);
    }
    assert_eq!(basis.rank(), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let leaves = [0, 1, 2, 3, 4, 5, 5, 6, 6];
    for _ in 0..1000 {
        let w = Word3::random(&mut rng, &leaves);
        assert_eq!(w.type_vector(), "5,2".parse().unwrap());
        let v = eval_tree(&w, &|l| Ok(GElement::generator(l))).unwrap();
        assert!(!basis.insert(element_row(v)), "{w} leaves the span");
    }
    assert_eq!(basis.rank(), 6);
}
