mod common;

use braided_rover::braid::BraidWord;
use braided_rover::grigsolver::{self, ReducedWord};
use braided_rover::recursion::{
    brgrig, grig, self_identical, zwrz, GroupWord, Root, SelfIdentity, Verdict,
};
use common::Lamplighter;
use proptest::prelude::*;

fn word(gens: i32, max_len: usize) -> impl Strategy<Value = GroupWord> {
    let letter = (1..=gens, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g });
    prop::collection::vec(letter, 0..=max_len).prop_map(GroupWord::from_letters)
}

fn commutator(u: &GroupWord, v: &GroupWord) -> GroupWord {
    u.mul(v).mul(&u.inverse()).mul(&v.inverse())
}

#[test]
fn brgrig_relations() {
    let t = brgrig();
    for w in ["b c d", "c d b", "d b c", "b c b^-1 c^-1"] {
        assert_eq!(
            t.is_identity(&t.parse_word(w).unwrap(), 32),
            Verdict::Equal,
            "{w}"
        );
    }
    for w in ["a", "b", "a b a^-1 b^-1", "a^2"] {
        assert_eq!(
            t.is_identity(&t.parse_word(w).unwrap(), 32),
            Verdict::Unequal,
            "{w}"
        );
    }
    let a = t.parse_word("a").unwrap();
    assert_eq!(t.nonidentity_certificate(&a, 4), Some(vec![]));
}

#[test]
fn zwrz_recursions_from_the_example() {
    let t = zwrz();
    let a = GroupWord::generator(1);
    let b = GroupWord::generator(2);
    let zeta2 = Root::Braid(BraidWord::zeta_pow(2));
    for k in -3i64..=3 {
        let conj = |n: i64| a.pow(n).mul(&b).mul(&a.pow(-n));
        let even = t.recursion(&conj(2 * k));
        assert!(even.root.same_as(&zeta2));
        assert_eq!(
            t.eq_in(&even.sections[0], &GroupWord::identity(), 8),
            Verdict::Equal
        );
        assert_eq!(t.eq_in(&even.sections[1], &conj(k), 8), Verdict::Equal);
        let odd = t.recursion(&conj(2 * k - 1));
        assert!(odd.root.same_as(&zeta2));
        assert_eq!(t.eq_in(&odd.sections[0], &conj(k), 8), Verdict::Equal);
        assert_eq!(
            t.eq_in(&odd.sections[1], &GroupWord::identity(), 8),
            Verdict::Equal
        );
    }
}

#[test]
fn self_identity() {
    assert_eq!(zwrz().is_self_identical(8), SelfIdentity::No("a".into()));
    let f = self_identical(Root::Braid(BraidWord::zeta()));
    assert_eq!(f.is_self_identical(8), SelfIdentity::Yes);
}

#[test]
fn generator_commutation() {
    let t = brgrig();
    let [a, b, c, d] = [1, 2, 3, 4].map(GroupWord::generator);
    assert!(grigsolver::is_identity(&commutator(&b, &c)));
    assert!(grigsolver::is_identity(&commutator(&c, &d)));
    assert!(!grigsolver::is_identity(&commutator(&a, &b)));
    assert_eq!(t.is_identity(&commutator(&b, &d), 32), Verdict::Equal);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recursion_is_a_homomorphism(u in word(4, 8), v in word(4, 8)) {
        let t = brgrig();
        let ru = t.recursion(&u);
        let rv = t.recursion(&v);
        let ruv = t.recursion(&u.mul(&v));
        prop_assert!(ruv.root.same_as(&ru.root.mul(&rv.root)));
        let p = rv.root.perm();
        for i in 1..=2 {
            let expected = ru.sections[p.apply(i) - 1].mul(&rv.sections[i - 1]);
            prop_assert_eq!(t.eq_in(&ruv.sections[i - 1], &expected, 32), Verdict::Equal);
        }
    }

    #[test]
    fn brgrig_solver_agrees_with_generic_search(u in word(4, 5), v in word(4, 5), plain in word(4, 6)) {
        let t = brgrig();
        for w in [commutator(&u, &v), plain, u.mul(&v).mul(&u.inverse())] {
            let exact = t.is_identity(&w, 32);
            match t.generic_identity(&w, 24) {
                Verdict::Unknown { .. } => {}
                generic => prop_assert_eq!(generic, exact),
            }
        }
    }

    #[test]
    fn grig_solver_agrees_with_generic_search(u in word(4, 5), v in word(4, 5)) {
        let t = grig();
        for w in [commutator(&u, &v), u.mul(&u), u.mul(&v)] {
            let exact = t.is_identity(&w, 32);
            match t.generic_identity(&w, 24) {
                Verdict::Unknown { .. } => {}
                generic => prop_assert_eq!(generic, exact),
            }
        }
    }

    #[test]
    fn contraction(w in word(4, 60)) {
        let rw = grigsolver::reduce(&w);
        prop_assume!(rw.len() <= 40);
        let (s1, s2) = grigsolver::reduced_sections(&rw);
        let bound = rw.len().div_ceil(2);
        prop_assert!(s1.len() <= bound && s2.len() <= bound, "{} -> {}, {}", rw, s1, s2);
    }

    #[test]
    fn two_section_implementations_agree(w in word(4, 12)) {
        let t = brgrig();
        let (s1, s2) = grigsolver::reduced_sections(&grigsolver::reduce(&w));
        let secs = t.sections(&w);
        prop_assert_eq!(t.eq_in(&s1.to_word(), &secs[0], 32), Verdict::Equal);
        prop_assert_eq!(t.eq_in(&s2.to_word(), &secs[1], 32), Verdict::Equal);
    }

    #[test]
    fn pi_compatibility(u in word(4, 6), v in word(4, 6)) {
        let (br, g) = (brgrig(), grig());
        let w = commutator(&u, &v);
        prop_assert_eq!(br.root(&w).perm(), g.root(&w).perm());
        if grigsolver::is_identity(&w) {
            prop_assert!(grigsolver::is_identity_grig(&w));
        }
        let pi = br.pi_image().unwrap();
        prop_assert_eq!(pi.is_identity(&w, 32), g.is_identity(&w, 32));
    }

    #[test]
    fn zwrz_matches_lamplighter(u in word(2, 12), v in word(2, 12)) {
        let t = zwrz();
        let oracle = Lamplighter::eval(u.letters()) == Lamplighter::eval(v.letters());
        prop_assert_eq!(t.eq_in(&u, &v, 32), Verdict::from_bool(oracle));
    }

    #[test]
    fn reduced_words_multiply_like_words(u in word(4, 10), v in word(4, 10)) {
        let ru = ReducedWord::from_letters(u.letters());
        let rv = ReducedWord::from_letters(v.letters());
        prop_assert_eq!(ru.mul(&rv), grigsolver::reduce(&u.mul(&v)));
        prop_assert!(ru.mul(&ru.inverse()).is_empty());
    }
}
