use braided_rover::cloning::{random_braid, WreathElement};
use braided_rover::forest::{random_tree, Forest};
use braided_rover::recursion::{brgrig, trivial, GroupWord, Kind, Root, Verdict};
use braided_rover::thompson::{Groupoid, Triple};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn expand_randomly(g: &Groupoid, t: &Triple, steps: usize, r: &mut ChaCha8Rng) -> Triple {
    let mut t = t.clone();
    for _ in 0..steps {
        let k = r.gen_range(1..=t.degree());
        t = g.expand(&t, k).unwrap();
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansions_represent_the_same_element(seed in any::<u64>()) {
        let g = Groupoid::new(brgrig());
        let mut r = rng(seed);
        let t = g.random_element(&mut r, 2, 4, 3);
        let e1 = expand_randomly(&g, &t, 2, &mut r);
        let e2 = expand_randomly(&g, &t, 3, &mut r);
        prop_assert_eq!(g.eq(&e1, &e2).unwrap(), Verdict::Equal);
        prop_assert_eq!(g.eq(&e1, &t).unwrap(), Verdict::Equal);
    }

    #[test]
    fn group_laws_with_trivial_groups(seed in any::<u64>(), d in 2usize..=3) {
        let g = Groupoid::new(trivial(d, Kind::Braided));
        let mut r = rng(seed);
        let [x, y, z] = [0, 1, 2].map(|_| {
            let c = r.gen_range(0..=3);
            g.random_element(&mut r, c, 6, 0)
        });
        let xy_z = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(g.eq(&xy_z, &x_yz).unwrap(), Verdict::Equal);
        let one = g.identity(1);
        prop_assert_eq!(g.eq(&g.multiply(&one, &x).unwrap(), &x).unwrap(), Verdict::Equal);
        prop_assert_eq!(g.eq(&g.multiply(&x, &one).unwrap(), &x).unwrap(), Verdict::Equal);
        prop_assert_eq!(g.identity_test(&g.multiply(&x, &g.invert(&x)).unwrap()), Verdict::Equal);
        prop_assert_eq!(g.identity_test(&g.multiply(&g.invert(&x), &x).unwrap()), Verdict::Equal);
    }

    #[test]
    fn inverses_cancel_in_the_braided_rover_group(seed in any::<u64>()) {
        let g = Groupoid::new(brgrig());
        let mut r = rng(seed);
        let c = r.gen_range(0..=3);
        let x = g.random_element(&mut r, c, 6, 6);
        prop_assert_eq!(g.identity_test(&g.multiply(&x, &g.invert(&x)).unwrap()), Verdict::Equal);
    }

    #[test]
    fn feet_are_invariant_under_the_group(seed in any::<u64>()) {
        let g = Groupoid::new(brgrig());
        let mut r = rng(seed);
        let h = g.random_element(&mut r, 2, 4, 3);
        let carets = r.gen_range(0..=3);
        let left = random_tree(&mut r, 2, carets);
        let n = left.num_leaves();
        let middle = WreathElement::new(
            Root::Braid(random_braid(&mut r, n, 3)),
            vec![GroupWord::identity(); n],
        ).unwrap();
        let x = g.triple(left, middle, Forest::trivial(2, n)).unwrap();
        prop_assert_eq!(g.multiply(&h, &x).unwrap().feet(), x.feet());
    }

    #[test]
    fn pi_is_a_homomorphism(seed in any::<u64>()) {
        let g = Groupoid::new(brgrig());
        let pi = g.pi_groupoid().unwrap();
        let mut r = rng(seed);
        let x = g.random_element(&mut r, 2, 4, 4);
        let y = g.random_element(&mut r, 2, 4, 4);
        let lhs = g.project_pi(&g.multiply(&x, &y).unwrap()).unwrap();
        let rhs = pi.multiply(&g.project_pi(&x).unwrap(), &g.project_pi(&y).unwrap()).unwrap();
        prop_assert_eq!(pi.eq(&lhs, &rhs).unwrap(), Verdict::Equal);
    }

    #[test]
    fn purification_replays(seed in any::<u64>()) {
        let g = Groupoid::new(brgrig());
        let mut r = rng(seed);
        let q = r.gen_range(1..=4);
        let entries = (0..q).map(|_| {
            let len = r.gen_range(0..=10);
            g.table().random_word(&mut r, len)
        }).collect();
        let top = Root::Braid(random_braid(&mut r, q, 3));
        let elt = WreathElement::new(top, entries).unwrap();
        let (f, purified) = g.purify(&elt).unwrap();
        for e in purified.middle().entries() {
            prop_assert!(g.in_z_syntactic(e).unwrap());
        }
        let lhs = g.multiply(&g.embed(elt), &g.triple(f.clone(), WreathElement::identity(Kind::Braided, f.num_leaves()), Forest::trivial(2, f.num_leaves())).unwrap()).unwrap();
        prop_assert_eq!(g.eq(&lhs, &purified).unwrap(), Verdict::Equal);
    }
}

#[test]
fn figure_four_reduces_in_two_steps() {
    let g = Groupoid::new(brgrig());
    let left = g.parse_triple("[∧;(a,b);∧]").unwrap();
    let right = g.parse_triple("[T;s1;(1,1,a,c);T]").unwrap();
    assert_eq!(g.eq(&left, &right).unwrap(), Verdict::Equal);
    let (reduced, _) = g.reduce(&right);
    assert_eq!(g.format(&reduced), g.format(&left));
}

#[test]
fn mod_z_identities() {
    let g = Groupoid::new(brgrig());
    for k in -3i64..=3 {
        let lhs1 = format!("[1;b^{};1] * [∧;(a^{k},1);1]", -k);
        let lhs2 = format!("[1;b^{};1] * [∧^2;1;1]", -k);
        let parse = |s: &str| {
            let parts: Vec<Triple> = s
                .split('*')
                .map(|p| g.parse_triple(p.trim()).unwrap())
                .collect();
            g.multiply(&parts[0], &parts[1]).unwrap()
        };
        let wedge = g.parse_triple("[∧;(1,1);1]").unwrap();
        let wedge2 = g.parse_triple("[∧^2;1;1]").unwrap();
        assert_eq!(
            g.eq_mod_z(&parse(&lhs1), &wedge).unwrap(),
            Verdict::Equal,
            "k={k}"
        );
        assert_eq!(
            g.eq_mod_z(&parse(&lhs2), &wedge2).unwrap(),
            Verdict::Equal,
            "k={k}"
        );
    }
    let a = g.parse_triple("[∧;(a,1);1]").unwrap();
    assert_eq!(
        g.eq_mod_z(&a, &g.parse_triple("[∧;(1,1);1]").unwrap())
            .unwrap(),
        Verdict::Unequal
    );
}
