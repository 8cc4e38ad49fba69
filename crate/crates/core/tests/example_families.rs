use interlink::bridge::{classify, to_groupoid};
use interlink::examples::algebra::{
    FinGroup, FinInverseSemigroup, FinMonoid, GroupAction, OpenCover, Table,
};
use interlink::examples::links::*;
use interlink::finset::FinSet;
use interlink::inv2link::{dihedral_order, links_isomorphic, validate_link};

fn diagonal(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|x| (x, x)).collect()
}

fn total(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

#[test]
fn empty_and_terminal_discrete_links() {
    let empty = discrete(&FinSet::new(0));
    assert_eq!((empty.c1().size(), empty.c2().size()), (0, 0));
    let one = discrete(&FinSet::new(1));
    assert_eq!((one.c1().size(), one.c2().size()), (1, 1));
    assert!(links_isomorphic(&codiscrete(&FinSet::new(1)), &one).is_some());
    assert!(classify(&discrete(&FinSet::new(3))).is_groupoid());
}

#[test]
fn codiscrete_three_reconstructs_three_objects() {
    let g = to_groupoid(&codiscrete(&FinSet::new(3))).unwrap();
    assert_eq!(g.c0.size(), 3);
}

#[test]
fn relations_at_the_extremes() {
    for n in 0..=3 {
        let x = FinSet::new(n);
        let diag = from_equivalence_relation(&x, &diagonal(n)).unwrap();
        assert!(links_isomorphic(&diag, &discrete(&x)).is_some());
        let all = from_equivalence_relation(&x, &total(n)).unwrap();
        assert!(links_isomorphic(&all, &codiscrete(&x)).is_some());
    }
}

#[test]
fn one_part_cover_equal_to_the_base_is_discrete() {
    for n in 1..=4 {
        let x = FinSet::new(n);
        let cover = OpenCover::new(x.clone(), vec![(0..n).collect()]).unwrap();
        let l = cech(&cover).unwrap();
        assert_eq!(l.c1().size(), n);
        assert!(links_isomorphic(&l, &discrete(&x)).is_some());
        if n >= 2 {
            assert!(links_isomorphic(&l, &codiscrete(&x)).is_none());
        }
    }
}

#[test]
fn two_overlapping_parts_classify() {
    let cover = OpenCover::new(FinSet::new(3), vec![vec![0, 1], vec![1, 2]]).unwrap();
    assert!(classify(&cech(&cover).unwrap()).is_groupoid());
}

#[test]
fn cover_parts_must_be_subsets() {
    assert!(OpenCover::new(FinSet::new(2), vec![vec![0, 2]]).is_err());
}

#[test]
fn groups() {
    let t = from_group(&FinGroup::trivial());
    assert!(links_isomorphic(&t, &discrete(&FinSet::new(1))).is_some());
    let z3 = to_groupoid(&from_group(&FinGroup::cyclic(3))).unwrap();
    assert_eq!(z3.c0.size(), 1);
}

#[test]
fn trivial_action_is_a_product_with_a_discrete_fiber() {
    let g = FinGroup::symmetric3();
    let k = 2;
    let l = from_group_action(&GroupAction::trivial(g.clone(), FinSet::new(k)));
    let base = from_group(&g);
    // carriers are ordered (a, b, x), so index = (a n + b) k + x
    for idx in l.c2().elements() {
        let (pair, x) = (idx / k, idx % k);
        assert_eq!(l.m().apply(idx), base.m().apply(pair) * k + x);
        assert_eq!(l.theta().apply(idx), base.theta().apply(pair) * k + x);
        assert_eq!(l.phi().apply(idx), base.phi().apply(pair) * k + x);
    }
}

#[test]
fn action_on_a_point_is_the_group() {
    let g = FinGroup::cyclic(4);
    let l = from_group_action(&GroupAction::trivial(g.clone(), FinSet::new(1)));
    assert!(links_isomorphic(&l, &from_group(&g)).is_some());
}

#[test]
fn swap_action_classifies() {
    let l = from_group_action(&GroupAction::z2(vec![1, 0]).unwrap());
    assert!(classify(&l).is_groupoid());
}

#[test]
fn hom_into_the_trivial_monoid_is_the_group() {
    let g = FinGroup::cyclic(3);
    let l = from_group_monoid_hom(&g, &FinMonoid::trivial(), &[0, 0, 0]).unwrap();
    assert!(links_isomorphic(&l, &from_group(&g)).is_some());
}

#[test]
fn trivial_hom_gives_the_trivial_action() {
    let g = FinGroup::cyclic(2);
    for m in FinMonoid::all_of_order(3) {
        let h = vec![m.unit(); 2];
        let l = from_group_monoid_hom(&g, &m, &h).unwrap();
        let action = GroupAction::trivial(g.clone(), m.carrier().clone());
        assert!(links_isomorphic(&l, &from_group_action(&action)).is_some());
    }
}

#[test]
fn hom_into_two_chain_classifies() {
    let m = FinMonoid::two_chain();
    let l = from_group_monoid_hom(&FinGroup::cyclic(2), &m, &[m.unit(), m.unit()]).unwrap();
    assert!(classify(&l).is_groupoid());
}

#[test]
fn non_homomorphism_rejected() {
    // Z2 -> two-chain sending the generator to 0: h(1)h(1) = 0 but h(0) = 1
    let m = FinMonoid::two_chain();
    assert!(from_group_monoid_hom(&FinGroup::cyclic(2), &m, &[0, 1]).is_err());
}

#[test]
fn inverse_semigroups() {
    let g = FinGroup::symmetric3();
    assert!(links_isomorphic(
        &from_inverse_semigroup(&g.as_inverse_semigroup()),
        &from_group(&g)
    )
    .is_some());
    let sym = from_inverse_semigroup(&FinInverseSemigroup::symmetric_inverse_monoid_2());
    assert!(classify(&sym).is_groupoid());
    let semilattice = from_inverse_semigroup(&FinInverseSemigroup::two_semilattice());
    let labels: Vec<String> = semilattice
        .c2()
        .elements()
        .map(|k| semilattice.c2().name(k))
        .collect();
    assert_eq!(labels, ["(e,e)", "(f,f)"]);
    assert!(classify(&semilattice).is_groupoid());
}

#[test]
fn minimal_link_properties() {
    let l = minimal_non_groupoid();
    assert!(validate_link(&l.raw()).unwrap().passed());
    assert_eq!(dihedral_order(&l), 6);
    assert!(!classify(&l).is_groupoid());
}

#[test]
fn group_magma_equals_the_group_link() {
    for (_, g) in FinGroup::up_to_order_six() {
        let inv: Vec<usize> = (0..g.size()).map(|a| g.inv(a)).collect();
        let l = from_involutive_magma(g.carrier(), g.op(), &inv)
            .unwrap()
            .unwrap();
        assert_eq!(l, from_group(&g));
    }
}

#[test]
fn xor_and_constant_magmas() {
    let x = FinSet::new(2);
    let xor = Table::from_fn(2, |a, b| a ^ b).unwrap();
    assert!(from_involutive_magma(&x, &xor, &[0, 1]).unwrap().is_ok());
    let zero = Table::from_fn(2, |_, _| 0).unwrap();
    let failure = from_involutive_magma(&x, &zero, &[0, 1])
        .unwrap()
        .unwrap_err();
    assert_eq!(failure.pair, (0, 1));
    assert_eq!(failure.condition, "m(i(x), m(x,y)) = y");
}

#[test]
fn relation_action_outside_closure_is_reported() {
    // Z2 acting on two points by swapping, with R missing (0, 1)
    let s = FinGroup::cyclic(2).as_inverse_semigroup();
    let x = FinSet::new(2);
    let phi = vec![vec![0, 1], vec![1, 0]];
    let r = [(0, 0), (1, 0), (1, 1)];
    let input = RelationAction {
        s: &s,
        x: &x,
        b: &FinSet::new(2),
        g: &[0, 1],
        phi: &phi,
        r: &r,
    };
    let report = input.check().unwrap();
    assert!(!report.get("closure_units").unwrap().passed());
    assert!(from_relation_action(&input).is_err());
}

mod relabeling {
    use interlink::bridge::classify;
    use interlink::examples::links::*;
    use interlink::examples::suite::round_trip_suite;
    use interlink::finset::{FinMap, FinSet};
    use interlink::inv2link::{links_isomorphic, Inv2Link};
    use proptest::prelude::*;

    /// Transports a link along permutations of both carriers.
    fn relabel(l: &Inv2Link, p1: &[usize], p2: &[usize]) -> Inv2Link {
        let (c1, c2) = (FinSet::new(p1.len()), FinSet::new(p2.len()));
        let mut inv2 = vec![0; p2.len()];
        for (a, &b) in p2.iter().enumerate() {
            inv2[b] = a;
        }
        let conj = |f: &FinMap| (0..p2.len()).map(|b| p2[f.apply(inv2[b])]).collect();
        Inv2Link::new(
            FinMap::new(c2.clone(), c2.clone(), conj(l.theta())).unwrap(),
            FinMap::new(c2.clone(), c2.clone(), conj(l.phi())).unwrap(),
            FinMap::new(
                c2,
                c1,
                (0..p2.len()).map(|b| p1[l.m().apply(inv2[b])]).collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn verdicts(l: &Inv2Link) -> Vec<bool> {
        classify(l)
            .report
            .verdicts()
            .iter()
            .map(|v| v.outcome.passed())
            .collect()
    }

    fn sample() -> Vec<Inv2Link> {
        let mut links: Vec<Inv2Link> = round_trip_suite()
            .into_iter()
            .step_by(37)
            .map(|i| i.link)
            .collect();
        links.push(minimal_non_groupoid());
        links
    }

    fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    fn link_and_relabeling() -> impl Strategy<Value = (Inv2Link, Vec<usize>, Vec<usize>)> {
        prop::sample::select(sample()).prop_flat_map(|l| {
            let (n1, n2) = (l.c1().size(), l.c2().size());
            (Just(l), permutation(n1), permutation(n2))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn classification_is_invariant((l, p1, p2) in link_and_relabeling()) {
            prop_assert_eq!(verdicts(&l), verdicts(&relabel(&l, &p1, &p2)));
        }

        #[test]
        fn isomorphism_search_finds_relabelings((l, p1, p2) in link_and_relabeling()) {
            let r = relabel(&l, &p1, &p2);
            let (fwd, back) = links_isomorphic(&l, &r).expect("relabeling is an isomorphism");
            prop_assert!(interlink::compose(back.f(), fwd.f()).unwrap().is_identity());
            prop_assert!(interlink::compose(back.fbar(), fwd.fbar()).unwrap().is_identity());
        }
    }
}
