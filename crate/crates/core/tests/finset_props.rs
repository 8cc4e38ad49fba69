use interlink::finset::{
    compose, induced_from_pushout, induced_to_pullback, is_exact, is_pullback, is_pushout,
    pullback, pushout, universal_pullback_oracle, universal_pushout_oracle, CommSquare, FinMap,
    FinSet, ORACLE_ELEMENT_BOUND,
};
use proptest::prelude::*;

fn map_into(dom: usize, cod: usize) -> impl Strategy<Value = FinMap> {
    prop::collection::vec(0..cod, dom)
        .prop_map(move |t| FinMap::new(FinSet::new(dom), FinSet::new(cod), t).unwrap())
}

/// Two maps into a shared codomain.
fn cospan() -> impl Strategy<Value = (FinMap, FinMap)> {
    (0usize..=4, 0usize..=4, 1usize..=4).prop_flat_map(|(a, b, d)| (map_into(a, d), map_into(b, d)))
}

/// Two maps out of a shared domain.
fn span() -> impl Strategy<Value = (FinMap, FinMap)> {
    (0usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(p, a, b)| (map_into(p, a), map_into(p, b)))
}

/// Elements of the fiber product, counted directly.
fn fiber_product_size(f: &FinMap, g: &FinMap) -> usize {
    f.dom()
        .elements()
        .flat_map(|a| g.dom().elements().map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == g.apply(b))
        .count()
}

/// Connected components of the bipartite graph joining `f(p)` and `g(p)`.
fn pushout_size(f: &FinMap, g: &FinMap) -> usize {
    let (na, nb) = (f.cod().size(), g.cod().size());
    let mut label: Vec<usize> = (0..na + nb).collect();
    // relax labels to the minimum over each edge until stable
    loop {
        let mut changed = false;
        for p in f.dom().elements() {
            let (x, y) = (f.apply(p), na + g.apply(p));
            let low = label[x].min(label[y]);
            for z in [x, y] {
                if label[z] != low {
                    label[z] = low;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // propagate to a fixpoint where each label names its own root
    loop {
        let next: Vec<usize> = label.iter().map(|&l| label[l]).collect();
        if next == label {
            break;
        }
        label = next;
    }
    let mut roots = label.clone();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

proptest! {
    #[test]
    fn pullback_has_fiber_product_size((f, g) in cospan()) {
        let pb = pullback(&f, &g).unwrap();
        prop_assert_eq!(pb.apex.size(), fiber_product_size(&f, &g));
        prop_assert!(is_pullback(&pb.square));
        if pb.apex.size() <= 4 {
            prop_assert!(universal_pullback_oracle(&pb.square, ORACLE_ELEMENT_BOUND).unwrap());
        }
    }

    #[test]
    fn pushout_has_component_count((f, g) in span()) {
        let po = pushout(&f, &g).unwrap();
        prop_assert_eq!(po.coapex.size(), pushout_size(&f, &g));
        prop_assert!(is_pushout(&po.square));
        let hit = |k: usize| po.q1.table().contains(&k) || po.q2.table().contains(&k);
        prop_assert!(po.coapex.elements().all(hit));
    }

    #[test]
    fn composition_is_associative(
        (f, g, h) in (0usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(a, b, c, d)| (map_into(a, b), map_into(b, c), map_into(c, d)))
    ) {
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pullback_factorization_is_unique((f, g) in cospan(), t in 0usize..=3, seed in any::<u64>()) {
        let pb = pullback(&f, &g).unwrap();
        let pairs: Vec<(usize, usize)> = f
            .dom()
            .elements()
            .flat_map(|a| g.dom().elements().map(move |b| (a, b)))
            .filter(|&(a, b)| f.apply(a) == g.apply(b))
            .collect();
        prop_assume!(!pairs.is_empty() || t == 0);
        let pick: Vec<(usize, usize)> = (0..t)
            .map(|k| pairs[(seed as usize).wrapping_add(k * 7) % pairs.len()])
            .collect();
        let test = FinSet::new(t);
        let u = FinMap::new(test.clone(), f.dom().clone(), pick.iter().map(|p| p.0).collect()).unwrap();
        let v = FinMap::new(test, g.dom().clone(), pick.iter().map(|p| p.1).collect()).unwrap();
        let h = induced_to_pullback(&pb.square, &u, &v).unwrap();
        prop_assert_eq!(compose(&pb.p1, &h).unwrap(), u);
        prop_assert_eq!(compose(&pb.p2, &h).unwrap(), v);
    }

    #[test]
    fn pushout_factorization((f, g) in span(), t in 1usize..=3) {
        let po = pushout(&f, &g).unwrap();
        // send everything through the coapex and then to a fixed target
        let target = FinSet::new(t);
        let to_target = FinMap::from_fn(&po.coapex, &target, |k| k % t).unwrap();
        let u = compose(&to_target, &po.q1).unwrap();
        let v = compose(&to_target, &po.q2).unwrap();
        let h = induced_from_pushout(&po.square, &u, &v).unwrap();
        prop_assert_eq!(h, to_target);
    }

    #[test]
    fn predicates_match_the_oracle((f, g) in cospan(), p in 0usize..=4, picks in prop::collection::vec(any::<prop::sample::Index>(), 4)) {
        let pairs: Vec<(usize, usize)> = f
            .dom()
            .elements()
            .flat_map(|a| g.dom().elements().map(move |b| (a, b)))
            .filter(|&(a, b)| f.apply(a) == g.apply(b))
            .collect();
        let p = if pairs.is_empty() { 0 } else { p };
        let chosen: Vec<(usize, usize)> = picks[..p].iter().map(|i| *i.get(&pairs)).collect();
        let apex = FinSet::new(p);
        let left = FinMap::new(apex.clone(), f.dom().clone(), chosen.iter().map(|c| c.0).collect()).unwrap();
        let top = FinMap::new(apex, g.dom().clone(), chosen.iter().map(|c| c.1).collect()).unwrap();
        let sq = CommSquare::new(top, left, f, g).unwrap();
        let pb = universal_pullback_oracle(&sq, ORACLE_ELEMENT_BOUND).unwrap();
        let po = universal_pushout_oracle(&sq, ORACLE_ELEMENT_BOUND).unwrap();
        prop_assert_eq!(is_pullback(&sq), pb);
        prop_assert_eq!(is_pushout(&sq), po);
        prop_assert_eq!(is_exact(&sq), pb && po);
    }
}

#[test]
fn square_of_a_bijection_is_exact() {
    let x = FinSet::new(3);
    let swap = FinMap::new(x.clone(), x.clone(), vec![1, 0, 2]).unwrap();
    let id = FinMap::identity(&x);
    let sq = CommSquare::new(swap.clone(), id.clone(), swap, id).unwrap();
    assert!(is_exact(&sq));
}

#[test]
fn collapsing_square_is_exact_and_a_thin_apex_is_neither() {
    // the pushout of 2 <- 2 -> 1 is 1 and the pullback of 2 -> 1 <- 1 is 2
    let two = FinSet::new(2);
    let one = FinSet::new(1);
    let bang = FinMap::new(two.clone(), one.clone(), vec![0, 0]).unwrap();
    let id = FinMap::identity(&two);
    let pt = FinMap::identity(&one);
    let sq = CommSquare::new(bang.clone(), id, bang, pt).unwrap();
    assert!(is_pushout(&sq));
    assert!(is_pullback(&sq));
    let sq2 = CommSquare::new(
        FinMap::new(FinSet::new(1), one.clone(), vec![0]).unwrap(),
        FinMap::new(FinSet::new(1), two.clone(), vec![0]).unwrap(),
        FinMap::new(two, one.clone(), vec![0, 0]).unwrap(),
        FinMap::identity(&one),
    )
    .unwrap();
    assert!(!is_pullback(&sq2));
    assert!(!is_pushout(&sq2));
}
