//! Every link and every groupoid on small carriers, compared through the bridge.

use interlink::bridge::{classify, to_groupoid, to_link};
use interlink::finset::{pullback, FinMap, FinSet};
use interlink::groupoid::{
    make_groupoid_from_multiplicative_data, validate_groupoid, InternalGroupoid,
};
use interlink::inv2link::{links_isomorphic, Inv2Link, RawLink};

fn all_tables(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n > 0 && k == 0 {
        return Vec::new();
    }
    (0..k.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % k;
                    code /= k;
                    v
                })
                .collect()
        })
        .collect()
}

fn involutions(n: usize) -> Vec<Vec<usize>> {
    all_tables(n, n)
        .into_iter()
        .filter(|t| (0..n).all(|a| t[t[a]] == a))
        .collect()
}

/// All valid links with `|C₁| = c1` and `|C₂| = c2`.
fn links(c1: usize, c2: usize) -> Vec<Inv2Link> {
    let a = FinSet::new(c2);
    let b = FinSet::new(c1);
    let invs = involutions(c2);
    let mut out = Vec::new();
    for theta in &invs {
        for phi in &invs {
            for m in all_tables(c2, c1) {
                let raw = RawLink::new(
                    FinMap::new(a.clone(), a.clone(), theta.clone()).unwrap(),
                    FinMap::new(a.clone(), a.clone(), phi.clone()).unwrap(),
                    FinMap::new(a.clone(), b.clone(), m).unwrap(),
                );
                if let Ok(l) = Inv2Link::try_from(raw) {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// All groupoids with at most `max_arrows` arrows and `max_pairs` composable pairs.
fn groupoids(max_arrows: usize, max_pairs: usize) -> Vec<InternalGroupoid> {
    let mut out = Vec::new();
    for n1 in 0..=max_arrows {
        for n0 in 0..=n1 {
            let (c0, c1) = (FinSet::new(n0), FinSet::new(n1));
            for e in all_tables(n0, n1) {
                let e = FinMap::new(c0.clone(), c1.clone(), e).unwrap();
                for d in all_tables(n1, n0) {
                    let d = FinMap::new(c1.clone(), c0.clone(), d).unwrap();
                    if !interlink::compose(&d, &e).unwrap().is_identity() {
                        continue;
                    }
                    for c in all_tables(n1, n0) {
                        let c = FinMap::new(c1.clone(), c0.clone(), c).unwrap();
                        if !interlink::compose(&c, &e).unwrap().is_identity() {
                            continue;
                        }
                        let pb = pullback(&d, &c).unwrap();
                        if pb.apex.size() > max_pairs {
                            continue;
                        }
                        for m in all_tables(pb.apex.size(), n1) {
                            let m = FinMap::new(pb.apex.clone(), c1.clone(), m).unwrap();
                            if let Ok(g) = make_groupoid_from_multiplicative_data(&d, &c, &e, &m) {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn classification_matches_membership_in_the_image() {
    let groupoid_links: Vec<Inv2Link> = groupoids(3, 4)
        .iter()
        .map(|g| to_link(g).unwrap())
        .collect();
    let (mut accepted, mut rejected) = (0, 0);
    for c1 in 0..=3 {
        for c2 in 0..=4 {
            let images: Vec<&Inv2Link> = groupoid_links
                .iter()
                .filter(|l| l.c1().size() == c1 && l.c2().size() == c2)
                .collect();
            for link in links(c1, c2) {
                let in_image = images.iter().any(|h| links_isomorphic(h, &link).is_some());
                let passes = classify(&link).is_groupoid();
                assert_eq!(passes, in_image, "c1 = {c1}, c2 = {c2}, link {link:?}");
                if passes {
                    accepted += 1;
                    let g = to_groupoid(&link).unwrap();
                    assert!(validate_groupoid(&g).unwrap().passed());
                    assert!(links_isomorphic(&to_link(&g).unwrap(), &link).is_some());
                } else {
                    rejected += 1;
                }
            }
        }
    }
    assert!(accepted > 0 && rejected > 0);
}

#[test]
fn enumerated_groupoids_round_trip() {
    for g in groupoids(3, 4) {
        let back = to_groupoid(&to_link(&g).unwrap()).unwrap();
        assert!(interlink::groupoid::groupoids_isomorphic(&g, &back).is_some());
    }
}
