//! Desk-scale instances of every groupoid family, each given both as a link
//! built from tuple formulas and as a groupoid built from its arrows.

use super::algebra::{FinGroup, FinInverseSemigroup, FinMonoid, GroupAction, OpenCover};
use super::groupoids::*;
use super::links::*;
use crate::finset::FinSet;
use crate::groupoid::InternalGroupoid;
use crate::inv2link::Inv2Link;

#[derive(Clone, Debug)]
pub struct Instance {
    pub family: &'static str,
    pub name: String,
    pub link: Inv2Link,
    pub groupoid: InternalGroupoid,
}

fn instance(
    family: &'static str,
    name: String,
    link: Inv2Link,
    groupoid: InternalGroupoid,
) -> Instance {
    Instance {
        family,
        name,
        link,
        groupoid,
    }
}

/// All set partitions of `0..n`, as block labels per element.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let blocks = p.iter().max().map_or(0, |b| b + 1);
                (0..=blocks).map(move |b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                })
            })
            .collect();
    }
    out
}

/// All involutions of `0..n`.
fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn extend(perm: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(k) = perm.iter().position(Option::is_none) else {
            out.push(perm.iter().map(|x| x.unwrap()).collect());
            return;
        };
        perm[k] = Some(k);
        extend(perm, out);
        for j in k + 1..perm.len() {
            if perm[j].is_none() {
                perm[k] = Some(j);
                perm[j] = Some(k);
                extend(perm, out);
                perm[j] = None;
            }
        }
        perm[k] = None;
    }
    let mut out = Vec::new();
    extend(&mut vec![None; n], &mut out);
    out
}

pub fn discrete_family(max: usize) -> Vec<Instance> {
    (0..=max)
        .flat_map(|n| {
            let x = FinSet::new(n);
            [
                instance(
                    "discrete",
                    format!("discrete{n}"),
                    discrete(&x),
                    discrete_groupoid(&x),
                ),
                instance(
                    "codiscrete",
                    format!("codiscrete{n}"),
                    codiscrete(&x),
                    codiscrete_groupoid(&x),
                ),
            ]
        })
        .collect()
}

pub fn equivalence_family(max: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 0..=max {
        let x = FinSet::new(n);
        for blocks in partitions(n) {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| blocks[a] == blocks[b])
                .collect();
            out.push(instance(
                "equivalence",
                format!("partition{blocks:?}"),
                from_equivalence_relation(&x, &pairs).expect("partition"),
                relation_groupoid(&x, &pairs).expect("partition"),
            ));
        }
    }
    out
}

/// Families of at most `max_parts` subsets of `0..n` for `n ≤ max_points`,
/// listed with parts in non-decreasing bitmask order.
pub fn cech_family(max_points: usize, max_parts: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 0..=max_points {
        let masks = 1usize << n;
        let mut families: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_parts {
            frontier = frontier
                .into_iter()
                .flat_map(|f| {
                    let lo = f.last().copied().unwrap_or(0);
                    (lo..masks).map(move |m| {
                        let mut g = f.clone();
                        g.push(m);
                        g
                    })
                })
                .collect();
            families.extend(frontier.iter().cloned());
        }
        for family in families.into_iter().filter(|f| !f.is_empty()) {
            let parts: Vec<Vec<usize>> = family
                .iter()
                .map(|&m| (0..n).filter(|&x| m >> x & 1 == 1).collect())
                .collect();
            let cover = OpenCover::new(FinSet::new(n), parts.clone()).expect("subsets");
            out.push(instance(
                "cech",
                format!("cover{n}:{parts:?}"),
                cech(&cover).expect("cech link"),
                cech_groupoid(&cover),
            ));
        }
    }
    out
}

pub fn group_family() -> Vec<Instance> {
    FinGroup::up_to_order_six()
        .into_iter()
        .map(|(name, g)| instance("group", name, from_group(&g), group_groupoid(&g)))
        .collect()
}

pub fn z2_action_family(max: usize) -> Vec<Instance> {
    (0..=max)
        .flat_map(involutions)
        .map(|swap| {
            let action = GroupAction::z2(swap.clone()).expect("involution");
            instance(
                "action",
                format!("Z2 swap {swap:?}"),
                from_group_action(&action),
                action_groupoid(&action),
            )
        })
        .collect()
}

pub fn hom_family(max_group: usize, max_monoid: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for gn in 1..=max_group {
        let g = FinGroup::cyclic(gn);
        for mn in 1..=max_monoid {
            for (mi, m) in FinMonoid::all_of_order(mn).into_iter().enumerate() {
                let homs = (0..mn.pow(gn as u32)).map(|code| {
                    let mut h = Vec::with_capacity(gn);
                    let mut rest = code;
                    for _ in 0..gn {
                        h.push(rest % mn);
                        rest /= mn;
                    }
                    h
                });
                for h in homs {
                    if let Ok(link) = from_group_monoid_hom(&g, &m, &h) {
                        out.push(instance(
                            "hom",
                            format!("Z{gn} -> monoid{mn}#{mi} via {h:?}"),
                            link,
                            hom_groupoid(&g, &m, &h),
                        ));
                    }
                }
            }
        }
    }
    out
}

pub fn inverse_semigroup_family() -> Vec<Instance> {
    FinInverseSemigroup::catalogue()
        .into_iter()
        .map(|(name, s)| {
            instance(
                "inverse_semigroup",
                name,
                from_inverse_semigroup(&s),
                inverse_semigroup_groupoid(&s),
            )
        })
        .collect()
}

/// Every family at the sizes used by the round-trip checks.
pub fn round_trip_suite() -> Vec<Instance> {
    let mut out = discrete_family(3);
    out.extend(equivalence_family(4));
    out.extend(cech_family(4, 3));
    out.extend(group_family());
    out.extend(z2_action_family(3));
    out.extend(hom_family(3, 3));
    out.extend(inverse_semigroup_family());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=4).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15]);
    }

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 10]);
    }
}
