//! The same families presented directly as groupoids: objects, arrows with
//! domain and codomain, units and composition. Inverses are derived.
//!
//! An arrow `x` with `d(x) = c(y)` composes with `y` to `xy`, `y` acting first.

use std::collections::BTreeMap;

use super::algebra::{FinGroup, FinInverseSemigroup, FinMonoid, GroupAction, OpenCover};
use super::ExampleError;
use crate::finset::{FinMap, FinSet};
use crate::groupoid::{from_composition, InternalGroupoid};

/// Builds a groupoid from keyed objects and arrows. `ends` gives
/// `(domain, codomain)` of an arrow, `unit` the identity at an object.
fn keyed<O: Ord + Clone, A: Ord + Clone>(
    objects: &[O],
    arrows: &[A],
    ends: impl Fn(&A) -> (O, O),
    unit: impl Fn(&O) -> A,
    compose: impl Fn(&A, &A) -> A,
) -> Result<InternalGroupoid, ExampleError> {
    let obj: BTreeMap<&O, usize> = objects.iter().enumerate().map(|(k, o)| (o, k)).collect();
    let arr: BTreeMap<&A, usize> = arrows.iter().enumerate().map(|(k, a)| (a, k)).collect();
    let c0 = FinSet::new(objects.len());
    let c1 = FinSet::new(arrows.len());
    let missing =
        |what: &str| ExampleError::Shape(format!("{what} is not among the declared elements"));
    let mut d = Vec::new();
    let mut c = Vec::new();
    for a in arrows {
        let (s, t) = ends(a);
        d.push(*obj.get(&s).ok_or_else(|| missing("a domain"))?);
        c.push(*obj.get(&t).ok_or_else(|| missing("a codomain"))?);
    }
    let e: Vec<usize> = objects
        .iter()
        .map(|o| arr.get(&unit(o)).copied().ok_or_else(|| missing("a unit")))
        .collect::<Result<_, _>>()?;
    let d = FinMap::new(c1.clone(), c0.clone(), d)?;
    let c = FinMap::new(c1.clone(), c0.clone(), c)?;
    let e = FinMap::new(c0, c1, e)?;
    let mut bad = None;
    let g = from_composition(&d, &c, &e, |x, y| {
        match arr.get(&compose(&arrows[x], &arrows[y])) {
            Some(&z) => z,
            None => {
                bad = Some((x, y));
                0
            }
        }
    });
    if let Some((x, y)) = bad {
        return Err(ExampleError::Shape(format!(
            "composite of arrows {x} and {y} is not an arrow"
        )));
    }
    Ok(g?)
}

pub fn discrete_groupoid(x: &FinSet) -> InternalGroupoid {
    let objs: Vec<usize> = x.elements().collect();
    keyed(&objs, &objs, |&a| (a, a), |&a| a, |&a, _| a).expect("discrete groupoid")
}

/// One arrow `(x, y)` from `y` to `x` per related pair.
pub fn relation_groupoid(
    x: &FinSet,
    pairs: &[(usize, usize)],
) -> Result<InternalGroupoid, ExampleError> {
    let objs: Vec<usize> = x.elements().collect();
    let mut r = pairs.to_vec();
    r.sort_unstable();
    r.dedup();
    keyed(
        &objs,
        &r,
        |&(a, b)| (b, a),
        |&a| (a, a),
        |&(a, _), &(_, c)| (a, c),
    )
}

pub fn codiscrete_groupoid(x: &FinSet) -> InternalGroupoid {
    let all: Vec<(usize, usize)> = x
        .elements()
        .flat_map(|a| x.elements().map(move |b| (a, b)))
        .collect();
    relation_groupoid(x, &all).expect("codiscrete groupoid")
}

/// Objects `(i, x)` with `x ∈ Uᵢ`; the arrow `(i, j, x)` runs from `(j, x)` to `(i, x)`.
pub fn cech_groupoid(cover: &OpenCover) -> InternalGroupoid {
    let k = cover.parts().len();
    let objs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| cover.parts()[i].iter().map(move |&x| (i, x)))
        .collect();
    let arrows: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .flat_map(|(i, j)| {
            cover.parts()[i]
                .iter()
                .filter(move |&&x| cover.contains(j, x))
                .map(move |&x| (i, j, x))
        })
        .collect();
    keyed(
        &objs,
        &arrows,
        |&(i, j, x)| ((j, x), (i, x)),
        |&(i, x)| (i, i, x),
        |&(i, _, x), &(_, l, _)| (i, l, x),
    )
    .expect("cech groupoid")
}

pub fn group_groupoid(g: &FinGroup) -> InternalGroupoid {
    let arrows: Vec<usize> = (0..g.size()).collect();
    keyed(
        &[()],
        &arrows,
        |_| ((), ()),
        |_| g.unit(),
        |&a, &b| g.mul(a, b),
    )
    .expect("group groupoid")
}

/// Arrows `(b, x)` from `x` to `ξ(b, x)`.
pub fn action_groupoid(action: &GroupAction) -> InternalGroupoid {
    let g = action.group();
    let objs: Vec<usize> = action.carrier().elements().collect();
    let arrows: Vec<(usize, usize)> = (0..g.size())
        .flat_map(|b| objs.iter().map(move |&x| (b, x)))
        .collect();
    keyed(
        &objs,
        &arrows,
        |&(b, x)| (x, action.act(b, x)),
        |&x| (g.unit(), x),
        |&(a, _), &(b, x)| (g.mul(a, b), x),
    )
    .expect("action groupoid")
}

/// `G` acting on the objects `M` through `c ↦ h(b)·c`.
pub fn hom_groupoid(g: &FinGroup, m: &FinMonoid, h: &[usize]) -> InternalGroupoid {
    let objs: Vec<usize> = (0..m.size()).collect();
    let arrows: Vec<(usize, usize)> = (0..g.size())
        .flat_map(|b| objs.iter().map(move |&c| (b, c)))
        .collect();
    keyed(
        &objs,
        &arrows,
        |&(b, c)| (c, m.mul(h[b], c)),
        |&c| (g.unit(), c),
        |&(a, _), &(b, c)| (g.mul(a, b), c),
    )
    .expect("hom groupoid")
}

/// Objects are idempotents; `s` runs from `s⁻¹s` to `ss⁻¹`.
pub fn inverse_semigroup_groupoid(s: &FinInverseSemigroup) -> InternalGroupoid {
    let objs: Vec<usize> = (0..s.size()).filter(|&x| s.is_idempotent(x)).collect();
    let arrows: Vec<usize> = (0..s.size()).collect();
    keyed(
        &objs,
        &arrows,
        |&x| (s.mul(s.inv(x), x), s.mul(x, s.inv(x))),
        |&e| e,
        |&x, &y| s.mul(x, y),
    )
    .expect("inverse semigroup groupoid")
}
