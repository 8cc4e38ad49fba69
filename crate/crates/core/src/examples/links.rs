//! Involutive-2-links built directly from tuples, one constructor per family.
//!
//! Carriers are listed in lexicographic order of their tuples, with the tag
//! (cover index, group element) first.

use std::collections::BTreeMap;

use super::algebra::{FinGroup, FinInverseSemigroup, FinMonoid, GroupAction, OpenCover, Table};
use super::ExampleError;
use crate::finset::{FinMap, FinSet};
use crate::inv2link::Inv2Link;
use crate::report::{Outcome, Report};

/// Assembles a link from explicit element lists and tuple-level formulas.
pub(crate) fn tuple_link<K: Ord + Clone, T: Ord + Clone>(
    c1: &[K],
    c2: &[T],
    label1: impl Fn(&K) -> String,
    label2: impl Fn(&T) -> String,
    m: impl Fn(&T) -> K,
    theta: impl Fn(&T) -> T,
    phi: impl Fn(&T) -> T,
) -> Result<Inv2Link, ExampleError> {
    let idx1: BTreeMap<&K, usize> = c1.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let idx2: BTreeMap<&T, usize> = c2.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let set1 = FinSet::with_labels(c1.iter().map(&label1))?;
    let set2 = FinSet::with_labels(c2.iter().map(&label2))?;
    let into1 = |name: &'static str, f: &dyn Fn(&T) -> K| -> Result<Vec<usize>, ExampleError> {
        c2.iter()
            .map(|t| {
                idx1.get(&f(t))
                    .copied()
                    .ok_or_else(|| ExampleError::LeavesCarrier {
                        map: name,
                        element: label2(t),
                    })
            })
            .collect()
    };
    let into2 = |name: &'static str, f: &dyn Fn(&T) -> T| -> Result<Vec<usize>, ExampleError> {
        c2.iter()
            .map(|t| {
                idx2.get(&f(t))
                    .copied()
                    .ok_or_else(|| ExampleError::LeavesCarrier {
                        map: name,
                        element: label2(t),
                    })
            })
            .collect()
    };
    let m = FinMap::new(set2.clone(), set1, into1("m", &m)?)?;
    let theta = FinMap::new(set2.clone(), set2.clone(), into2("theta", &theta)?)?;
    let phi = FinMap::new(set2.clone(), set2, into2("phi", &phi)?)?;
    Ok(Inv2Link::new(theta, phi, m)?)
}

fn tuple(names: &[String]) -> String {
    format!("({})", names.join(","))
}

pub fn discrete(x: &FinSet) -> Inv2Link {
    let id = FinMap::identity(x);
    Inv2Link::new(id.clone(), id.clone(), id).expect("identities form a link")
}

pub fn codiscrete(x: &FinSet) -> Inv2Link {
    let all: Vec<(usize, usize)> = x
        .elements()
        .flat_map(|a| x.elements().map(move |b| (a, b)))
        .collect();
    from_equivalence_relation(x, &all).expect("the total relation is an equivalence")
}

pub fn check_equivalence(x: &FinSet, pairs: &[(usize, usize)]) -> Report {
    let related = |a: usize, b: usize| pairs.contains(&(a, b));
    let pair = |a: usize, b: usize| tuple(&[x.name(a), x.name(b)]);
    let mut r = Report::new();
    r.push(
        "reflexive",
        match x.elements().find(|&a| !related(a, a)) {
            None => Outcome::Pass,
            Some(a) => Outcome::fail(x.name(a), "not related to itself"),
        },
    );
    r.push(
        "symmetric",
        match pairs.iter().find(|&&(a, b)| !related(b, a)) {
            None => Outcome::Pass,
            Some(&(a, b)) => Outcome::fail(pair(a, b), "its reverse is missing"),
        },
    );
    let transitive = pairs.iter().find_map(|&(a, b)| {
        pairs
            .iter()
            .find(|&&(b2, c)| b2 == b && !related(a, c))
            .map(|&(_, c)| (a, b, c))
    });
    r.push(
        "transitive",
        match transitive {
            None => Outcome::Pass,
            Some((a, b, c)) => Outcome::fail(
                tuple(&[x.name(a), x.name(b), x.name(c)]),
                format!("missing {}", pair(a, c)),
            ),
        },
    );
    r
}

/// Arrows are the related pairs; `C₂` holds `(x, y, z)` with `x R y R z`.
pub fn from_equivalence_relation(
    x: &FinSet,
    pairs: &[(usize, usize)],
) -> Result<Inv2Link, ExampleError> {
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= x.size() || b >= x.size()) {
        return Err(ExampleError::Shape(format!(
            "pair ({a},{b}) leaves the base set"
        )));
    }
    let mut r: Vec<(usize, usize)> = pairs.to_vec();
    r.sort_unstable();
    r.dedup();
    let report = check_equivalence(x, &r);
    if !report.passed() {
        return Err(ExampleError::Invalid {
            kind: "equivalence relation",
            report,
        });
    }
    let triples: Vec<(usize, usize, usize)> = r
        .iter()
        .flat_map(|&(a, b)| {
            r.iter()
                .filter(move |p| p.0 == b)
                .map(move |&(_, c)| (a, b, c))
        })
        .collect();
    let mut triples = triples;
    triples.sort_unstable();
    tuple_link(
        &r,
        &triples,
        |&(a, b)| tuple(&[x.name(a), x.name(b)]),
        |&(a, b, c)| tuple(&[x.name(a), x.name(b), x.name(c)]),
        |&(a, _, c)| (a, c),
        |&(a, b, c)| (b, a, c),
        |&(a, b, c)| (a, c, b),
    )
}

/// Arrows `x_ij` for `x` in `Uᵢ ∩ Uⱼ`, composable triples `x_ijk`.
pub fn cech(cover: &OpenCover) -> Result<Inv2Link, ExampleError> {
    let base = cover.base();
    let k = cover.parts().len();
    let c1: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .flat_map(|(i, j)| {
            cover.parts()[i]
                .iter()
                .filter(move |&&x| cover.contains(j, x))
                .map(move |&x| (i, j, x))
        })
        .collect();
    let c2: Vec<(usize, usize, usize, usize)> = c1
        .iter()
        .flat_map(|&(i, j, x)| {
            (0..k)
                .filter(move |&l| cover.contains(l, x))
                .map(move |l| (i, j, l, x))
        })
        .collect();
    let mut c2 = c2;
    c2.sort_unstable();
    tuple_link(
        &c1,
        &c2,
        |&(i, j, x)| format!("{}_{i}{j}", base.name(x)),
        |&(i, j, l, x)| format!("{}_{i}{j}{l}", base.name(x)),
        |&(i, _, l, x)| (i, l, x),
        |&(i, j, l, x)| (j, i, l, x),
        |&(i, j, l, x)| (i, l, j, x),
    )
}

/// `m(x, y) = xy`, `θ(x, y) = (x⁻¹, xy)`, `φ(x, y) = (xy, y⁻¹)`.
pub fn from_group(g: &FinGroup) -> Inv2Link {
    let n = g.size();
    let c1: Vec<usize> = (0..n).collect();
    let c2: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let name = |a: usize| g.carrier().name(a);
    tuple_link(
        &c1,
        &c2,
        |&a| name(a),
        |&(a, b)| tuple(&[name(a), name(b)]),
        |&(a, b)| g.mul(a, b),
        |&(a, b)| (g.inv(a), g.mul(a, b)),
        |&(a, b)| (g.mul(a, b), g.inv(b)),
    )
    .expect("groups give links")
}

fn triple_carrier(g: usize, x: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(g * g * x);
    for a in 0..g {
        for b in 0..g {
            for c in 0..x {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn pair_carrier(g: usize, x: usize) -> Vec<(usize, usize)> {
    (0..g).flat_map(|a| (0..x).map(move |c| (a, c))).collect()
}

/// Arrows `(b, x)` from `x` to `ξ(b, x)`.
pub fn from_group_action(action: &GroupAction) -> Inv2Link {
    let g = action.group();
    let x = action.carrier();
    let gn = |a: usize| g.carrier().name(a);
    tuple_link(
        &pair_carrier(g.size(), x.size()),
        &triple_carrier(g.size(), x.size()),
        |&(a, p)| tuple(&[gn(a), x.name(p)]),
        |&(a, b, p)| tuple(&[gn(a), gn(b), x.name(p)]),
        |&(a, b, p)| (g.mul(a, b), p),
        |&(a, b, p)| (g.inv(a), g.mul(a, b), p),
        |&(a, b, p)| (g.mul(a, b), g.inv(b), action.act(b, p)),
    )
    .expect("actions give links")
}

pub fn check_hom(g: &FinGroup, m: &FinMonoid, h: &[usize]) -> Report {
    let mut r = Report::new();
    r.push(
        "hom_unit",
        if h[g.unit()] == m.unit() {
            Outcome::Pass
        } else {
            Outcome::fail(g.carrier().name(g.unit()), "unit is not sent to the unit")
        },
    );
    let bad = (0..g.size())
        .flat_map(|a| (0..g.size()).map(move |b| (a, b)))
        .find(|&(a, b)| h[g.mul(a, b)] != m.mul(h[a], h[b]));
    r.push(
        "hom_mult",
        match bad {
            None => Outcome::Pass,
            Some((a, b)) => Outcome::fail(
                tuple(&[g.carrier().name(a), g.carrier().name(b)]),
                format!(
                    "h(ab) = {} but h(a)h(b) = {}",
                    m.carrier().name(h[g.mul(a, b)]),
                    m.carrier().name(m.mul(h[a], h[b]))
                ),
            ),
        },
    );
    r
}

/// Arrows `(b, c)` from `c` to `h(b)·c`; the monoid is written multiplicatively.
pub fn from_group_monoid_hom(
    g: &FinGroup,
    m: &FinMonoid,
    h: &[usize],
) -> Result<Inv2Link, ExampleError> {
    if h.len() != g.size() || h.iter().any(|&y| y >= m.size()) {
        return Err(ExampleError::Shape(
            "h must send each group element into the monoid".into(),
        ));
    }
    let report = check_hom(g, m, h);
    if !report.passed() {
        return Err(ExampleError::Invalid {
            kind: "homomorphism",
            report,
        });
    }
    let gn = |a: usize| g.carrier().name(a);
    let mn = |c: usize| m.carrier().name(c);
    tuple_link(
        &pair_carrier(g.size(), m.size()),
        &triple_carrier(g.size(), m.size()),
        |&(a, c)| tuple(&[gn(a), mn(c)]),
        |&(a, b, c)| tuple(&[gn(a), gn(b), mn(c)]),
        |&(a, b, c)| (g.mul(a, b), c),
        |&(a, b, c)| (g.inv(a), g.mul(a, b), c),
        |&(a, b, c)| (g.mul(a, b), g.inv(b), m.mul(h[b], c)),
    )
}

/// `C₂ = {(x, y) : x⁻¹x = yy⁻¹}` with the group formulas.
pub fn from_inverse_semigroup(s: &FinInverseSemigroup) -> Inv2Link {
    let n = s.size();
    let c1: Vec<usize> = (0..n).collect();
    let c2: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| s.mul(s.inv(x), x) == s.mul(y, s.inv(y)))
        .collect();
    let name = |a: usize| s.carrier().name(a);
    tuple_link(
        &c1,
        &c2,
        |&a| name(a),
        |&(a, b)| tuple(&[name(a), name(b)]),
        |&(a, b)| s.mul(a, b),
        |&(a, b)| (s.inv(a), s.mul(a, b)),
        |&(a, b)| (s.mul(a, b), s.inv(b)),
    )
    .expect("inverse semigroups give links")
}

/// The three-element link that satisfies every link axiom yet carries no groupoid.
pub fn minimal_non_groupoid() -> Inv2Link {
    let c1 = FinSet::with_labels(["0", "1"]).unwrap();
    let c2 = FinSet::with_labels(["1", "2", "3"]).unwrap();
    let m = FinMap::new(c2.clone(), c1, vec![0, 1, 0]).unwrap();
    let theta = FinMap::new(c2.clone(), c2.clone(), vec![1, 0, 2]).unwrap();
    let phi = FinMap::new(c2.clone(), c2, vec![0, 2, 1]).unwrap();
    Inv2Link::new(theta, phi, m).expect("valid link")
}

/// Inputs of the combined construction: an inverse semigroup `S` acting on
/// `X` through `g: S → B` and `φ: B × X → X`, restricted to `R ⊆ S × X`.
#[derive(Clone, Debug)]
pub struct RelationAction<'a> {
    pub s: &'a FinInverseSemigroup,
    pub x: &'a FinSet,
    pub b: &'a FinSet,
    pub g: &'a [usize],
    /// `phi[b][x]`.
    pub phi: &'a [Vec<usize>],
    pub r: &'a [(usize, usize)],
}

impl RelationAction<'_> {
    fn act(&self, s: usize, x: usize) -> usize {
        self.phi[self.g[s]][x]
    }

    fn shape(&self) -> Result<(), ExampleError> {
        let (ns, nx, nb) = (self.s.size(), self.x.size(), self.b.size());
        if self.g.len() != ns || self.g.iter().any(|&v| v >= nb) {
            return Err(ExampleError::Shape(
                "g must send each element of S into B".into(),
            ));
        }
        if self.phi.len() != nb
            || self
                .phi
                .iter()
                .any(|row| row.len() != nx || row.iter().any(|&v| v >= nx))
        {
            return Err(ExampleError::Shape(format!(
                "phi must be a {nb}x{nx} table into X"
            )));
        }
        if self.r.iter().any(|&(s, x)| s >= ns || x >= nx) {
            return Err(ExampleError::Shape("R must be a subset of S x X".into()));
        }
        Ok(())
    }

    /// The two compatibility laws on `φ` and the closure conditions on `R`,
    /// each quantified over all elements.
    pub fn check(&self) -> Result<Report, ExampleError> {
        self.shape()?;
        let s = self.s;
        let sn = |a: usize| s.carrier().name(a);
        let xn = |p: usize| self.x.name(p);
        let mut r = Report::new();

        let unit = (0..s.size())
            .flat_map(|a| self.x.elements().map(move |p| (a, p)))
            .find(|&(a, p)| {
                self.act(s.mul(s.inv(a), a), p) != p || self.act(s.mul(a, s.inv(a)), p) != p
            });
        r.push(
            "phi_units",
            match unit {
                None => Outcome::Pass,
                Some((a, p)) => Outcome::fail(
                    tuple(&[sn(a), xn(p)]),
                    "phi(g(s^-1 s), x) = x = phi(g(s s^-1), x) fails",
                ),
            },
        );

        let mut composition = Outcome::Pass;
        'outer: for a2 in 0..s.size() {
            for a in 0..s.size() {
                for p in self.x.elements() {
                    let lhs = self.act(s.mul(a2, a), p);
                    let rhs = self.act(a2, self.act(a, p));
                    if lhs != rhs {
                        composition = Outcome::fail(
                            tuple(&[sn(a2), sn(a), xn(p)]),
                            format!(
                                "phi(g(s's), x) = {} but phi(g(s'), phi(g(s), x)) = {}",
                                xn(lhs),
                                xn(rhs)
                            ),
                        );
                        break 'outer;
                    }
                }
            }
        }
        r.push("phi_composition", composition);

        let in_r = |a: usize, p: usize| self.r.contains(&(a, p));
        let closure_units = self.r.iter().find_map(|&(a, p)| {
            if !in_r(s.mul(s.inv(a), a), p) {
                Some((a, p, tuple(&[sn(s.mul(s.inv(a), a)), xn(p)])))
            } else if !in_r(s.mul(a, s.inv(a)), self.act(a, p)) {
                Some((a, p, tuple(&[sn(s.mul(a, s.inv(a))), xn(self.act(a, p))])))
            } else {
                None
            }
        });
        r.push(
            "closure_units",
            match closure_units {
                None => Outcome::Pass,
                Some((a, p, missing)) => {
                    Outcome::fail(tuple(&[sn(a), xn(p)]), format!("R lacks {missing}"))
                }
            },
        );
        let closure_products = self.r.iter().find_map(|&(a, p)| {
            self.r
                .iter()
                .find(|&&(a2, q)| q == self.act(a, p) && !in_r(s.mul(a2, a), p))
                .map(|&(a2, _)| (a2, a, p))
        });
        r.push(
            "closure_products",
            match closure_products {
                None => Outcome::Pass,
                Some((a2, a, p)) => Outcome::fail(
                    tuple(&[sn(a2), sn(a), xn(p)]),
                    format!("R lacks {}", tuple(&[sn(s.mul(a2, a)), xn(p)])),
                ),
            },
        );
        Ok(r)
    }
}

/// `C₁ = R`, `C₂ = {(s', s, x) : s'⁻¹s' = ss⁻¹, (s, x) ∈ R, (s', φ(g(s), x)) ∈ R}`.
/// Fails with [`ExampleError::LeavesCarrier`] when `m`, `θ` or `φ` do not
/// stay inside these sets.
pub fn from_relation_action(input: &RelationAction) -> Result<Inv2Link, ExampleError> {
    let report = input.check()?;
    if !report.passed() {
        return Err(ExampleError::Invalid {
            kind: "relation action",
            report,
        });
    }
    let s = input.s;
    let mut c1: Vec<(usize, usize)> = input.r.to_vec();
    c1.sort_unstable();
    c1.dedup();
    let in_r = |a: usize, p: usize| c1.binary_search(&(a, p)).is_ok();
    let mut c2 = Vec::new();
    for a2 in 0..s.size() {
        for &(a, p) in &c1 {
            if s.mul(s.inv(a2), a2) == s.mul(a, s.inv(a)) && in_r(a2, input.act(a, p)) {
                c2.push((a2, a, p));
            }
        }
    }
    c2.sort_unstable();
    let sn = |a: usize| s.carrier().name(a);
    let xn = |p: usize| input.x.name(p);
    tuple_link(
        &c1,
        &c2,
        |&(a, p)| tuple(&[sn(a), xn(p)]),
        |&(a2, a, p)| tuple(&[sn(a2), sn(a), xn(p)]),
        |&(a2, a, p)| (s.mul(a2, a), p),
        |&(a2, a, p)| (s.inv(a2), s.mul(a2, a), p),
        |&(a2, a, p)| (s.mul(a2, a), s.inv(a), input.act(a, p)),
    )
}

/// A pair `(x, y)` at which one of the two cancellation conditions fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagmaFailure {
    pub pair: (usize, usize),
    pub condition: &'static str,
}

/// `θ = ⟨iπ₁, m⟩` and `φ = ⟨m, iπ₂⟩` on `X × X`. The outer error reports a
/// broken hypothesis on `(m, i)`; the inner one a failed cancellation law.
pub fn from_involutive_magma(
    x: &FinSet,
    m: &Table,
    i: &[usize],
) -> Result<Result<Inv2Link, MagmaFailure>, ExampleError> {
    let n = x.size();
    if m.size() != n || i.len() != n || i.iter().any(|&v| v >= n) {
        return Err(ExampleError::Shape(
            "magma table and involution must fit the carrier".into(),
        ));
    }
    let mut r = Report::new();
    r.push(
        "involution",
        match (0..n).find(|&a| i[i[a]] != a) {
            None => Outcome::Pass,
            Some(a) => Outcome::fail(
                x.name(a),
                format!("i(i({})) = {}", x.name(a), x.name(i[i[a]])),
            ),
        },
    );
    let anti = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| i[m.get(a, b)] != m.get(i[b], i[a]));
    r.push(
        "antihomomorphism",
        match anti {
            None => Outcome::Pass,
            Some((a, b)) => Outcome::fail(
                tuple(&[x.name(a), x.name(b)]),
                "i(m(x,y)) differs from m(i(y), i(x))",
            ),
        },
    );
    if !r.passed() {
        return Err(ExampleError::Invalid {
            kind: "involutive magma",
            report: r,
        });
    }
    for a in 0..n {
        for b in 0..n {
            if m.get(i[a], m.get(a, b)) != b {
                return Ok(Err(MagmaFailure {
                    pair: (a, b),
                    condition: "m(i(x), m(x,y)) = y",
                }));
            }
            if m.get(m.get(a, b), i[b]) != a {
                return Ok(Err(MagmaFailure {
                    pair: (a, b),
                    condition: "m(m(x,y), i(y)) = x",
                }));
            }
        }
    }
    let c1: Vec<usize> = (0..n).collect();
    let c2: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let link = tuple_link(
        &c1,
        &c2,
        |&a| x.name(a),
        |&(a, b)| tuple(&[x.name(a), x.name(b)]),
        |&(a, b)| m.get(a, b),
        |&(a, b)| (i[a], m.get(a, b)),
        |&(a, b)| (m.get(a, b), i[b]),
    )?;
    Ok(Ok(link))
}
