//! Involutive-2-links: a map `m: C₂ → C₁` with two interlinked involutions
//! `θ, φ` on `C₂` such that `{m, mθ, mφ}` is jointly monomorphic.
//!
//! In the groupoid reading `mφ` is the first projection of a composable pair
//! and `mθ` the second.

use std::collections::HashMap;

use thiserror::Error;

use crate::finset::{self, compose, FinMap, FinSet, FinSetError};
use crate::iso::{find_isomorphism, Structure};
use crate::report::{Outcome, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error("not an involutive-2-link:\n{0}")]
    Invalid(Box<LinkValidationReport>),
    #[error("morphisms do not compose: target of the first is not the source of the second")]
    NotComposable,
    #[error("f̄ does not satisfy the morphism equations at element {0}")]
    NotAMorphism(usize),
}

/// Unvalidated link data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLink {
    pub theta: FinMap,
    pub phi: FinMap,
    pub m: FinMap,
}

impl RawLink {
    pub fn new(theta: FinMap, phi: FinMap, m: FinMap) -> Self {
        RawLink { theta, phi, m }
    }

    fn check_shape(&self) -> Result<(), LinkError> {
        let c2 = self.m.dom();
        if self.theta.dom() != c2 || self.theta.cod() != c2 {
            return Err(LinkError::Shape(
                "theta must be an endomap of the domain of m",
            ));
        }
        if self.phi.dom() != c2 || self.phi.cod() != c2 {
            return Err(LinkError::Shape(
                "phi must be an endomap of the domain of m",
            ));
        }
        Ok(())
    }
}

/// Verdicts for the three defining conditions of an involutive-2-link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkValidationReport {
    pub involutions: Outcome,
    pub interlink: Outcome,
    pub triple_mono: Outcome,
    /// Present only when `θ` is the identity, where the interlink law forces
    /// `φ` to be the identity as well.
    pub trivial_theta: Option<Outcome>,
}

impl LinkValidationReport {
    pub fn passed(&self) -> bool {
        self.involutions.passed() && self.interlink.passed() && self.triple_mono.passed()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("involutions", self.involutions.clone());
        r.push("interlink", self.interlink.clone());
        r.push("triple_mono", self.triple_mono.clone());
        if let Some(t) = &self.trivial_theta {
            r.push("trivial_theta_forces_trivial_phi", t.clone());
        }
        r
    }
}

impl std::fmt::Display for LinkValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.to_report().fmt(f)
    }
}

fn involution_failure(name: &str, f: &FinMap) -> Option<Witness> {
    let c2 = f.dom();
    c2.elements().find(|&a| f.apply(f.apply(a)) != a).map(|a| {
        Witness::new(
            c2.name(a),
            format!(
                "{name}({name}({})) = {}",
                c2.name(a),
                c2.name(f.apply(f.apply(a)))
            ),
        )
    })
}

/// Checks involutions, then the interlink law, then joint monomorphy of
/// `{m, mθ, mφ}`, reporting all three regardless of earlier failures.
pub fn validate_link(raw: &RawLink) -> Result<LinkValidationReport, LinkError> {
    raw.check_shape()?;
    let (theta, phi, m) = (&raw.theta, &raw.phi, &raw.m);
    let c2 = m.dom();

    let involutions = Outcome::from_witness(
        match (
            involution_failure("theta", theta),
            involution_failure("phi", phi),
        ) {
            (Some(a), Some(b)) => Some(if c2.index_of(&b.element) < c2.index_of(&a.element) {
                b
            } else {
                a
            }),
            (a, b) => a.or(b),
        },
    );

    let interlink = Outcome::from_witness(
        c2.elements()
            .find(|&a| {
                theta.apply(phi.apply(theta.apply(a))) != phi.apply(theta.apply(phi.apply(a)))
            })
            .map(|a| {
                Witness::new(
                    c2.name(a),
                    format!(
                        "theta phi theta({0}) = {1} but phi theta phi({0}) = {2}",
                        c2.name(a),
                        c2.name(theta.apply(phi.apply(theta.apply(a)))),
                        c2.name(phi.apply(theta.apply(phi.apply(a))))
                    ),
                )
            }),
    );

    let m_theta = compose(m, theta)?;
    let m_phi = compose(m, phi)?;
    let triple_mono = Outcome::from_witness(finset::joint_collision(&[m, &m_theta, &m_phi])?.map(
        |(a, b)| {
            Witness::new(
                c2.name(b),
                format!(
                    "{} and {} share (m, m theta, m phi) = ({}, {}, {})",
                    c2.name(a),
                    c2.name(b),
                    m.cod().name(m.apply(a)),
                    m.cod().name(m_theta.apply(a)),
                    m.cod().name(m_phi.apply(a))
                ),
            )
        },
    ));

    let trivial_theta = theta.is_identity().then(|| {
        Outcome::from_witness(c2.elements().find(|&a| phi.apply(a) != a).map(|a| {
            Witness::new(
                c2.name(a),
                format!(
                    "theta is the identity but phi({}) = {}",
                    c2.name(a),
                    c2.name(phi.apply(a))
                ),
            )
        }))
    });

    Ok(LinkValidationReport {
        involutions,
        interlink,
        triple_mono,
        trivial_theta,
    })
}

/// A validated involutive-2-link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inv2Link {
    theta: FinMap,
    phi: FinMap,
    m: FinMap,
    m_theta: FinMap,
    m_phi: FinMap,
}

impl Inv2Link {
    pub fn new(theta: FinMap, phi: FinMap, m: FinMap) -> Result<Self, LinkError> {
        Inv2Link::try_from(RawLink::new(theta, phi, m))
    }

    pub fn c1(&self) -> &FinSet {
        self.m.cod()
    }
    pub fn c2(&self) -> &FinSet {
        self.m.dom()
    }
    pub fn m(&self) -> &FinMap {
        &self.m
    }
    pub fn theta(&self) -> &FinMap {
        &self.theta
    }
    pub fn phi(&self) -> &FinMap {
        &self.phi
    }
    /// `mθ`, the second projection in the groupoid reading.
    pub fn m_theta(&self) -> &FinMap {
        &self.m_theta
    }
    /// `mφ`, the first projection in the groupoid reading.
    pub fn m_phi(&self) -> &FinMap {
        &self.m_phi
    }

    pub fn raw(&self) -> RawLink {
        RawLink::new(self.theta.clone(), self.phi.clone(), self.m.clone())
    }

    pub fn is_discrete(&self) -> bool {
        self.theta.is_identity() && self.phi.is_identity()
    }

    fn structure(&self) -> Structure {
        Structure {
            sorts: vec![self.c1().size(), self.c2().size()],
            maps: vec![
                (1, 0, self.m.table().to_vec()),
                (1, 1, self.theta.table().to_vec()),
                (1, 1, self.phi.table().to_vec()),
                (1, 0, self.m_theta.table().to_vec()),
                (1, 0, self.m_phi.table().to_vec()),
            ],
            keys: vec![(1, vec![0, 3, 4])],
        }
    }
}

impl TryFrom<RawLink> for Inv2Link {
    type Error = LinkError;

    fn try_from(raw: RawLink) -> Result<Self, LinkError> {
        let report = validate_link(&raw)?;
        if !report.passed() {
            return Err(LinkError::Invalid(Box::new(report)));
        }
        let m_theta = compose(&raw.m, &raw.theta)?;
        let m_phi = compose(&raw.m, &raw.phi)?;
        Ok(Inv2Link {
            theta: raw.theta,
            phi: raw.phi,
            m: raw.m,
            m_theta,
            m_phi,
        })
    }
}

/// Order of the permutation group generated by `θ` and `φ`.
pub fn dihedral_order(link: &Inv2Link) -> usize {
    let n = link.c2().size();
    let generators = [link.theta.table().to_vec(), link.phi.table().to_vec()];
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &generators {
            let q: Vec<usize> = p.iter().map(|&k| g[k]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

/// Why no `f̄` exists for a proposed `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FbarFailure {
    /// No target element carries the triple `(fm(a), fmθ(a), fmφ(a))`.
    NoPreimage {
        element: usize,
        triple: (usize, usize, usize),
    },
    /// The candidate fails `θ′f̄ = f̄θ` or `φ′f̄ = f̄φ` at this element.
    NotEquivariant {
        element: usize,
        involution: &'static str,
    },
}

impl FbarFailure {
    pub fn witness(&self, source: &Inv2Link, target: &Inv2Link) -> Witness {
        let c2 = source.c2();
        let c1 = target.c1();
        match self {
            FbarFailure::NoPreimage { element, triple } => Witness::new(
                c2.name(*element),
                format!(
                    "no target element has (m, m theta, m phi) = ({}, {}, {})",
                    c1.name(triple.0),
                    c1.name(triple.1),
                    c1.name(triple.2)
                ),
            ),
            FbarFailure::NotEquivariant {
                element,
                involution,
            } => Witness::new(
                c2.name(*element),
                format!("the induced map does not commute with {involution} here"),
            ),
        }
    }
}

/// Finds the unique `f̄: C₂ → C₂′` with `m′f̄ = fm`, `m′θ′f̄ = fmθ`,
/// `m′φ′f̄ = fmφ`, then re-verifies that it commutes with both involutions.
pub fn induce_fbar(
    source: &Inv2Link,
    target: &Inv2Link,
    f: &FinMap,
) -> Result<Result<FinMap, FbarFailure>, LinkError> {
    if f.dom() != source.c1() || f.cod() != target.c1() {
        return Err(LinkError::Shape(
            "f must map the source C1 to the target C1",
        ));
    }
    let index: HashMap<(usize, usize, usize), usize> = target
        .c2()
        .elements()
        .map(|b| {
            (
                (
                    target.m.apply(b),
                    target.m_theta.apply(b),
                    target.m_phi.apply(b),
                ),
                b,
            )
        })
        .collect();
    let mut table = Vec::with_capacity(source.c2().size());
    for a in source.c2().elements() {
        let triple = (
            f.apply(source.m.apply(a)),
            f.apply(source.m_theta.apply(a)),
            f.apply(source.m_phi.apply(a)),
        );
        match index.get(&triple) {
            Some(&b) => table.push(b),
            None => return Ok(Err(FbarFailure::NoPreimage { element: a, triple })),
        }
    }
    let fbar = FinMap::new(source.c2().clone(), target.c2().clone(), table)?;
    for (name, s, t) in [
        ("theta", &source.theta, &target.theta),
        ("phi", &source.phi, &target.phi),
    ] {
        if let Some(a) = source
            .c2()
            .elements()
            .find(|&a| t.apply(fbar.apply(a)) != fbar.apply(s.apply(a)))
        {
            return Ok(Err(FbarFailure::NotEquivariant {
                element: a,
                involution: name,
            }));
        }
    }
    Ok(Ok(fbar))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inv2LinkMorphism {
    source: Inv2Link,
    target: Inv2Link,
    f: FinMap,
    fbar: FinMap,
}

impl Inv2LinkMorphism {
    /// Checks `m′f̄ = fm`, `θ′f̄ = f̄θ`, `φ′f̄ = f̄φ`.
    pub fn new(
        source: Inv2Link,
        target: Inv2Link,
        f: FinMap,
        fbar: FinMap,
    ) -> Result<Self, LinkError> {
        if f.dom() != source.c1()
            || f.cod() != target.c1()
            || fbar.dom() != source.c2()
            || fbar.cod() != target.c2()
        {
            return Err(LinkError::Shape(
                "f and f̄ must run between the links' carriers",
            ));
        }
        for (s, t, lhs_first) in [
            (&source.m, &target.m, true),
            (&source.theta, &target.theta, false),
            (&source.phi, &target.phi, false),
        ] {
            let lhs = compose(t, &fbar)?;
            let rhs = if lhs_first {
                compose(&f, s)?
            } else {
                compose(&fbar, s)?
            };
            if let Some(a) = lhs.disagreement(&rhs) {
                return Err(LinkError::NotAMorphism(a));
            }
        }
        Ok(Inv2LinkMorphism {
            source,
            target,
            f,
            fbar,
        })
    }

    /// The morphism determined by `f` alone, when one exists.
    pub fn induced(
        source: &Inv2Link,
        target: &Inv2Link,
        f: &FinMap,
    ) -> Result<Option<Self>, LinkError> {
        Ok(match induce_fbar(source, target, f)? {
            Ok(fbar) => Some(Inv2LinkMorphism::new(
                source.clone(),
                target.clone(),
                f.clone(),
                fbar,
            )?),
            Err(_) => None,
        })
    }

    pub fn source(&self) -> &Inv2Link {
        &self.source
    }
    pub fn target(&self) -> &Inv2Link {
        &self.target
    }
    pub fn f(&self) -> &FinMap {
        &self.f
    }
    pub fn fbar(&self) -> &FinMap {
        &self.fbar
    }
}

pub fn identity_morphism(link: &Inv2Link) -> Inv2LinkMorphism {
    Inv2LinkMorphism {
        source: link.clone(),
        target: link.clone(),
        f: FinMap::identity(link.c1()),
        fbar: FinMap::identity(link.c2()),
    }
}

/// `g ∘ f`.
pub fn compose_morphisms(
    g: &Inv2LinkMorphism,
    f: &Inv2LinkMorphism,
) -> Result<Inv2LinkMorphism, LinkError> {
    if f.target != g.source {
        return Err(LinkError::NotComposable);
    }
    Inv2LinkMorphism::new(
        f.source.clone(),
        g.target.clone(),
        compose(&g.f, &f.f)?,
        compose(&g.fbar, &f.fbar)?,
    )
}

/// An isomorphism `L1 → L2` together with its inverse.
pub fn links_isomorphic(
    l1: &Inv2Link,
    l2: &Inv2Link,
) -> Option<(Inv2LinkMorphism, Inv2LinkMorphism)> {
    if l1.c1().size() != l2.c1().size() || l1.c2().size() != l2.c2().size() {
        return None;
    }
    let bijections = find_isomorphism(&l1.structure(), &l2.structure(), 0)?;
    let f = FinMap::new(l1.c1().clone(), l2.c1().clone(), bijections[0].clone()).ok()?;
    let forward = Inv2LinkMorphism::induced(l1, l2, &f).ok()??;
    let back = Inv2LinkMorphism::induced(l2, l1, &f.inverse()?).ok()??;
    debug_assert_eq!(forward.fbar.table(), &bijections[1][..]);
    Some((forward, back))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FinSet {
        FinSet::new(n)
    }

    fn endo(n: usize, t: &[usize]) -> FinMap {
        FinMap::new(set(n), set(n), t.to_vec()).unwrap()
    }

    /// The smallest link not coming from a groupoid, indexed 0..3.
    fn minimal() -> Inv2Link {
        Inv2Link::new(
            endo(3, &[1, 0, 2]),
            endo(3, &[0, 2, 1]),
            FinMap::new(set(3), set(2), vec![0, 1, 0]).unwrap(),
        )
        .unwrap()
    }

    fn discrete(n: usize) -> Inv2Link {
        let id = FinMap::identity(&set(n));
        Inv2Link::new(id.clone(), id.clone(), id).unwrap()
    }

    /// Group ℤ/2: pairs (x,y) indexed 2x+y, θ(x,y) = (x, x+y), φ(x,y) = (x+y, y).
    fn z2() -> Inv2Link {
        let pair = |x: usize, y: usize| 2 * x + y;
        let theta: Vec<usize> = (0..4).map(|k| pair(k / 2, (k / 2 + k % 2) % 2)).collect();
        let phi: Vec<usize> = (0..4).map(|k| pair((k / 2 + k % 2) % 2, k % 2)).collect();
        let m: Vec<usize> = (0..4).map(|k| (k / 2 + k % 2) % 2).collect();
        Inv2Link::new(
            endo(4, &theta),
            endo(4, &phi),
            FinMap::new(set(4), set(2), m).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn minimal_link_validates() {
        let l = minimal();
        assert_eq!(dihedral_order(&l), 6);
        let report = validate_link(&l.raw()).unwrap();
        assert!(report.passed());
        assert!(report.trivial_theta.is_none());
    }

    #[test]
    fn discrete_link_validates() {
        let l = discrete(3);
        assert_eq!(dihedral_order(&l), 1);
        let report = validate_link(&l.raw()).unwrap();
        assert_eq!(report.trivial_theta, Some(Outcome::Pass));
    }

    #[test]
    fn single_involution_has_order_two() {
        // θ = φ = swap on 2 points, m collapsing the orbit
        let swap = endo(2, &[1, 0]);
        let m = FinMap::new(set(2), set(1), vec![0, 0]).unwrap();
        let raw = RawLink::new(swap.clone(), swap, m);
        let report = validate_link(&raw).unwrap();
        assert!(report.involutions.passed() && report.interlink.passed());
        // a single orbit map cannot separate the two points
        assert!(!report.triple_mono.passed());
        let m = FinMap::identity(&set(2));
        let l = Inv2Link::new(endo(2, &[1, 0]), endo(2, &[1, 0]), m).unwrap();
        assert_eq!(dihedral_order(&l), 2);
    }

    #[test]
    fn z2_link_has_order_six() {
        assert_eq!(dihedral_order(&z2()), 6);
    }

    #[test]
    fn every_theta_mutation_of_the_minimal_link_is_caught() {
        let base = minimal().raw();
        for pos in 0..3 {
            for v in 0..3 {
                if v == base.theta.apply(pos) {
                    continue;
                }
                let mut t = base.theta.table().to_vec();
                t[pos] = v;
                let raw = RawLink::new(endo(3, &t), base.phi.clone(), base.m.clone());
                let report = validate_link(&raw).unwrap();
                assert!(
                    report.involutions.witness().is_some() || report.interlink.witness().is_some(),
                    "mutation {pos}->{v} slipped through"
                );
            }
        }
    }

    #[test]
    fn identity_theta_with_nontrivial_phi_is_flagged() {
        let raw = RawLink::new(
            FinMap::identity(&set(2)),
            endo(2, &[1, 0]),
            FinMap::identity(&set(2)),
        );
        let report = validate_link(&raw).unwrap();
        assert!(!report.interlink.passed());
        assert_eq!(
            report.trivial_theta.unwrap().witness().unwrap().element,
            "0"
        );
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let raw = RawLink::new(
            endo(2, &[0, 1]),
            endo(3, &[0, 1, 2]),
            FinMap::identity(&set(3)),
        );
        assert!(matches!(validate_link(&raw), Err(LinkError::Shape(_))));
    }

    #[test]
    fn fbar_of_identity_is_identity() {
        let l = z2();
        let fbar = induce_fbar(&l, &l, &FinMap::identity(l.c1()))
            .unwrap()
            .unwrap();
        assert!(fbar.is_identity());
    }

    #[test]
    fn map_to_terminal_link() {
        let l = z2();
        let t = discrete(1);
        let f = FinMap::new(set(2), set(1), vec![0, 0]).unwrap();
        let fbar = induce_fbar(&l, &t, &f).unwrap().unwrap();
        assert_eq!(fbar.table(), &[0, 0, 0, 0]);
    }

    #[test]
    fn swapping_c1_of_the_minimal_link_is_not_a_morphism() {
        let l = minimal();
        let f = endo(2, &[1, 0]);
        let err = induce_fbar(&l, &l, &f).unwrap().unwrap_err();
        // element 0 has triple (0, 1, 0), which f sends to (1, 0, 1)
        assert_eq!(
            err,
            FbarFailure::NoPreimage {
                element: 0,
                triple: (1, 0, 1)
            }
        );
    }

    #[test]
    fn morphism_composition() {
        let l = z2();
        let id = identity_morphism(&l);
        let to_t = Inv2LinkMorphism::induced(
            &l,
            &discrete(1),
            &FinMap::new(set(2), set(1), vec![0, 0]).unwrap(),
        )
        .unwrap()
        .unwrap();
        assert_eq!(compose_morphisms(&to_t, &id).unwrap(), to_t);
        assert!(compose_morphisms(&id, &to_t).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let l = z2();
        let (f, g) = links_isomorphic(&l, &l).unwrap();
        assert!(compose_morphisms(&g, &f).unwrap().f().is_identity());
        assert!(links_isomorphic(&discrete(2), &z2()).is_none());
    }
}
