//! Passing between internal groupoids and involutive-2-links.
//!
//! [`to_link`] is the fully faithful functor from groupoids to links;
//! [`classify`] decides whether a link lies in its image and [`to_groupoid`]
//! rebuilds the groupoid when it does.

use thiserror::Error;

use crate::finset::{
    self, complete_biexact, compose, induced_from_pushout, induced_to_pullback, BiexactCompletion,
    Biexactness, FinMap, FinSetError,
};
use crate::groupoid::{validate_groupoid, GroupoidError, GroupoidFunctor, InternalGroupoid};
use crate::inv2link::{induce_fbar, Inv2Link, LinkError};
use crate::report::{Outcome, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("input groupoid is invalid:\n{0}")]
    InvalidGroupoid(Report),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error("link is not an internal groupoid:\n{0}")]
    NotGroupoid(Box<ClassificationReport>),
    /// A link passed classification but the rebuilt groupoid does not validate.
    #[error("classification passed but the reconstructed groupoid fails:\n{0}")]
    Inconsistent(Report),
}

fn require_valid(g: &InternalGroupoid) -> Result<(), BridgeError> {
    let report = validate_groupoid(g)?;
    if !report.passed() {
        return Err(BridgeError::InvalidGroupoid(report));
    }
    Ok(())
}

/// `θ = ⟨iπ₁, m⟩`, `φ = ⟨m, iπ₂⟩`, with `m` carried over unchanged.
pub fn to_link(g: &InternalGroupoid) -> Result<Inv2Link, BridgeError> {
    require_valid(g)?;
    let theta = g.pair(&compose(&g.i, &g.pi1)?, &g.m)?;
    let phi = g.pair(&g.m, &compose(&g.i, &g.pi2)?)?;
    Ok(Inv2Link::new(theta, phi, g.m.clone())?)
}

/// A tiny backtracking solver over variables with finite domains and binary
/// constraints. Stops after `limit` solutions or `budget` nodes.
type Pred<'a> = Box<dyn Fn(usize, usize) -> bool + 'a>;

struct Csp<'a> {
    domains: Vec<Vec<usize>>,
    /// Constraints indexed by the later of their two variables.
    constraints: Vec<Vec<(usize, Pred<'a>)>>,
}

enum CspResult {
    Solutions(Vec<Vec<usize>>),
    BudgetExceeded,
}

impl<'a> Csp<'a> {
    fn new(domains: Vec<Vec<usize>>) -> Self {
        let n = domains.len();
        Csp {
            domains,
            constraints: (0..n).map(|_| Vec::new()).collect(),
        }
    }

    /// `pred(value of i, value of j)`.
    fn require(&mut self, i: usize, j: usize, pred: impl Fn(usize, usize) -> bool + 'a) {
        if i <= j {
            self.constraints[j].push((i, Box::new(pred)));
        } else {
            self.constraints[i].push((j, Box::new(move |vj, vi| pred(vi, vj))));
        }
    }

    fn solve(&self, limit: usize, budget: usize) -> CspResult {
        let mut found = Vec::new();
        let mut assignment = Vec::with_capacity(self.domains.len());
        let mut nodes = 0;
        if self.search(&mut assignment, &mut found, limit, &mut nodes, budget) {
            CspResult::Solutions(found)
        } else {
            CspResult::BudgetExceeded
        }
    }

    fn search(
        &self,
        assignment: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
        limit: usize,
        nodes: &mut usize,
        budget: usize,
    ) -> bool {
        let var = assignment.len();
        if var == self.domains.len() {
            found.push(assignment.clone());
            return true;
        }
        for &value in &self.domains[var] {
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            let ok = self.constraints[var].iter().all(|(other, pred)| {
                let other_value = if *other == var {
                    value
                } else {
                    assignment[*other]
                };
                pred(other_value, value)
            });
            if !ok {
                continue;
            }
            assignment.push(value);
            let within = self.search(assignment, found, limit, nodes, budget);
            assignment.pop();
            if !within {
                return false;
            }
            if found.len() >= limit {
                return true;
            }
        }
        true
    }
}

const SEARCH_BUDGET: usize = 2_000_000;

/// Per-condition verdicts for deciding whether a link comes from a groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub report: Report,
    /// The section of `m` fixed by `φ`, when determined.
    pub e1: Option<FinMap>,
    /// The section of `m` fixed by `θ`, when determined.
    pub e2: Option<FinMap>,
    pub completion: Option<BiexactCompletion>,
}

impl ClassificationReport {
    pub fn is_groupoid(&self) -> bool {
        self.report.passed()
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.report.get(name)
    }
}

impl std::fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.report.fmt(f)
    }
}

fn pair_mono(link: &Inv2Link, other: &FinMap, other_name: &str) -> Outcome {
    let c2 = link.c2();
    let c1 = link.c1();
    match finset::joint_collision(&[link.m(), other]).expect("parallel maps") {
        None => Outcome::Pass,
        Some((a, b)) => Outcome::fail(
            c2.name(b),
            format!(
                "{} and {} share (m, {other_name}) = ({}, {})",
                c2.name(a),
                c2.name(b),
                c1.name(link.m().apply(a)),
                c1.name(other.apply(a))
            ),
        ),
    }
}

/// Candidate values of a section of `m` fixed by `inv`, per element of `C₁`.
fn fixed_sections(link: &Inv2Link, inv: &FinMap) -> Vec<Vec<usize>> {
    link.m()
        .fibers()
        .into_iter()
        .map(|fiber| fiber.into_iter().filter(|&a| inv.apply(a) == a).collect())
        .collect()
}

fn fixed_point_outcome(
    link: &Inv2Link,
    candidates: &[Vec<usize>],
    inv: &FinMap,
    inv_name: &str,
) -> Outcome {
    let fibers = link.m().fibers();
    let c1 = link.c1();
    let c2 = link.c2();
    match (0..c1.size()).find(|&b| candidates[b].is_empty()) {
        None => Outcome::Pass,
        Some(b) => {
            let fiber = &fibers[b];
            let listed: Vec<String> = fiber.iter().map(|&a| c2.name(a)).collect();
            let images: Vec<String> = fiber
                .iter()
                .map(|&a| format!("{inv_name}({}) = {}", c2.name(a), c2.name(inv.apply(a))))
                .collect();
            Outcome::fail(
                c2.name(fiber[0]),
                format!(
                    "over {} of C1 the m-fiber {{{}}} has no {inv_name}-fixed point ({})",
                    c1.name(b),
                    listed.join(", "),
                    images.join(", ")
                ),
            )
        }
    }
}

fn skip(why: &str) -> Outcome {
    Outcome::Skipped(why.to_string())
}

fn first_disagreement(lhs: &FinMap, rhs: &FinMap, what: &str) -> Outcome {
    match lhs.disagreement(rhs) {
        None => Outcome::Pass,
        Some(k) => Outcome::fail(
            lhs.dom().name(k),
            format!(
                "{what}: {} versus {}",
                lhs.cod().name(lhs.apply(k)),
                rhs.cod().name(rhs.apply(k))
            ),
        ),
    }
}

/// Decides whether a link is (the image of) an internal groupoid.
///
/// The sections `e₁, e₂` are found by per-element candidate sets (fibers of
/// `m` fixed by `φ` resp. `θ`) and a backtracking search against the global
/// equations, which also certifies their uniqueness.
pub fn classify(link: &Inv2Link) -> ClassificationReport {
    let mut r = Report::new();
    let c1 = link.c1();
    let c2 = link.c2();
    let n = c1.size();
    let (m, theta, phi) = (link.m(), link.theta(), link.phi());
    let (m_theta, m_phi) = (link.m_theta(), link.m_phi());

    r.push("pair_mono_m_mtheta", pair_mono(link, m_theta, "m theta"));
    r.push("pair_mono_m_mphi", pair_mono(link, m_phi, "m phi"));
    r.push("triple_mono", Outcome::Pass);

    let split = match m.missed() {
        None => Outcome::Pass,
        Some(b) => Outcome::fail(
            c1.name(b),
            "m has an empty fiber here, so no section exists",
        ),
    };
    let has_sections = split.passed();
    r.push("m_split", split);

    let cand1 = fixed_sections(link, phi);
    let cand2 = fixed_sections(link, theta);
    if has_sections {
        r.push(
            "e1_phi_fixed",
            fixed_point_outcome(link, &cand1, phi, "phi"),
        );
        r.push(
            "e2_theta_fixed",
            fixed_point_outcome(link, &cand2, theta, "theta"),
        );
    } else {
        r.push("e1_phi_fixed", skip("m_split failed"));
        r.push("e2_theta_fixed", skip("m_split failed"));
    }
    let candidates_ok =
        has_sections && cand1.iter().all(|c| !c.is_empty()) && cand2.iter().all(|c| !c.is_empty());

    let mut e1 = None;
    let mut e2 = None;
    if candidates_ok {
        let mut domains = cand1.clone();
        domains.extend(cand2.iter().cloned());
        let mut csp = Csp::new(domains);
        for b in 0..n {
            csp.require(b, n + b, |x1, x2| {
                m_theta.apply(phi.apply(x2)) == m_phi.apply(theta.apply(x1))
            });
        }
        for a in c2.elements() {
            csp.require(m_phi.apply(a), n + m_theta.apply(a), |x1, x2| {
                m_theta.apply(x1) == m_phi.apply(x2)
            });
            csp.require(m.apply(a), m_theta.apply(a), |x, y| {
                m_theta.apply(x) == m_theta.apply(y)
            });
            csp.require(n + m.apply(a), n + m_phi.apply(a), |x, y| {
                m_phi.apply(x) == m_phi.apply(y)
            });
        }
        let (outcome, chosen) = match csp.solve(2, SEARCH_BUDGET) {
            CspResult::BudgetExceeded => (
                Outcome::fail("-", "section search exceeded its budget"),
                None,
            ),
            CspResult::Solutions(sols) => match sols.len() {
                1 => (Outcome::Pass, Some(sols[0].clone())),
                0 => (
                    Outcome::fail(
                        "-",
                        "no choice of sections satisfies the remaining equations",
                    ),
                    None,
                ),
                _ => {
                    let k = (0..2 * n).find(|&k| sols[0][k] != sols[1][k]).unwrap();
                    (
                        Outcome::fail(
                            c1.name(k % n),
                            format!(
                                "ambiguous: {} could be {} or {}",
                                if k < n { "e1" } else { "e2" },
                                c2.name(sols[0][k]),
                                c2.name(sols[1][k])
                            ),
                        ),
                        Some(sols[0].clone()),
                    )
                }
            },
        };
        r.push("sections_determined", outcome);
        // fall back to the first candidates so every equation still gets a witness
        let values =
            chosen.unwrap_or_else(|| cand1.iter().chain(&cand2).map(|c| c[0]).collect::<Vec<_>>());
        let s1 = FinMap::new(c1.clone(), c2.clone(), values[..n].to_vec()).expect("fiber elements");
        let s2 = FinMap::new(c1.clone(), c2.clone(), values[n..].to_vec()).expect("fiber elements");

        let c = |g: &FinMap, f: &FinMap| compose(g, f).expect("typed");
        let inv_a = c(m_theta, &c(phi, &s2));
        let inv_b = c(m_phi, &c(theta, &s1));
        r.push(
            "inverse_agrees",
            first_disagreement(&inv_a, &inv_b, "m theta phi e2 vs m phi theta e1"),
        );
        let mte1 = c(m_theta, &s1);
        let mpe2 = c(m_phi, &s2);
        r.push(
            "unit_cocone",
            first_disagreement(
                &c(&mte1, m_phi),
                &c(&mpe2, m_theta),
                "m theta e1 m phi vs m phi e2 m theta",
            ),
        );
        r.push(
            "contract_theta",
            first_disagreement(
                &c(&mte1, m),
                &c(&mte1, m_theta),
                "m theta e1 m vs m theta e1 m theta",
            ),
        );
        r.push(
            "contract_phi",
            first_disagreement(
                &c(&mpe2, m),
                &c(&mpe2, m_phi),
                "m phi e2 m vs m phi e2 m phi",
            ),
        );
        e1 = Some(s1);
        e2 = Some(s2);
    } else {
        for name in [
            "sections_determined",
            "inverse_agrees",
            "unit_cocone",
            "contract_theta",
            "contract_phi",
        ] {
            r.push(name, skip("no fixed sections of m"));
        }
    }

    let completion = match complete_biexact(m_phi, m_theta).expect("parallel pair") {
        Biexactness::Exact(done) => {
            r.push("biexact_span", Outcome::Pass);
            r.push("biexact_cospan", Outcome::Pass);
            Some(done)
        }
        Biexactness::Inexact(failure) => {
            r.push(
                "biexact_span",
                Outcome::from_witness(failure.span.map(|d| {
                    Witness::new(
                        format!("({},{})", c1.name(d.pair.0), c1.name(d.pair.1)),
                        format!(
                            "pushout of (m phi, m theta) has {} objects; this pair meets over one of them but is carried by {} elements of C2",
                            failure.c0_size, d.preimages
                        ),
                    )
                })),
            );
            r.push(
                "biexact_cospan",
                Outcome::from_witness(failure.cospan.map(|d| {
                    Witness::new(
                        c1.name(d.element),
                        format!(
                            "pullback of (m theta, m phi) has {} elements; its pushout reaches this element {} times",
                            failure.c3_size, d.classes
                        ),
                    )
                })),
            );
            None
        }
    };

    match &completion {
        Some(done) => {
            let c = |g: &FinMap, f: &FinMap| compose(g, f).expect("typed");
            let cone1 = first_disagreement(&c(&done.d, m), &c(&done.d, m_theta), "d m vs d pi2");
            let cone2 = first_disagreement(&c(&done.c, m), &c(&done.c, m_phi), "c m vs c pi1");
            let cones_ok = cone1.passed() && cone2.passed();
            r.push("cone_m1", cone1);
            r.push("cone_m2", cone2);
            if cones_ok {
                let sq = done.bottom_square();
                let m1 = induced_to_pullback(sq, &c(m, &done.p1), &c(m_theta, &done.p2));
                let m2 = induced_to_pullback(sq, &c(m_phi, &done.p1), &c(m, &done.p2));
                match (m1, m2) {
                    (Ok(m1), Ok(m2)) => r.push(
                        "assoc",
                        first_disagreement(&c(m, &m1), &c(m, &m2), "m m1 vs m m2"),
                    ),
                    (Err(FinSetError::ConeEquation(k)), _)
                    | (_, Err(FinSetError::ConeEquation(k))) => r.push(
                        "assoc",
                        Outcome::fail(done.c3.name(k), "induced pair is not composable"),
                    ),
                    _ => r.push("assoc", skip("could not induce m1, m2")),
                }
            } else {
                r.push("assoc", skip("cone equations failed"));
            }
        }
        None => {
            r.push("cone_m1", skip("pair (m phi, m theta) is not bi-exact"));
            r.push("cone_m2", skip("pair (m phi, m theta) is not bi-exact"));
            r.push("assoc", skip("pair (m phi, m theta) is not bi-exact"));
        }
    }

    ClassificationReport {
        report: r,
        e1,
        e2,
        completion,
    }
}

/// Rebuilds the groupoid of a link that passes [`classify`].
pub fn to_groupoid(link: &Inv2Link) -> Result<InternalGroupoid, BridgeError> {
    let cls = classify(link);
    if !cls.is_groupoid() {
        return Err(BridgeError::NotGroupoid(Box::new(cls)));
    }
    let (Some(e1), Some(e2), Some(done)) = (&cls.e1, &cls.e2, &cls.completion) else {
        unreachable!("passing classification determines the sections and the completion");
    };
    let (m, theta, phi) = (link.m(), link.theta(), link.phi());
    let (m_theta, m_phi) = (link.m_theta(), link.m_phi());

    let i = compose(m_theta, &compose(phi, e2)?)?;
    let ed = compose(m_theta, e1)?;
    let ec = compose(m_phi, e2)?;
    let e = induced_from_pushout(done.bottom_square(), &ed, &ec)?;
    let g = InternalGroupoid::new(
        done.d.clone(),
        done.c.clone(),
        e,
        i,
        m_phi.clone(),
        m_theta.clone(),
        m.clone(),
    )?;

    let mut report = validate_groupoid(&g)?;
    let e1e = compose(e1, &g.e)?;
    let e2e = compose(e2, &g.e)?;
    report.push(
        "sections_agree_on_units",
        first_disagreement(&e1e, &e2e, "e1 e vs e2 e"),
    );
    let alt = compose(m_phi, &compose(theta, e1)?)?;
    report.push(
        "inverse_formulas_agree",
        first_disagreement(&g.i, &alt, "m theta phi e2 vs m phi theta e1"),
    );
    if !report.passed() {
        return Err(BridgeError::Inconsistent(report));
    }
    Ok(g)
}

/// Outcome of searching for contracting sections in the sense of Beck.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contractibility {
    /// `e₁` with `m e₁ = 1` and `mθ e₁ m = mθ e₁ mθ`.
    pub theta_pair: Option<FinMap>,
    /// `e₂` with `m e₂ = 1` and `mφ e₂ m = mφ e₂ mφ`.
    pub phi_pair: Option<FinMap>,
    /// Some contracting `e₁` is also fixed by `φ`.
    pub theta_pair_phi_fixed: bool,
    /// Some contracting `e₂` is also fixed by `θ`.
    pub phi_pair_theta_fixed: bool,
}

impl Contractibility {
    pub fn is_contractible(&self) -> bool {
        self.theta_pair.is_some() && self.phi_pair.is_some()
    }
}

fn contracting_section(
    link: &Inv2Link,
    other: &FinMap,
    restrict: Option<&FinMap>,
) -> Option<FinMap> {
    let m = link.m();
    let domains: Vec<Vec<usize>> = m
        .fibers()
        .into_iter()
        .map(|fiber| {
            fiber
                .into_iter()
                .filter(|&a| restrict.is_none_or(|inv| inv.apply(a) == a))
                .collect()
        })
        .collect();
    if domains.iter().any(Vec::is_empty) {
        return None;
    }
    let mut csp = Csp::new(domains);
    for a in link.c2().elements() {
        csp.require(m.apply(a), other.apply(a), |x, y| {
            other.apply(x) == other.apply(y)
        });
    }
    match csp.solve(1, SEARCH_BUDGET) {
        CspResult::Solutions(sols) => sols
            .first()
            .map(|s| FinMap::new(link.c1().clone(), link.c2().clone(), s.clone()).expect("fiber")),
        CspResult::BudgetExceeded => None,
    }
}

/// Whether `e` is a section of `m` contracting the pair `(m, other)`.
pub fn contracts(link: &Inv2Link, other: &FinMap, e: &FinMap) -> bool {
    let Ok(me) = compose(link.m(), e) else {
        return false;
    };
    if !me.is_identity() {
        return false;
    }
    let oe = compose(other, e).expect("typed");
    compose(&oe, link.m()).ok() == compose(&oe, other).ok()
}

pub fn contractibility_check(link: &Inv2Link) -> Contractibility {
    Contractibility {
        theta_pair: contracting_section(link, link.m_theta(), None),
        phi_pair: contracting_section(link, link.m_phi(), None),
        theta_pair_phi_fixed: contracting_section(link, link.m_theta(), Some(link.phi())).is_some(),
        phi_pair_theta_fixed: contracting_section(link, link.m_phi(), Some(link.theta())).is_some(),
    }
}

/// Lifts a map of arrows to a functor when it is a link morphism, deriving
/// the object map through the pushout `d π₁ = c π₂`.
pub fn induce_functor_images(
    g: &InternalGroupoid,
    h: &InternalGroupoid,
    f1: &FinMap,
) -> Result<Option<GroupoidFunctor>, BridgeError> {
    let lg = to_link(g)?;
    let lh = to_link(h)?;
    if induce_fbar(&lg, &lh, f1)?.is_err() {
        return Ok(None);
    }
    let f0 = induced_from_pushout(
        &g.composable_square()?,
        &compose(&h.d, f1)?,
        &compose(&h.c, f1)?,
    )?;
    match GroupoidFunctor::new(g.clone(), h.clone(), f0, f1.clone()) {
        Ok(functor) => Ok(Some(functor)),
        Err(GroupoidError::NotAFunctor(what)) => {
            let mut r = Report::new();
            r.push("functor", Outcome::fail("-", what));
            Err(BridgeError::Inconsistent(r))
        }
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{pullback, FinSet};
    use crate::groupoid::from_composition;

    fn z2() -> InternalGroupoid {
        let d = FinMap::new(FinSet::new(2), FinSet::new(1), vec![0, 0]).unwrap();
        let e = FinMap::new(FinSet::new(1), FinSet::new(2), vec![0]).unwrap();
        from_composition(&d, &d, &e, |x, y| x ^ y).unwrap()
    }

    #[test]
    fn z2_link_formulas() {
        let g = z2();
        let l = to_link(&g).unwrap();
        let c = |a: &FinMap, b: &FinMap| compose(a, b).unwrap();
        assert_eq!(c(l.m(), l.phi()), g.pi1);
        assert_eq!(c(l.m(), l.theta()), g.pi2);
        assert_eq!(c(&g.pi1, l.phi()), g.m);
        assert_eq!(c(&g.pi1, l.theta()), c(&g.i, &g.pi1));
        assert_eq!(c(&g.pi2, l.phi()), c(&g.i, &g.pi2));
        assert_eq!(c(&g.pi2, l.theta()), g.m);
        // pairs (0,0),(0,1),(1,0),(1,1): θ fixes the first two and swaps the last two
        assert_eq!(l.theta().table(), &[0, 1, 3, 2]);
    }

    #[test]
    fn z2_round_trip() {
        let g = z2();
        let l = to_link(&g).unwrap();
        let cls = classify(&l);
        assert!(cls.is_groupoid(), "{cls}");
        let back = to_groupoid(&l).unwrap();
        assert_eq!(back.c0.size(), 1);
        assert!(crate::groupoid::groupoids_isomorphic(&g, &back).is_some());
    }

    #[test]
    fn groupoid_sections_contract() {
        let g = z2();
        let l = to_link(&g).unwrap();
        let id = FinMap::identity(&g.c1);
        let e1 = g.pair(&id, &compose(&g.e, &g.d).unwrap()).unwrap();
        let e2 = g.pair(&compose(&g.e, &g.c).unwrap(), &id).unwrap();
        assert!(contracts(&l, l.m_theta(), &e1));
        assert!(contracts(&l, l.m_phi(), &e2));
        assert!(contractibility_check(&l).is_contractible());
    }

    #[test]
    fn csp_counts_solutions() {
        let mut csp = Csp::new(vec![vec![0, 1, 2], vec![0, 1, 2]]);
        csp.require(0, 1, |x, y| x < y);
        match csp.solve(10, 1000) {
            CspResult::Solutions(s) => assert_eq!(s.len(), 3),
            CspResult::BudgetExceeded => panic!(),
        }
        let _ = pullback;
    }
}
