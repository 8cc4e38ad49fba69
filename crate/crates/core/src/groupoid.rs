//! Internal groupoids in finite sets.
//!
//! ```text
//!        π₂
//!   C₂ ==m==> C₁ ==d==> C₀
//!        π₁   ↺ i  <==c==
//!                  <--e--
//! ```
//!
//! `C₂` holds composable pairs `(x, y)` with `d(x) = c(y)` and `m(x, y)` is
//! `x` after `y`. Nothing requires `C₂` to be the canonical fiber product:
//! any commutative square `d π₁ = c π₂` that is a pullback is accepted.

use thiserror::Error;

use crate::finset::{
    self, compose, induced_to_pullback, pullback, CommSquare, FinMap, FinSet, FinSetError,
};
use crate::iso::{find_isomorphism, Structure};
use crate::report::{Outcome, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error("unit is not a section of both domain and codomain")]
    NotUnital,
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error("groupoid axioms fail:\n{0}")]
    Invalid(Report),
    #[error("functor condition {0} fails")]
    NotAFunctor(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalGroupoid {
    pub c0: FinSet,
    pub c1: FinSet,
    pub c2: FinSet,
    pub d: FinMap,
    pub c: FinMap,
    pub e: FinMap,
    pub i: FinMap,
    pub pi1: FinMap,
    pub pi2: FinMap,
    pub m: FinMap,
}

impl InternalGroupoid {
    /// Checks only that every map runs between the right carriers.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: FinMap,
        c: FinMap,
        e: FinMap,
        i: FinMap,
        pi1: FinMap,
        pi2: FinMap,
        m: FinMap,
    ) -> Result<Self, GroupoidError> {
        let c1 = d.dom().clone();
        let c0 = d.cod().clone();
        let c2 = m.dom().clone();
        let ok = |f: &FinMap, dom: &FinSet, cod: &FinSet| f.dom() == dom && f.cod() == cod;
        if !ok(&c, &c1, &c0) {
            return Err(GroupoidError::Shape("c must map C1 to C0"));
        }
        if !ok(&e, &c0, &c1) {
            return Err(GroupoidError::Shape("e must map C0 to C1"));
        }
        if !ok(&i, &c1, &c1) {
            return Err(GroupoidError::Shape("i must be an endomap of C1"));
        }
        if !ok(&m, &c2, &c1) || !ok(&pi1, &c2, &c1) || !ok(&pi2, &c2, &c1) {
            return Err(GroupoidError::Shape("m, pi1, pi2 must map C2 to C1"));
        }
        Ok(InternalGroupoid {
            c0,
            c1,
            c2,
            d,
            c,
            e,
            i,
            pi1,
            pi2,
            m,
        })
    }

    /// `d π₁ = c π₂`, oriented as `top = π₂, left = π₁, bottom = d, right = c`.
    pub fn composable_square(&self) -> Result<CommSquare, FinSetError> {
        CommSquare::new(
            self.pi2.clone(),
            self.pi1.clone(),
            self.d.clone(),
            self.c.clone(),
        )
    }

    /// `⟨u, v⟩: T → C₂`, the composable pair with first component `u` and second `v`.
    pub fn pair(&self, u: &FinMap, v: &FinMap) -> Result<FinMap, FinSetError> {
        induced_to_pullback(&self.composable_square()?, u, v)
    }

    pub(crate) fn structure(&self) -> Structure {
        Structure {
            sorts: vec![self.c0.size(), self.c1.size(), self.c2.size()],
            maps: vec![
                (1, 0, self.d.table().to_vec()),
                (1, 0, self.c.table().to_vec()),
                (0, 1, self.e.table().to_vec()),
                (1, 1, self.i.table().to_vec()),
                (2, 1, self.pi1.table().to_vec()),
                (2, 1, self.pi2.table().to_vec()),
                (2, 1, self.m.table().to_vec()),
            ],
            keys: vec![(2, vec![4, 5]), (1, vec![0, 1])],
        }
    }
}

fn equal_maps(lhs: &FinMap, rhs: &FinMap, describe: impl Fn(usize) -> String) -> Outcome {
    match lhs.disagreement(rhs) {
        None => Outcome::Pass,
        Some(k) => Outcome::fail(lhs.dom().name(k), describe(k)),
    }
}

fn check_eq(lhs: &FinMap, rhs: &FinMap, what: &str) -> Outcome {
    let (l, r) = (lhs.clone(), rhs.clone());
    equal_maps(lhs, rhs, |k| {
        format!(
            "{what}: {} versus {}",
            l.cod().name(l.apply(k)),
            r.cod().name(r.apply(k))
        )
    })
}

fn skipped(why: &str) -> Outcome {
    Outcome::Skipped(why.to_string())
}

/// Runs every groupoid axiom and reports each one.
pub fn validate_groupoid(g: &InternalGroupoid) -> Result<Report, GroupoidError> {
    let mut r = Report::new();
    let id0 = FinMap::identity(&g.c0);
    let id1 = FinMap::identity(&g.c1);
    let de = compose(&g.d, &g.e)?;
    let ce = compose(&g.c, &g.e)?;
    let ed = compose(&g.e, &g.d)?;
    let ec = compose(&g.e, &g.c)?;
    r.push("unit_domain", check_eq(&de, &id0, "d e"));
    r.push("unit_codomain", check_eq(&ce, &id0, "c e"));

    let dm = compose(&g.d, &g.m)?;
    let dpi2 = compose(&g.d, &g.pi2)?;
    let cm = compose(&g.c, &g.m)?;
    let cpi1 = compose(&g.c, &g.pi1)?;
    let dpi1 = compose(&g.d, &g.pi1)?;
    let cpi2 = compose(&g.c, &g.pi2)?;
    let mult_domain = check_eq(&dm, &dpi2, "d m vs d pi2");
    let mult_codomain = check_eq(&cm, &cpi1, "c m vs c pi1");
    let composable = check_eq(&dpi1, &cpi2, "d pi1 vs c pi2");
    r.push("mult_domain", mult_domain.clone());
    r.push("mult_codomain", mult_codomain.clone());
    r.push("composable_square", composable.clone());

    let di = compose(&g.d, &g.i)?;
    let ci = compose(&g.c, &g.i)?;
    let ii = compose(&g.i, &g.i)?;
    let ie = compose(&g.i, &g.e)?;
    r.push("inv_domain", check_eq(&di, &g.c, "d i vs c"));
    r.push("inv_codomain", check_eq(&ci, &g.d, "c i vs d"));
    r.push("inv_involutive", check_eq(&ii, &id1, "i i"));
    r.push("inv_unit", check_eq(&ie, &g.e, "i e vs e"));

    let square = if composable.passed() {
        let sq = g.composable_square()?;
        let defect = finset::pullback_defect(&sq);
        r.push(
            "composable_pullback",
            Outcome::from_witness(defect.map(|d| {
                Witness::new(
                    format!("({},{})", g.c1.name(d.pair.0), g.c1.name(d.pair.1)),
                    format!("composable pair is represented {} times in C2", d.preimages),
                )
            })),
        );
        finset::is_pullback(&sq).then_some(sq)
    } else {
        r.push("composable_pullback", skipped("composable_square failed"));
        None
    };

    // ⟨u, v⟩ needs both the pullback and the cone equation d u = c v.
    let pair = |u: &FinMap, v: &FinMap| -> Option<FinMap> {
        square
            .as_ref()
            .and_then(|sq| induced_to_pullback(sq, u, v).ok())
    };
    let mut law = |name: &'static str, u: &FinMap, v: &FinMap, expect: &FinMap, what: &str| {
        let outcome = if square.is_none() {
            skipped("composable_pullback failed")
        } else {
            match pair(u, v) {
                Some(h) => check_eq(&compose(&g.m, &h).expect("typed"), expect, what),
                None => {
                    let cone = compose(&g.d, u)
                        .and_then(|du| compose(&g.c, v).map(|cv| (du, cv)))
                        .ok()
                        .and_then(|(du, cv)| du.disagreement(&cv));
                    match cone {
                        Some(k) => Outcome::fail(
                            g.c1.name(k),
                            format!("{what}: the pair is not composable here"),
                        ),
                        None => skipped("pair could not be formed"),
                    }
                }
            }
        };
        r.push(name, outcome);
    };
    law("unit_right", &id1, &ed, &id1, "m<1, e d>");
    law("unit_left", &ec, &id1, &id1, "m<e c, 1>");
    law("inverse_right", &id1, &g.i, &ec, "m<1, i> vs e c");
    law("inverse_left", &g.i, &id1, &ed, "m<i, 1> vs e d");

    match (&square, mult_domain.passed() && mult_codomain.passed()) {
        (Some(sq), true) => {
            let triples = triples(g)?;
            r.push("triples_pullback", Outcome::Pass);
            r.push("assoc", associativity(g, sq, &triples)?);
        }
        (None, _) => {
            r.push("triples_pullback", Outcome::Pass);
            r.push("assoc", skipped("composable_pullback failed"));
        }
        (_, false) => {
            r.push("triples_pullback", Outcome::Pass);
            r.push("assoc", skipped("multiplication does not respect d or c"));
        }
    }
    Ok(r)
}

/// Composable triples: the pullback of `d π₂` against `c`.
pub fn triples(g: &InternalGroupoid) -> Result<finset::Pullback, FinSetError> {
    pullback(&compose(&g.d, &g.pi2)?, &g.c)
}

fn associativity(
    g: &InternalGroupoid,
    sq: &CommSquare,
    c3: &finset::Pullback,
) -> Result<Outcome, GroupoidError> {
    let (p1, p2) = (&c3.p1, &c3.p2);
    // (m×1) = ⟨m p₁, p₂⟩
    let m_p1 = compose(&g.m, p1)?;
    let m_times_1 = induced_to_pullback(sq, &m_p1, p2)?;
    // (1×m) = ⟨π₁ p₁, m⟨π₂ p₁, p₂⟩⟩
    let pi2_p1 = compose(&g.pi2, p1)?;
    let inner = induced_to_pullback(sq, &pi2_p1, p2)?;
    let yz = compose(&g.m, &inner)?;
    let pi1_p1 = compose(&g.pi1, p1)?;
    let one_times_m = induced_to_pullback(sq, &pi1_p1, &yz)?;
    let lhs = compose(&g.m, &one_times_m)?;
    let rhs = compose(&g.m, &m_times_1)?;
    Ok(check_eq(&lhs, &rhs, "x(yz) vs (xy)z"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("d m = d pi2 does not commute at {0}")]
    NotCommuting(usize),
    #[error("square d m = d pi2 is not a pullback: {0:?}")]
    NotPullback(Witness),
    #[error("unit is not a section of d")]
    NotUnital,
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error("derived involution fails {name}: {witness:?}")]
    Verification {
        name: &'static str,
        witness: Witness,
    },
}

/// Recovers the inverse map from `(d, c, e, m, π₁, π₂)`: it exists exactly when
/// the square `d m = d π₂` is a pullback, and is then `π₁ ⟨ed, 1⟩` where the
/// pairing is taken into that square.
pub fn derive_involution(
    d: &FinMap,
    c: &FinMap,
    e: &FinMap,
    m: &FinMap,
    pi1: &FinMap,
    pi2: &FinMap,
) -> Result<FinMap, DeriveError> {
    let c1 = d.dom();
    if compose(d, e)? != FinMap::identity(d.cod()) {
        return Err(DeriveError::NotUnital);
    }
    let sq = match CommSquare::new(pi2.clone(), m.clone(), d.clone(), d.clone()) {
        Ok(sq) => sq,
        Err(FinSetError::NotCommuting(a)) => return Err(DeriveError::NotCommuting(a)),
        Err(e) => return Err(e.into()),
    };
    if let Some(defect) = finset::pullback_defect(&sq) {
        return Err(DeriveError::NotPullback(Witness::new(
            format!("({},{})", c1.name(defect.pair.0), c1.name(defect.pair.1)),
            format!(
                "fiber of (m, pi2) over this pair has {} elements",
                defect.preimages
            ),
        )));
    }
    let ed = compose(e, d)?;
    let h = induced_to_pullback(&sq, &ed, &FinMap::identity(c1))?;
    let i = compose(pi1, &h)?;

    let g = InternalGroupoid::new(
        d.clone(),
        c.clone(),
        e.clone(),
        i.clone(),
        pi1.clone(),
        pi2.clone(),
        m.clone(),
    )
    .map_err(|_| DeriveError::FinSet(FinSetError::Mismatch))?;
    let report = validate_groupoid(&g).map_err(|_| DeriveError::FinSet(FinSetError::Mismatch))?;
    for name in [
        "inv_domain",
        "inv_codomain",
        "inv_involutive",
        "inv_unit",
        "inverse_right",
        "inverse_left",
    ] {
        match report.get(name) {
            Some(Outcome::Fail(w)) => {
                return Err(DeriveError::Verification {
                    name,
                    witness: w.clone(),
                })
            }
            Some(Outcome::Skipped(why)) => {
                return Err(DeriveError::Verification {
                    name,
                    witness: Witness::new("-", why.clone()),
                })
            }
            _ => {}
        }
    }
    Ok(i)
}

/// Builds a groupoid from `d, c, e` and a multiplication on the canonical
/// fiber product `pullback(d, c)`, deriving the inverse map.
pub fn make_groupoid_from_multiplicative_data(
    d: &FinMap,
    c: &FinMap,
    e: &FinMap,
    m: &FinMap,
) -> Result<InternalGroupoid, GroupoidError> {
    if d.dom() != c.dom() || d.cod() != c.cod() || e.dom() != d.cod() || e.cod() != d.dom() {
        return Err(GroupoidError::Shape("d, c: C1 -> C0 and e: C0 -> C1"));
    }
    let id0 = FinMap::identity(d.cod());
    if compose(d, e)? != id0 || compose(c, e)? != id0 {
        return Err(GroupoidError::NotUnital);
    }
    let pb = pullback(d, c)?;
    if m.dom() != &pb.apex || m.cod() != d.dom() {
        return Err(GroupoidError::Shape(
            "m must be defined on the canonical pullback of d and c",
        ));
    }
    let i = derive_involution(d, c, e, m, &pb.p1, &pb.p2)?;
    let g = InternalGroupoid::new(d.clone(), c.clone(), e.clone(), i, pb.p1, pb.p2, m.clone())?;
    let report = validate_groupoid(&g)?;
    if !report.passed() {
        return Err(GroupoidError::Invalid(report));
    }
    Ok(g)
}

/// Convenience form taking the composition as a function of the pair
/// `(x, y)` with `d(x) = c(y)`.
pub fn from_composition(
    d: &FinMap,
    c: &FinMap,
    e: &FinMap,
    mut compose_pair: impl FnMut(usize, usize) -> usize,
) -> Result<InternalGroupoid, GroupoidError> {
    let pb = pullback(d, c)?;
    let m = FinMap::from_fn(&pb.apex, d.dom(), |k| {
        compose_pair(pb.p1.apply(k), pb.p2.apply(k))
    })?;
    make_groupoid_from_multiplicative_data(d, c, e, &m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    source: InternalGroupoid,
    target: InternalGroupoid,
    f0: FinMap,
    f1: FinMap,
}

impl GroupoidFunctor {
    /// Checks `f₀d = d′f₁`, `f₀c = c′f₁`, `f₁e = e′f₀`, `f₁i = i′f₁` and
    /// `m′f₂ = f₁m` with `f₂ = ⟨f₁π₁, f₁π₂⟩` formed in the target.
    pub fn new(
        source: InternalGroupoid,
        target: InternalGroupoid,
        f0: FinMap,
        f1: FinMap,
    ) -> Result<Self, GroupoidError> {
        if f0.dom() != &source.c0
            || f0.cod() != &target.c0
            || f1.dom() != &source.c1
            || f1.cod() != &target.c1
        {
            return Err(GroupoidError::Shape("f0: C0 -> C0', f1: C1 -> C1'"));
        }
        let checks: [(&'static str, FinMap, FinMap); 4] = [
            (
                "f0 d = d' f1",
                compose(&f0, &source.d)?,
                compose(&target.d, &f1)?,
            ),
            (
                "f0 c = c' f1",
                compose(&f0, &source.c)?,
                compose(&target.c, &f1)?,
            ),
            (
                "f1 e = e' f0",
                compose(&f1, &source.e)?,
                compose(&target.e, &f0)?,
            ),
            (
                "f1 i = i' f1",
                compose(&f1, &source.i)?,
                compose(&target.i, &f1)?,
            ),
        ];
        for (name, lhs, rhs) in checks {
            if lhs != rhs {
                return Err(GroupoidError::NotAFunctor(name));
            }
        }
        let f2 = target
            .pair(&compose(&f1, &source.pi1)?, &compose(&f1, &source.pi2)?)
            .map_err(|_| GroupoidError::NotAFunctor("f1 preserves composable pairs"))?;
        if compose(&target.m, &f2)? != compose(&f1, &source.m)? {
            return Err(GroupoidError::NotAFunctor("m' f2 = f1 m"));
        }
        Ok(GroupoidFunctor {
            source,
            target,
            f0,
            f1,
        })
    }

    pub fn source(&self) -> &InternalGroupoid {
        &self.source
    }
    pub fn target(&self) -> &InternalGroupoid {
        &self.target
    }
    pub fn f0(&self) -> &FinMap {
        &self.f0
    }
    pub fn f1(&self) -> &FinMap {
        &self.f1
    }
}

/// An isomorphism of groupoids and its inverse, found by backtracking.
pub fn groupoids_isomorphic(
    g1: &InternalGroupoid,
    g2: &InternalGroupoid,
) -> Option<(GroupoidFunctor, GroupoidFunctor)> {
    if g1.c0.size() != g2.c0.size() || g1.c1.size() != g2.c1.size() || g1.c2.size() != g2.c2.size()
    {
        return None;
    }
    let sigma = find_isomorphism(&g1.structure(), &g2.structure(), 1)?;
    let f0 = FinMap::new(g1.c0.clone(), g2.c0.clone(), sigma[0].clone()).ok()?;
    let f1 = FinMap::new(g1.c1.clone(), g2.c1.clone(), sigma[1].clone()).ok()?;
    let forward = GroupoidFunctor::new(g1.clone(), g2.clone(), f0.clone(), f1.clone()).ok()?;
    let back = GroupoidFunctor::new(g2.clone(), g1.clone(), f0.inverse()?, f1.inverse()?).ok()?;
    Some((forward, back))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FinSet {
        FinSet::new(n)
    }

    fn discrete(n: usize) -> InternalGroupoid {
        let id = FinMap::identity(&set(n));
        InternalGroupoid::new(
            id.clone(),
            id.clone(),
            id.clone(),
            id.clone(),
            id.clone(),
            id.clone(),
            id,
        )
        .unwrap()
    }

    /// ℤ/2 as a one-object groupoid with `m` given on the canonical pairs
    /// (0,0), (0,1), (1,0), (1,1).
    fn z2_with(m: [usize; 4]) -> (FinMap, FinMap, FinMap, FinMap) {
        let d = FinMap::new(set(2), set(1), vec![0, 0]).unwrap();
        let e = FinMap::new(set(1), set(2), vec![0]).unwrap();
        let pb = pullback(&d, &d).unwrap();
        let m = FinMap::new(pb.apex.clone(), set(2), m.to_vec()).unwrap();
        (d.clone(), d, e, m)
    }

    fn z2() -> InternalGroupoid {
        let (d, c, e, m) = z2_with([0, 1, 1, 0]);
        make_groupoid_from_multiplicative_data(&d, &c, &e, &m).unwrap()
    }

    #[test]
    fn discrete_groupoid_passes() {
        let r = validate_groupoid(&discrete(3)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn z2_passes_and_is_self_inverse() {
        let g = z2();
        assert!(g.i.is_identity());
        assert!(validate_groupoid(&g).unwrap().passed());
    }

    #[test]
    fn first_projection_breaks_the_left_unit_law() {
        let mut g = z2();
        g.m = g.pi1.clone();
        let r = validate_groupoid(&g).unwrap();
        let w = r.get("unit_left").unwrap().witness().unwrap();
        assert_eq!(w.element, "1");
        assert!(r.get("unit_right").unwrap().passed());
    }

    #[test]
    fn first_projection_is_still_a_kernel_pair() {
        // (m, π₂) = (π₁, π₂) is bijective, so an "inverse" is derived, but it
        // is the constant unit and fails the involution law.
        let (d, c, e, _) = z2_with([0, 0, 1, 1]);
        let pb = pullback(&d, &c).unwrap();
        let err = derive_involution(&d, &c, &e, &pb.p1, &pb.p1, &pb.p2).unwrap_err();
        assert!(matches!(err, DeriveError::Verification { .. }), "{err:?}");
    }

    #[test]
    fn derive_recovers_stored_inverse() {
        let g = z2();
        let i = derive_involution(&g.d, &g.c, &g.e, &g.m, &g.pi1, &g.pi2).unwrap();
        assert_eq!(i, g.i);
    }

    #[test]
    fn corrupted_z2_multiplication_has_no_inverse() {
        // m(1,1) = 1 instead of 0: (0,1) and (1,1) now share (m, π₂) = (1, 1), and
        // nothing has (m, π₂) = (0, 1)
        let (d, c, e, m) = z2_with([0, 1, 1, 1]);
        let pb = pullback(&d, &c).unwrap();
        match derive_involution(&d, &c, &e, &m, &pb.p1, &pb.p2) {
            Err(DeriveError::NotPullback(w)) => assert_eq!(w.element, "(0,1)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn meet_semilattice_is_not_a_groupoid() {
        // {1, 0} under min with unit 1; the absorbing element has no inverse
        let (d, c, e, _) = z2_with([0, 0, 0, 0]);
        let e = FinMap::new(e.dom().clone(), e.cod().clone(), vec![1]).unwrap();
        let pb = pullback(&d, &c).unwrap();
        let m = FinMap::new(pb.apex.clone(), set(2), vec![0, 0, 0, 1]).unwrap();
        assert!(matches!(
            make_groupoid_from_multiplicative_data(&d, &c, &e, &m),
            Err(GroupoidError::Derive(DeriveError::NotPullback(_)))
        ));
    }

    #[test]
    fn isomorphisms() {
        let g = z2();
        let (f, b) = groupoids_isomorphic(&g, &g).unwrap();
        assert!(compose(b.f1(), f.f1()).unwrap().is_identity());
        assert!(groupoids_isomorphic(&discrete(2), &g).is_none());
    }

    #[test]
    fn shape_errors() {
        let g = z2();
        assert!(matches!(
            InternalGroupoid::new(
                g.d.clone(),
                g.c.clone(),
                g.e.clone(),
                g.d.clone(),
                g.pi1,
                g.pi2,
                g.m
            ),
            Err(GroupoidError::Shape(_))
        ));
    }
}
