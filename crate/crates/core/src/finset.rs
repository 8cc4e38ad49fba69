//! Finite sets, total maps between them, and the pullback/pushout machinery.
//!
//! Pullbacks and pushouts are treated as properties of commutative squares:
//! a square is a pullback when the comparison map from its apex into the
//! constructed fiber product is a bijection, and dually for pushouts. The
//! constructions exist only so that those comparison maps can be formed.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("labels must be pairwise distinct; {0:?} repeats")]
    DuplicateLabel(String),
    #[error("table has length {found}, domain has {expected} elements")]
    TableLength { expected: usize, found: usize },
    #[error("table entry {value} at position {position} is outside a codomain of size {cod}")]
    OutOfRange {
        position: usize,
        value: usize,
        cod: usize,
    },
    #[error("cannot compose: codomain of the first map does not match the domain of the second")]
    Mismatch,
    #[error("family of maps is empty")]
    EmptyFamily,
    #[error("square does not commute at apex element {0}")]
    NotCommuting(usize),
    #[error("square is not a pullback")]
    NotPullback,
    #[error("square is not a pushout")]
    NotPushout,
    #[error("cone equation fails at element {0}")]
    ConeEquation(usize),
    #[error("oracle bound exceeded: {0} elements")]
    BoundExceeded(usize),
}

pub type Result<T> = std::result::Result<T, FinSetError>;

/// A finite set `{0, .., size-1}` with optional display labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    pub fn with_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(FinSetError::DuplicateLabel(label.clone()));
            }
        }
        Ok(FinSet {
            size: labels.len(),
            labels: Some(labels.into()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label if present, otherwise its index.
    pub fn name(&self, k: usize) -> String {
        match &self.labels {
            Some(labels) => labels[k].clone(),
            None => k.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse().ok().filter(|&k| k < self.size),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.labels {
            Some(labels) => write!(f, "FinSet{:?}", labels),
            None => write!(f, "FinSet({})", self.size),
        }
    }
}

/// A total function between finite sets, stored as a lookup table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(FinSetError::TableLength {
                expected: dom.size(),
                found: table.len(),
            });
        }
        if let Some((position, &value)) = table.iter().enumerate().find(|(_, &v)| v >= cod.size()) {
            return Err(FinSetError::OutOfRange {
                position,
                value,
                cod: cod.size(),
            });
        }
        Ok(FinMap { dom, cod, table })
    }

    pub fn from_fn(dom: &FinSet, cod: &FinSet, f: impl FnMut(usize) -> usize) -> Result<Self> {
        FinMap::new(dom.clone(), cod.clone(), dom.elements().map(f).collect())
    }

    pub fn identity(a: &FinSet) -> Self {
        FinMap {
            dom: a.clone(),
            cod: a.clone(),
            table: a.elements().collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, k: usize) -> usize {
        self.table[k]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinMap) -> Result<FinMap> {
        compose(self, f)
    }

    pub fn is_mono(&self) -> bool {
        self.collision().is_none()
    }

    pub fn is_epi(&self) -> bool {
        self.missed().is_none()
    }

    pub fn is_bijection(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// Smallest pair `a < a'` with equal images.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut first = vec![usize::MAX; self.cod.size()];
        let mut best: Option<(usize, usize)> = None;
        for (a, &b) in self.table.iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = a;
            } else if best.is_none_or(|(x, _)| first[b] < x) {
                best = Some((first[b], a));
            }
        }
        best
    }

    /// Smallest codomain element outside the image.
    pub fn missed(&self) -> Option<usize> {
        let mut hit = vec![false; self.cod.size()];
        for &b in &self.table {
            hit[b] = true;
        }
        hit.iter().position(|h| !h)
    }

    pub fn fiber(&self, b: usize) -> Vec<usize> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == b)
            .map(|(a, _)| a)
            .collect()
    }

    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.cod.size()];
        for (a, &b) in self.table.iter().enumerate() {
            fibers[b].push(a);
        }
        fibers
    }

    /// Smallest domain element where two parallel maps differ.
    pub fn disagreement(&self, other: &FinMap) -> Option<usize> {
        self.table
            .iter()
            .zip(&other.table)
            .position(|(a, b)| a != b)
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<FinMap> {
        if self.dom.size() != self.cod.size() || !self.is_mono() {
            return None;
        }
        let mut table = vec![0; self.cod.size()];
        for (a, &b) in self.table.iter().enumerate() {
            table[b] = a;
        }
        Some(FinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
        })
    }

    /// The same table read between different carriers of equal sizes.
    pub fn retyped(&self, dom: &FinSet, cod: &FinSet) -> Result<FinMap> {
        FinMap::new(dom.clone(), cod.clone(), self.table.clone())
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} -> {:?}", self.table, self.dom, self.cod)
    }
}

pub fn identity(a: &FinSet) -> FinMap {
    FinMap::identity(a)
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom {
        return Err(FinSetError::Mismatch);
    }
    Ok(FinMap {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: f.table.iter().map(|&k| g.table[k]).collect(),
    })
}

pub fn is_mono(f: &FinMap) -> bool {
    f.is_mono()
}

pub fn is_epi(f: &FinMap) -> bool {
    f.is_epi()
}

fn check_common_domain(family: &[&FinMap]) -> Result<()> {
    let first = family.first().ok_or(FinSetError::EmptyFamily)?;
    if family.iter().any(|f| f.dom != first.dom) {
        return Err(FinSetError::Mismatch);
    }
    Ok(())
}

/// Smallest pair `a < a'` that every map in the family sends to the same place.
pub fn joint_collision(family: &[&FinMap]) -> Result<Option<(usize, usize)>> {
    check_common_domain(family)?;
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut best: Option<(usize, usize)> = None;
    for a in family[0].dom.elements() {
        let key: Vec<usize> = family.iter().map(|f| f.apply(a)).collect();
        match seen.get(&key) {
            Some(&first) => {
                if best.is_none_or(|(x, _)| first < x) {
                    best = Some((first, a));
                }
            }
            None => {
                seen.insert(key, a);
            }
        }
    }
    Ok(best)
}

/// Joint monomorphy of a family with a common domain, decided as injectivity
/// of the tupling `a ↦ (f₁(a), …, fₙ(a))`.
pub fn is_jointly_mono(family: &[&FinMap]) -> Result<bool> {
    Ok(joint_collision(family)?.is_none())
}

/// A commutative square
///
/// ```text
///   A --top--> C
///   |          |
///  left      right
///   v          v
///   B --bottom-> D
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommSquare {
    top: FinMap,
    left: FinMap,
    bottom: FinMap,
    right: FinMap,
}

impl CommSquare {
    pub fn new(top: FinMap, left: FinMap, bottom: FinMap, right: FinMap) -> Result<Self> {
        if top.dom != left.dom
            || right.dom != top.cod
            || bottom.dom != left.cod
            || bottom.cod != right.cod
        {
            return Err(FinSetError::Mismatch);
        }
        if let Some(a) = top
            .dom
            .elements()
            .find(|&a| right.apply(top.apply(a)) != bottom.apply(left.apply(a)))
        {
            return Err(FinSetError::NotCommuting(a));
        }
        Ok(CommSquare {
            top,
            left,
            bottom,
            right,
        })
    }

    pub fn top(&self) -> &FinMap {
        &self.top
    }
    pub fn left(&self) -> &FinMap {
        &self.left
    }
    pub fn bottom(&self) -> &FinMap {
        &self.bottom
    }
    pub fn right(&self) -> &FinMap {
        &self.right
    }

    pub fn apex(&self) -> &FinSet {
        &self.top.dom
    }

    pub fn coapex(&self) -> &FinSet {
        &self.bottom.cod
    }
}

/// Fiber product with its projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub apex: FinSet,
    pub p1: FinMap,
    pub p2: FinMap,
    pub square: CommSquare,
}

/// Pushout with its coprojections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub coapex: FinSet,
    pub q1: FinMap,
    pub q2: FinMap,
    pub square: CommSquare,
}

/// Pairs `(a, b)` with `f(a) = g(b)`, in lexicographic order.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    if f.cod != g.cod {
        return Err(FinSetError::Mismatch);
    }
    let g_fibers = g.fibers();
    let mut pairs = Vec::new();
    for a in f.dom.elements() {
        for &b in &g_fibers[f.apply(a)] {
            pairs.push((a, b));
        }
    }
    let apex = FinSet::with_labels(
        pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", f.dom.name(a), g.dom.name(b))),
    )?;
    let p1 = FinMap::new(
        apex.clone(),
        f.dom.clone(),
        pairs.iter().map(|p| p.0).collect(),
    )?;
    let p2 = FinMap::new(
        apex.clone(),
        g.dom.clone(),
        pairs.iter().map(|p| p.1).collect(),
    )?;
    let square = CommSquare::new(p2.clone(), p1.clone(), f.clone(), g.clone())?;
    Ok(Pullback {
        apex,
        p1,
        p2,
        square,
    })
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    // The smaller index always becomes the root, so roots are least representatives.
    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}

/// `cod(f) ⊔ cod(g)` modulo the equivalence generated by `f(x) ~ g(x)`.
/// Classes are numbered by ascending least representative, `cod(f)` first.
pub fn pushout(f: &FinMap, g: &FinMap) -> Result<Pushout> {
    if f.dom != g.dom {
        return Err(FinSetError::Mismatch);
    }
    let nb = f.cod.size();
    let total = nb + g.cod.size();
    let mut sets = DisjointSets::new(total);
    for x in f.dom.elements() {
        sets.union(f.apply(x), nb + g.apply(x));
    }
    let mut class_of_root = vec![usize::MAX; total];
    let mut count = 0;
    let class: Vec<usize> = (0..total)
        .map(|k| {
            let root = sets.find(k);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = count;
                count += 1;
            }
            class_of_root[root]
        })
        .collect();
    let coapex = FinSet::new(count);
    let q1 = FinMap::new(f.cod.clone(), coapex.clone(), class[..nb].to_vec())?;
    let q2 = FinMap::new(g.cod.clone(), coapex.clone(), class[nb..].to_vec())?;
    let square = CommSquare::new(g.clone(), f.clone(), q1.clone(), q2.clone())?;
    Ok(Pushout {
        coapex,
        q1,
        q2,
        square,
    })
}

/// The comparison `apex → pullback(bottom, right)`, `a ↦ (left a, top a)`.
pub fn pullback_comparison(sq: &CommSquare) -> Result<(Pullback, FinMap)> {
    let pb = pullback(&sq.bottom, &sq.right)?;
    let index: HashMap<(usize, usize), usize> = (0..pb.apex.size())
        .map(|k| ((pb.p1.apply(k), pb.p2.apply(k)), k))
        .collect();
    let cmp = FinMap::from_fn(sq.apex(), &pb.apex, |a| {
        index[&(sq.left.apply(a), sq.top.apply(a))]
    })?;
    Ok((pb, cmp))
}

/// The comparison `pushout(left, top) → coapex` induced by `bottom` and `right`.
pub fn pushout_comparison(sq: &CommSquare) -> Result<(Pushout, FinMap)> {
    let po = pushout(&sq.left, &sq.top)?;
    let mut table = vec![usize::MAX; po.coapex.size()];
    for b in sq.bottom.dom.elements() {
        table[po.q1.apply(b)] = sq.bottom.apply(b);
    }
    for c in sq.right.dom.elements() {
        table[po.q2.apply(c)] = sq.right.apply(c);
    }
    let cmp = FinMap::new(po.coapex.clone(), sq.coapex().clone(), table)?;
    Ok((po, cmp))
}

/// Why a square fails to be a pullback: some element of the fiber product
/// has the wrong number of preimages in the apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackDefect {
    /// `(b, c)` with `bottom(b) = right(c)`.
    pub pair: (usize, usize),
    pub preimages: usize,
}

/// Why a square fails to be a pushout: some coapex element is hit by the
/// wrong number of pushout classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutDefect {
    pub element: usize,
    pub classes: usize,
}

pub fn pullback_defect(sq: &CommSquare) -> Option<PullbackDefect> {
    let (pb, cmp) = pullback_comparison(sq).expect("square is well-typed");
    let mut counts = vec![0usize; pb.apex.size()];
    for &k in cmp.table() {
        counts[k] += 1;
    }
    counts.iter().position(|&n| n != 1).map(|k| PullbackDefect {
        pair: (pb.p1.apply(k), pb.p2.apply(k)),
        preimages: counts[k],
    })
}

pub fn pushout_defect(sq: &CommSquare) -> Option<PushoutDefect> {
    let (_, cmp) = pushout_comparison(sq).expect("square is well-typed");
    let mut counts = vec![0usize; sq.coapex().size()];
    for &k in cmp.table() {
        counts[k] += 1;
    }
    counts
        .iter()
        .position(|&n| n != 1)
        .map(|element| PushoutDefect {
            element,
            classes: counts[element],
        })
}

pub fn is_pullback(sq: &CommSquare) -> bool {
    pullback_defect(sq).is_none()
}

pub fn is_pushout(sq: &CommSquare) -> bool {
    pushout_defect(sq).is_none()
}

pub fn is_exact(sq: &CommSquare) -> bool {
    is_pullback(sq) && is_pushout(sq)
}

/// The unique `h` with `left ∘ h = u` and `top ∘ h = v`.
pub fn induced_to_pullback(sq: &CommSquare, u: &FinMap, v: &FinMap) -> Result<FinMap> {
    if u.dom != v.dom || u.cod != sq.left.cod || v.cod != sq.top.cod {
        return Err(FinSetError::Mismatch);
    }
    if let Some(t) = u
        .dom
        .elements()
        .find(|&t| sq.bottom.apply(u.apply(t)) != sq.right.apply(v.apply(t)))
    {
        return Err(FinSetError::ConeEquation(t));
    }
    if !is_pullback(sq) {
        return Err(FinSetError::NotPullback);
    }
    let index: HashMap<(usize, usize), usize> = sq
        .apex()
        .elements()
        .map(|a| ((sq.left.apply(a), sq.top.apply(a)), a))
        .collect();
    FinMap::from_fn(&u.dom, sq.apex(), |t| index[&(u.apply(t), v.apply(t))])
}

/// The unique `h` with `h ∘ bottom = u` and `h ∘ right = v`.
pub fn induced_from_pushout(sq: &CommSquare, u: &FinMap, v: &FinMap) -> Result<FinMap> {
    if u.cod != v.cod || u.dom != sq.bottom.dom || v.dom != sq.right.dom {
        return Err(FinSetError::Mismatch);
    }
    if let Some(a) = sq
        .apex()
        .elements()
        .find(|&a| u.apply(sq.left.apply(a)) != v.apply(sq.top.apply(a)))
    {
        return Err(FinSetError::ConeEquation(a));
    }
    if !is_pushout(sq) {
        return Err(FinSetError::NotPushout);
    }
    let mut table = vec![usize::MAX; sq.coapex().size()];
    for b in sq.bottom.dom.elements() {
        table[sq.bottom.apply(b)] = u.apply(b);
    }
    for c in sq.right.dom.elements() {
        table[sq.right.apply(c)] = v.apply(c);
    }
    FinMap::new(sq.coapex().clone(), u.cod.clone(), table)
}

fn for_each_tuple(len: usize, radix: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if len > 0 && radix == 0 {
        return;
    }
    let mut digits = vec![0; len];
    loop {
        if !visit(&digits) {
            return;
        }
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            digits[k] += 1;
            if digits[k] < radix {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn corner_bound(sq: &CommSquare) -> usize {
    [
        sq.apex().size(),
        sq.left.cod.size(),
        sq.top.cod.size(),
        sq.coapex().size(),
    ]
    .into_iter()
    .max()
    .unwrap_or(0)
}

/// Default cap on the total number of elements across the four corners.
pub const ORACLE_ELEMENT_BOUND: usize = 16;

fn check_oracle_bound(sq: &CommSquare, bound: usize) -> Result<()> {
    let total = sq.apex().size() + sq.left.cod.size() + sq.top.cod.size() + sq.coapex().size();
    if total > bound {
        return Err(FinSetError::BoundExceeded(total));
    }
    Ok(())
}

/// Brute-force pullback test: every cone from every test object of size up to
/// the largest corner plus one must factor through the apex exactly once.
pub fn universal_pullback_oracle(sq: &CommSquare, bound: usize) -> Result<bool> {
    check_oracle_bound(sq, bound)?;
    let cone_points: Vec<(usize, usize)> = sq
        .left
        .cod
        .elements()
        .flat_map(|b| sq.top.cod.elements().map(move |c| (b, c)))
        .filter(|&(b, c)| sq.bottom.apply(b) == sq.right.apply(c))
        .collect();
    let choices: Vec<usize> = cone_points
        .iter()
        .map(|&(b, c)| {
            sq.apex()
                .elements()
                .filter(|&a| sq.left.apply(a) == b && sq.top.apply(a) == c)
                .count()
        })
        .collect();
    for t in 0..=corner_bound(sq) + 1 {
        let mut universal = true;
        for_each_tuple(t, cone_points.len(), |cone| {
            // mediating maps are chosen pointwise, so count them as a product
            let mediators = cone
                .iter()
                .fold(1usize, |acc, &k| acc.saturating_mul(choices[k]));
            universal = mediators == 1;
            universal
        });
        if !universal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force pushout test, dual to [`universal_pullback_oracle`].
pub fn universal_pushout_oracle(sq: &CommSquare, bound: usize) -> Result<bool> {
    check_oracle_bound(sq, bound)?;
    let nb = sq.bottom.dom.size();
    let nc = sq.right.dom.size();
    // positions in the cocone tuple that land on each coapex element
    let preimages: Vec<Vec<usize>> = sq
        .coapex()
        .elements()
        .map(|d| {
            (0..nb)
                .filter(|&b| sq.bottom.apply(b) == d)
                .chain((0..nc).filter(|&c| sq.right.apply(c) == d).map(|c| nb + c))
                .collect()
        })
        .collect();
    for t in 0..=corner_bound(sq) + 1 {
        let mut universal = true;
        for_each_tuple(nb + nc, t, |cocone| {
            let (u, v) = cocone.split_at(nb);
            let commutes = sq
                .apex()
                .elements()
                .all(|a| u[sq.left.apply(a)] == v[sq.top.apply(a)]);
            if !commutes {
                return true;
            }
            let mut mediators: usize = 1;
            for slots in &preimages {
                let choices = match slots.split_first() {
                    None => t,
                    Some((&x, rest)) => usize::from(rest.iter().all(|&y| cocone[y] == cocone[x])),
                };
                mediators = mediators.saturating_mul(choices);
            }
            universal = mediators == 1;
            universal
        });
        if !universal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The zig-zag `π₁, π₂` completed by a pullback square on top and a pushout
/// square below, both verified exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiexactCompletion {
    pub c3: FinSet,
    pub p1: FinMap,
    pub p2: FinMap,
    pub c0: FinSet,
    pub d: FinMap,
    pub c: FinMap,
    top: CommSquare,
    bottom: CommSquare,
}

impl BiexactCompletion {
    /// `π₁ p₂ = π₂ p₁`.
    pub fn top_square(&self) -> &CommSquare {
        &self.top
    }

    /// `d π₁ = c π₂`.
    pub fn bottom_square(&self) -> &CommSquare {
        &self.bottom
    }
}

/// Which half of a bi-exact completion failed, with the offending element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiexactFailure {
    /// The pushout of the span is not also a pullback.
    pub span: Option<PullbackDefect>,
    /// The pullback of the cospan is not also a pushout.
    pub cospan: Option<PushoutDefect>,
    pub c0_size: usize,
    pub c3_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Biexactness {
    Exact(BiexactCompletion),
    Inexact(BiexactFailure),
}

impl Biexactness {
    pub fn completion(&self) -> Option<&BiexactCompletion> {
        match self {
            Biexactness::Exact(c) => Some(c),
            Biexactness::Inexact(_) => None,
        }
    }
}

/// Completes a parallel pair: below by the pushout of the span `(π₁, π₂)`,
/// above by the pullback of the cospan `(π₂, π₁)`, and checks both are exact.
pub fn complete_biexact(pi1: &FinMap, pi2: &FinMap) -> Result<Biexactness> {
    if pi1.dom != pi2.dom || pi1.cod != pi2.cod {
        return Err(FinSetError::Mismatch);
    }
    let po = pushout(pi1, pi2)?;
    let pb = pullback(pi2, pi1)?;
    let span = pullback_defect(&po.square);
    let cospan = pushout_defect(&pb.square);
    if span.is_some() || cospan.is_some() {
        return Ok(Biexactness::Inexact(BiexactFailure {
            span,
            cospan,
            c0_size: po.coapex.size(),
            c3_size: pb.apex.size(),
        }));
    }
    Ok(Biexactness::Exact(BiexactCompletion {
        c3: pb.apex,
        p1: pb.p1,
        p2: pb.p2,
        c0: po.coapex,
        d: po.q1,
        c: po.q2,
        top: pb.square,
        bottom: po.square,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(dom: usize, cod: usize, table: &[usize]) -> FinMap {
        FinMap::new(FinSet::new(dom), FinSet::new(cod), table.to_vec()).unwrap()
    }

    #[test]
    fn identity_tables() {
        assert!(identity(&FinSet::new(0)).table().is_empty());
        assert_eq!(identity(&FinSet::new(3)).table(), &[0, 1, 2]);
    }

    #[test]
    fn compose_pointwise() {
        let f = map(3, 2, &[0, 0, 1]);
        let g = map(2, 2, &[1, 0]);
        assert_eq!(compose(&g, &f).unwrap().table(), &[1, 1, 0]);
        assert_eq!(compose(&identity(f.cod()), &f).unwrap(), f);
        assert_eq!(compose(&f, &identity(f.dom())).unwrap(), f);
        assert_eq!(compose(&f, &g), Err(FinSetError::Mismatch));
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            FinMap::new(FinSet::new(2), FinSet::new(2), vec![0]),
            Err(FinSetError::TableLength {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            FinMap::new(FinSet::new(1), FinSet::new(2), vec![2]),
            Err(FinSetError::OutOfRange { .. })
        ));
        assert!(FinSet::with_labels(["a", "a"]).is_err());
    }

    #[test]
    fn mono_epi() {
        let id = identity(&FinSet::new(3));
        assert!(id.is_mono() && id.is_epi());
        let collapse = map(2, 1, &[0, 0]);
        assert!(!collapse.is_mono() && collapse.is_epi());
        let empty = map(0, 2, &[]);
        assert!(empty.is_mono() && !empty.is_epi());
    }

    #[test]
    fn jointly_mono_cases() {
        let id = identity(&FinSet::new(2));
        assert!(is_jointly_mono(&[&id]).unwrap());
        let k0 = map(2, 2, &[0, 0]);
        let k1 = map(2, 2, &[1, 1]);
        assert!(!is_jointly_mono(&[&k0, &k1]).unwrap());
        assert_eq!(joint_collision(&[&k0, &k1]).unwrap(), Some((0, 1)));
        assert_eq!(is_jointly_mono(&[]), Err(FinSetError::EmptyFamily));
        let other = map(3, 2, &[0, 0, 0]);
        assert_eq!(is_jointly_mono(&[&k0, &other]), Err(FinSetError::Mismatch));
    }

    #[test]
    fn pullback_enumerates_matching_pairs() {
        let f = map(3, 2, &[0, 0, 1]);
        let g = identity(&FinSet::new(2));
        let pb = pullback(&f, &g).unwrap();
        let pairs: Vec<_> = pb
            .apex
            .elements()
            .map(|k| (pb.p1.apply(k), pb.p2.apply(k)))
            .collect();
        assert_eq!(pairs, vec![(0, 0), (1, 0), (2, 1)]);
        assert!(is_pullback(&pb.square));
        assert!(pb.p1.is_bijection());
    }

    #[test]
    fn pullback_over_point_is_product() {
        let f = map(2, 1, &[0, 0]);
        let g = map(3, 1, &[0, 0, 0]);
        let pb = pullback(&f, &g).unwrap();
        assert_eq!(pb.apex.size(), 6);
    }

    #[test]
    fn pushout_classes() {
        let f = map(2, 3, &[0, 1]);
        let g = map(2, 1, &[0, 0]);
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.coapex.size(), 2);
        assert_eq!(po.q1.table(), &[0, 0, 1]);
        assert_eq!(po.q2.table(), &[0]);
        assert!(is_pushout(&po.square));

        let id = identity(&FinSet::new(3));
        assert_eq!(pushout(&id, &id).unwrap().coapex.size(), 3);

        let e1 = map(0, 2, &[]);
        let e2 = map(0, 3, &[]);
        assert_eq!(pushout(&e1, &e2).unwrap().coapex.size(), 5);
    }

    #[test]
    fn constant_square_is_not_a_pullback() {
        let k = map(2, 1, &[0, 0]);
        let one = identity(&FinSet::new(1));
        let sq = CommSquare::new(k.clone(), k, one.clone(), one).unwrap();
        assert!(!is_pullback(&sq));
        assert_eq!(
            pullback_defect(&sq),
            Some(PullbackDefect {
                pair: (0, 0),
                preimages: 2
            })
        );
        assert!(!universal_pullback_oracle(&sq, ORACLE_ELEMENT_BOUND).unwrap());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let a = map(1, 2, &[0]);
        let b = map(1, 2, &[1]);
        let id = identity(&FinSet::new(2));
        assert_eq!(
            CommSquare::new(a, b, id.clone(), id),
            Err(FinSetError::NotCommuting(0))
        );
    }

    #[test]
    fn oracle_on_empty_corners() {
        let e = FinSet::new(0);
        let id = identity(&e);
        let sq = CommSquare::new(id.clone(), id.clone(), id.clone(), id).unwrap();
        assert!(universal_pullback_oracle(&sq, ORACLE_ELEMENT_BOUND).unwrap());
        assert!(universal_pushout_oracle(&sq, ORACLE_ELEMENT_BOUND).unwrap());
    }

    #[test]
    fn oracle_bound_guard() {
        let f = map(5, 5, &[0, 1, 2, 3, 4]);
        let pb = pullback(&f, &f).unwrap();
        assert_eq!(
            universal_pullback_oracle(&pb.square, 16),
            Err(FinSetError::BoundExceeded(20))
        );
    }

    #[test]
    fn induced_maps() {
        let f = map(3, 2, &[0, 0, 1]);
        let g = map(2, 2, &[0, 1]);
        let pb = pullback(&f, &g).unwrap();
        let h = induced_to_pullback(&pb.square, &pb.p1, &pb.p2).unwrap();
        assert!(h.is_identity());

        // pairing into a product
        let a = map(2, 1, &[0, 0]);
        let b = map(3, 1, &[0, 0, 0]);
        let prod = pullback(&a, &b).unwrap();
        let u = map(2, 2, &[1, 0]);
        let v = map(2, 3, &[2, 2]);
        let h = induced_to_pullback(&prod.square, &u, &v).unwrap();
        assert_eq!(compose(&prod.p1, &h).unwrap(), u);
        assert_eq!(compose(&prod.p2, &h).unwrap(), v);

        let bad_v = map(3, 2, &[1, 1, 1]);
        assert_eq!(
            induced_to_pullback(
                &pb.square,
                &pb.p1.after(&identity(&pb.apex)).unwrap(),
                &compose(&bad_v, &pb.p1).unwrap()
            ),
            Err(FinSetError::ConeEquation(0))
        );
    }

    #[test]
    fn induced_from_pushout_factors() {
        let f = map(2, 3, &[0, 1]);
        let g = map(2, 1, &[0, 0]);
        let po = pushout(&f, &g).unwrap();
        let u = map(3, 4, &[2, 2, 3]);
        let v = map(1, 4, &[2]);
        let h = induced_from_pushout(&po.square, &u, &v).unwrap();
        assert_eq!(h.table(), &[2, 3]);
    }

    #[test]
    fn biexact_identity_pair() {
        let id = identity(&FinSet::new(3));
        match complete_biexact(&id, &id).unwrap() {
            Biexactness::Exact(c) => {
                assert_eq!(c.c0.size(), 3);
                assert_eq!(c.c3.size(), 3);
            }
            Biexactness::Inexact(f) => panic!("unexpected failure {f:?}"),
        }
    }

    #[test]
    fn biexact_two_constants_fails_on_the_cospan_side() {
        // Hand computation: the pushout of [0] and [1] into a 3-set glues one
        // pair out of six, leaving 5 classes, and its square is a pullback.
        // The cospan pullback is empty, and the empty span's pushout (2 points)
        // cannot cover the 3-element corner.
        let p1 = map(1, 3, &[0]);
        let p2 = map(1, 3, &[1]);
        match complete_biexact(&p1, &p2).unwrap() {
            Biexactness::Exact(_) => panic!("expected failure"),
            Biexactness::Inexact(f) => {
                assert_eq!(f.c0_size, 5);
                assert_eq!(f.c3_size, 0);
                assert_eq!(f.span, None);
                assert_eq!(
                    f.cospan,
                    Some(PushoutDefect {
                        element: 2,
                        classes: 0
                    })
                );
            }
        }
    }
}
