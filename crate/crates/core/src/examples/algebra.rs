//! Finite algebraic inputs given by tables: groups, monoids, inverse
//! semigroups, group actions and subset families.
//!
//! Every constructor runs the matching `check_*` function and refuses input
//! whose report has a failing verdict.

use super::ExampleError;
use crate::finset::FinSet;
use crate::report::{Outcome, Report};

/// A binary operation on `0..n`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, ExampleError> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(ExampleError::Shape(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(ExampleError::Shape(format!(
                    "row {a} contains {bad}, outside 0..{n}"
                )));
            }
            cells.extend(row);
        }
        Ok(Table { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, ExampleError> {
        Table::new((0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[usize]>::to_vec)
            .collect()
    }

    fn associativity(&self, names: &FinSet) -> Outcome {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    let left = self.get(ab, c);
                    let right = self.get(a, self.get(b, c));
                    if left != right {
                        return Outcome::fail(
                            format!("({},{},{})", names.name(a), names.name(b), names.name(c)),
                            format!(
                                "(ab)c = {} but a(bc) = {}",
                                names.name(left),
                                names.name(right)
                            ),
                        );
                    }
                }
            }
        }
        Outcome::Pass
    }

    fn unit(&self) -> Option<usize> {
        (0..self.n).find(|&u| (0..self.n).all(|x| self.get(u, x) == x && self.get(x, u) == x))
    }
}

/// `base`, primed until it is not already a label of `carrier`.
fn fresh_label(carrier: &FinSet, base: &str) -> String {
    let mut label = base.to_string();
    while carrier.index_of(&label).is_some() {
        label.push('\'');
    }
    label
}

fn carrier_matches(carrier: &FinSet, table: &Table) -> Result<(), ExampleError> {
    if carrier.size() != table.size() {
        return Err(ExampleError::Shape(format!(
            "carrier has {} elements but the table is {}x{}",
            carrier.size(),
            table.size(),
            table.size()
        )));
    }
    Ok(())
}

fn unit_outcome(table: &Table) -> (Outcome, Option<usize>) {
    match table.unit() {
        Some(u) => (Outcome::Pass, Some(u)),
        None => (Outcome::fail("-", "no two-sided unit"), None),
    }
}

pub fn check_monoid(carrier: &FinSet, table: &Table) -> Report {
    let mut r = Report::new();
    r.push("associative", table.associativity(carrier));
    r.push("unit", unit_outcome(table).0);
    r
}

pub fn check_group(carrier: &FinSet, table: &Table) -> Report {
    let mut r = check_monoid(carrier, table);
    let inverses = match table.unit() {
        None => Outcome::Skipped("no unit".into()),
        Some(u) => match (0..table.size())
            .find(|&x| !(0..table.size()).any(|y| table.get(x, y) == u && table.get(y, x) == u))
        {
            None => Outcome::Pass,
            Some(x) => Outcome::fail(carrier.name(x), "has no two-sided inverse"),
        },
    };
    r.push("inverses", inverses);
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    carrier: FinSet,
    op: Table,
    unit: usize,
}

impl FinMonoid {
    pub fn new(carrier: FinSet, op: Table) -> Result<Self, ExampleError> {
        carrier_matches(&carrier, &op)?;
        let report = check_monoid(&carrier, &op);
        if !report.passed() {
            return Err(ExampleError::Invalid {
                kind: "monoid",
                report,
            });
        }
        let unit = op.unit().expect("checked");
        Ok(FinMonoid { carrier, op, unit })
    }

    pub fn trivial() -> Self {
        FinMonoid::new(FinSet::new(1), Table::from_fn(1, |_, _| 0).unwrap()).unwrap()
    }

    /// `{1, 0}` under meet, with `1` as unit.
    pub fn two_chain() -> Self {
        let carrier = FinSet::with_labels(["1", "0"]).unwrap();
        FinMonoid::new(carrier, Table::from_fn(2, |a, b| a.max(b)).unwrap()).unwrap()
    }

    /// Every monoid table on `0..n` with unit `0`; isomorphic copies included.
    pub fn all_of_order(n: usize) -> Vec<FinMonoid> {
        if n == 0 {
            return Vec::new();
        }
        let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        let mut values = vec![0usize; free.len()];
        loop {
            let table = Table::from_fn(n, |a, b| {
                if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    values[(a - 1) * (n - 1) + (b - 1)]
                }
            })
            .unwrap();
            if let Ok(m) = FinMonoid::new(FinSet::new(n), table) {
                out.push(m);
            }
            // odometer over the non-unit cells
            let mut k = 0;
            loop {
                if k == values.len() {
                    return out;
                }
                values[k] += 1;
                if values[k] < n {
                    break;
                }
                values[k] = 0;
                k += 1;
            }
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }
    pub fn op(&self) -> &Table {
        &self.op
    }
    pub fn unit(&self) -> usize {
        self.unit
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op.get(a, b)
    }
    pub fn size(&self) -> usize {
        self.carrier.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    carrier: FinSet,
    op: Table,
    unit: usize,
    inv: Vec<usize>,
}

impl FinGroup {
    pub fn new(carrier: FinSet, op: Table) -> Result<Self, ExampleError> {
        carrier_matches(&carrier, &op)?;
        let report = check_group(&carrier, &op);
        if !report.passed() {
            return Err(ExampleError::Invalid {
                kind: "group",
                report,
            });
        }
        let unit = op.unit().expect("checked");
        let n = carrier.size();
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| op.get(x, y) == unit).expect("checked"))
            .collect();
        Ok(FinGroup {
            carrier,
            op,
            unit,
            inv,
        })
    }

    pub fn trivial() -> Self {
        FinGroup::cyclic(1)
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        FinGroup::new(
            FinSet::new(n),
            Table::from_fn(n, |a, b| (a + b) % n).unwrap(),
        )
        .unwrap()
    }

    pub fn product(&self, other: &FinGroup) -> FinGroup {
        let k = other.size();
        let labels: Vec<String> = (0..self.size() * k)
            .map(|x| {
                format!(
                    "({},{})",
                    self.carrier.name(x / k),
                    other.carrier.name(x % k)
                )
            })
            .collect();
        let op = Table::from_fn(self.size() * k, |x, y| {
            self.mul(x / k, y / k) * k + other.mul(x % k, y % k)
        })
        .unwrap();
        FinGroup::new(FinSet::with_labels(labels).unwrap(), op).unwrap()
    }

    pub fn klein() -> Self {
        FinGroup::cyclic(2).product(&FinGroup::cyclic(2))
    }

    /// Permutations of three letters, listed in lexicographic order of their
    /// one-line notation, composed as functions (`(στ)(k) = σ(τ(k))`).
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let op = Table::from_fn(6, |s, t| {
            let (s, t) = (perms[s], perms[t]);
            index([s[t[0]], s[t[1]], s[t[2]]])
        })
        .unwrap();
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2]));
        FinGroup::new(FinSet::with_labels(labels).unwrap(), op).unwrap()
    }

    /// One representative of each group of order at most 6, plus the trivial group.
    pub fn up_to_order_six() -> Vec<(String, FinGroup)> {
        let mut out: Vec<(String, FinGroup)> = (1..=6)
            .map(|n| (format!("Z{n}"), FinGroup::cyclic(n)))
            .collect();
        out.push(("Z2xZ2".into(), FinGroup::klein()));
        out.push(("S3".into(), FinGroup::symmetric3()));
        out
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }
    pub fn op(&self) -> &Table {
        &self.op
    }
    pub fn unit(&self) -> usize {
        self.unit
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op.get(a, b)
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// The same group viewed as an inverse semigroup.
    pub fn as_inverse_semigroup(&self) -> FinInverseSemigroup {
        FinInverseSemigroup::new(self.carrier.clone(), self.op.clone(), self.inv.clone())
            .expect("groups are inverse semigroups")
    }

    pub fn as_monoid(&self) -> FinMonoid {
        FinMonoid::new(self.carrier.clone(), self.op.clone()).expect("groups are monoids")
    }
}

pub fn check_inverse_semigroup(carrier: &FinSet, op: &Table, inv: &[usize]) -> Report {
    let mut r = Report::new();
    r.push("associative", op.associativity(carrier));
    let n = op.size();
    let name = |x: usize| carrier.name(x);
    let law = |f: &dyn Fn(usize) -> (usize, usize), what: &str| -> Outcome {
        match (0..n).find(|&x| {
            let (l, r) = f(x);
            l != r
        }) {
            None => Outcome::Pass,
            Some(x) => {
                let (l, r) = f(x);
                Outcome::fail(name(x), format!("{what}: {} versus {}", name(l), name(r)))
            }
        }
    };
    r.push(
        "x_inv_x",
        law(&|x| (op.get(op.get(x, inv[x]), x), x), "x x^-1 x = x"),
    );
    r.push(
        "inv_x_inv",
        law(
            &|x| (op.get(op.get(inv[x], x), inv[x]), inv[x]),
            "x^-1 x x^-1 = x^-1",
        ),
    );
    let idempotents: Vec<usize> = (0..n).filter(|&e| op.get(e, e) == e).collect();
    let mut commute = Outcome::Pass;
    'outer: for &e in &idempotents {
        for &f in &idempotents {
            if op.get(e, f) != op.get(f, e) {
                commute = Outcome::fail(
                    format!("({},{})", name(e), name(f)),
                    format!(
                        "ef = {} but fe = {}",
                        name(op.get(e, f)),
                        name(op.get(f, e))
                    ),
                );
                break 'outer;
            }
        }
    }
    r.push("idempotents_commute", commute);
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinInverseSemigroup {
    carrier: FinSet,
    op: Table,
    inv: Vec<usize>,
}

impl FinInverseSemigroup {
    pub fn new(carrier: FinSet, op: Table, inv: Vec<usize>) -> Result<Self, ExampleError> {
        carrier_matches(&carrier, &op)?;
        if inv.len() != carrier.size() || inv.iter().any(|&x| x >= carrier.size()) {
            return Err(ExampleError::Shape(
                "inverse table does not fit the carrier".into(),
            ));
        }
        let report = check_inverse_semigroup(&carrier, &op, &inv);
        if !report.passed() {
            return Err(ExampleError::Invalid {
                kind: "inverse semigroup",
                report,
            });
        }
        Ok(FinInverseSemigroup { carrier, op, inv })
    }

    /// Finds the inverse of each element as the `y` with `xyx = x`, `yxy = y`.
    pub fn from_op(carrier: FinSet, op: Table) -> Result<Self, ExampleError> {
        carrier_matches(&carrier, &op)?;
        let n = op.size();
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| op.get(op.get(x, y), x) == x && op.get(op.get(y, x), y) == y)
                .ok_or_else(|| {
                    let mut report = Report::new();
                    report.push("x_inv_x", Outcome::fail(carrier.name(x), "has no inverse"));
                    ExampleError::Invalid {
                        kind: "inverse semigroup",
                        report,
                    }
                })?;
            inv.push(y);
        }
        FinInverseSemigroup::new(carrier, op, inv)
    }

    /// A chain of `n` idempotents under `min`.
    pub fn chain(n: usize) -> Self {
        FinInverseSemigroup::from_op(FinSet::new(n), Table::from_fn(n, |a, b| a.min(b)).unwrap())
            .unwrap()
    }

    /// `{e, f}` with `ef = fe = f`, labelled as in a two-element semilattice.
    pub fn two_semilattice() -> Self {
        let carrier = FinSet::with_labels(["e", "f"]).unwrap();
        FinInverseSemigroup::from_op(carrier, Table::from_fn(2, |a, b| a.max(b)).unwrap()).unwrap()
    }

    /// Partial bijections of a two-element set under composition `(στ)(k) = σ(τ(k))`.
    pub fn symmetric_inverse_monoid_2() -> Self {
        // each partial map is (image of 0, image of 1), with 2 meaning undefined
        const NONE: usize = 2;
        let maps: [[usize; 2]; 7] = [
            [NONE, NONE],
            [0, NONE],
            [1, NONE],
            [NONE, 0],
            [NONE, 1],
            [0, 1],
            [1, 0],
        ];
        let index = |p: [usize; 2]| maps.iter().position(|q| *q == p).unwrap();
        let op = Table::from_fn(7, |s, t| {
            let (s, t) = (maps[s], maps[t]);
            let at = |k: usize| if t[k] == NONE { NONE } else { s[t[k]] };
            index([at(0), at(1)])
        })
        .unwrap();
        let show = |v: usize| {
            if v == NONE {
                "-".to_string()
            } else {
                v.to_string()
            }
        };
        let labels = maps
            .iter()
            .map(|p| format!("[{}{}]", show(p[0]), show(p[1])));
        FinInverseSemigroup::from_op(FinSet::with_labels(labels).unwrap(), op).unwrap()
    }

    /// The Brandt semigroup on two points: matrix units `e_ij` and a zero.
    pub fn brandt2() -> Self {
        // 0 is zero; 1 + 2i + j is e_ij
        let op = Table::from_fn(5, |a, b| {
            if a == 0 || b == 0 {
                return 0;
            }
            let (i, j) = ((a - 1) / 2, (a - 1) % 2);
            let (k, l) = ((b - 1) / 2, (b - 1) % 2);
            if j == k {
                1 + 2 * i + l
            } else {
                0
            }
        })
        .unwrap();
        let labels = ["0", "e00", "e01", "e10", "e11"];
        FinInverseSemigroup::from_op(FinSet::with_labels(labels).unwrap(), op).unwrap()
    }

    /// `S` with a fresh zero adjoined.
    pub fn with_zero(&self) -> Self {
        let n = self.size();
        let op = Table::from_fn(
            n + 1,
            |a, b| if a == n || b == n { n } else { self.mul(a, b) },
        )
        .unwrap();
        let mut inv = self.inv.clone();
        inv.push(n);
        let labels = self
            .carrier
            .elements()
            .map(|x| self.carrier.name(x))
            .chain([fresh_label(&self.carrier, "z")]);
        FinInverseSemigroup::new(FinSet::with_labels(labels).unwrap(), op, inv).unwrap()
    }

    /// A curated family of inverse semigroups of order at most 7.
    pub fn catalogue() -> Vec<(String, FinInverseSemigroup)> {
        let mut out = vec![
            (
                "semilattice2".to_string(),
                FinInverseSemigroup::two_semilattice(),
            ),
            ("brandt2".to_string(), FinInverseSemigroup::brandt2()),
            (
                "brandt2_with_unit".to_string(),
                FinInverseSemigroup::brandt2().with_unit(),
            ),
            (
                "sym_inverse_monoid2".to_string(),
                FinInverseSemigroup::symmetric_inverse_monoid_2(),
            ),
            (
                "Z2_with_zero".to_string(),
                FinGroup::cyclic(2).as_inverse_semigroup().with_zero(),
            ),
            (
                "Z3_with_zero".to_string(),
                FinGroup::cyclic(3).as_inverse_semigroup().with_zero(),
            ),
            (
                "S3_with_zero".to_string(),
                FinGroup::symmetric3().as_inverse_semigroup().with_zero(),
            ),
            (
                "Z2_with_two_zeros".to_string(),
                FinGroup::cyclic(2)
                    .as_inverse_semigroup()
                    .with_zero()
                    .with_zero(),
            ),
        ];
        for n in 1..=7 {
            out.push((format!("chain{n}"), FinInverseSemigroup::chain(n)));
        }
        for n in [1, 2, 3, 4, 5, 6] {
            out.push((format!("Z{n}"), FinGroup::cyclic(n).as_inverse_semigroup()));
        }
        out.push((
            "Z2xchain2".to_string(),
            FinGroup::cyclic(2)
                .as_inverse_semigroup()
                .product(&FinInverseSemigroup::chain(2)),
        ));
        out.push((
            "Z3xchain2".to_string(),
            FinGroup::cyclic(3)
                .as_inverse_semigroup()
                .product(&FinInverseSemigroup::chain(2)),
        ));
        out
    }

    /// `S` with a fresh identity adjoined.
    pub fn with_unit(&self) -> Self {
        let n = self.size();
        let op = Table::from_fn(n + 1, |a, b| {
            if a == n {
                b
            } else if b == n {
                a
            } else {
                self.mul(a, b)
            }
        })
        .unwrap();
        let mut inv = self.inv.clone();
        inv.push(n);
        let labels = self
            .carrier
            .elements()
            .map(|x| self.carrier.name(x))
            .chain([fresh_label(&self.carrier, "1")]);
        FinInverseSemigroup::new(FinSet::with_labels(labels).unwrap(), op, inv).unwrap()
    }

    pub fn product(&self, other: &FinInverseSemigroup) -> Self {
        let k = other.size();
        let labels: Vec<String> = (0..self.size() * k)
            .map(|x| {
                format!(
                    "({},{})",
                    self.carrier.name(x / k),
                    other.carrier.name(x % k)
                )
            })
            .collect();
        let op = Table::from_fn(self.size() * k, |x, y| {
            self.mul(x / k, y / k) * k + other.mul(x % k, y % k)
        })
        .unwrap();
        let inv = (0..self.size() * k)
            .map(|x| self.inv(x / k) * k + other.inv(x % k))
            .collect();
        FinInverseSemigroup::new(FinSet::with_labels(labels).unwrap(), op, inv).unwrap()
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }
    pub fn op(&self) -> &Table {
        &self.op
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op.get(a, b)
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }
    pub fn size(&self) -> usize {
        self.carrier.size()
    }
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }
}

pub fn check_action(group: &FinGroup, carrier: &FinSet, xi: &[Vec<usize>]) -> Report {
    let mut r = Report::new();
    let n = carrier.size();
    let unit = match carrier.elements().find(|&x| xi[group.unit()][x] != x) {
        None => Outcome::Pass,
        Some(x) => Outcome::fail(
            carrier.name(x),
            format!(
                "1 acts as {} -> {}",
                carrier.name(x),
                carrier.name(xi[group.unit()][x])
            ),
        ),
    };
    r.push("action_unit", unit);
    let mut compose = Outcome::Pass;
    'outer: for a in 0..group.size() {
        for b in 0..group.size() {
            for x in 0..n {
                let lhs = xi[a][xi[b][x]];
                let rhs = xi[group.mul(a, b)][x];
                if lhs != rhs {
                    compose = Outcome::fail(
                        format!(
                            "({},{},{})",
                            group.carrier().name(a),
                            group.carrier().name(b),
                            carrier.name(x)
                        ),
                        format!(
                            "a(bx) = {} but (ab)x = {}",
                            carrier.name(lhs),
                            carrier.name(rhs)
                        ),
                    );
                    break 'outer;
                }
            }
        }
    }
    r.push("action_compose", compose);
    r
}

/// `ξ: G × X → X`, stored as `xi[g][x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FinGroup,
    carrier: FinSet,
    xi: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(
        group: FinGroup,
        carrier: FinSet,
        xi: Vec<Vec<usize>>,
    ) -> Result<Self, ExampleError> {
        let n = carrier.size();
        if xi.len() != group.size()
            || xi
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&y| y >= n))
        {
            return Err(ExampleError::Shape(format!(
                "action table must be {}x{} with entries below {n}",
                group.size(),
                n
            )));
        }
        let report = check_action(&group, &carrier, &xi);
        if !report.passed() {
            return Err(ExampleError::Invalid {
                kind: "group action",
                report,
            });
        }
        Ok(GroupAction { group, carrier, xi })
    }

    pub fn trivial(group: FinGroup, carrier: FinSet) -> Self {
        let xi = vec![carrier.elements().collect(); group.size()];
        GroupAction::new(group, carrier, xi).unwrap()
    }

    /// `ℤ/2` acting on `0..n` through the involution `swap`.
    pub fn z2(swap: Vec<usize>) -> Result<Self, ExampleError> {
        let n = swap.len();
        GroupAction::new(
            FinGroup::cyclic(2),
            FinSet::new(n),
            vec![(0..n).collect(), swap],
        )
    }

    /// A group acting on itself by left multiplication.
    pub fn regular(group: FinGroup) -> Self {
        let xi = (0..group.size())
            .map(|a| (0..group.size()).map(|x| group.mul(a, x)).collect())
            .collect();
        GroupAction::new(group.clone(), group.carrier().clone(), xi).unwrap()
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }
    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.xi[g][x]
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.xi
    }
}

/// A family of subsets of a base set. Covering the base is not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenCover {
    base: FinSet,
    parts: Vec<Vec<usize>>,
}

impl OpenCover {
    /// Parts are sorted and deduplicated.
    pub fn new(base: FinSet, parts: Vec<Vec<usize>>) -> Result<Self, ExampleError> {
        let mut clean = Vec::with_capacity(parts.len());
        for (i, mut part) in parts.into_iter().enumerate() {
            if let Some(&x) = part.iter().find(|&&x| x >= base.size()) {
                return Err(ExampleError::NotSubset {
                    part: i,
                    element: x,
                });
            }
            part.sort_unstable();
            part.dedup();
            clean.push(part);
        }
        Ok(OpenCover { base, parts: clean })
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }
    pub fn contains(&self, i: usize, x: usize) -> bool {
        self.parts[i].binary_search(&x).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_cayley_table_names_associativity() {
        // ℤ/3 with 1+1 changed from 2 to 0
        let t = Table::new(vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]]).unwrap();
        let err = FinGroup::new(FinSet::new(3), t).unwrap_err();
        let ExampleError::Invalid { report, .. } = err else {
            panic!()
        };
        assert!(!report.get("associative").unwrap().passed());
    }

    #[test]
    fn symmetric3_is_nonabelian() {
        let g = FinGroup::symmetric3();
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn monoids_of_order_two() {
        // with unit 0: x*x is 0 (ℤ/2) or 1 (two-element semilattice)
        assert_eq!(FinMonoid::all_of_order(2).len(), 2);
        assert_eq!(FinMonoid::all_of_order(1).len(), 1);
    }

    #[test]
    fn inverse_semigroup_catalogue_is_small() {
        for (name, s) in FinInverseSemigroup::catalogue() {
            assert!(s.size() <= 7, "{name}");
        }
        assert_eq!(FinInverseSemigroup::symmetric_inverse_monoid_2().size(), 7);
    }

    #[test]
    fn nonregular_semigroup_rejected() {
        // left-zero band: both elements are idempotent and ab = a but ba = b
        let t = Table::from_fn(2, |a, _| a).unwrap();
        assert!(FinInverseSemigroup::from_op(FinSet::new(2), t).is_err());
    }

    #[test]
    fn action_law_checked() {
        assert!(GroupAction::z2(vec![1, 0, 2]).is_ok());
        assert!(GroupAction::z2(vec![1, 2, 0]).is_err());
    }
}
