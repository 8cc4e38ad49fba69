//! Isomorphism search between small many-sorted functional structures.
//!
//! A structure is a list of finite sorts and unary maps between them. An
//! isomorphism is one bijection per sort commuting with every map. The search
//! refines element colours until stable, then backtracks over one designated
//! sort while propagating forced images forward along maps and backward along
//! declared jointly-injective families.

use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug)]
pub(crate) struct Structure {
    pub sorts: Vec<usize>,
    pub maps: Vec<(usize, usize, Vec<usize>)>,
    /// `(sort, maps)`: the tupling of these maps out of `sort` is injective.
    pub keys: Vec<(usize, Vec<usize>)>,
}

impl Structure {
    fn compatible(&self, other: &Structure) -> bool {
        self.sorts == other.sorts
            && self.maps.len() == other.maps.len()
            && self
                .maps
                .iter()
                .zip(&other.maps)
                .all(|(a, b)| a.0 == b.0 && a.1 == b.1)
            && self.keys == other.keys
    }

    fn key_of(&self, key: &[usize], x: usize) -> Vec<usize> {
        key.iter().map(|&f| self.maps[f].2[x]).collect()
    }

    fn key_index(&self, sort: usize, key: &[usize]) -> Option<HashMap<Vec<usize>, usize>> {
        let mut index = HashMap::new();
        for x in 0..self.sorts[sort] {
            if index.insert(self.key_of(key, x), x).is_some() {
                return None;
            }
        }
        Some(index)
    }
}

/// Joint colour refinement over both structures so that colours are comparable.
fn refine(a: &Structure, b: &Structure) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let init = |s: &Structure| -> Vec<Vec<usize>> {
        s.sorts
            .iter()
            .enumerate()
            .map(|(k, &n)| vec![k; n])
            .collect()
    };
    let mut ca = init(a);
    let mut cb = init(b);
    let mut classes = a.sorts.len();
    loop {
        let mut dict: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let sig = |s: &Structure, col: &Vec<Vec<usize>>| -> Vec<Vec<Vec<usize>>> {
            let mut sigs: Vec<Vec<Vec<usize>>> = s
                .sorts
                .iter()
                .enumerate()
                .map(|(k, &n)| (0..n).map(|x| vec![col[k][x]]).collect())
                .collect();
            for (src, dst, table) in &s.maps {
                for x in 0..s.sorts[*src] {
                    sigs[*src][x].push(col[*dst][table[x]]);
                }
                let mut pre: Vec<Vec<usize>> = vec![Vec::new(); s.sorts[*dst]];
                for x in 0..s.sorts[*src] {
                    pre[table[x]].push(col[*src][x]);
                }
                for (y, mut colours) in pre.into_iter().enumerate() {
                    colours.sort_unstable();
                    sigs[*dst][y].push(usize::MAX);
                    sigs[*dst][y].extend(colours);
                }
            }
            sigs
        };
        let sa = sig(a, &ca);
        let sb = sig(b, &cb);
        let mut relabel = |sigs: Vec<Vec<Vec<usize>>>| -> Vec<Vec<usize>> {
            sigs.into_iter()
                .map(|sort| {
                    sort.into_iter()
                        .map(|s| {
                            let next = dict.len();
                            *dict.entry(s).or_insert(next)
                        })
                        .collect()
                })
                .collect()
        };
        ca = relabel(sa);
        cb = relabel(sb);
        if dict.len() == classes {
            return (ca, cb);
        }
        classes = dict.len();
    }
}

struct Search<'s> {
    a: &'s Structure,
    b: &'s Structure,
    ca: Vec<Vec<usize>>,
    cb: Vec<Vec<usize>>,
    fwd: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
    /// For each sort: maps into it, as `(map index, source sort)`.
    incoming: Vec<Vec<(usize, usize)>>,
    /// Per key: index of `b` by image tuple.
    key_lookup: Vec<HashMap<Vec<usize>, usize>>,
    generator: usize,
}

impl<'s> Search<'s> {
    fn assign(&mut self, sort: usize, x: usize, y: usize) -> bool {
        let mut queue = vec![(sort, x, y)];
        while let Some((s, x, y)) = queue.pop() {
            match self.fwd[s][x] {
                Some(prev) if prev == y => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[s][y] || self.ca[s][x] != self.cb[s][y] {
                return false;
            }
            self.fwd[s][x] = Some(y);
            self.used[s][y] = true;
            self.trail.push((s, x));
            for (f, (src, dst, table)) in self.a.maps.iter().enumerate() {
                if *src == s {
                    queue.push((*dst, table[x], self.b.maps[f].2[y]));
                }
            }
            // backward: elements whose key tuple just became fully assigned
            for (k, (ksort, key)) in self.a.keys.iter().enumerate() {
                for &(f, src) in &self.incoming[s] {
                    if src != *ksort || !key.contains(&f) {
                        continue;
                    }
                    let table = &self.a.maps[f].2;
                    for z in (0..self.a.sorts[src]).filter(|&z| table[z] == x) {
                        if self.fwd[src][z].is_some() {
                            continue;
                        }
                        let image: Option<Vec<usize>> = key
                            .iter()
                            .map(|&g| {
                                let (_, gdst, gt) = &self.a.maps[g];
                                self.fwd[*gdst][gt[z]]
                            })
                            .collect();
                        if let Some(image) = image {
                            match self.key_lookup[k].get(&image) {
                                Some(&w) => queue.push((src, z, w)),
                                None => return false,
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (s, x) = self.trail.pop().unwrap();
            let y = self.fwd[s][x].take().unwrap();
            self.used[s][y] = false;
        }
    }

    fn next_unassigned(&self) -> Option<(usize, usize)> {
        let g = self.generator;
        if let Some(x) = (0..self.a.sorts[g])
            .filter(|&x| self.fwd[g][x].is_none())
            .min_by_key(|&x| self.ca[g].iter().filter(|&&c| c == self.ca[g][x]).count())
        {
            return Some((g, x));
        }
        (0..self.a.sorts.len()).find_map(|s| {
            (0..self.a.sorts[s])
                .find(|&x| self.fwd[s][x].is_none())
                .map(|x| (s, x))
        })
    }

    fn solve(&mut self) -> bool {
        let Some((s, x)) = self.next_unassigned() else {
            return true;
        };
        let candidates: Vec<usize> = (0..self.b.sorts[s])
            .filter(|&y| !self.used[s][y] && self.cb[s][y] == self.ca[s][x])
            .collect();
        for y in candidates {
            let mark = self.trail.len();
            if self.assign(s, x, y) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// One bijection per sort, or `None` when the structures are not isomorphic.
/// `generator` is the sort branched on first.
pub(crate) fn find_isomorphism(
    a: &Structure,
    b: &Structure,
    generator: usize,
) -> Option<Vec<Vec<usize>>> {
    if !a.compatible(b) {
        return None;
    }
    let mut key_lookup = Vec::new();
    for (sort, key) in &a.keys {
        let ia = a.key_index(*sort, key);
        let ib = b.key_index(*sort, key);
        match (ia, ib) {
            (Some(_), Some(ib)) => key_lookup.push(ib),
            (None, None) => key_lookup.push(HashMap::new()),
            _ => return None,
        }
    }
    // drop keys that are not injective on either side
    let usable: Vec<bool> = a
        .keys
        .iter()
        .map(|(sort, key)| a.key_index(*sort, key).is_some())
        .collect();
    let a_used = Structure {
        keys: a
            .keys
            .iter()
            .zip(&usable)
            .filter(|(_, u)| **u)
            .map(|(k, _)| k.clone())
            .collect(),
        ..a.clone()
    };
    let key_lookup: Vec<_> = key_lookup
        .into_iter()
        .zip(&usable)
        .filter(|(_, u)| **u)
        .map(|(k, _)| k)
        .collect();

    let (ca, cb) = refine(&a_used, b);
    for s in 0..a.sorts.len() {
        let mut x: Vec<usize> = ca[s].clone();
        let mut y: Vec<usize> = cb[s].clone();
        x.sort_unstable();
        y.sort_unstable();
        if x != y {
            return None;
        }
    }
    let mut incoming = vec![Vec::new(); a.sorts.len()];
    for (f, (src, dst, _)) in a.maps.iter().enumerate() {
        incoming[*dst].push((f, *src));
    }
    let mut search = Search {
        a: &a_used,
        b,
        ca,
        cb,
        fwd: a.sorts.iter().map(|&n| vec![None; n]).collect(),
        used: a.sorts.iter().map(|&n| vec![false; n]).collect(),
        trail: Vec::new(),
        incoming,
        key_lookup,
        generator,
    };
    if !search.solve() {
        return None;
    }
    let result: Vec<Vec<usize>> = search
        .fwd
        .iter()
        .map(|sort| sort.iter().map(|y| y.unwrap()).collect())
        .collect();
    // final check: every map commutes
    for (f, (src, dst, table)) in a.maps.iter().enumerate() {
        for x in 0..a.sorts[*src] {
            if result[*dst][table[x]] != b.maps[f].2[result[*src][x]] {
                return None;
            }
        }
    }
    Some(result)
}
