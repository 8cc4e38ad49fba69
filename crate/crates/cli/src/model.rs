//! Conversion between documents and the core structures.

use std::collections::BTreeMap;

use interlink::examples::algebra::{OpenCover, Table};
use interlink::finset::{FinMap, FinSet};
use interlink::groupoid::InternalGroupoid;
use interlink::inv2link::{Inv2Link, RawLink};

use crate::doc::{Binding, DocError, Domain, Kind, MapDecl, SetDecl, StructureDocument};

/// A loaded document, before any law has been checked.
#[derive(Clone, Debug)]
pub enum Structure {
    Link(RawLink),
    Groupoid(Box<InternalGroupoid>),
    Group {
        carrier: FinSet,
        op: Table,
    },
    Monoid {
        carrier: FinSet,
        op: Table,
    },
    InverseSemigroup {
        carrier: FinSet,
        op: Table,
        inv: Vec<usize>,
    },
    Cover(OpenCover),
    Action {
        group: FinSet,
        op: Table,
        carrier: FinSet,
        /// `act[g][x]`.
        act: Vec<Vec<usize>>,
    },
    RelationAction {
        s: FinSet,
        op: Table,
        inv: Vec<usize>,
        x: FinSet,
        b: FinSet,
        g: Vec<usize>,
        act: Vec<Vec<usize>>,
        r: Vec<(usize, usize)>,
    },
    Magma {
        carrier: FinSet,
        op: Table,
        inv: Vec<usize>,
    },
}

fn semantic(name: &str, message: impl Into<String>) -> DocError {
    DocError::Semantic {
        name: name.to_string(),
        message: message.into(),
    }
}

/// Factor names, codomain name, and rows of a map out of a product.
type Binary<'a> = ([&'a str; 2], &'a str, Vec<Vec<usize>>);

struct Loader<'a> {
    doc: &'a StructureDocument,
    sets: BTreeMap<&'a str, FinSet>,
}

impl<'a> Loader<'a> {
    fn new(doc: &'a StructureDocument) -> Result<Self, DocError> {
        let mut sets = BTreeMap::new();
        for (name, decl) in &doc.sets {
            let set = match &decl.labels {
                Some(labels) => FinSet::with_labels(labels.iter().cloned())
                    .map_err(|e| semantic(name, e.to_string()))?,
                None => FinSet::new(decl.size),
            };
            sets.insert(name.as_str(), set);
        }
        Ok(Loader { doc, sets })
    }

    fn name(&self, key: &str) -> Result<&'a str, DocError> {
        match self.doc.structure.get(key) {
            Some(Binding::Name(n)) => Ok(n),
            Some(Binding::Names(_)) => Err(semantic(key, "expected a single name")),
            None => Err(semantic(key, "unbound")),
        }
    }

    fn decl(&self, key: &str) -> Result<(&'a str, &'a MapDecl), DocError> {
        let name = self.name(key)?;
        let decl = self
            .doc
            .maps
            .get(name)
            .ok_or_else(|| semantic(key, format!("no map named {name:?}")))?;
        Ok((name, decl))
    }

    fn set(&self, name: &str) -> FinSet {
        self.sets[name].clone()
    }

    /// A map out of a single set.
    fn map(&self, key: &str) -> Result<(FinMap, &'a str, &'a str), DocError> {
        let (name, decl) = self.decl(key)?;
        let dom = match &decl.dom {
            Domain::Set(s) => s.as_str(),
            Domain::Product(_) => return Err(semantic(name, "expected a map out of a single set")),
        };
        let f = FinMap::new(self.set(dom), self.set(&decl.cod), decl.table.clone())
            .map_err(|e| semantic(name, e.to_string()))?;
        Ok((f, dom, decl.cod.as_str()))
    }

    /// A map `A × B → C`, returned as rows indexed by `A`.
    fn binary(&self, key: &str) -> Result<Binary<'a>, DocError> {
        let (name, decl) = self.decl(key)?;
        let factors: [&str; 2] = match &decl.dom {
            Domain::Product(v) if v.len() == 2 => [&v[0], &v[1]],
            _ => {
                return Err(semantic(
                    name,
                    "expected a map out of a product of two sets",
                ))
            }
        };
        let width = self.sets[factors[1]].size();
        let rows = if width == 0 {
            vec![Vec::new(); self.sets[factors[0]].size()]
        } else {
            decl.table.chunks(width).map(<[usize]>::to_vec).collect()
        };
        Ok((factors, decl.cod.as_str(), rows))
    }

    /// A binary operation on one set.
    fn operation(&self, key: &str) -> Result<(FinSet, &'a str, Table), DocError> {
        let ([a, b], c, rows) = self.binary(key)?;
        let name = self.name(key)?;
        if a != b || b != c {
            return Err(semantic(name, "an operation must map S x S to S"));
        }
        let table = Table::new(rows).map_err(|e| semantic(name, e.to_string()))?;
        Ok((self.set(a), a, table))
    }

    fn endo(&self, key: &str, carrier: &str) -> Result<Vec<usize>, DocError> {
        let (f, dom, cod) = self.map(key)?;
        if dom != carrier || cod != carrier {
            return Err(semantic(
                self.name(key)?,
                format!("expected a map {carrier} -> {carrier}"),
            ));
        }
        Ok(f.table().to_vec())
    }
}

pub fn load(doc: &StructureDocument) -> Result<Structure, DocError> {
    let l = Loader::new(doc)?;
    Ok(match doc.kind {
        Kind::Link => Structure::Link(RawLink::new(
            l.map("theta")?.0,
            l.map("phi")?.0,
            l.map("m")?.0,
        )),
        Kind::Groupoid => {
            let g = InternalGroupoid::new(
                l.map("d")?.0,
                l.map("c")?.0,
                l.map("e")?.0,
                l.map("i")?.0,
                l.map("pi1")?.0,
                l.map("pi2")?.0,
                l.map("m")?.0,
            )
            .map_err(|e| semantic("structure", e.to_string()))?;
            Structure::Groupoid(Box::new(g))
        }
        Kind::Group => {
            let (carrier, _, op) = l.operation("op")?;
            Structure::Group { carrier, op }
        }
        Kind::Monoid => {
            let (carrier, _, op) = l.operation("op")?;
            Structure::Monoid { carrier, op }
        }
        Kind::InverseSemigroup | Kind::Magma => {
            let (carrier, name, op) = l.operation("op")?;
            let inv = l.endo("inv", name)?;
            if doc.kind == Kind::Magma {
                Structure::Magma { carrier, op, inv }
            } else {
                Structure::InverseSemigroup { carrier, op, inv }
            }
        }
        Kind::Cover => {
            let base = l.name("base")?;
            if !l.sets.contains_key(base) {
                return Err(semantic("base", format!("no set named {base:?}")));
            }
            let parts = match &doc.structure["parts"] {
                Binding::Names(v) => v,
                Binding::Name(_) => return Err(semantic("parts", "expected a list of map names")),
            };
            let mut images = Vec::new();
            for part in parts {
                let decl = doc
                    .maps
                    .get(part)
                    .ok_or_else(|| semantic("parts", format!("no map named {part:?}")))?;
                if decl.cod != base {
                    return Err(semantic(part, format!("a part must map into {base:?}")));
                }
                images.push(decl.table.clone());
            }
            Structure::Cover(
                OpenCover::new(l.set(base), images)
                    .map_err(|e| semantic("parts", e.to_string()))?,
            )
        }
        Kind::Action => {
            let (group, gname, op) = l.operation("op")?;
            let act = action_rows(&l, gname)?;
            let carrier = l.set(l.decl("act")?.1.cod.as_str());
            Structure::Action {
                group,
                op,
                carrier,
                act,
            }
        }
        Kind::RelationAction => {
            let (s, sname, op) = l.operation("op")?;
            let inv = l.endo("inv", sname)?;
            let (g, gdom, bname) = l.map("g")?;
            if gdom != sname {
                return Err(semantic(
                    l.name("g")?,
                    format!("expected a map out of {sname:?}"),
                ));
            }
            let act = action_rows(&l, bname)?;
            let xname = l.decl("act")?.1.cod.as_str();
            let (r1, rdom, r1cod) = l.map("r1")?;
            let (r2, rdom2, r2cod) = l.map("r2")?;
            if rdom != rdom2 || r1cod != sname || r2cod != xname {
                return Err(semantic(
                    "r1",
                    "r1 and r2 must share a domain and map into S and X",
                ));
            }
            let r = r1
                .table()
                .iter()
                .copied()
                .zip(r2.table().iter().copied())
                .collect();
            Structure::RelationAction {
                s,
                op,
                inv,
                x: l.set(xname),
                b: l.set(bname),
                g: g.table().to_vec(),
                act,
                r,
            }
        }
    })
}

/// Rows of `act: A × X → X` for the acting set named `acting`.
fn action_rows(l: &Loader, acting: &str) -> Result<Vec<Vec<usize>>, DocError> {
    let name = l.name("act")?;
    let ([a, x], cod, rows) = l.binary("act")?;
    if a != acting || x != cod {
        return Err(semantic(name, format!("expected a map {acting} x X -> X")));
    }
    Ok(rows)
}

/// Builds documents from named sets and maps.
pub struct Builder {
    doc: StructureDocument,
}

impl Builder {
    pub fn new(kind: Kind) -> Self {
        Builder {
            doc: StructureDocument::new(kind),
        }
    }

    pub fn set(mut self, name: &str, set: &FinSet) -> Self {
        let decl = SetDecl {
            size: set.size(),
            labels: set.labels().map(<[String]>::to_vec),
        };
        self.doc.sets.insert(name.to_string(), decl);
        self
    }

    pub fn map(mut self, name: &str, dom: &str, cod: &str, table: Vec<usize>) -> Self {
        let decl = MapDecl {
            dom: Domain::Set(dom.to_string()),
            cod: cod.to_string(),
            table,
        };
        self.doc.maps.insert(name.to_string(), decl);
        self.bind(name, name)
    }

    pub fn operation(mut self, name: &str, carrier: &str, op: &Table) -> Self {
        let decl = MapDecl {
            dom: Domain::Product(vec![carrier.to_string(), carrier.to_string()]),
            cod: carrier.to_string(),
            table: op.rows().concat(),
        };
        self.doc.maps.insert(name.to_string(), decl);
        self.bind(name, name)
    }

    pub fn action(mut self, acting: &str, carrier: &str, rows: &[Vec<usize>]) -> Self {
        let decl = MapDecl {
            dom: Domain::Product(vec![acting.to_string(), carrier.to_string()]),
            cod: carrier.to_string(),
            table: rows.concat(),
        };
        self.doc.maps.insert("act".to_string(), decl);
        self.bind("act", "act")
    }

    pub fn bind(mut self, key: &str, name: &str) -> Self {
        self.doc
            .structure
            .insert(key.to_string(), Binding::Name(name.to_string()));
        self
    }

    pub fn bind_all(mut self, key: &str, names: Vec<String>) -> Self {
        self.doc
            .structure
            .insert(key.to_string(), Binding::Names(names));
        self
    }

    /// A map without a structure binding.
    pub fn aux_map(mut self, name: &str, dom: &str, cod: &str, table: Vec<usize>) -> Self {
        let decl = MapDecl {
            dom: Domain::Set(dom.to_string()),
            cod: cod.to_string(),
            table,
        };
        self.doc.maps.insert(name.to_string(), decl);
        self
    }

    pub fn finish(self) -> StructureDocument {
        self.doc
    }
}

pub fn link_document(raw: &RawLink) -> StructureDocument {
    Builder::new(Kind::Link)
        .set("C1", raw.m.cod())
        .set("C2", raw.m.dom())
        .map("theta", "C2", "C2", raw.theta.table().to_vec())
        .map("phi", "C2", "C2", raw.phi.table().to_vec())
        .map("m", "C2", "C1", raw.m.table().to_vec())
        .finish()
}

pub fn groupoid_document(g: &InternalGroupoid) -> StructureDocument {
    Builder::new(Kind::Groupoid)
        .set("C0", &g.c0)
        .set("C1", &g.c1)
        .set("C2", &g.c2)
        .map("d", "C1", "C0", g.d.table().to_vec())
        .map("c", "C1", "C0", g.c.table().to_vec())
        .map("e", "C0", "C1", g.e.table().to_vec())
        .map("i", "C1", "C1", g.i.table().to_vec())
        .map("pi1", "C2", "C1", g.pi1.table().to_vec())
        .map("pi2", "C2", "C1", g.pi2.table().to_vec())
        .map("m", "C2", "C1", g.m.table().to_vec())
        .finish()
}

pub fn link_of_document(link: &Inv2Link) -> StructureDocument {
    link_document(&link.raw())
}

pub fn operation_document(
    kind: Kind,
    carrier: &FinSet,
    op: &Table,
    inv: Option<&[usize]>,
) -> StructureDocument {
    let mut b = Builder::new(kind)
        .set("S", carrier)
        .operation("op", "S", op);
    if let Some(inv) = inv {
        b = b.map("inv", "S", "S", inv.to_vec());
    }
    b.finish()
}

pub fn cover_document(cover: &OpenCover) -> StructureDocument {
    let mut b = Builder::new(Kind::Cover)
        .set("X", cover.base())
        .bind("base", "X");
    let mut names = Vec::new();
    for (k, part) in cover.parts().iter().enumerate() {
        let (set, map) = (format!("U{k}"), format!("u{k}"));
        b = b
            .set(&set, &FinSet::new(part.len()))
            .aux_map(&map, &set, "X", part.clone());
        names.push(map);
    }
    b.bind_all("parts", names).finish()
}

pub fn action_document(
    group: &FinSet,
    op: &Table,
    carrier: &FinSet,
    act: &[Vec<usize>],
) -> StructureDocument {
    Builder::new(Kind::Action)
        .set("G", group)
        .set("X", carrier)
        .operation("op", "G", op)
        .action("G", "X", act)
        .finish()
}

#[allow(clippy::too_many_arguments)]
pub fn relation_action_document(
    s: &FinSet,
    op: &Table,
    inv: &[usize],
    x: &FinSet,
    b: &FinSet,
    g: &[usize],
    act: &[Vec<usize>],
    r: &[(usize, usize)],
) -> StructureDocument {
    Builder::new(Kind::RelationAction)
        .set("S", s)
        .set("X", x)
        .set("B", b)
        .set("R", &FinSet::new(r.len()))
        .operation("op", "S", op)
        .map("inv", "S", "S", inv.to_vec())
        .map("g", "S", "B", g.to_vec())
        .action("B", "X", act)
        .map("r1", "R", "S", r.iter().map(|p| p.0).collect())
        .map("r2", "R", "X", r.iter().map(|p| p.1).collect())
        .finish()
}
