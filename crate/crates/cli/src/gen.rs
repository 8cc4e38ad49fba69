//! Generators for every example family.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Subcommand};
use interlink::examples::algebra::{FinGroup, FinInverseSemigroup, FinMonoid, OpenCover, Table};
use interlink::examples::links::{
    codiscrete, discrete, from_equivalence_relation, from_group_monoid_hom, minimal_non_groupoid,
};
use interlink::finset::FinSet;

use crate::doc::{Kind, StructureDocument};
use crate::model;
use crate::{read_input, CliError};

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Identity arrows only
    Discrete {
        #[arg(long)]
        size: usize,
    },
    /// One arrow between any two points
    Codiscrete {
        #[arg(long)]
        size: usize,
    },
    /// The equivalence relation with the given blocks; unlisted points are singletons
    Equivalence {
        #[arg(long)]
        size: usize,
        /// Comma-separated points of one block (repeatable)
        #[arg(long = "block")]
        blocks: Vec<String>,
    },
    /// A family of subsets of a base set
    Cech {
        #[arg(long)]
        size: usize,
        /// Comma-separated points of one part (repeatable)
        #[arg(long = "part")]
        parts: Vec<String>,
    },
    /// A group given by a Cayley table, a cyclic order, or a name
    Group(GroupArgs),
    /// A monoid given by a Cayley table or a name
    Monoid(MonoidArgs),
    /// An inverse semigroup from the catalogue or a Cayley table
    InverseSemigroup {
        #[arg(long, conflicts_with = "cayley", required_unless_present = "cayley")]
        named: Option<String>,
        #[arg(long)]
        cayley: Option<PathBuf>,
    },
    /// The cyclic group of order n acting through powers of a permutation
    Action {
        #[arg(long)]
        cyclic: usize,
        #[arg(long, value_delimiter = ',')]
        generator: Vec<usize>,
    },
    /// A cyclic group mapped into a monoid, acting on it by left multiplication
    Hom {
        #[arg(long)]
        cyclic: usize,
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Image of each group element
        #[arg(long, value_delimiter = ',')]
        images: Vec<usize>,
    },
    /// A relation-restricted action: a named inverse semigroup over a point,
    /// or a cyclic group acting through a permutation
    RelationAction {
        #[arg(long, conflicts_with_all = ["cyclic", "generator"], required_unless_present = "cyclic")]
        over_point: Option<String>,
        #[arg(long, requires = "generator")]
        cyclic: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        generator: Vec<usize>,
    },
    /// A magma with an involution
    Magma {
        #[arg(long)]
        cayley: PathBuf,
        #[arg(long, value_delimiter = ',')]
        inv: Vec<usize>,
    },
    /// The smallest link that does not come from a groupoid
    MinimalNonGroupoid,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("group_source").required(true).args(["cayley", "cyclic", "named"])))]
pub struct GroupArgs {
    #[arg(long)]
    cayley: Option<PathBuf>,
    #[arg(long)]
    cyclic: Option<usize>,
    /// Z1..Z6, Z2xZ2, or S3
    #[arg(long)]
    named: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("monoid_source").required(true).args(["monoid_cayley", "monoid_named"])))]
pub struct MonoidArgs {
    #[arg(long = "monoid-cayley")]
    monoid_cayley: Option<PathBuf>,
    /// trivial or two-chain
    #[arg(long = "monoid-named")]
    monoid_named: Option<String>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Whitespace-separated rows of indices; `#` starts a comment.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .filter(|line| !line.trim().is_empty())
        .enumerate()
        .map(|(k, line)| {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse()
                        .map_err(|_| bad(format!("row {k}: {tok:?} is not an index")))
                })
                .collect()
        })
        .collect()
}

fn read_table(path: &Path) -> Result<Table, CliError> {
    let rows = parse_rows(&read_input(path)?)?;
    Table::new(rows).map_err(|e| bad(e.to_string()))
}

fn parse_points(list: &str, size: usize) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(x) if x < size => Ok(x),
            _ => Err(bad(format!("{t:?} is not a point of a set of size {size}"))),
        })
        .collect()
}

fn named_group(name: &str) -> Result<FinGroup, CliError> {
    FinGroup::up_to_order_six()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, g)| g)
        .ok_or_else(|| bad(format!("unknown group {name:?}")))
}

fn named_inverse_semigroup(name: &str) -> Result<FinInverseSemigroup, CliError> {
    FinInverseSemigroup::catalogue()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| bad(format!("unknown inverse semigroup {name:?}")))
}

fn monoid(args: &MonoidArgs) -> Result<(FinSet, Table), CliError> {
    if let Some(path) = &args.monoid_cayley {
        let op = read_table(path)?;
        return Ok((FinSet::new(op.size()), op));
    }
    let m = match args.monoid_named.as_deref() {
        Some("trivial") => FinMonoid::trivial(),
        Some("two-chain") => FinMonoid::two_chain(),
        other => return Err(bad(format!("unknown monoid {other:?}"))),
    };
    Ok((m.carrier().clone(), m.op().clone()))
}

/// Powers of a permutation, one row per group element.
fn powers(n: usize, p: &[usize]) -> Result<Vec<Vec<usize>>, CliError> {
    if p.iter().any(|&v| v >= p.len()) {
        return Err(bad("the generator must map the carrier into itself"));
    }
    let mut rows = vec![(0..p.len()).collect::<Vec<_>>()];
    for k in 1..n {
        let prev = &rows[k - 1];
        rows.push(prev.iter().map(|&x| p[x]).collect());
    }
    Ok(rows)
}

pub fn generate(family: &Family) -> Result<StructureDocument, CliError> {
    Ok(match family {
        Family::Discrete { size } => model::link_of_document(&discrete(&FinSet::new(*size))),
        Family::Codiscrete { size } => model::link_of_document(&codiscrete(&FinSet::new(*size))),
        Family::Equivalence { size, blocks } => {
            let mut block_of: Vec<usize> = (0..*size).collect();
            for block in blocks {
                let pts = parse_points(block, *size)?;
                if let Some(&first) = pts.first() {
                    for &p in &pts {
                        block_of[p] = block_of[first];
                    }
                }
            }
            let pairs: Vec<(usize, usize)> = (0..*size)
                .flat_map(|a| (0..*size).map(move |b| (a, b)))
                .filter(|&(a, b)| block_of[a] == block_of[b])
                .collect();
            let link = from_equivalence_relation(&FinSet::new(*size), &pairs)
                .map_err(|e| bad(e.to_string()))?;
            model::link_of_document(&link)
        }
        Family::Cech { size, parts } => {
            let parts = parts
                .iter()
                .map(|p| parse_points(p, *size))
                .collect::<Result<Vec<_>, _>>()?;
            let cover =
                OpenCover::new(FinSet::new(*size), parts).map_err(|e| bad(e.to_string()))?;
            model::cover_document(&cover)
        }
        Family::Group(args) => {
            let (carrier, op) = if let Some(path) = &args.cayley {
                let op = read_table(path)?;
                (FinSet::new(op.size()), op)
            } else {
                let g = match (&args.cyclic, &args.named) {
                    (Some(n), _) if *n > 0 => FinGroup::cyclic(*n),
                    (Some(_), _) => return Err(bad("a cyclic group needs positive order")),
                    (None, Some(name)) => named_group(name)?,
                    (None, None) => unreachable!("clap requires a source"),
                };
                (g.carrier().clone(), g.op().clone())
            };
            model::operation_document(Kind::Group, &carrier, &op, None)
        }
        Family::Monoid(args) => {
            let (carrier, op) = monoid(args)?;
            model::operation_document(Kind::Monoid, &carrier, &op, None)
        }
        Family::InverseSemigroup { named, cayley } => {
            let s = match (named, cayley) {
                (Some(name), _) => named_inverse_semigroup(name)?,
                (None, Some(path)) => {
                    let op = read_table(path)?;
                    FinInverseSemigroup::from_op(FinSet::new(op.size()), op)
                        .map_err(|e| CliError::Failed(e.to_string()))?
                }
                (None, None) => unreachable!("clap requires a source"),
            };
            model::operation_document(
                Kind::InverseSemigroup,
                s.carrier(),
                s.op(),
                Some(s.inverses()),
            )
        }
        Family::Action { cyclic, generator } => {
            if *cyclic == 0 {
                return Err(bad("a cyclic group needs positive order"));
            }
            let g = FinGroup::cyclic(*cyclic);
            model::action_document(
                g.carrier(),
                g.op(),
                &FinSet::new(generator.len()),
                &powers(*cyclic, generator)?,
            )
        }
        Family::Hom {
            cyclic,
            monoid: margs,
            images,
        } => {
            let g = FinGroup::cyclic((*cyclic).max(1));
            let (carrier, op) = monoid(margs)?;
            let m = FinMonoid::new(carrier, op).map_err(|e| CliError::Failed(e.to_string()))?;
            let link = from_group_monoid_hom(&g, &m, images)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            model::link_of_document(&link)
        }
        Family::RelationAction {
            over_point,
            cyclic,
            generator,
        } => {
            if let Some(name) = over_point {
                let s = named_inverse_semigroup(name)?;
                let point = FinSet::new(1);
                let r: Vec<(usize, usize)> = (0..s.size()).map(|a| (a, 0)).collect();
                model::relation_action_document(
                    s.carrier(),
                    s.op(),
                    s.inverses(),
                    &point,
                    &point,
                    &vec![0; s.size()],
                    &[vec![0]],
                    &r,
                )
            } else {
                let n = cyclic.unwrap_or(0);
                if n == 0 {
                    return Err(bad("a cyclic group needs positive order"));
                }
                let s = FinGroup::cyclic(n).as_inverse_semigroup();
                let x = FinSet::new(generator.len());
                let id: Vec<usize> = (0..n).collect();
                let r: Vec<(usize, usize)> = (0..n)
                    .flat_map(|a| (0..x.size()).map(move |p| (a, p)))
                    .collect();
                model::relation_action_document(
                    s.carrier(),
                    s.op(),
                    s.inverses(),
                    &x,
                    s.carrier(),
                    &id,
                    &powers(n, generator)?,
                    &r,
                )
            }
        }
        Family::Magma { cayley, inv } => {
            let op = read_table(cayley)?;
            model::operation_document(Kind::Magma, &FinSet::new(op.size()), &op, Some(inv))
        }
        Family::MinimalNonGroupoid => model::link_of_document(&minimal_non_groupoid()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::parse;
    use clap::Parser;

    #[derive(Parser)]
    struct Harness {
        #[command(subcommand)]
        family: Family,
    }

    fn family(args: &[&str]) -> Family {
        Harness::try_parse_from(std::iter::once("gen").chain(args.iter().copied()))
            .unwrap()
            .family
    }

    #[test]
    fn every_generator_output_reparses_to_an_equal_document() {
        let cases: &[&[&str]] = &[
            &["discrete", "--size", "0"],
            &["discrete", "--size", "3"],
            &["codiscrete", "--size", "3"],
            &[
                "equivalence",
                "--size",
                "4",
                "--block",
                "0,2",
                "--block",
                "1,3",
            ],
            &["cech", "--size", "4", "--part", "0,1", "--part", "1,2,3"],
            &["group", "--cyclic", "4"],
            &["group", "--named", "S3"],
            &["monoid", "--monoid-named", "two-chain"],
            &["inverse-semigroup", "--named", "brandt2"],
            &["action", "--cyclic", "2", "--generator", "1,0,2"],
            &[
                "hom",
                "--cyclic",
                "2",
                "--monoid-named",
                "trivial",
                "--images",
                "0,0",
            ],
            &["relation-action", "--over-point", "semilattice2"],
            &["relation-action", "--cyclic", "3", "--generator", "1,2,0"],
            &["minimal-non-groupoid"],
        ];
        for args in cases {
            let doc = generate(&family(args)).unwrap();
            let text = doc.serialize();
            assert_eq!(parse(&text).unwrap(), doc, "{args:?}");
            crate::model::load(&doc).unwrap();
        }
    }

    #[test]
    fn blocks_generate_the_partition() {
        let doc = generate(&family(&["equivalence", "--size", "3", "--block", "0,1"])).unwrap();
        // 2 x 2 + 1 arrows
        assert_eq!(doc.sets["C1"].size, 5);
    }

    #[test]
    fn points_outside_the_base_are_rejected() {
        assert!(generate(&family(&["cech", "--size", "2", "--part", "0,2"])).is_err());
    }

    #[test]
    fn rows_skip_comments_and_blank_lines() {
        assert_eq!(
            parse_rows("# t\n0 1\n\n1 0 # x\n").unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert!(parse_rows("0 a").is_err());
    }
}
