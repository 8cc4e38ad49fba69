mod doc;
mod gen;
mod model;
mod ops;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use interlink::bridge::{classify, induce_functor_images, to_groupoid, to_link, BridgeError};
use interlink::finset::FinMap;
use interlink::inv2link::{induce_fbar, Inv2Link};
use thiserror::Error;

use crate::doc::{DocError, StructureDocument};
use crate::model::Structure;
use crate::ops::Unusable;

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 66;

#[derive(Debug, Parser)]
#[command(
    name = "interlink",
    version,
    about = "Validate, classify, convert and generate links and groupoids"
)]
struct Cli {
    /// Suppress reports; exit codes are unchanged
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Link,
    Groupoid,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the laws of a document
    Validate { file: PathBuf },
    /// Decide whether the link a document presents comes from a groupoid
    Classify { file: PathBuf },
    /// Rewrite a document as a link or as a groupoid
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a document for an example family
    Gen {
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
        #[command(subcommand)]
        family: gen::Family,
    },
    /// Lift a map of arrows to a link morphism or a functor
    Morphism {
        src: PathBuf,
        dst: PathBuf,
        /// Whitespace-separated image of each arrow of the source
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Doc(#[from] DocError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Doc(_) | CliError::Input(_) => EXIT_INVALID,
            CliError::Failed(_) => EXIT_FAIL,
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn load(path: &Path) -> Result<Structure, CliError> {
    let doc = doc::parse(&read_input(path)?)?;
    Ok(model::load(&doc)?)
}

struct Ctx {
    quiet: bool,
}

impl Ctx {
    fn report(&self, text: impl std::fmt::Display) {
        if !self.quiet {
            print!("{text}");
        }
    }
}

fn link_or_exit(ctx: &Ctx, s: &Structure) -> Result<Inv2Link, u8> {
    ops::link_of(s).map_err(|u| {
        match &u {
            Unusable::Invalid(_) => ctx.report(&u),
            Unusable::Other(msg) => eprintln!("interlink: {msg}"),
        }
        EXIT_INVALID
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let ctx = Ctx { quiet: cli.quiet };
    match cli.command {
        Command::Validate { file } => {
            let s = load(&file)?;
            let report = ops::validate(&s).map_err(CliError::Input)?;
            ctx.report(&report);
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
        Command::Classify { file } => {
            let s = load(&file)?;
            let link = match link_or_exit(&ctx, &s) {
                Ok(l) => l,
                Err(code) => return Ok(code),
            };
            let cls = classify(&link);
            ctx.report(&cls);
            Ok(if cls.is_groupoid() { 0 } else { EXIT_FAIL })
        }
        Command::Convert { to, file, output } => {
            let s = load(&file)?;
            let out: StructureDocument = match (to, &s) {
                (Target::Link, Structure::Groupoid(g)) => match to_link(g) {
                    Ok(l) => model::link_of_document(&l),
                    Err(BridgeError::InvalidGroupoid(r)) => {
                        ctx.report(&r);
                        return Ok(EXIT_FAIL);
                    }
                    Err(e) => return Err(CliError::Failed(e.to_string())),
                },
                (Target::Groupoid, Structure::Groupoid(g)) => model::groupoid_document(g),
                (target, _) => {
                    let link = match link_or_exit(&ctx, &s) {
                        Ok(l) => l,
                        Err(code) => return Ok(code),
                    };
                    match target {
                        Target::Link => model::link_of_document(&link),
                        Target::Groupoid => match to_groupoid(&link) {
                            Ok(g) => model::groupoid_document(&g),
                            Err(BridgeError::NotGroupoid(cls)) => {
                                ctx.report(&cls);
                                return Ok(EXIT_FAIL);
                            }
                            Err(BridgeError::Inconsistent(r)) => {
                                ctx.report(&r);
                                return Ok(EXIT_FAIL);
                            }
                            Err(e) => return Err(CliError::Failed(e.to_string())),
                        },
                    }
                }
            };
            write_output(output.as_deref(), &out.serialize())?;
            Ok(0)
        }
        Command::Gen { output, family } => {
            let out = gen::generate(&family)?;
            write_output(output.as_deref(), &out.serialize())?;
            Ok(0)
        }
        Command::Morphism { src, dst, map } => {
            let (s, t) = (load(&src)?, load(&dst)?);
            let table: Vec<usize> = gen::parse_rows(&read_input(&map)?)?.concat();
            if let (Structure::Groupoid(g), Structure::Groupoid(h)) = (&s, &t) {
                let f1 = FinMap::new(g.c1.clone(), h.c1.clone(), table)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                return match induce_functor_images(g, h, &f1) {
                    Ok(Some(f)) => {
                        ctx.report(format!(
                            "f0 {:?}\nf1 {:?}\n",
                            f.f0().table(),
                            f.f1().table()
                        ));
                        Ok(0)
                    }
                    Ok(None) => {
                        ctx.report("no functor: the map is not a link morphism\n");
                        Ok(EXIT_FAIL)
                    }
                    Err(BridgeError::InvalidGroupoid(r)) => {
                        ctx.report(&r);
                        Ok(EXIT_INVALID)
                    }
                    Err(e) => Err(CliError::Failed(e.to_string())),
                };
            }
            let (ls, lt) = match (link_or_exit(&ctx, &s), link_or_exit(&ctx, &t)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(code), _) | (_, Err(code)) => return Ok(code),
            };
            let f = FinMap::new(ls.c1().clone(), lt.c1().clone(), table)
                .map_err(|e| CliError::Input(e.to_string()))?;
            match induce_fbar(&ls, &lt, &f).map_err(|e| CliError::Input(e.to_string()))? {
                Ok(fbar) => {
                    ctx.report(format!("f {:?}\nfbar {:?}\n", f.table(), fbar.table()));
                    Ok(0)
                }
                Err(failure) => {
                    let w = failure.witness(&ls, &lt);
                    ctx.report(format!("no morphism at {}: {}\n", w.element, w.detail));
                    Ok(EXIT_FAIL)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("interlink: {e}");
            ExitCode::from(e.code())
        }
    }
}
