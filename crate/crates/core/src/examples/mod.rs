//! Example families: algebraic inputs, the links they induce, the groupoids
//! they present, and a desk-scale suite of instances.

pub mod algebra;
pub mod groupoids;
pub mod links;
pub mod suite;

use thiserror::Error;

use crate::finset::FinSetError;
use crate::groupoid::GroupoidError;
use crate::inv2link::LinkError;
use crate::report::Report;

pub use algebra::{FinGroup, FinInverseSemigroup, FinMonoid, GroupAction, OpenCover, Table};
pub use links::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("not a valid {kind}:\n{report}")]
    Invalid { kind: &'static str, report: Report },
    #[error("part {part} contains {element}, which is not in the base")]
    NotSubset { part: usize, element: usize },
    /// A constructed map sends an element outside the set it should land in.
    #[error("{map} sends {element} outside its carrier")]
    LeavesCarrier { map: &'static str, element: String },
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}
