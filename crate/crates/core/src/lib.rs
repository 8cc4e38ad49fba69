//! Internal groupoids and involutive-2-links in the category of finite sets.
//!
//! Finite sets are index ranges and maps are lookup tables, so every limit,
//! colimit and universal property here is decided by direct computation.

pub mod bridge;
pub mod examples;
pub mod finset;
pub mod groupoid;
pub mod inv2link;
mod iso;
pub mod report;

pub use bridge::{classify, contractibility_check, to_groupoid, to_link, ClassificationReport};
pub use finset::{compose, FinMap, FinSet};
pub use groupoid::{validate_groupoid, InternalGroupoid};
pub use inv2link::{dihedral_order, validate_link, Inv2Link, RawLink};
