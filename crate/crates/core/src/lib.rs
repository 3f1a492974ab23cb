//! Exact computations on pairs of triangles spanned by points in convex
//! position: configuration classification, extremal constructions, exact
//! extremal numbers by independent-set search, and tournament bounds.

pub mod acceptance;
pub mod cgh;
pub mod config;
pub mod constructions;
pub mod error;
pub mod formula;
pub mod geometry;
pub mod search;
pub mod symmetry;
pub mod tournament;
pub mod triple;

pub use cgh::Cgh;
pub use config::{
    classify_pair, count_copies, first_violation, is_free, ConfigSet, ConfigType, CopyCensus,
    Violation,
};
pub use error::{Error, Result};
pub use symmetry::{canonical_form, Symmetry};
pub use triple::{binomial, CentroidPosition, Triple};
