use thiserror::Error;

use crate::config::ConfigType;
use crate::triple::Triple;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must have at least {min} vertices, got {n}")]
    GroundSetTooSmall { n: usize, min: usize },

    #[error("invalid triple {vertices:?} for n = {n}")]
    InvalidTriple { n: usize, vertices: [usize; 3] },

    #[error("duplicate triple {0}")]
    DuplicateTriple(Triple),

    #[error("cannot classify a triple against itself: {0}")]
    IdenticalTriples(Triple),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { n: usize, vertex: usize },

    #[error("{what} requires {parity} n, got n = {n}")]
    Parity {
        what: &'static str,
        parity: &'static str,
        n: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown configuration type {0:?}")]
    UnknownConfig(String),

    #[error("unknown family id {0:?}")]
    UnknownFamily(String),

    #[error("not a triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("not an S(n,7,2) design: {0}")]
    InvalidDesign(String),

    #[error("D1 violation between {0} and {1}")]
    D1Violation(Triple, Triple),

    #[error("out-degree sum {sum} does not equal C({n},2) = {expected}")]
    DegreeSum {
        n: usize,
        sum: usize,
        expected: usize,
    },

    #[error("tournament on {n} vertices is missing arc between {u} and {v}")]
    IncompleteTournament { n: usize, u: usize, v: usize },

    #[error("invalid tournament: {0}")]
    InvalidTournament(String),

    #[error("coordinate {0} exceeds the exact-arithmetic bound 2^31")]
    CoordinateOverflow(i64),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("crossing count {crossings} does not match any {family} configuration")]
    UnexpectedCrossings {
        crossings: usize,
        family: &'static str,
    },

    #[error("graph with {vertices} vertices exceeds the limit of {limit}")]
    GraphTooLarge { vertices: usize, limit: usize },

    #[error("witness is not {0:?}-free")]
    WitnessNotFree(Vec<ConfigType>),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
