//! Extremal numbers as independence numbers of conflict graphs.
//!
//! Vertices of the conflict graph are the colex ranks of all triples of
//! `Ω_n`; two triples are adjacent when they realize a forbidden
//! configuration, so `F`-free families are exactly the independent sets.

mod bits;
mod brute;
mod graph;
mod mis;

use std::collections::BTreeSet;
use std::time::Duration;

pub use brute::{brute_force_mis, BRUTE_FORCE_LIMIT};
pub use graph::Graph;
pub use mis::{
    independent_sets_of_size, max_independent_set, MisResult, SearchOptions, Status,
    DEFAULT_BUDGET, MAX_VERTICES,
};

use crate::cgh::Cgh;
use crate::config::{classify_pair, first_violation, ConfigSet};
use crate::error::{Error, Result};
use crate::symmetry::canonical_form;
use crate::triple::Triple;

#[derive(Debug, Clone)]
pub struct ConflictGraph {
    n: usize,
    forbidden: ConfigSet,
    triples: Vec<Triple>,
    graph: Graph,
}

impl ConflictGraph {
    pub fn build(n: usize, forbidden: ConfigSet) -> Result<Self> {
        if n < 4 {
            return Err(Error::GroundSetTooSmall { n, min: 4 });
        }
        if forbidden.is_empty() {
            return Err(Error::InvalidParameter("forbidden set is empty".into()));
        }
        let triples: Vec<Triple> = Triple::all(n).collect();
        let mut graph = Graph::new(triples.len());
        for (i, s) in triples.iter().enumerate() {
            for (j, t) in triples.iter().enumerate().skip(i + 1) {
                if forbidden.contains(classify_pair(n, s, t)?) {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(ConflictGraph {
            n,
            forbidden,
            triples,
            graph,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forbidden(&self) -> ConfigSet {
        self.forbidden
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.triples.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.graph.degrees()
    }

    /// The family whose triples have the given ranks.
    pub fn family(&self, ranks: &[usize]) -> Cgh {
        let mut triples: Vec<Triple> = ranks.iter().map(|&r| self.triples[r]).collect();
        triples.sort_unstable();
        Cgh::from_sorted_unchecked(self.n, triples)
    }

    pub fn solve(&self, opts: &SearchOptions) -> Result<SearchResult> {
        let r = max_independent_set(&self.graph, opts)?;
        let witness = self.family(&r.vertices);
        if first_violation(&witness, self.forbidden).is_some() {
            return Err(Error::WitnessNotFree(self.forbidden.to_vec()));
        }
        Ok(SearchResult {
            n: self.n,
            forbidden: self.forbidden,
            best_size: r.size,
            witness,
            status: r.status,
            nodes: r.nodes,
            elapsed: r.elapsed,
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: usize,
    pub forbidden: ConfigSet,
    pub best_size: usize,
    pub witness: Cgh,
    pub status: Status,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "forbidden": self.forbidden.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "ex": self.best_size,
            "status": self.status,
            "witness": self.witness.to_json_value(),
            "nodes": self.nodes,
            "ms": self.elapsed.as_millis() as u64,
        })
    }
}

/// `ex(n, F)` with a re-validated witness.
pub fn ex_number(n: usize, forbidden: ConfigSet, opts: &SearchOptions) -> Result<SearchResult> {
    ConflictGraph::build(n, forbidden)?.solve(opts)
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub size: usize,
    pub families: Vec<Cgh>,
    pub truncated: bool,
    pub status: Status,
}

/// All maximum `F`-free families (or one representative per dihedral orbit
/// when `up_to_symmetry`), at most `cap` of them.
pub fn enumerate_extremal(
    n: usize,
    forbidden: ConfigSet,
    cap: usize,
    up_to_symmetry: bool,
    opts: &SearchOptions,
) -> Result<Enumeration> {
    let cg = ConflictGraph::build(n, forbidden)?;
    let best = cg.solve(opts)?;
    if !best.is_optimal() {
        return Ok(Enumeration {
            size: best.best_size,
            families: vec![best.witness],
            truncated: true,
            status: best.status,
        });
    }
    if up_to_symmetry {
        // Orbits are collected from the full listing, so the cap applies
        // to distinct canonical forms.
        let (sets, _) = independent_sets_of_size(cg.graph(), best.best_size, usize::MAX)?;
        let forms: BTreeSet<Vec<Triple>> = sets
            .iter()
            .map(|s| canonical_form(&cg.family(s)).triples().to_vec())
            .collect();
        let truncated = forms.len() > cap;
        let families = forms
            .into_iter()
            .take(cap)
            .map(|t| Cgh::from_sorted_unchecked(n, t))
            .collect();
        Ok(Enumeration {
            size: best.best_size,
            families,
            truncated,
            status: Status::Optimal,
        })
    } else {
        let (sets, truncated) = independent_sets_of_size(cg.graph(), best.best_size, cap)?;
        Ok(Enumeration {
            size: best.best_size,
            families: sets.iter().map(|s| cg.family(s)).collect(),
            truncated,
            status: Status::Optimal,
        })
    }
}
