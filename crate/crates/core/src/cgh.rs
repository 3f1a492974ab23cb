//! Convex geometric hypergraphs: sets of triples on `n` cyclically ordered
//! vertices, plus their JSON file format.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triple::Triple;

/// A duplicate-free family of triples on `{0, .., n-1}`, kept in rank order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cgh {
    n: usize,
    triples: Vec<Triple>,
}

#[derive(Serialize, Deserialize)]
struct CghFile {
    n: usize,
    triples: Vec<Triple>,
}

impl Cgh {
    /// Builds a family, rejecting duplicates and out-of-range triples.
    pub fn new(n: usize, triples: Vec<Triple>) -> Result<Self> {
        if n < 3 {
            return Err(Error::GroundSetTooSmall { n, min: 3 });
        }
        let mut seen = BTreeSet::new();
        for t in &triples {
            t.validate(n)?;
            if !seen.insert(*t) {
                return Err(Error::DuplicateTriple(*t));
            }
        }
        Ok(Cgh {
            n,
            triples: seen.into_iter().collect(),
        })
    }

    /// Builds a family from any iterator, silently merging duplicates.
    pub fn collect(n: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        if n < 3 {
            return Err(Error::GroundSetTooSmall { n, min: 3 });
        }
        let set: BTreeSet<Triple> = triples.into_iter().collect();
        for t in &set {
            t.validate(n)?;
        }
        Ok(Cgh {
            n,
            triples: set.into_iter().collect(),
        })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, triples: Vec<Triple>) -> Self {
        debug_assert!(triples.windows(2).all(|w| w[0] < w[1]));
        Cgh { n, triples }
    }

    /// The complete family of all `C(n,3)` triples.
    pub fn complete(n: usize) -> Result<Self> {
        Cgh::collect(n, Triple::all(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.triples.iter().map(Triple::rank).collect()
    }

    /// All pairs `{u, v}` (as `(u, v)` with `u < v`) covered by some triple.
    pub fn shadow(&self) -> BTreeSet<(usize, usize)> {
        self.triples
            .iter()
            .flat_map(|t| [(t.a(), t.b()), (t.a(), t.c()), (t.b(), t.c())])
            .collect()
    }

    /// Link graph of `v`: pairs completing `v` to a triple of the family.
    pub fn link(&self, v: usize) -> Result<BTreeSet<(usize, usize)>> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                n: self.n,
                vertex: v,
            });
        }
        Ok(self
            .triples
            .iter()
            .filter(|t| t.contains(v))
            .map(|t| {
                let rest: Vec<usize> = t.vertices().into_iter().filter(|&u| u != v).collect();
                (rest[0], rest[1])
            })
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CghFile {
            n: self.n,
            triples: self.triples.clone(),
        })
        .expect("triples always serialize")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "triples": self.triples.iter().map(|t| t.vertices()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: CghFile = serde_json::from_str(s)?;
        Cgh::new(file.n, file.triples)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Cgh::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Cgh {
    type Item = &'a Triple;
    type IntoIter = std::slice::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}
