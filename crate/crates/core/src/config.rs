//! The eight configurations of two triangles in convex position and the
//! combinatorial classifier that decides them from cyclic order alone.
//!
//! Vertex-disjoint pairs are decided by the number of maximal cyclic blocks
//! in the six-letter interleaving word (2, 4, 6 for M1, M2, M3). Pairs with a
//! single common vertex `v` are decided by the number of blocks of the four
//! remaining vertices read clockwise from `v` (2, 3, 4 for S1, S2, S3). Pairs
//! with a common side are D1 when the third vertices lie on different sides
//! of that chord and D2 otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cgh::Cgh;
use crate::error::{Error, Result};
use crate::triple::Triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigType {
    M1,
    M2,
    M3,
    S1,
    S2,
    S3,
    D1,
    D2,
}

impl ConfigType {
    pub const ALL: [ConfigType; 8] = [
        ConfigType::M1,
        ConfigType::M2,
        ConfigType::M3,
        ConfigType::S1,
        ConfigType::S2,
        ConfigType::S3,
        ConfigType::D1,
        ConfigType::D2,
    ];

    /// Number of common vertices of the two triangles.
    pub fn shared_vertices(self) -> usize {
        match self {
            ConfigType::M1 | ConfigType::M2 | ConfigType::M3 => 0,
            ConfigType::S1 | ConfigType::S2 | ConfigType::S3 => 1,
            ConfigType::D1 | ConfigType::D2 => 2,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ConfigType::M1 => "M1",
            ConfigType::M2 => "M2",
            ConfigType::M3 => "M3",
            ConfigType::S1 => "S1",
            ConfigType::S2 => "S2",
            ConfigType::S3 => "S3",
            ConfigType::D1 => "D1",
            ConfigType::D2 => "D2",
        }
    }
}

impl fmt::Display for ConfigType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConfigType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        ConfigType::ALL
            .into_iter()
            .find(|c| c.name() == upper)
            .ok_or_else(|| Error::UnknownConfig(s.to_string()))
    }
}

/// A set of configuration types, stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ConfigSet(u8);

impl ConfigSet {
    pub const EMPTY: ConfigSet = ConfigSet(0);

    pub fn of(types: &[ConfigType]) -> Self {
        types.iter().copied().collect()
    }

    pub fn single(c: ConfigType) -> Self {
        ConfigSet(1 << c.index())
    }

    pub fn contains(&self, c: ConfigType) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn insert(&mut self, c: ConfigType) {
        self.0 |= 1 << c.index();
    }

    pub fn union(&self, other: &ConfigSet) -> ConfigSet {
        ConfigSet(self.0 | other.0)
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = ConfigType> + '_ {
        ConfigType::ALL.into_iter().filter(|c| self.contains(*c))
    }

    pub fn to_vec(&self) -> Vec<ConfigType> {
        self.iter().collect()
    }
}

impl FromIterator<ConfigType> for ConfigSet {
    fn from_iter<I: IntoIterator<Item = ConfigType>>(iter: I) -> Self {
        let mut s = ConfigSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Display for ConfigSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(ConfigType::name).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for ConfigSet {
    type Err = Error;

    /// Comma-separated, case-insensitive type names, e.g. `"m1,S1"`.
    fn from_str(s: &str) -> Result<Self> {
        let set = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(ConfigType::from_str)
            .collect::<Result<ConfigSet>>()?;
        if set.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "empty configuration set {s:?}"
            )));
        }
        Ok(set)
    }
}

/// `true` iff `x` lies strictly inside the clockwise arc from `from` to `to`.
pub(crate) fn in_open_arc(n: usize, from: usize, to: usize, x: usize) -> bool {
    let span = (to + n - from) % n;
    let off = (x + n - from) % n;
    off > 0 && off < span
}

fn count_linear_blocks(word: &[u8]) -> usize {
    if word.is_empty() {
        return 0;
    }
    1 + word.windows(2).filter(|w| w[0] != w[1]).count()
}

fn count_cyclic_blocks(word: &[u8]) -> usize {
    let changes = (0..word.len())
        .filter(|&i| word[i] != word[(i + 1) % word.len()])
        .count();
    changes.max(1)
}

/// Classifies two distinct triples on `Ω_n`.
pub fn classify_pair(n: usize, s: &Triple, t: &Triple) -> Result<ConfigType> {
    s.validate(n)?;
    t.validate(n)?;
    if s == t {
        return Err(Error::IdenticalTriples(*s));
    }
    let shared: Vec<usize> = s
        .vertices()
        .into_iter()
        .filter(|&v| t.contains(v))
        .collect();
    match shared.len() {
        2 => {
            let (u, w) = (shared[0], shared[1]);
            let third = |x: &Triple| {
                x.vertices()
                    .into_iter()
                    .find(|&v| v != u && v != w)
                    .expect("triple has a third vertex")
            };
            let same_side = in_open_arc(n, u, w, third(s)) == in_open_arc(n, u, w, third(t));
            Ok(if same_side {
                ConfigType::D2
            } else {
                ConfigType::D1
            })
        }
        1 => {
            let v = shared[0];
            let word: Vec<u8> = (1..n)
                .map(|d| (v + d) % n)
                .filter_map(|x| match (s.contains(x), t.contains(x)) {
                    (true, _) => Some(0),
                    (_, true) => Some(1),
                    _ => None,
                })
                .collect();
            match count_linear_blocks(&word) {
                2 => Ok(ConfigType::S1),
                3 => Ok(ConfigType::S2),
                4 => Ok(ConfigType::S3),
                k => Err(Error::Inconsistent(format!("{k} blocks in star word"))),
            }
        }
        0 => {
            let word: Vec<u8> = (0..n)
                .filter_map(|x| match (s.contains(x), t.contains(x)) {
                    (true, _) => Some(0),
                    (_, true) => Some(1),
                    _ => None,
                })
                .collect();
            match count_cyclic_blocks(&word) {
                2 => Ok(ConfigType::M1),
                4 => Ok(ConfigType::M2),
                6 => Ok(ConfigType::M3),
                k => Err(Error::Inconsistent(format!("{k} blocks in matching word"))),
            }
        }
        _ => unreachable!("distinct triples share at most two vertices"),
    }
}

/// Per-type counts of the unordered pairs of triples in a family.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CopyCensus {
    pub counts: BTreeMap<ConfigType, usize>,
    /// Pairs sharing all three vertices; always zero for a set.
    pub identical: usize,
}

impl CopyCensus {
    pub fn get(&self, c: ConfigType) -> usize {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum::<usize>() + self.identical
    }

    fn merge(mut self, other: CopyCensus) -> CopyCensus {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.identical += other.identical;
        self
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for c in ConfigType::ALL {
            map.insert(c.name().to_string(), self.get(c).into());
        }
        map.insert("identical".into(), self.identical.into());
        map.insert("total".into(), self.total().into());
        serde_json::Value::Object(map)
    }
}

/// Classifies every pair of triples in `h`. Rows of the pair scan are split
/// across the rayon pool and summed.
pub fn count_copies(h: &Cgh) -> CopyCensus {
    let n = h.n();
    let triples = h.triples();
    let empty = || {
        let mut c = CopyCensus::default();
        for t in ConfigType::ALL {
            c.counts.insert(t, 0);
        }
        c
    };
    (0..triples.len())
        .into_par_iter()
        .map(|i| {
            let mut census = empty();
            for j in i + 1..triples.len() {
                let c = classify_pair(n, &triples[i], &triples[j])
                    .expect("members of a valid cgh are valid and distinct");
                *census.counts.entry(c).or_default() += 1;
            }
            census
        })
        .reduce(empty, CopyCensus::merge)
}

/// A pair of triples of a family realizing a forbidden configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub first: Triple,
    pub second: Triple,
    pub kind: ConfigType,
}

/// First forbidden pair in lexicographic order of `(rank(s), rank(t))` with
/// `rank(s) < rank(t)`, if any.
pub fn first_violation(h: &Cgh, forbidden: ConfigSet) -> Option<Violation> {
    let n = h.n();
    let triples = h.triples();
    for (i, s) in triples.iter().enumerate() {
        for t in &triples[i + 1..] {
            let kind = classify_pair(n, s, t).expect("members of a valid cgh are valid");
            if forbidden.contains(kind) {
                return Some(Violation {
                    first: *s,
                    second: *t,
                    kind,
                });
            }
        }
    }
    None
}

pub fn is_free(h: &Cgh, forbidden: ConfigSet) -> bool {
    first_violation(h, forbidden).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Symmetry;
    use ConfigType::*;

    fn t(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_pair(6, &t(0, 1, 2), &t(3, 4, 5)).unwrap(), M1);
        assert_eq!(classify_pair(6, &t(0, 1, 3), &t(2, 4, 5)).unwrap(), M2);
        assert_eq!(classify_pair(6, &t(0, 2, 4), &t(1, 3, 5)).unwrap(), M3);
        assert_eq!(classify_pair(5, &t(0, 1, 2), &t(2, 3, 4)).unwrap(), S1);
        assert_eq!(classify_pair(5, &t(0, 2, 3), &t(0, 1, 4)).unwrap(), S2);
        assert_eq!(classify_pair(5, &t(0, 1, 3), &t(0, 2, 4)).unwrap(), S3);
        assert_eq!(classify_pair(4, &t(0, 1, 2), &t(0, 2, 3)).unwrap(), D1);
        assert_eq!(classify_pair(5, &t(0, 1, 2), &t(0, 1, 3)).unwrap(), D2);
    }

    #[test]
    fn classify_errors() {
        assert!(matches!(
            classify_pair(5, &t(0, 1, 2), &t(0, 1, 2)),
            Err(Error::IdenticalTriples(_))
        ));
        assert!(classify_pair(5, &t(0, 1, 5), &t(0, 1, 2)).is_err());
    }

    #[test]
    fn m2_copies_on_six_points() {
        // The twelve triples with gap multiset {1,2,3}, each opposite its complement.
        let listed = [
            t(0, 1, 3),
            t(0, 2, 3),
            t(0, 1, 4),
            t(0, 3, 4),
            t(0, 2, 5),
            t(0, 3, 5),
        ];
        let mut m2_pairs = Vec::new();
        let all: Vec<_> = Triple::all(6).collect();
        for (i, s) in all.iter().enumerate() {
            for u in &all[i + 1..] {
                if classify_pair(6, s, u).unwrap() == M2 {
                    m2_pairs.push((*s, *u));
                }
            }
        }
        assert_eq!(m2_pairs.len(), 6);
        for s in listed {
            let complement: Vec<usize> = (0..6).filter(|&v| !s.contains(v)).collect();
            let c = t(complement[0], complement[1], complement[2]);
            assert!(m2_pairs.contains(&(s.min(c), s.max(c))));
        }
    }

    #[test]
    fn symmetric_total_and_dihedral_invariant() {
        for n in 4..=9 {
            let all: Vec<_> = Triple::all(n).collect();
            for (i, s) in all.iter().enumerate() {
                for u in &all[i + 1..] {
                    let c = classify_pair(n, s, u).unwrap();
                    assert_eq!(c, classify_pair(n, u, s).unwrap());
                    assert_eq!(c.shared_vertices(), s.intersection_size(u));
                    if n <= 8 {
                        for g in Symmetry::all(n) {
                            assert_eq!(
                                c,
                                classify_pair(n, &g.apply(n, s), &g.apply(n, u)).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn census_examples() {
        let one = Cgh::new(6, vec![t(0, 1, 2)]).unwrap();
        assert_eq!(count_copies(&one).total(), 0);
        let two = Cgh::new(6, vec![t(0, 1, 2), t(3, 4, 5)]).unwrap();
        let c = count_copies(&two);
        assert_eq!(c.get(M1), 1);
        assert_eq!(c.total(), 1);
    }

    #[test]
    fn violation_witness() {
        let h = Cgh::new(6, vec![t(0, 1, 3), t(2, 4, 5)]).unwrap();
        let v = first_violation(&h, ConfigSet::single(M2)).unwrap();
        assert_eq!((v.first, v.second, v.kind), (t(0, 1, 3), t(2, 4, 5), M2));
        assert!(is_free(&h, ConfigSet::of(&[M1, M3])));
    }

    #[test]
    fn witness_is_first_in_rank_order() {
        // {0,1,2} < {0,1,3} < {0,2,3} < {1,2,3} in rank order; the first D2
        // pair is ({0,1,2},{0,1,3}).
        let h = Cgh::complete(4).unwrap();
        let v = first_violation(&h, ConfigSet::of(&[D1, D2])).unwrap();
        assert_eq!((v.first, v.second, v.kind), (t(0, 1, 2), t(0, 1, 3), D2));
    }

    #[test]
    fn parse_sets() {
        let s: ConfigSet = "m1, S1,d1".parse().unwrap();
        assert_eq!(s, ConfigSet::of(&[M1, S1, D1]));
        assert_eq!(s.to_string(), "M1,S1,D1");
        assert!("M4".parse::<ConfigSet>().is_err());
        assert!("".parse::<ConfigSet>().is_err());
    }
}
