//! Triples on the cyclically ordered ground set `{0, .., n-1}`.
//!
//! A [`Triple`] is stored ascending. Its ordering is colexicographic, which
//! is the same order as [`Triple::rank`], so sorted collections of triples are
//! sorted by rank.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Three distinct vertices `a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct Triple {
    a: usize,
    b: usize,
    c: usize,
}

/// Position of the polygon centroid relative to a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CentroidPosition {
    Interior,
    Boundary,
    Exterior,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl Triple {
    /// Builds a triple from three distinct vertices in any order.
    pub fn new(x: usize, y: usize, z: usize) -> Result<Self> {
        let mut v = [x, y, z];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::InvalidTriple {
                n: v[2] + 1,
                vertices: [x, y, z],
            });
        }
        Ok(Triple {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    /// Builds a triple and checks it lies in `{0, .., n-1}`.
    pub fn checked(n: usize, x: usize, y: usize, z: usize) -> Result<Self> {
        let t = Triple::new(x, y, z).map_err(|_| Error::InvalidTriple {
            n,
            vertices: [x, y, z],
        })?;
        t.validate(n)?;
        Ok(t)
    }

    pub(crate) fn from_sorted(a: usize, b: usize, c: usize) -> Self {
        debug_assert!(a < b && b < c);
        Triple { a, b, c }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    pub fn contains_pair(&self, u: usize, v: usize) -> bool {
        u != v && self.contains(u) && self.contains(v)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 3 {
            return Err(Error::GroundSetTooSmall { n, min: 3 });
        }
        if self.c >= n {
            return Err(Error::InvalidTriple {
                n,
                vertices: self.vertices(),
            });
        }
        Ok(())
    }

    /// Number of shared vertices with `other`.
    pub fn intersection_size(&self, other: &Triple) -> usize {
        self.vertices()
            .iter()
            .filter(|&&v| other.contains(v))
            .count()
    }

    /// Cyclic arc lengths `(b-a, c-b, n-c+a)`.
    pub fn gaps(&self, n: usize) -> Result<(usize, usize, usize)> {
        self.validate(n)?;
        Ok((self.b - self.a, self.c - self.b, n - self.c + self.a))
    }

    /// Where the centroid of the regular `n`-gon sits relative to this
    /// triangle. Decided by comparing the longest gap against `n/2`.
    pub fn centroid_position(&self, n: usize) -> Result<CentroidPosition> {
        let (g1, g2, g3) = self.gaps(n)?;
        let longest2 = 2 * g1.max(g2).max(g3);
        Ok(match longest2.cmp(&n) {
            Ordering::Less => CentroidPosition::Interior,
            Ordering::Equal => CentroidPosition::Boundary,
            Ordering::Greater => CentroidPosition::Exterior,
        })
    }

    /// Colexicographic rank: `C(a,1) + C(b,2) + C(c,3)`.
    pub fn rank(&self) -> usize {
        self.a + binomial(self.b, 2) + binomial(self.c, 3)
    }

    /// Rank with a range check against `n`.
    pub fn rank_in(&self, n: usize) -> Result<usize> {
        self.validate(n)?;
        Ok(self.rank())
    }

    /// Inverse of [`Triple::rank`] on `{0, .., C(n,3)-1}`.
    pub fn unrank(n: usize, index: usize) -> Result<Self> {
        let limit = binomial(n, 3);
        if index >= limit {
            return Err(Error::IndexOutOfRange { index, limit });
        }
        let mut rest = index;
        let mut c = 2;
        while binomial(c + 1, 3) <= rest {
            c += 1;
        }
        rest -= binomial(c, 3);
        let mut b = 1;
        while binomial(b + 1, 2) <= rest {
            b += 1;
        }
        rest -= binomial(b, 2);
        Ok(Triple::from_sorted(rest, b, c))
    }

    /// All `C(n,3)` triples in rank order.
    pub fn all(n: usize) -> impl Iterator<Item = Triple> {
        (2..n).flat_map(|c| (1..c).flat_map(move |b| (0..b).map(move |a| Triple { a, b, c })))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.c, self.b, self.a).cmp(&(other.c, other.b, other.a))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.a, self.b, self.c)
    }
}

impl TryFrom<[usize; 3]> for Triple {
    type Error = Error;

    /// Accepts only strictly ascending input, matching the file format.
    fn try_from(v: [usize; 3]) -> Result<Self> {
        if v[0] < v[1] && v[1] < v[2] {
            Ok(Triple::from_sorted(v[0], v[1], v[2]))
        } else {
            Err(Error::InvalidTriple {
                n: v.iter().max().copied().unwrap_or(0) + 1,
                vertices: v,
            })
        }
    }
}

impl From<Triple> for [usize; 3] {
    fn from(t: Triple) -> Self {
        t.vertices()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn gaps_examples() {
        assert_eq!(t(0, 2, 4).gaps(6).unwrap(), (2, 2, 2));
        assert_eq!(t(0, 1, 2).gaps(7).unwrap(), (1, 1, 5));
        assert_eq!(t(0, 1, 3).gaps(6).unwrap(), (1, 2, 3));
        assert!(t(0, 1, 6).gaps(6).is_err());
    }

    #[test]
    fn centroid_examples() {
        use CentroidPosition::*;
        assert_eq!(t(0, 2, 4).centroid_position(6).unwrap(), Interior);
        assert_eq!(t(0, 1, 3).centroid_position(6).unwrap(), Boundary);
        assert_eq!(t(0, 1, 2).centroid_position(7).unwrap(), Exterior);
    }

    #[test]
    fn boundary_needs_even_n() {
        for n in (3..=15).step_by(2) {
            assert!(Triple::all(n)
                .all(|t| t.centroid_position(n).unwrap() != CentroidPosition::Boundary));
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(t(0, 1, 2).rank_in(5).unwrap(), 0);
        assert_eq!(t(3, 4, 5).rank_in(6).unwrap(), 19);
        assert!(t(3, 4, 5).rank_in(5).is_err());
        assert!(Triple::unrank(5, 10).is_err());
    }

    #[test]
    fn colex_enumeration_matches_independent_listing() {
        // Independent listing: sort all ascending triples by (c, b, a).
        let n = 6;
        let mut listed = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    listed.push((c, b, a));
                }
            }
        }
        listed.sort();
        assert_eq!(listed.len(), 20);
        for (i, &(c, b, a)) in listed.iter().enumerate() {
            assert_eq!(t(a, b, c).rank(), i);
        }
    }

    #[test]
    fn rank_unrank_bijection() {
        for n in 3..=12 {
            let all: Vec<_> = Triple::all(n).collect();
            assert_eq!(all.len(), binomial(n, 3));
            for (i, tr) in all.iter().enumerate() {
                assert_eq!(tr.rank(), i);
                assert_eq!(Triple::unrank(n, i).unwrap(), *tr);
            }
        }
    }

    #[test]
    fn rejects_repeated_vertices() {
        assert!(Triple::new(1, 1, 2).is_err());
        assert!(Triple::try_from([2, 1, 3]).is_err());
        assert!(Triple::checked(4, 0, 1, 4).is_err());
    }
}
