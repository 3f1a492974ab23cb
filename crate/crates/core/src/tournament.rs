//! Tournaments, directed-triangle counts, and the orientation of the shadow
//! of a D1-free family.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cgh::Cgh;
use crate::config::in_open_arc;
use crate::constructions::delta;
use crate::error::{Error, Result};
use crate::triple::{binomial, Triple};

/// A (possibly partial) orientation of pairs of `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    beats: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct TournamentFile {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

impl Tournament {
    /// No arcs.
    pub fn empty(n: usize) -> Self {
        Tournament {
            n,
            beats: vec![false; n * n],
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut t = Tournament::empty(n);
        for &(u, v) in arcs {
            t.add_arc(u, v)?;
        }
        Ok(t)
    }

    /// `i` beats `i+1, .., i+(n-1)/2` (mod `n`), for odd `n`.
    pub fn rotational(n: usize) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::Parity {
                what: "rotational tournament",
                parity: "odd",
                n,
            });
        }
        let mut t = Tournament::empty(n);
        for i in 0..n {
            for d in 1..=(n - 1) / 2 {
                t.add_arc(i, (i + d) % n)?;
            }
        }
        Ok(t)
    }

    /// Transitive tournament: `i` beats `j` whenever `i < j`.
    pub fn transitive(n: usize) -> Self {
        let mut t = Tournament::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                t.beats[i * n + j] = true;
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n;
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidTournament(format!(
                "bad arc ({u},{v}) for n = {n}"
            )));
        }
        if self.beats[v * n + u] {
            return Err(Error::InvalidTournament(format!(
                "arcs ({u},{v}) and ({v},{u}) both present"
            )));
        }
        self.beats[u * n + v] = true;
        Ok(())
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.beats[u * self.n + v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_arc(u, v))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.beats.iter().filter(|&&b| b).count()
    }

    pub fn is_complete(&self) -> bool {
        self.missing_pair().is_none()
    }

    fn missing_pair(&self) -> Option<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| !self.has_arc(u, v) && !self.has_arc(v, u))
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n)
            .map(|u| (0..self.n).filter(|&v| self.has_arc(u, v)).count())
            .collect()
    }

    /// `u -> v -> w -> u` or the reverse cycle.
    pub fn is_directed_triangle(&self, t: &Triple) -> bool {
        let [a, b, c] = t.vertices();
        (self.has_arc(a, b) && self.has_arc(b, c) && self.has_arc(c, a))
            || (self.has_arc(a, c) && self.has_arc(c, b) && self.has_arc(b, a))
    }

    /// Pairs without an arc are oriented from the lower to the higher index.
    pub fn completed(&self) -> Tournament {
        let mut t = self.clone();
        let n = self.n;
        for u in 0..n {
            for v in u + 1..n {
                if !t.has_arc(u, v) && !t.has_arc(v, u) {
                    t.beats[u * n + v] = true;
                }
            }
        }
        t
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TournamentFile {
            n: self.n,
            arcs: self.arcs().into_iter().map(|(u, v)| [u, v]).collect(),
        })
        .expect("tournament serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: TournamentFile = serde_json::from_str(s)?;
        let arcs: Vec<_> = f.arcs.iter().map(|a| (a[0], a[1])).collect();
        let t = Tournament::from_arcs(f.n, &arcs)?;
        if t.arc_count() != arcs.len() {
            return Err(Error::InvalidTournament("repeated arc".into()));
        }
        Ok(t)
    }
}

/// `C(n,3) - Σ C(d_i, 2)` for a complete tournament with the given
/// out-degrees.
pub fn triangles_by_formula(out_degrees: &[usize]) -> Result<usize> {
    let n = out_degrees.len();
    let sum: usize = out_degrees.iter().sum();
    let expected = binomial(n, 2);
    if sum != expected {
        return Err(Error::DegreeSum { n, sum, expected });
    }
    let transitive: usize = out_degrees.iter().map(|&d| binomial(d, 2)).sum();
    Ok(binomial(n, 3) - transitive)
}

/// Directed triangles counted by inspecting every vertex triple.
pub fn count_directed_triangles(t: &Tournament) -> Result<usize> {
    if let Some((u, v)) = t.missing_pair() {
        return Err(Error::IncompleteTournament { n: t.n, u, v });
    }
    Ok(Triple::all(t.n)
        .filter(|x| t.is_directed_triangle(x))
        .count())
}

/// A tournament with `Δ(n)` directed triangles: rotational for odd `n`,
/// rotational on `n + 1` vertices minus the last one for even `n`.
pub fn max_triangle_tournament(n: usize) -> Result<Tournament> {
    if n < 3 {
        return Err(Error::GroundSetTooSmall { n, min: 3 });
    }
    if n % 2 == 1 {
        return Tournament::rotational(n);
    }
    let big = Tournament::rotational(n + 1)?;
    let arcs: Vec<_> = big
        .arcs()
        .into_iter()
        .filter(|&(u, v)| u < n && v < n)
        .collect();
    Tournament::from_arcs(n, &arcs)
}

/// Orients every shadow pair `{u, v}` (`u < v`) of `h` as `u -> v` when the
/// witness third vertex lies in the clockwise arc from `u` to `v`, and
/// `v -> u` otherwise. All witnesses of a pair must agree; when they do not,
/// the two triples form D1 and are reported.
pub fn orient_shadow(h: &Cgh, require_d1_free: bool) -> Result<Tournament> {
    let n = h.n();
    let mut arcs: BTreeMap<(usize, usize), (bool, Triple)> = BTreeMap::new();
    for t in h.iter() {
        let [a, b, c] = t.vertices();
        for (u, v, w) in [(a, b, c), (a, c, b), (b, c, a)] {
            let forward = in_open_arc(n, u, v, w);
            match arcs.get(&(u, v)) {
                Some(&(prev, other)) if prev != forward => {
                    if require_d1_free {
                        return Err(Error::D1Violation(other, *t));
                    }
                }
                Some(_) => {}
                None => {
                    arcs.insert((u, v), (forward, *t));
                }
            }
        }
    }
    let mut tour = Tournament::empty(n);
    for (&(u, v), &(forward, _)) in &arcs {
        if forward {
            tour.add_arc(u, v)?;
        } else {
            tour.add_arc(v, u)?;
        }
    }
    Ok(tour)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct D1BoundReport {
    pub size: usize,
    pub triangles: usize,
    pub delta: usize,
    pub bound_holds: bool,
}

/// Checks `|H| <= #directed triangles of the completed shadow orientation
/// <= Δ(n)` for a D1-free family.
pub fn verify_d1_bound(h: &Cgh) -> Result<D1BoundReport> {
    let oriented = orient_shadow(h, true)?;
    if let Some(t) = h.iter().find(|t| !oriented.is_directed_triangle(t)) {
        return Err(Error::Inconsistent(format!(
            "{t} is not a directed triangle"
        )));
    }
    let complete = oriented.completed();
    let triangles = count_directed_triangles(&complete)?;
    let d = delta(h.n());
    Ok(D1BoundReport {
        size: h.len(),
        triangles,
        delta: d,
        bound_holds: h.len() <= triangles && triangles <= d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::h_star;

    fn t(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(triangles_by_formula(&[1, 1, 1]).unwrap(), 1);
        assert_eq!(triangles_by_formula(&[2, 1, 0]).unwrap(), 0);
        assert_eq!(triangles_by_formula(&[3; 7]).unwrap(), 14);
        assert!(matches!(
            triangles_by_formula(&[1, 1]),
            Err(Error::DegreeSum { .. })
        ));
    }

    #[test]
    fn brute_counts() {
        for n in 3..=8 {
            assert_eq!(
                count_directed_triangles(&Tournament::transitive(n)).unwrap(),
                0
            );
        }
        assert_eq!(
            count_directed_triangles(&Tournament::rotational(5).unwrap()).unwrap(),
            5
        );
        assert!(matches!(
            count_directed_triangles(&Tournament::empty(3)),
            Err(Error::IncompleteTournament { .. })
        ));
    }

    #[test]
    fn extremal_tournaments() {
        assert_eq!(
            count_directed_triangles(&max_triangle_tournament(5).unwrap()).unwrap(),
            5
        );
        let t6 = max_triangle_tournament(6).unwrap();
        let mut degs = t6.out_degrees();
        degs.sort();
        assert_eq!(degs, vec![2, 2, 2, 3, 3, 3]);
        assert_eq!(count_directed_triangles(&t6).unwrap(), 8);
        assert_eq!(
            count_directed_triangles(&max_triangle_tournament(9).unwrap()).unwrap(),
            30
        );
    }

    #[test]
    fn orientation_examples() {
        let single = Cgh::new(3, vec![t(0, 1, 2)]).unwrap();
        let o = orient_shadow(&single, true).unwrap();
        assert_eq!(o.arc_count(), 3);
        assert!(o.is_directed_triangle(&t(0, 1, 2)));

        let h5 = h_star(5, None).unwrap();
        let o = orient_shadow(&h5, true).unwrap();
        assert_eq!(o.arc_count(), 10);
        assert!(h5.iter().all(|x| o.is_directed_triangle(x)));

        let d1 = Cgh::new(4, vec![t(0, 1, 2), t(0, 2, 3)]).unwrap();
        assert!(matches!(
            orient_shadow(&d1, true),
            Err(Error::D1Violation(..))
        ));
        assert!(orient_shadow(&d1, false).is_ok());
    }

    #[test]
    fn d1_bound_reports() {
        let r = verify_d1_bound(&h_star(7, None).unwrap()).unwrap();
        assert_eq!((r.size, r.triangles, r.delta), (14, 14, 14));
        assert!(r.bound_holds);
        let r = verify_d1_bound(&Cgh::new(6, vec![t(0, 2, 4)]).unwrap()).unwrap();
        assert!(r.size <= r.triangles && r.bound_holds);
    }

    #[test]
    fn json_round_trip() {
        let t5 = Tournament::rotational(5).unwrap();
        assert_eq!(Tournament::from_json(&t5.to_json()).unwrap(), t5);
        assert!(Tournament::from_json(r#"{"n":3,"arcs":[[0,1],[1,0]]}"#).is_err());
        assert!(Tournament::from_json(r#"{"n":3,"arcs":[[0,1],[0,1]]}"#).is_err());
    }
}
