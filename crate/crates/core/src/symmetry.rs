//! Dihedral symmetries of the cyclic ground set and canonical forms.

use crate::cgh::Cgh;
use crate::triple::Triple;

/// `i -> (i + rotation) mod n`, followed by `i -> (n - i) mod n` when
/// `reflect` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub rotation: usize,
    pub reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        rotation: 0,
        reflect: false,
    };

    pub fn rotation(r: usize) -> Self {
        Symmetry {
            rotation: r,
            reflect: false,
        }
    }

    pub fn reflection() -> Self {
        Symmetry {
            rotation: 0,
            reflect: true,
        }
    }

    /// All `2n` elements of the dihedral group.
    pub fn all(n: usize) -> impl Iterator<Item = Symmetry> {
        (0..n).flat_map(|rotation| {
            [false, true]
                .into_iter()
                .map(move |reflect| Symmetry { rotation, reflect })
        })
    }

    pub fn apply_vertex(&self, n: usize, v: usize) -> usize {
        let r = (v + self.rotation) % n;
        if self.reflect {
            (n - r) % n
        } else {
            r
        }
    }

    pub fn apply(&self, n: usize, t: &Triple) -> Triple {
        let [a, b, c] = t.vertices().map(|v| self.apply_vertex(n, v));
        Triple::new(a, b, c).expect("symmetries are bijections")
    }

    /// The symmetry equal to applying `self` and then `next`.
    pub fn then(&self, n: usize, next: &Symmetry) -> Symmetry {
        let r1 = self.rotation % n;
        let r2 = next.rotation % n;
        let rotation = if self.reflect {
            (r1 + n - r2) % n
        } else {
            (r1 + r2) % n
        };
        Symmetry {
            rotation,
            reflect: self.reflect ^ next.reflect,
        }
    }

    pub fn apply_cgh(&self, h: &Cgh) -> Cgh {
        let n = h.n();
        let mut image: Vec<Triple> = h.iter().map(|t| self.apply(n, t)).collect();
        image.sort_unstable();
        Cgh::from_sorted_unchecked(n, image)
    }
}

/// The image of `h` whose rank list is lexicographically smallest over the
/// dihedral group.
pub fn canonical_form(h: &Cgh) -> Cgh {
    let n = h.n();
    let mut best: Option<Vec<Triple>> = None;
    let mut image = Vec::with_capacity(h.len());
    for s in Symmetry::all(n) {
        image.clear();
        image.extend(h.iter().map(|t| s.apply(n, t)));
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image.clone());
        }
    }
    Cgh::from_sorted_unchecked(n, best.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(Symmetry::rotation(1).apply(6, &t(0, 1, 2)), t(1, 2, 3));
        assert_eq!(Symmetry::reflection().apply(6, &t(0, 1, 2)), t(0, 4, 5));
        for tr in Triple::all(5) {
            assert_eq!(Symmetry::rotation(5).apply(5, &tr), tr);
        }
    }

    #[test]
    fn composition_matches_pointwise() {
        for n in 3..=9 {
            let group: Vec<_> = Symmetry::all(n).collect();
            assert_eq!(group.len(), 2 * n);
            for s in &group {
                for u in &group {
                    let c = s.then(n, u);
                    assert!(group.contains(&c));
                    for v in 0..n {
                        assert_eq!(
                            c.apply_vertex(n, v),
                            u.apply_vertex(n, s.apply_vertex(n, v))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_of_single_triple() {
        let h = Cgh::new(6, vec![t(1, 2, 3)]).unwrap();
        assert_eq!(canonical_form(&h).triples(), &[t(0, 1, 2)]);
    }

    #[test]
    fn single_triple_orbits() {
        // Orbits computed directly by closing each triple under the generators.
        for n in 3..=12 {
            let mut seen = BTreeSet::new();
            let mut orbits = 0;
            for tr in Triple::all(n) {
                if seen.contains(&tr) {
                    continue;
                }
                orbits += 1;
                let mut stack = vec![tr];
                while let Some(x) = stack.pop() {
                    if seen.insert(x) {
                        stack.push(Symmetry::rotation(1).apply(n, &x));
                        stack.push(Symmetry::reflection().apply(n, &x));
                    }
                }
            }
            let forms: BTreeSet<_> = Triple::all(n)
                .map(|tr| canonical_form(&Cgh::new(n, vec![tr]).unwrap()))
                .collect();
            assert_eq!(forms.len(), orbits, "n = {n}");
        }
    }
}
