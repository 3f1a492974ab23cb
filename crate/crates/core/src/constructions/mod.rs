//! Generators for the named extremal constructions, with their closed-form
//! sizes and the configuration sets they avoid.

mod design;
mod triangulation;

use std::fmt;
use std::str::FromStr;

pub use design::{d2_expand_design, d2_fano7, fano_lines, Design, DesignExpansion};
pub use triangulation::{d2_fan, d2_from_triangulation, validate_triangulation};

use crate::cgh::Cgh;
use crate::config::{ConfigSet, ConfigType};
use crate::error::{Error, Result};
use crate::triple::{binomial, CentroidPosition, Triple};

/// `n(n-1)(n+1)/24` for odd `n`, `n(n-2)(n+2)/24` for even `n`.
pub fn delta(n: usize) -> usize {
    if n % 2 == 1 {
        n * (n - 1) * (n + 1) / 24
    } else {
        n * (n - 2) * (n + 2) / 24
    }
}

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::GroundSetTooSmall { n, min })
    } else {
        Ok(())
    }
}

fn triples_where(n: usize, mut keep: impl FnMut(&Triple) -> bool) -> Vec<Triple> {
    Triple::all(n).filter(|t| keep(t)).collect()
}

fn interior(n: usize) -> impl Iterator<Item = Triple> {
    Triple::all(n).filter(move |t| matches!(t.centroid_position(n), Ok(CentroidPosition::Interior)))
}

fn containing_pair(n: usize, u: usize, v: usize) -> impl Iterator<Item = Triple> {
    Triple::all(n).filter(move |t| t.contains_pair(u, v))
}

/// Centroid construction. `side_bits` picks, for each diameter
/// `{i, i+n/2}`, whether the extra triangles use the arc clockwise from `i`
/// (`false`) or from `i+n/2` (`true`); it must be given for even `n` only.
pub fn h_star(n: usize, side_bits: Option<&[bool]>) -> Result<Cgh> {
    require_n(n, 3)?;
    match (n % 2, side_bits) {
        (1, None) => Cgh::collect(n, interior(n)),
        (1, Some(_)) => Err(Error::InvalidParameter(format!(
            "side bits are only used for even n, got n = {n}"
        ))),
        (_, None) => Err(Error::InvalidParameter(format!(
            "even n = {n} requires {} side bits",
            n / 2
        ))),
        (_, Some(bits)) => {
            let half = n / 2;
            if bits.len() != half {
                return Err(Error::InvalidParameter(format!(
                    "expected {half} side bits, got {}",
                    bits.len()
                )));
            }
            let mut all: Vec<Triple> = interior(n).collect();
            for (i, &flip) in bits.iter().enumerate() {
                let from = if flip { i + half } else { i };
                all.extend(
                    (1..half).map(|d| Triple::new(i, i + half, (from + d) % n).expect("distinct")),
                );
            }
            Cgh::collect(n, all)
        }
    }
}

/// Extremal construction for a single separated pair.
pub fn h_prime(n: usize) -> Result<Cgh> {
    require_n(n, 3)?;
    if n % 2 == 1 {
        let m = (n - 1) / 2;
        let mut all: Vec<Triple> = interior(n).collect();
        for i in 0..n {
            all.extend(containing_pair(n, i, (i + m) % n));
        }
        Cgh::collect(n, all)
    } else {
        let half = n / 2;
        let m = half - 1;
        let pairs: Vec<(usize, usize)> = (0..half).map(|i| (i, (i + m) % n)).collect();
        for (x, p) in pairs.iter().enumerate() {
            for q in &pairs[x + 1..] {
                if !chords_meet(n, *p, *q) {
                    return Err(Error::Inconsistent(format!(
                        "pairs {p:?} and {q:?} do not intersect"
                    )));
                }
            }
        }
        let mut all: Vec<Triple> = interior(n).collect();
        for i in 0..half {
            all.extend(containing_pair(n, i, i + half));
        }
        for (u, v) in pairs {
            all.extend(containing_pair(n, u, v));
        }
        Cgh::collect(n, all)
    }
}

/// Two chords share an endpoint or cross.
fn chords_meet(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    use crate::config::in_open_arc;
    if a == c || a == d || b == c || b == d {
        return true;
    }
    in_open_arc(n, a, b, c) != in_open_arc(n, a, b, d)
}

/// Extremal construction avoiding separated and touching pairs. For odd
/// `n`, `start` (default 0) selects the first of the `(n-1)/2` consecutive
/// long pairs that are added.
pub fn h_plus(n: usize, start: Option<usize>) -> Result<Cgh> {
    require_n(n, 3)?;
    if n % 2 == 1 {
        let start = start.unwrap_or(0);
        if start >= n {
            return Err(Error::VertexOutOfRange { n, vertex: start });
        }
        let m = (n - 1) / 2;
        let mut all: Vec<Triple> = interior(n).collect();
        for j in 0..=(n - 3) / 2 {
            all.extend(containing_pair(n, (start + j) % n, (start + j + m) % n));
        }
        Cgh::collect(n, all)
    } else {
        if start.is_some() {
            return Err(Error::InvalidParameter(format!(
                "start index is only used for odd n, got n = {n}"
            )));
        }
        Cgh::collect(
            n,
            triples_where(n, |t| {
                !matches!(t.centroid_position(n), Ok(CentroidPosition::Exterior))
            }),
        )
    }
}

/// Star at `v0` plus every triple containing a cyclically consecutive pair.
/// Each swap `k` (with `1 <= k` and `2k + 4 < n`) trades `{0, 2k+1, 2k+3}`
/// for `{2k, 2k+2, 2k+4}`.
pub fn m3_extremal(n: usize, swaps: &[usize]) -> Result<Cgh> {
    require_n(n, 4)?;
    let mut set: std::collections::BTreeSet<Triple> = triples_where(n, |t| {
        let [a, b, c] = t.vertices();
        // The wrap-around pair {n-1, 0} is covered by the star.
        a == 0 || b == a + 1 || c == b + 1
    })
    .into_iter()
    .collect();
    let mut used = std::collections::BTreeSet::new();
    for &k in swaps {
        if k == 0 || 2 * k + 4 >= n || !used.insert(k) {
            return Err(Error::InvalidParameter(format!(
                "swap index {k} is not admissible for n = {n}"
            )));
        }
        let removed = Triple::new(0, 2 * k + 1, 2 * k + 3)?;
        let added = Triple::new(2 * k, 2 * k + 2, 2 * k + 4)?;
        if !set.remove(&removed) || !set.insert(added) {
            return Err(Error::Inconsistent(format!(
                "swap {k} did not exchange two triples"
            )));
        }
    }
    Cgh::collect(n, set)
}

/// Star at `v0` plus the `n` cyclically consecutive triples.
pub fn m2_extremal(n: usize) -> Result<Cgh> {
    require_n(n, 5)?;
    let mut all = triples_where(n, |t| t.a() == 0);
    all.extend((0..n).map(|i| Triple::new(i, (i + 1) % n, (i + 2) % n).expect("n >= 3")));
    Cgh::collect(n, all)
}

/// `{v_{2i-1}, v_{2i}, v}` for every `i < n/2` and every other vertex `v`.
pub fn s3_h0(n: usize) -> Result<Cgh> {
    if n % 2 == 1 {
        return Err(Error::Parity {
            what: "s3_h0",
            parity: "even",
            n,
        });
    }
    require_n(n, 4)?;
    let mut all = Vec::new();
    for i in 0..n / 2 {
        let (u, w) = ((2 * i + n - 1) % n, 2 * i);
        all.extend(containing_pair(n, u, w));
    }
    Cgh::collect(n, all)
}

/// Interval split: `A = {0, .., ⌈n/2⌉-2}` followed by `B`; every triple with a
/// point of `A` and a consecutive pair of `B`, plus consecutive triples of `B`.
pub fn s2_split(n: usize) -> Result<Cgh> {
    require_n(n, 5)?;
    let a_len = n.div_ceil(2) - 1;
    let b: Vec<usize> = (a_len..n).collect();
    let mut all = Vec::new();
    for w in b.windows(2) {
        all.extend((0..a_len).map(|a| Triple::new(a, w[0], w[1]).expect("distinct")));
    }
    for w in b.windows(3) {
        all.push(Triple::new(w[0], w[1], w[2])?);
    }
    Cgh::collect(n, all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    HStar,
    HPrime,
    HPlus,
    M3x,
    M2x,
    S3H0,
    S2Split,
    D2Fan,
    D2Tri,
    D2Fano7,
    D2Design,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::HStar,
        Family::HPrime,
        Family::HPlus,
        Family::M3x,
        Family::M2x,
        Family::S3H0,
        Family::S2Split,
        Family::D2Fan,
        Family::D2Tri,
        Family::D2Fano7,
        Family::D2Design,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::HStar => "HSTAR",
            Family::HPrime => "HPRIME",
            Family::HPlus => "HPLUS",
            Family::M3x => "M3X",
            Family::M2x => "M2X",
            Family::S3H0 => "S3H0",
            Family::S2Split => "S2SPLIT",
            Family::D2Fan => "D2FAN",
            Family::D2Tri => "D2TRI",
            Family::D2Fano7 => "D2FANO7",
            Family::D2Design => "D2DESIGN",
        }
    }

    /// The configurations the family is built to avoid.
    pub fn forbidden(self) -> ConfigSet {
        use ConfigType::*;
        match self {
            Family::HStar => ConfigSet::of(&[M1, S1, D1]),
            Family::HPrime => ConfigSet::of(&[M1]),
            Family::HPlus => ConfigSet::of(&[M1, S1]),
            Family::M3x => ConfigSet::of(&[M3]),
            Family::M2x => ConfigSet::of(&[M2]),
            Family::S3H0 => ConfigSet::of(&[S3]),
            Family::S2Split => ConfigSet::of(&[S2]),
            Family::D2Fan | Family::D2Tri | Family::D2Fano7 | Family::D2Design => {
                ConfigSet::of(&[D2])
            }
        }
    }

    /// Whether the family is defined on `n` points (ignoring parameters).
    pub fn supports(self, n: usize) -> bool {
        match self {
            Family::HStar | Family::HPrime | Family::HPlus | Family::D2Fan | Family::D2Tri => {
                n >= 3
            }
            Family::M3x => n >= 4,
            Family::M2x | Family::S2Split => n >= 5,
            Family::S3H0 => n >= 4 && n % 2 == 0,
            Family::D2Fano7 => n == 7,
            Family::D2Design => n >= 7,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Family::ALL
            .into_iter()
            .find(|f| f.id() == upper)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family id together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub side_bits: Option<Vec<bool>>,
    pub start: Option<usize>,
    pub swaps: Vec<usize>,
    pub diagonals: Vec<(usize, usize)>,
    pub design: Option<Design>,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            side_bits: None,
            start: None,
            swaps: Vec::new(),
            diagonals: Vec::new(),
            design: None,
        }
    }

    pub fn with_side_bits(mut self, bits: Vec<bool>) -> Self {
        self.side_bits = Some(bits);
        self
    }

    pub fn with_start(mut self, start: usize) -> Self {
        self.start = Some(start);
        self
    }

    pub fn with_swaps(mut self, swaps: Vec<usize>) -> Self {
        self.swaps = swaps;
        self
    }

    pub fn with_diagonals(mut self, diagonals: Vec<(usize, usize)>) -> Self {
        self.diagonals = diagonals;
        self
    }

    pub fn with_design(mut self, design: Design) -> Self {
        self.n = design.n;
        self.design = Some(design);
        self
    }

    fn check_arity(&self) -> Result<()> {
        let unexpected = |what: &str| {
            Err(Error::InvalidParameter(format!(
                "{what} does not apply to {}",
                self.family
            )))
        };
        if self.side_bits.is_some() && self.family != Family::HStar {
            return unexpected("side bits");
        }
        if self.start.is_some() && self.family != Family::HPlus {
            return unexpected("start index");
        }
        if !self.swaps.is_empty() && self.family != Family::M3x {
            return unexpected("swaps");
        }
        if !self.diagonals.is_empty() && self.family != Family::D2Tri {
            return unexpected("diagonals");
        }
        if self.design.is_some() && self.family != Family::D2Design {
            return unexpected("a design");
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Cgh> {
        self.check_arity()?;
        let n = self.n;
        match self.family {
            Family::HStar => h_star(n, self.side_bits.as_deref()),
            Family::HPrime => h_prime(n),
            Family::HPlus => h_plus(n, self.start),
            Family::M3x => m3_extremal(n, &self.swaps),
            Family::M2x => m2_extremal(n),
            Family::S3H0 => s3_h0(n),
            Family::S2Split => s2_split(n),
            Family::D2Fan => d2_fan(n),
            Family::D2Tri => d2_from_triangulation(n, &self.diagonals),
            Family::D2Fano7 => {
                if n != 7 {
                    return Err(Error::InvalidParameter(format!(
                        "D2FANO7 is defined for n = 7, got {n}"
                    )));
                }
                d2_fano7()
            }
            Family::D2Design => {
                let design = self
                    .design
                    .as_ref()
                    .ok_or_else(|| Error::InvalidParameter("D2DESIGN requires a design".into()))?;
                Ok(d2_expand_design(design)?.cgh)
            }
        }
    }

    /// Closed-form size of the generated family.
    pub fn expected_size(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::HStar => delta(n),
            Family::HPrime => delta(n) + n * (n - 3) / 2,
            Family::HPlus if n % 2 == 1 => delta(n) + (n - 1) * (n - 3) / 4,
            Family::HPlus => delta(n) + n * (n - 2) / 4,
            Family::M3x => binomial(n, 3) - binomial(n - 3, 3),
            Family::M2x => binomial(n, 2) - 2,
            Family::S3H0 => n * (n - 2) / 2,
            Family::S2Split => n * n / 4 - 1,
            Family::D2Fan | Family::D2Tri => n - 2,
            Family::D2Fano7 => 8,
            Family::D2Design => 8 * binomial(n, 2) / 21,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::is_free;
    use crate::symmetry::canonical_form;
    use ConfigType::*;

    fn t(a: usize, b: usize, c: usize) -> Triple {
        Triple::new(a, b, c).unwrap()
    }

    #[test]
    fn delta_values() {
        let got: Vec<_> = (3..=11).map(delta).collect();
        assert_eq!(got, vec![1, 2, 5, 8, 14, 20, 30, 40, 55]);
        // Integrality: the formula and exact rational value agree.
        for n in 3..200usize {
            let num = if n % 2 == 1 {
                n * (n - 1) * (n + 1)
            } else {
                n * (n - 2) * (n + 2)
            };
            assert_eq!(num % 24, 0, "n = {n}");
        }
    }

    #[test]
    fn h_star_small() {
        let h5 = h_star(5, None).unwrap();
        let expected = Cgh::new(
            5,
            vec![t(0, 1, 3), t(1, 2, 4), t(0, 2, 3), t(1, 3, 4), t(0, 2, 4)],
        )
        .unwrap();
        assert_eq!(h5, expected);
        assert_eq!(h_star(4, Some(&[false, false])).unwrap().len(), 2);
        let h9 = h_star(9, None).unwrap();
        assert_eq!(h9.len(), 30);
        assert!(is_free(&h9, ConfigSet::of(&[M1, S1, D1])));
    }

    #[test]
    fn h_star_parameter_errors() {
        assert!(h_star(6, None).is_err());
        assert!(h_star(6, Some(&[false])).is_err());
        assert!(h_star(7, Some(&[false; 3])).is_err());
    }

    #[test]
    fn h_star_all_side_bits() {
        for n in [4usize, 6, 8] {
            let half = n / 2;
            for mask in 0..(1u32 << half) {
                let bits: Vec<bool> = (0..half).map(|i| mask >> i & 1 == 1).collect();
                let h = h_star(n, Some(&bits)).unwrap();
                assert_eq!(h.len(), delta(n), "n = {n}, bits = {bits:?}");
                assert!(is_free(&h, ConfigSet::of(&[M1, S1, D1])));
            }
        }
    }

    #[test]
    fn h_prime_sizes() {
        assert_eq!(h_prime(5).unwrap(), Cgh::complete(5).unwrap());
        assert_eq!(h_prime(6).unwrap().len(), 17);
        let h8 = h_prime(8).unwrap();
        assert_eq!(h8.len(), 40);
        assert!(is_free(&h8, ConfigSet::single(M1)));
    }

    #[test]
    fn h_plus_sizes() {
        assert_eq!(h_plus(5, Some(0)).unwrap().len(), 7);
        assert_eq!(h_plus(6, None).unwrap().len(), 14);
        let h7 = h_plus(7, None).unwrap();
        assert_eq!(h7.len(), 20);
        assert!(is_free(&h7, ConfigSet::of(&[M1, S1])));
        assert!(h_plus(6, Some(1)).is_err());
    }

    #[test]
    fn h_plus_start_is_a_rotation() {
        for n in [5, 7, 9] {
            let base = canonical_form(&h_plus(n, Some(0)).unwrap());
            for s in 1..n {
                assert_eq!(canonical_form(&h_plus(n, Some(s)).unwrap()), base);
            }
        }
    }

    #[test]
    fn m3_sizes_and_swaps() {
        assert_eq!(m3_extremal(6, &[]).unwrap().len(), 19);
        let h7 = m3_extremal(7, &[]).unwrap();
        assert_eq!(h7.len(), 31);
        assert!(is_free(&h7, ConfigSet::single(M3)));
        for swaps in [vec![1], vec![2], vec![1, 2]] {
            let h = m3_extremal(9, &swaps).unwrap();
            assert_eq!(h.len(), 64);
            assert!(is_free(&h, ConfigSet::single(M3)), "swaps {swaps:?}");
        }
        assert!(m3_extremal(9, &[0]).is_err());
        assert!(m3_extremal(9, &[3]).is_err());
        assert!(m3_extremal(9, &[1, 1]).is_err());
    }

    #[test]
    fn m2_sizes() {
        assert_eq!(m2_extremal(7).unwrap().len(), 19);
        let h8 = m2_extremal(8).unwrap();
        assert_eq!(h8.len(), 26);
        assert!(is_free(&h8, ConfigSet::single(M2)));
        assert_eq!(m2_extremal(6).unwrap().len(), 13);
    }

    #[test]
    fn s3_and_s2_sizes() {
        assert_eq!(s3_h0(4).unwrap(), Cgh::complete(4).unwrap());
        assert_eq!(s3_h0(6).unwrap().len(), 12);
        assert!(is_free(&s3_h0(8).unwrap(), ConfigSet::single(S3)));
        assert_eq!(s3_h0(8).unwrap().len(), 24);
        assert!(matches!(s3_h0(7), Err(Error::Parity { .. })));
        assert_eq!(s2_split(5).unwrap().len(), 5);
        assert_eq!(s2_split(6).unwrap().len(), 8);
        let h8 = s2_split(8).unwrap();
        assert_eq!(h8.len(), 15);
        assert!(is_free(&h8, ConfigSet::single(S2)));
    }

    #[test]
    fn spec_arity_is_checked() {
        let bad = FamilySpec::new(Family::HPrime, 7).with_start(1);
        assert!(bad.generate().is_err());
        let ok = FamilySpec::new(Family::HStar, 6).with_side_bits(vec![true, false, true]);
        assert_eq!(ok.generate().unwrap().len(), ok.expected_size());
        assert_eq!("s2split".parse::<Family>().unwrap(), Family::S2Split);
        assert!("FOO".parse::<Family>().is_err());
    }
}
