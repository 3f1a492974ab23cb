//! Closed forms for extremal numbers, keyed by short ids.

use std::fmt;
use std::str::FromStr;

use crate::config::{ConfigSet, ConfigType};
use crate::constructions::delta;
use crate::error::{Error, Result};
use crate::triple::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `Δ(n)`, for `{M1,S1,D1}` and for `D1`.
    Delta,
    /// `Δ(n) + n(n-3)/2`.
    M1,
    /// `Δ(n) + ⌊n/2⌋⌊(n-2)/2⌋`.
    M1S1,
    /// `C(n,3) - C(n-3,3)`.
    M3,
    /// `C(n,2) - 2`, from `n = 7` on.
    M2,
    /// `n(n-2)/2`, even `n`.
    S3,
    /// `⌊n²/4⌋ - 1`, conjectured only.
    S2,
}

impl Formula {
    pub const ALL: [Formula; 7] = [
        Formula::Delta,
        Formula::M1,
        Formula::M1S1,
        Formula::M3,
        Formula::M2,
        Formula::S3,
        Formula::S2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::Delta => "delta",
            Formula::M1 => "m1",
            Formula::M1S1 => "m1s1",
            Formula::M3 => "m3",
            Formula::M2 => "m2",
            Formula::S3 => "s3",
            Formula::S2 => "s2",
        }
    }

    pub fn eval(self, n: usize) -> usize {
        match self {
            Formula::Delta => delta(n),
            Formula::M1 => delta(n) + n * n.saturating_sub(3) / 2,
            Formula::M1S1 => delta(n) + (n / 2) * (n.saturating_sub(2) / 2),
            Formula::M3 => binomial(n, 3) - binomial(n.saturating_sub(3), 3),
            Formula::M2 => binomial(n, 2).saturating_sub(2),
            Formula::S3 => n * n.saturating_sub(2) / 2,
            Formula::S2 => (n * n / 4).saturating_sub(1),
        }
    }

    /// The formula matching a forbidden set, if there is one.
    pub fn for_forbidden(forbidden: ConfigSet) -> Option<Formula> {
        use ConfigType::*;
        [
            (ConfigSet::of(&[M1, S1, D1]), Formula::Delta),
            (ConfigSet::single(D1), Formula::Delta),
            (ConfigSet::single(M1), Formula::M1),
            (ConfigSet::of(&[M1, S1]), Formula::M1S1),
            (ConfigSet::single(M3), Formula::M3),
            (ConfigSet::single(M2), Formula::M2),
            (ConfigSet::single(S3), Formula::S3),
            (ConfigSet::single(S2), Formula::S2),
        ]
        .into_iter()
        .find(|(f, _)| *f == forbidden)
        .map(|(_, formula)| formula)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Formula::ALL
            .into_iter()
            .find(|f| f.id() == lower)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown formula '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let m1: Vec<_> = (6..=9).map(|n| Formula::M1.eval(n)).collect();
        assert_eq!(m1, vec![17, 28, 40, 57]);
        let m1s1: Vec<_> = (6..=9).map(|n| Formula::M1S1.eval(n)).collect();
        assert_eq!(m1s1, vec![14, 20, 32, 42]);
        let m3: Vec<_> = (4..=9).map(|n| Formula::M3.eval(n)).collect();
        assert_eq!(m3, vec![4, 10, 19, 31, 46, 64]);
        let s2: Vec<_> = (5..=9).map(|n| Formula::S2.eval(n)).collect();
        assert_eq!(s2, vec![5, 8, 11, 15, 19]);
        assert_eq!(Formula::S3.eval(8), 24);
        assert_eq!(Formula::M2.eval(9), 34);
    }

    #[test]
    fn parse_and_lookup() {
        assert_eq!("M1S1".parse::<Formula>().unwrap(), Formula::M1S1);
        assert!("nope".parse::<Formula>().is_err());
        assert_eq!(
            Formula::for_forbidden("D1,S1,M1".parse().unwrap()),
            Some(Formula::Delta)
        );
        assert_eq!(Formula::for_forbidden("D2".parse().unwrap()), None);
    }
}
