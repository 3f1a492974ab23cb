//! The Fano gadget on seven points and its expansion over an `S(n,7,2)`
//! design.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cgh::Cgh;
use crate::config::{first_violation, ConfigSet, ConfigType};
use crate::error::{Error, Result};
use crate::triple::{binomial, Triple};

const BLOCK: usize = 7;

/// Blocks of size seven on `n` points, every pair in exactly one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl Design {
    pub fn from_json(s: &str) -> Result<Self> {
        let d: Design = serde_json::from_str(s)?;
        d.validate()?;
        Ok(d)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Design::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("design serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (bi, block) in self.blocks.iter().enumerate() {
            let mut sorted = block.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != BLOCK || block.len() != BLOCK {
                return Err(Error::InvalidDesign(format!(
                    "block {bi} does not have {BLOCK} distinct points"
                )));
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidDesign(format!(
                    "block {bi} has point {v} outside 0..{n}"
                )));
            }
            for (i, &u) in sorted.iter().enumerate() {
                for &v in &sorted[i + 1..] {
                    if let Some(prev) = owner.insert((u, v), bi) {
                        return Err(Error::InvalidDesign(format!(
                            "pair {{{u},{v}}} lies in blocks {prev} and {bi}"
                        )));
                    }
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if !owner.contains_key(&(u, v)) {
                    return Err(Error::InvalidDesign(format!(
                        "pair {{{u},{v}}} is not covered"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A Fano plane on `{0..6}` containing `{0,1,2}`, `{2,3,4}` and `{4,5,0}`:
/// the first completion found by backtracking over uncovered pairs.
pub fn fano_lines() -> Result<Vec<Triple>> {
    let mut lines = vec![
        Triple::new(0, 1, 2)?,
        Triple::new(2, 3, 4)?,
        Triple::new(0, 4, 5)?,
    ];
    let mut covered = [[false; BLOCK]; BLOCK];
    for l in &lines {
        mark(&mut covered, l, true);
    }
    if complete_lines(&mut covered, &mut lines) {
        Ok(lines)
    } else {
        Err(Error::Inconsistent("no Fano completion exists".into()))
    }
}

fn mark(covered: &mut [[bool; BLOCK]; BLOCK], t: &Triple, value: bool) {
    let [a, b, c] = t.vertices();
    for (u, v) in [(a, b), (a, c), (b, c)] {
        covered[u][v] = value;
        covered[v][u] = value;
    }
}

fn complete_lines(covered: &mut [[bool; BLOCK]; BLOCK], lines: &mut Vec<Triple>) -> bool {
    let open = (0..BLOCK)
        .flat_map(|u| (u + 1..BLOCK).map(move |v| (u, v)))
        .find(|&(u, v)| !covered[u][v]);
    let Some((u, v)) = open else {
        return true;
    };
    for w in 0..BLOCK {
        if w == u || w == v || covered[u][w] || covered[v][w] {
            continue;
        }
        let line = Triple::new(u, v, w).expect("distinct");
        mark(covered, &line, true);
        lines.push(line);
        if complete_lines(covered, lines) {
            return true;
        }
        lines.pop();
        mark(covered, &line, false);
    }
    false
}

/// The seven Fano lines plus `{0,2,4}` on `Ω_7`.
pub fn d2_fano7() -> Result<Cgh> {
    let mut all = fano_lines()?;
    all.push(Triple::new(0, 2, 4)?);
    Cgh::new(7, all)
}

#[derive(Debug, Clone)]
pub struct DesignExpansion {
    pub cgh: Cgh,
    /// Outcome of the D2-freeness check on the union.
    pub d2_free: bool,
}

/// Places the Fano gadget on every block, relabelled along the block's
/// induced cyclic order.
pub fn d2_expand_design(design: &Design) -> Result<DesignExpansion> {
    design.validate()?;
    let gadget = d2_fano7()?;
    let mut all = Vec::with_capacity(design.blocks.len() * gadget.len());
    for block in &design.blocks {
        let mut order = block.clone();
        order.sort_unstable();
        for t in gadget.iter() {
            let [a, b, c] = t.vertices().map(|w| order[w]);
            all.push(Triple::new(a, b, c)?);
        }
    }
    let cgh = Cgh::new(design.n, all)?;
    let expected = 8 * binomial(design.n, 2) / 21;
    if cgh.len() != expected {
        return Err(Error::Inconsistent(format!(
            "expansion has {} triples, expected {expected}",
            cgh.len()
        )));
    }
    let d2_free = first_violation(&cgh, ConfigSet::single(ConfigType::D2)).is_none();
    Ok(DesignExpansion { cgh, d2_free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::is_free;

    #[test]
    fn fano_gadget() {
        let lines = fano_lines().unwrap();
        assert_eq!(lines.len(), 7);
        for (i, s) in lines.iter().enumerate() {
            for t in &lines[i + 1..] {
                assert_eq!(s.intersection_size(t), 1);
            }
        }
        let h = d2_fano7().unwrap();
        assert_eq!(h.len(), 8);
        assert!(is_free(&h, ConfigSet::single(ConfigType::D2)));
    }

    #[test]
    fn trivial_design() {
        let d = Design {
            n: 7,
            blocks: vec![(0..7).collect()],
        };
        let e = d2_expand_design(&d).unwrap();
        assert_eq!(e.cgh, d2_fano7().unwrap());
        assert!(e.d2_free);
    }

    #[test]
    fn malformed_designs() {
        let twice = r#"{"n":8,"blocks":[[0,1,2,3,4,5,6],[0,1,2,3,4,5,7]]}"#;
        let err = Design::from_json(twice).unwrap_err().to_string();
        assert!(err.contains("{0,1}"), "{err}");
        let short = r#"{"n":7,"blocks":[[0,1,2,3,4,5]]}"#;
        assert!(Design::from_json(short).is_err());
        let uncovered = r#"{"n":8,"blocks":[[0,1,2,3,4,5,6]]}"#;
        assert!(Design::from_json(uncovered).is_err());
    }
}
