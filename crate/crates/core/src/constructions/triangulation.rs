use std::collections::BTreeSet;

use crate::cgh::Cgh;
use crate::config::in_open_arc;
use crate::error::{Error, Result};
use crate::triple::Triple;

fn is_side(n: usize, u: usize, v: usize) -> bool {
    (u + 1) % n == v || (v + 1) % n == u
}

fn cross(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    in_open_arc(n, a, b, c) != in_open_arc(n, a, b, d)
}

/// Checks that the diagonals together with the polygon sides triangulate the
/// convex `n`-gon, returning the normalized diagonal set.
pub fn validate_triangulation(
    n: usize,
    diagonals: &[(usize, usize)],
) -> Result<BTreeSet<(usize, usize)>> {
    if n < 3 {
        return Err(Error::GroundSetTooSmall { n, min: 3 });
    }
    let mut set = BTreeSet::new();
    for &(u, v) in diagonals {
        let (u, v) = (u.min(v), u.max(v));
        if v >= n {
            return Err(Error::VertexOutOfRange { n, vertex: v });
        }
        if u == v || is_side(n, u, v) {
            return Err(Error::InvalidTriangulation(format!(
                "{{{u},{v}}} is not a diagonal"
            )));
        }
        if !set.insert((u, v)) {
            return Err(Error::InvalidTriangulation(format!(
                "diagonal {{{u},{v}}} repeated"
            )));
        }
    }
    let list: Vec<_> = set.iter().copied().collect();
    for (i, p) in list.iter().enumerate() {
        for q in &list[i + 1..] {
            if cross(n, *p, *q) {
                return Err(Error::InvalidTriangulation(format!(
                    "diagonals {p:?} and {q:?} cross"
                )));
            }
        }
    }
    // Non-crossing diagonals of a convex polygon number at most n-3, with
    // equality exactly for triangulations.
    if set.len() != n - 3 {
        return Err(Error::InvalidTriangulation(format!(
            "{} diagonals given, a triangulation of the {n}-gon has {}",
            set.len(),
            n - 3
        )));
    }
    Ok(set)
}

/// The `n - 2` triangles of a triangulation of the convex `n`-gon.
pub fn d2_from_triangulation(n: usize, diagonals: &[(usize, usize)]) -> Result<Cgh> {
    let diags = validate_triangulation(n, diagonals)?;
    let edge = |u: usize, v: usize| is_side(n, u, v) || diags.contains(&(u.min(v), u.max(v)));
    let faces: Vec<Triple> = Triple::all(n)
        .filter(|t| {
            let [a, b, c] = t.vertices();
            edge(a, b) && edge(b, c) && edge(a, c)
        })
        .collect();
    if faces.len() != n - 2 {
        return Err(Error::Inconsistent(format!(
            "triangulation produced {} triangles",
            faces.len()
        )));
    }
    Cgh::collect(n, faces)
}

/// Fan triangulation from `v0`.
pub fn d2_fan(n: usize) -> Result<Cgh> {
    if n < 3 {
        return Err(Error::GroundSetTooSmall { n, min: 3 });
    }
    let diagonals: Vec<_> = (2..n - 1).map(|j| (0, j)).collect();
    d2_from_triangulation(n, &diagonals)
}
