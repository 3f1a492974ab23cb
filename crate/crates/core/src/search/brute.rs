use super::graph::Graph;
use crate::error::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Maximum independent set size by plain include/exclude enumeration over
/// vertices in index order, pruning only when the remaining vertices cannot
/// beat the best count. Correctness oracle for small graphs.
pub fn brute_force_mis(g: &Graph) -> Result<usize> {
    let v = g.vertex_count();
    if v > BRUTE_FORCE_LIMIT {
        return Err(Error::GraphTooLarge {
            vertices: v,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let masks: Vec<u32> = (0..v)
        .map(|u| {
            (0..v)
                .filter(|&w| g.has_edge(u, w))
                .fold(0, |m, w| m | 1 << w)
        })
        .collect();
    let mut best = 0;
    extend(&masks, 0, 0, 0, &mut best);
    Ok(best)
}

fn extend(masks: &[u32], next: usize, chosen: u32, size: usize, best: &mut usize) {
    if size + (masks.len() - next) <= *best {
        *best = (*best).max(size);
        return;
    }
    if next == masks.len() {
        *best = size;
        return;
    }
    if masks[next] & chosen == 0 {
        extend(masks, next + 1, chosen | 1 << next, size + 1, best);
    }
    extend(masks, next + 1, chosen, size, best);
}
