//! Exact maximum independent set by branch-and-bound.
//!
//! Each node applies forced moves (residual-isolated vertices, and for the
//! size search also pendant vertices), bounds the candidate set by a greedy
//! clique cover, and branches on the candidate of maximum residual degree
//! (lowest index on ties): include first, then exclude. The reported
//! witness is the lexicographically smallest maximum independent set, so it
//! does not depend on the thread count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::bits::Bits;
use super::graph::Graph;
use crate::error::{Error, Result};

/// Largest graph the solver accepts (`9 * 64` bits per row).
pub const MAX_VERTICES: usize = 576;

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Optimal,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Wall-clock limit; `None` runs to completion.
    pub budget: Option<Duration>,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Some(DEFAULT_BUDGET),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            threads: 1,
            ..SearchOptions::default()
        }
    }

    /// Default options with the thread count capped by `CGX_THREADS`.
    pub fn from_env() -> Self {
        let mut opts = SearchOptions::default();
        if let Some(cap) = std::env::var("CGX_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            opts.threads = opts.threads.min(cap);
        }
        opts
    }

    pub fn with_budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisResult {
    pub size: usize,
    /// Ascending vertex list.
    pub vertices: Vec<usize>,
    pub status: Status,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl MisResult {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

/// Maximum independent set of `g`.
pub fn max_independent_set(g: &Graph, opts: &SearchOptions) -> Result<MisResult> {
    dispatch(g, |ctx| ctx.solve(opts))
}

/// Every independent set of size `size` (normally the maximum), in
/// lexicographic order of their ascending vertex lists, stopping after
/// `cap` sets. The flag reports whether the cap cut the listing short.
pub fn independent_sets_of_size(
    g: &Graph,
    size: usize,
    cap: usize,
) -> Result<(Vec<Vec<usize>>, bool)> {
    dispatch(g, |ctx| Ok(ctx.enumerate(size, cap)))
}

fn dispatch<T>(g: &Graph, run: impl FnOnce(&mut dyn Engine) -> Result<T>) -> Result<T> {
    let v = g.vertex_count();
    match v.div_ceil(64) {
        0 | 1 => run(&mut Solver::<1>::new(g)),
        2 => run(&mut Solver::<2>::new(g)),
        3 | 4 => run(&mut Solver::<4>::new(g)),
        5..=9 => run(&mut Solver::<9>::new(g)),
        _ => Err(Error::GraphTooLarge {
            vertices: v,
            limit: MAX_VERTICES,
        }),
    }
}

trait Engine {
    fn solve(&mut self, opts: &SearchOptions) -> Result<MisResult>;
    fn enumerate(&mut self, size: usize, cap: usize) -> (Vec<Vec<usize>>, bool);
}

struct Solver<const W: usize> {
    vertices: usize,
    adj: Vec<Bits<W>>,
}

/// Best solution seen so far, shared between workers. The size only grows.
struct Incumbent<const W: usize> {
    size: AtomicUsize,
    set: Mutex<Bits<W>>,
}

impl<const W: usize> Incumbent<W> {
    fn new() -> Self {
        Incumbent {
            size: AtomicUsize::new(0),
            set: Mutex::new(Bits::empty()),
        }
    }

    fn size(&self) -> usize {
        self.size.load(Ordering::Relaxed)
    }

    fn offer(&self, size: usize, set: &Bits<W>) {
        if size <= self.size() {
            return;
        }
        let mut guard = self.set.lock().expect("incumbent lock");
        if size > self.size.load(Ordering::Acquire) {
            *guard = *set;
            self.size.store(size, Ordering::Release);
        }
    }

    fn get(&self) -> (usize, Bits<W>) {
        let guard = self.set.lock().expect("incumbent lock");
        (self.size.load(Ordering::Acquire), *guard)
    }
}

/// Per-worker search state.
struct Walker<'a, const W: usize> {
    adj: &'a [Bits<W>],
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    nodes: u64,
    cover: Vec<Bits<W>>,
}

#[derive(Clone, Copy)]
struct Node<const W: usize> {
    cand: Bits<W>,
    chosen: Bits<W>,
    size: usize,
}

impl<'a, const W: usize> Walker<'a, W> {
    fn new(adj: &'a [Bits<W>], deadline: Option<Instant>, stop: &'a AtomicBool) -> Self {
        Walker {
            adj,
            deadline,
            stop,
            nodes: 0,
            cover: Vec::new(),
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    #[inline]
    fn take(&self, node: &mut Node<W>, v: usize) {
        node.chosen.insert(v);
        node.cand = node.cand.and_not(&self.adj[v]);
        node.cand.remove(v);
        node.size += 1;
    }

    /// Applies forced inclusions until none remain.
    fn reduce(&self, node: &mut Node<W>, pendant: bool) {
        loop {
            let mut progress = false;
            for v in node.cand.iter() {
                if !node.cand.contains(v) {
                    continue;
                }
                let deg = self.adj[v].intersection_count(&node.cand);
                if deg == 0 || (pendant && deg == 1) {
                    self.take(node, v);
                    progress = true;
                }
            }
            if !progress {
                return;
            }
        }
    }

    /// Candidate with the most candidate neighbours, lowest index on ties.
    fn pick(&self, cand: &Bits<W>) -> usize {
        let mut best = (0, usize::MAX);
        for v in cand.iter() {
            let d = self.adj[v].intersection_count(cand);
            if d > best.0 || best.1 == usize::MAX {
                best = (d, v);
            }
        }
        best.1
    }

    /// Number of cliques in a greedy first-fit clique cover of `cand`, an
    /// upper bound on any independent subset of it.
    fn clique_cover(&mut self, cand: &Bits<W>) -> usize {
        self.cover.clear();
        for v in cand.iter() {
            match self.cover.iter_mut().find(|joinable| joinable.contains(v)) {
                Some(joinable) => *joinable = joinable.and(&self.adj[v]),
                None => self.cover.push(self.adj[v].and(cand)),
            }
        }
        self.cover.len()
    }

    fn maximize(&mut self, mut node: Node<W>, best: &Incumbent<W>) {
        if self.tick() {
            return;
        }
        self.reduce(&mut node, true);
        if node.cand.is_empty() {
            best.offer(node.size, &node.chosen);
            return;
        }
        if node.size + node.cand.count() <= best.size()
            || node.size + self.clique_cover(&node.cand) <= best.size()
        {
            return;
        }
        let v = self.pick(&node.cand);
        let mut with = node;
        self.take(&mut with, v);
        self.maximize(with, best);
        node.cand.remove(v);
        self.maximize(node, best);
    }

    /// Some independent set of size at least `target` extending `node`.
    fn find(&mut self, mut node: Node<W>, target: usize) -> Option<Bits<W>> {
        if self.tick() {
            return None;
        }
        self.reduce(&mut node, true);
        if node.size >= target {
            return Some(node.chosen);
        }
        if node.size + node.cand.count() < target
            || node.size + self.clique_cover(&node.cand) < target
        {
            return None;
        }
        let v = self.pick(&node.cand);
        let mut with = node;
        self.take(&mut with, v);
        if let Some(found) = self.find(with, target) {
            return Some(found);
        }
        node.cand.remove(v);
        self.find(node, target)
    }

    fn enumerate(
        &mut self,
        mut node: Node<W>,
        target: usize,
        out: &mut Vec<Bits<W>>,
        cap: usize,
    ) -> bool {
        if out.len() >= cap {
            return false;
        }
        self.nodes += 1;
        self.reduce(&mut node, false);
        if node.cand.is_empty() {
            if node.size == target {
                out.push(node.chosen);
            }
            return true;
        }
        if node.size + self.clique_cover(&node.cand) < target {
            return true;
        }
        let v = self.pick(&node.cand);
        let mut with = node;
        self.take(&mut with, v);
        if !self.enumerate(with, target, out, cap) {
            return false;
        }
        node.cand.remove(v);
        self.enumerate(node, target, out, cap)
    }

    fn greedy(&self, vertices: usize) -> Node<W> {
        let mut node = Node {
            cand: Bits::full(vertices),
            chosen: Bits::empty(),
            size: 0,
        };
        while !node.cand.is_empty() {
            let v = node
                .cand
                .iter()
                .min_by_key(|&v| (self.adj[v].intersection_count(&node.cand), v))
                .expect("nonempty");
            self.take(&mut node, v);
        }
        node
    }

    /// Expands the tree breadth-first in branching order until at least
    /// `want` open nodes exist, for distribution across threads.
    fn frontier(&mut self, root: Node<W>, want: usize, best: &Incumbent<W>) -> Vec<Node<W>> {
        let mut open = vec![root];
        for _ in 0..16 {
            if open.len() >= want {
                break;
            }
            let mut next = Vec::with_capacity(open.len() * 2);
            for mut node in open {
                self.nodes += 1;
                self.reduce(&mut node, true);
                if node.cand.is_empty() {
                    best.offer(node.size, &node.chosen);
                    continue;
                }
                if node.size + self.clique_cover(&node.cand) <= best.size() {
                    continue;
                }
                let v = self.pick(&node.cand);
                let mut with = node;
                self.take(&mut with, v);
                next.push(with);
                node.cand.remove(v);
                next.push(node);
            }
            open = next;
        }
        open
    }

    /// Lexicographically smallest independent set of size `k`, given one
    /// such set. `None` if the deadline passes first.
    fn lexmin(&mut self, vertices: usize, k: usize, witness: Bits<W>) -> Option<Bits<W>> {
        let mut node = Node {
            cand: Bits::full(vertices),
            chosen: Bits::empty(),
            size: 0,
        };
        let mut current = witness;
        for v in 0..vertices {
            if !node.cand.contains(v) {
                continue;
            }
            if !current.contains(v) {
                let mut with = node;
                self.take(&mut with, v);
                match self.find(with, k) {
                    Some(found) => current = found,
                    None if self.stop.load(Ordering::Relaxed) => return None,
                    None => {
                        node.cand.remove(v);
                        continue;
                    }
                }
            }
            self.take(&mut node, v);
        }
        debug_assert_eq!(node.size, k);
        Some(node.chosen)
    }
}

impl<const W: usize> Solver<W> {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.vertex_count())
            .map(|v| Bits::from_words(g.row(v)))
            .collect();
        Solver {
            vertices: g.vertex_count(),
            adj,
        }
    }
}

impl<const W: usize> Engine for Solver<W> {
    fn solve(&mut self, opts: &SearchOptions) -> Result<MisResult> {
        let start = Instant::now();
        let deadline = opts.budget.map(|b| start + b);
        let stop = AtomicBool::new(false);
        let best = Incumbent::<W>::new();
        let mut walker = Walker::new(&self.adj, deadline, &stop);

        let greedy = walker.greedy(self.vertices);
        best.offer(greedy.size, &greedy.chosen);
        let root = Node {
            cand: Bits::full(self.vertices),
            chosen: Bits::empty(),
            size: 0,
        };

        let threads = opts.threads.max(1);
        if threads == 1 || self.vertices < 32 {
            walker.maximize(root, &best);
        } else {
            let tasks = walker.frontier(root, threads * 16, &best);
            let total = AtomicU64::new(0);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
            pool.install(|| {
                tasks.par_iter().for_each(|task| {
                    let mut w = Walker::new(&self.adj, deadline, &stop);
                    w.maximize(*task, &best);
                    total.fetch_add(w.nodes, Ordering::Relaxed);
                })
            });
            walker.nodes += total.into_inner();
        }

        let (size, found) = best.get();
        let (status, set) = if stop.load(Ordering::Relaxed) {
            (Status::LowerBoundOnly, found)
        } else {
            match walker.lexmin(self.vertices, size, found) {
                Some(canonical) => (Status::Optimal, canonical),
                None => (Status::LowerBoundOnly, found),
            }
        };
        Ok(MisResult {
            size,
            vertices: set.to_vec(),
            status,
            nodes: walker.nodes,
            elapsed: start.elapsed(),
        })
    }

    fn enumerate(&mut self, size: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let stop = AtomicBool::new(false);
        let mut walker = Walker::new(&self.adj, None, &stop);
        let root = Node {
            cand: Bits::full(self.vertices),
            chosen: Bits::empty(),
            size: 0,
        };
        let mut out = Vec::new();
        walker.enumerate(root, size, &mut out, cap.saturating_add(1));
        let truncated = out.len() > cap;
        out.truncate(cap);
        let mut sets: Vec<Vec<usize>> = out.into_iter().map(Bits::to_vec).collect();
        sets.sort();
        (sets, truncated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(g: &Graph) -> MisResult {
        max_independent_set(g, &SearchOptions::sequential()).unwrap()
    }

    #[test]
    fn empty_and_complete_graphs() {
        for v in [1, 5, 64, 65, 130] {
            let r = solve(&Graph::new(v));
            assert_eq!(r.size, v);
            assert_eq!(r.status, Status::Optimal);
            let r = solve(&Graph::complete(v));
            assert_eq!(r.size, 1);
            assert_eq!(r.vertices, vec![0]);
        }
        assert_eq!(solve(&Graph::new(0)).size, 0);
    }

    #[test]
    fn path_and_cycle() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let r = solve(&p3);
        assert_eq!((r.size, r.vertices), (2, vec![0, 2]));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let r = solve(&c5);
        assert_eq!((r.size, r.vertices), (2, vec![0, 2]));
    }

    #[test]
    fn witness_is_lexicographic_minimum() {
        // Perfect matching 0-1, 2-3, 4-5 plus edge 0-2: the lexmin maximum
        // set is {0, 3, 4}.
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5), (0, 2)]);
        let r = solve(&g);
        assert_eq!(r.vertices, vec![0, 3, 4]);
        let par = max_independent_set(&g, &SearchOptions::default().with_threads(4)).unwrap();
        assert_eq!(par.vertices, r.vertices);
    }

    #[test]
    fn enumerates_all_maximum_sets() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let (sets, truncated) = independent_sets_of_size(&c4, 2, 10).unwrap();
        assert_eq!(sets, vec![vec![0, 2], vec![1, 3]]);
        assert!(!truncated);
        let (sets, truncated) = independent_sets_of_size(&c4, 2, 1).unwrap();
        assert_eq!(sets.len(), 1);
        assert!(truncated);
        let (sets, truncated) = independent_sets_of_size(&c4, 2, 2).unwrap();
        assert_eq!(sets.len(), 2);
        assert!(!truncated);
    }

    #[test]
    fn zero_budget_degrades_to_lower_bound() {
        // Disjoint union of 40 triangles: any timeout leaves a valid set.
        let mut g = Graph::new(120);
        for i in 0..40 {
            g.add_edge(3 * i, 3 * i + 1);
            g.add_edge(3 * i + 1, 3 * i + 2);
            g.add_edge(3 * i, 3 * i + 2);
        }
        let opts = SearchOptions::sequential().with_budget(Some(Duration::ZERO));
        let r = max_independent_set(&g, &opts).unwrap();
        assert!(g.is_independent(&r.vertices));
        assert_eq!(r.vertices.len(), r.size);
    }

    #[test]
    fn rejects_oversized_graphs() {
        assert!(matches!(
            max_independent_set(&Graph::new(MAX_VERTICES + 1), &SearchOptions::sequential()),
            Err(Error::GraphTooLarge { .. })
        ));
    }
}
