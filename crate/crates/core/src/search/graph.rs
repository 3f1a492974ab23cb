/// Simple undirected graph stored as adjacency bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        let words = vertices.div_ceil(64).max(1);
        Graph {
            vertices,
            words,
            rows: vec![0; vertices * words],
        }
    }

    pub fn complete(vertices: usize) -> Self {
        let mut g = Graph::new(vertices);
        for u in 0..vertices {
            for v in u + 1..vertices {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(vertices);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.vertices && v < self.vertices && u != v,
            "bad edge ({u}, {v})"
        );
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertices).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            u < self.vertices && set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.vertices).all(|u| {
            !self.has_edge(u, u)
                && (0..self.vertices).all(|v| self.has_edge(u, v) == self.has_edge(v, u))
        })
    }
}
