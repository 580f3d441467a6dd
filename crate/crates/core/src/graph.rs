/// A small simple undirected graph on vertices `0..num_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list. Edge endpoints are stored as given;
    /// loops and duplicate edges are not filtered here (cover validation
    /// reports them).
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        Self {
            num_vertices,
            edges,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(x, y)| usize::from(x == v) + usize::from(y == v))
            .sum()
    }

    pub fn cycle(len: usize) -> Self {
        let edges = (0..len).map(|i| (i, (i + 1) % len)).collect();
        Self::new(len, edges)
    }

    pub fn path(len: usize) -> Self {
        let edges = (0..len).map(|i| (i, i + 1)).collect();
        Self::new(len + 1, edges)
    }
}
