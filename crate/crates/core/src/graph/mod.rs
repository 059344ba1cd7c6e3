//! Simple undirected graphs over dense vertex ids `0..n`, one adjacency bit row per vertex.

mod generate;
mod io;
mod pattern;
mod set;

pub use generate::{
    gen_c4_free_process, gen_cluster, gen_complete, gen_cycle, gen_empty, gen_gnp, gen_path, gen_petersen,
    gen_split, gen_star,
};
pub use io::{
    format_dimacs, format_edge_list, parse_dimacs, parse_edge_list, read_graph, write_graph, GraphFormat,
};
pub use pattern::{find_induced_kst, find_independent_subset, InducedEmbedding};
pub use set::{Members, VertexSet};

use crate::error::{Error, Result};

/// Immutable simple graph. Rows are symmetric and irreflexive; `m` is cached.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { rows: vec![VertexSet::new(n); n], m: 0 }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse; self-loops
    /// and out-of-range ids are rejected.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// `|N(v) ∩ set|`.
    #[inline]
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.rows[v].intersection_len(set)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges with one end in `a` and the other in `b`. The sets must be disjoint.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        debug_assert!(a.is_disjoint(b));
        a.iter().map(|v| self.degree_into(v, b)).sum()
    }

    /// Common neighbourhood of every vertex in `set`; all of `V` for the empty set.
    pub fn common_neighbors<I: IntoIterator<Item = usize>>(&self, set: I) -> VertexSet {
        let mut out = self.vertex_set();
        for v in set {
            out.intersect_with(&self.rows[v]);
        }
        out
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.rows[v].is_disjoint(set))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.rows[v].intersection_len(set) == set.len() - 1)
    }

    /// Non-adjacent pairs `u < v` inside `set`.
    pub fn missing_edges_within(&self, set: &VertexSet) -> usize {
        let k = set.len();
        let present: usize = set.iter().map(|v| self.degree_into(v, set)).sum::<usize>() / 2;
        k * k.saturating_sub(1) / 2 - present
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let rows: Vec<VertexSet> = (0..n)
            .map(|v| {
                let mut row = self.rows[v].complement();
                row.remove(v);
                row
            })
            .collect();
        let m = n * n.saturating_sub(1) / 2 - self.m;
        Graph { rows, m }
    }

    /// Vertex of minimum degree, smallest id on ties. `None` for the null graph.
    pub fn min_degree_vertex(&self) -> Option<(usize, usize)> {
        (0..self.n()).map(|v| (v, self.degree(v))).min_by_key(|&(v, d)| (d, v))
    }

    /// Checks symmetry, irreflexivity, row width and the cached edge count.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.n();
        let mut twice = 0;
        for (v, row) in self.rows.iter().enumerate() {
            if row.universe() != n {
                return Err(format!("row {v} has width {} instead of {n}", row.universe()));
            }
            if row.contains(v) {
                return Err(format!("self-loop at {v}"));
            }
            for u in row {
                if !self.rows[u].contains(v) {
                    return Err(format!("asymmetric pair ({v}, {u})"));
                }
            }
            twice += row.len();
        }
        if twice != 2 * self.m {
            return Err(format!("cached m = {} but rows give {}", self.m, twice / 2));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("m", &self.m).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Mutable staging area used by parsers and generators.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    rows: Vec<VertexSet>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        Self { rows: vec![VertexSet::new(n); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Adds `uv`; returns `false` if it was already present. Panics on loops or bad ids.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loop at {u}");
        let fresh = self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.m += fresh as usize;
        fresh
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn build(self) -> Graph {
        Graph { rows: self.rows, m: self.m }
    }
}
