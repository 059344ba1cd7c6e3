//! Exact maximum independent sets.
//!
//! The optimiser is a bitset branch-and-bound in the style of MCQ: candidates are
//! greedily covered by cliques, and the number of cliques bounds how many more
//! vertices any independent extension can take. Enumeration pins `alpha` with the
//! optimiser first and then lists only the independent sets of exactly that size.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Enumeration refuses graphs larger than this unless a cap is given explicitly.
pub const DEFAULT_ENUMERATION_CAP: usize = 48;

/// All maximum independent sets of a graph, in canonical (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisFamily {
    alpha: usize,
    sets: Vec<VertexSet>,
    host_n: usize,
}

impl MisFamily {
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }

    /// First member disjoint from `t`, if any.
    pub fn first_unhit(&self, t: &VertexSet) -> Option<&VertexSet> {
        self.sets.iter().find(|set| set.is_disjoint(t))
    }

    pub fn all_hit_by(&self, t: &VertexSet) -> bool {
        self.first_unhit(t).is_none()
    }

    /// Intersection of all members.
    pub fn intersection(&self) -> VertexSet {
        let mut out = VertexSet::full(self.host_n);
        for set in &self.sets {
            out.intersect_with(set);
        }
        out
    }
}

/// Greedy clique cover of `pool`. Returns the vertices in cover order with the
/// 1-based index of their clique, so `labels[i]` bounds the independence number of
/// `order[..=i]`.
fn clique_cover(g: &Graph, pool: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(pool.len());
    let mut labels = Vec::with_capacity(pool.len());
    let mut uncovered = pool.clone();
    let mut label = 0;
    while !uncovered.is_empty() {
        label += 1;
        let mut open = uncovered.clone();
        while let Some(v) = open.first() {
            order.push(v);
            labels.push(label);
            uncovered.remove(v);
            open.remove(v);
            open.intersect_with(g.neighbors(v));
        }
    }
    (order, labels)
}

fn cover_bound(g: &Graph, pool: &VertexSet) -> usize {
    clique_cover(g, pool).1.last().copied().unwrap_or(0)
}

/// Relabels vertices by (degree, id) ascending so that bit order is branching order.
struct Relabeled {
    graph: Graph,
    to_local: Vec<usize>,
}

impl Relabeled {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut by_degree: Vec<usize> = (0..n).collect();
        by_degree.sort_by_key(|&v| (g.degree(v), v));
        let mut to_local = vec![0; n];
        for (local, &orig) in by_degree.iter().enumerate() {
            to_local[orig] = local;
        }
        let edges = g.edges().map(|(u, v)| (to_local[u], to_local[v]));
        let graph = Graph::from_edges(n, edges).expect("relabelling preserves validity");
        Self { graph, to_local }
    }

    fn localize(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(set.universe(), set.iter().map(|v| self.to_local[v]))
    }
}

struct MaxSearch<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MaxSearch<'_> {
    fn expand(&mut self, mut pool: VertexSet) {
        let (order, labels) = clique_cover(self.g, &pool);
        for i in (0..order.len()).rev() {
            if self.current.len() + labels[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let mut next = pool.difference(self.g.neighbors(v));
            next.remove(v);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            pool.remove(v);
        }
    }
}

/// Min-degree greedy independent set inside `pool`; seeds the branch-and-bound.
fn greedy_independent(g: &Graph, pool: &VertexSet) -> Vec<usize> {
    let mut pool = pool.clone();
    let mut out = Vec::new();
    while let Some(v) = pool.iter().min_by_key(|&v| (g.degree_into(v, &pool), v)) {
        out.push(v);
        pool.subtract(g.neighbors(v));
        pool.remove(v);
    }
    out
}

/// Independence number of `G[candidates]`.
pub fn independence_number_within(g: &Graph, candidates: &VertexSet) -> usize {
    let relabeled = Relabeled::new(g);
    let pool = relabeled.localize(candidates);
    let mut search = MaxSearch { g: &relabeled.graph, best: greedy_independent(&relabeled.graph, &pool), current: Vec::new() };
    search.expand(pool);
    search.best.len()
}

/// Lexicographically first independent set of `G[candidates]` with exactly `size` vertices.
pub fn first_independent_set_within(g: &Graph, candidates: &VertexSet, size: usize) -> Option<VertexSet> {
    fn extend(g: &Graph, pool: &VertexSet, size: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return true;
        }
        if chosen.len() + cover_bound(g, pool) < size {
            return false;
        }
        let mut pool = pool.clone();
        while let Some(v) = pool.first() {
            if chosen.len() + pool.len() < size {
                return false;
            }
            pool.remove(v);
            chosen.push(v);
            let next = pool.difference(g.neighbors(v));
            if extend(g, &next, size, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(size);
    extend(g, candidates, size, &mut chosen).then(|| VertexSet::from_vertices(g.n(), chosen))
}

/// `alpha(G)` and a witness. The size comes from branch-and-bound; the witness is
/// the lexicographically first maximum independent set, so it is canonical.
pub fn alpha_with_witness(g: &Graph) -> (usize, VertexSet) {
    alpha_within(g, &g.vertex_set())
}

/// As [`alpha_with_witness`], restricted to `G[candidates]`.
pub fn alpha_within(g: &Graph, candidates: &VertexSet) -> (usize, VertexSet) {
    let alpha = independence_number_within(g, candidates);
    let witness = first_independent_set_within(g, candidates, alpha).expect("a set of size alpha exists");
    (alpha, witness)
}

/// Size and witness of a maximum clique, via the complement.
pub fn clique_number(g: &Graph) -> (usize, VertexSet) {
    alpha_with_witness(&g.complement())
}

pub fn enumerate_mis(g: &Graph) -> Result<MisFamily> {
    enumerate_mis_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_mis_with_cap(g: &Graph, cap: usize) -> Result<MisFamily> {
    if g.n() > cap {
        return Err(Error::EnumerationCap { n: g.n(), cap });
    }
    let alpha = independence_number_within(g, &g.vertex_set());

    fn collect(g: &Graph, pool: &VertexSet, alpha: usize, chosen: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if chosen.len() == alpha {
            out.push(VertexSet::from_vertices(g.n(), chosen.iter().copied()));
            return;
        }
        if chosen.len() + cover_bound(g, pool) < alpha {
            return;
        }
        let mut pool = pool.clone();
        while let Some(v) = pool.first() {
            if chosen.len() + pool.len() < alpha {
                return;
            }
            pool.remove(v);
            chosen.push(v);
            let next = pool.difference(g.neighbors(v));
            collect(g, &next, alpha, chosen, out);
            chosen.pop();
        }
    }

    let mut sets = Vec::new();
    collect(g, &g.vertex_set(), alpha, &mut Vec::with_capacity(alpha), &mut sets);
    debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
    Ok(MisFamily { alpha, sets, host_n: g.n() })
}

/// Intersection of all maximum independent sets.
pub fn kernel(g: &Graph) -> Result<VertexSet> {
    kernel_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

pub fn kernel_with_cap(g: &Graph, cap: usize) -> Result<VertexSet> {
    Ok(enumerate_mis_with_cap(g, cap)?.intersection())
}

/// Kernel computed without enumeration: `v` lies in every maximum independent set
/// iff deleting it lowers the independence number.
pub fn kernel_by_deletion(g: &Graph) -> VertexSet {
    let all = g.vertex_set();
    let alpha = independence_number_within(g, &all);
    VertexSet::from_vertices(
        g.n(),
        (0..g.n()).filter(|&v| {
            let mut rest = all.clone();
            rest.remove(v);
            independence_number_within(g, &rest) < alpha
        }),
    )
}
