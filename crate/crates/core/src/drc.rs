//! Large cliques in dense induced-`C4`-free graphs.
//!
//! Either some missing edge `uv` has at least `beta n` common neighbours, which then
//! form a clique (two non-adjacent ones would close an induced `C4` with `u, v`), or
//! every codegree is small and the neighbourhood `U = N(x)` of a well-chosen vertex
//! has few missing edges. A maximal matching of those missing edges leaves a clique
//! of size `|U| - 2m + 1` once `x` is added back.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, InducedEmbedding, VertexSet};

/// How `beta` is derived from the edge density.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BetaRule {
    /// `alpha^2 / 128`.
    #[default]
    Standard,
    /// `(1 - sqrt(1 - alpha))^2`, for comparison.
    Sharper,
}

impl BetaRule {
    pub fn beta(self, alpha_density: f64) -> f64 {
        match self {
            BetaRule::Standard => alpha_density * alpha_density / 128.0,
            BetaRule::Sharper => (1.0 - (1.0 - alpha_density).sqrt()).powi(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrcTrace {
    pub x: usize,
    /// `N(x)`.
    pub u: VertexSet,
    /// Missing edges inside `U`.
    pub y: usize,
    /// `|U| - alpha Y / (beta (1 - alpha) n) - alpha (n - 1) / 2` at `x`.
    pub z: f64,
    pub matching: Vec<(usize, usize)>,
    pub clique: VertexSet,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DrcOutcome {
    /// A missing edge whose common neighbourhood is large; that neighbourhood is the clique.
    Codegree { missing_edge: (usize, usize), clique: VertexSet },
    Neighborhood(DrcTrace),
}

impl DrcOutcome {
    pub fn clique(&self) -> &VertexSet {
        match self {
            DrcOutcome::Codegree { clique, .. } => clique,
            DrcOutcome::Neighborhood(trace) => &trace.clique,
        }
    }
}

/// First missing edge `u < v` (lexicographic) with `|N(u) ∩ N(v)| >= beta n`, together
/// with that common neighbourhood.
pub fn codegree_scan(g: &Graph, beta: f64) -> Result<Option<((usize, usize), VertexSet)>> {
    let threshold = beta * g.n() as f64;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.neighbors(u).intersection(g.neighbors(v));
            if (common.len() as f64) < threshold {
                continue;
            }
            if let Some((a, b)) = first_missing_pair(g, &common) {
                return Err(Error::FreenessViolation { witness: InducedEmbedding { side_a: vec![u, v], side_b: vec![a, b] } });
            }
            return Ok(Some(((u, v), common)));
        }
    }
    Ok(None)
}

fn first_missing_pair(g: &Graph, set: &VertexSet) -> Option<(usize, usize)> {
    set.iter().find_map(|a| set.difference(g.neighbors(a)).iter().find(|&b| b > a).map(|b| (a, b)))
}

/// Greedy matching over the missing edges inside `u`, scanning pairs lexicographically.
pub fn maximal_missing_matching(g: &Graph, u: &VertexSet) -> Vec<(usize, usize)> {
    let mut free = u.clone();
    let mut matching = Vec::new();
    while let Some((a, b)) = first_missing_pair(g, &free) {
        matching.push((a, b));
        free.remove(a);
        free.remove(b);
    }
    matching
}

fn check_density(g: &Graph, alpha_density: f64) -> Result<()> {
    if !(alpha_density > 0.0 && alpha_density <= 1.0) {
        return Err(Error::InvalidArgument(format!("density {alpha_density} outside (0, 1]")));
    }
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let pairs = (g.n() * (g.n() - 1) / 2) as f64;
    if (g.m() as f64) < alpha_density * pairs {
        return Err(Error::Precondition(format!(
            "edge count {} below density {alpha_density} of {pairs} pairs",
            g.m()
        )));
    }
    Ok(())
}

pub fn drc_clique(g: &Graph, alpha_density: f64) -> Result<DrcOutcome> {
    drc_clique_with(g, alpha_density, BetaRule::Standard)
}

pub fn drc_clique_with(g: &Graph, alpha_density: f64, rule: BetaRule) -> Result<DrcOutcome> {
    drc_clique_with_beta(g, alpha_density, rule.beta(alpha_density))
}

/// Codegree scan followed, if it finds nothing, by the neighbourhood step.
pub fn drc_clique_with_beta(g: &Graph, alpha_density: f64, beta: f64) -> Result<DrcOutcome> {
    check_density(g, alpha_density)?;
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
    }
    if let Some((missing_edge, clique)) = codegree_scan(g, beta)? {
        return Ok(DrcOutcome::Codegree { missing_edge, clique });
    }
    Ok(DrcOutcome::Neighborhood(neighborhood_step(g, alpha_density, beta)))
}

/// The score of each vertex, in id order.
pub fn z_scores(g: &Graph, alpha_density: f64, beta: f64) -> Vec<(usize, f64)> {
    let n = g.n() as f64;
    (0..g.n())
        .into_par_iter()
        .map(|x| {
            let u = g.neighbors(x);
            let y = g.missing_edges_within(u);
            (y, z_value(u.len(), y, alpha_density, beta, n))
        })
        .collect()
}

fn z_value(u_len: usize, y: usize, alpha: f64, beta: f64, n: f64) -> f64 {
    let penalty = if y == 0 { 0.0 } else { alpha * y as f64 / (beta * (1.0 - alpha) * n) };
    u_len as f64 - penalty - alpha * (n - 1.0) / 2.0
}

/// Takes the vertex of largest score (smallest id on ties) and cleans its neighbourhood.
/// Does not run the codegree scan.
pub fn neighborhood_step(g: &Graph, alpha_density: f64, beta: f64) -> DrcTrace {
    let scores = z_scores(g, alpha_density, beta);
    let mut x = 0;
    for (v, &(_, z)) in scores.iter().enumerate() {
        if z > scores[x].1 {
            x = v;
        }
    }
    let (y, z) = scores[x];
    let u = g.neighbors(x).clone();
    let matching = maximal_missing_matching(g, &u);
    let mut clique = u.clone();
    for &(a, b) in &matching {
        clique.remove(a);
        clique.remove(b);
    }
    clique.insert(x);
    DrcTrace { x, u, y, z, matching, clique, beta }
}

/// In an induced-`C4`-free graph, any two matched pairs span at least one more missing
/// edge, so `Y >= m + C(m, 2)`.
pub fn missing_edge_audit(trace: &DrcTrace) -> bool {
    let m = trace.matching.len();
    trace.y >= m + m * m.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cluster, gen_complete, gen_cycle};

    #[test]
    fn codegree_scan_examples() {
        let two = gen_cluster(&[3, 3]).unwrap();
        assert_eq!(codegree_scan(&two, 0.01).unwrap(), None);

        let mut edges: Vec<(usize, usize)> = gen_complete(5).edges().collect();
        edges.retain(|&e| e != (0, 1));
        let g = Graph::from_edges(5, edges).unwrap();
        let ((u, v), clique) = codegree_scan(&g, 0.1).unwrap().unwrap();
        assert_eq!((u, v), (0, 1));
        assert_eq!(clique.to_vec(), vec![2, 3, 4]);
        assert!(g.is_clique(&clique));
        assert_eq!(codegree_scan(&g, 0.7).unwrap(), None);

        match codegree_scan(&gen_cycle(4), 0.1) {
            Err(Error::FreenessViolation { witness }) => {
                assert_eq!(witness.side_a, vec![0, 2]);
                assert_eq!(witness.side_b, vec![1, 3]);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn matching_examples() {
        let k4 = gen_complete(4);
        assert!(maximal_missing_matching(&k4, &k4.vertex_set()).is_empty());
        let e4 = Graph::empty(4);
        assert_eq!(maximal_missing_matching(&e4, &e4.vertex_set()), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn complete_graph() {
        let g = gen_complete(6);
        let DrcOutcome::Neighborhood(trace) = drc_clique(&g, 1.0).unwrap() else { panic!("no missing edges to scan") };
        assert_eq!(trace.y, 0);
        assert!(trace.matching.is_empty());
        assert_eq!(trace.clique, g.vertex_set());
    }

    #[test]
    fn two_five_cliques() {
        // Density 20/45; cross pairs have no common neighbours.
        let g = gen_cluster(&[5, 5]).unwrap();
        let DrcOutcome::Neighborhood(trace) = drc_clique(&g, 0.4).unwrap() else { panic!("scan must be silent") };
        assert_eq!(trace.x, 0);
        assert_eq!(trace.u.len(), 4);
        assert!(g.is_clique(&trace.u));
        assert_eq!(trace.clique.to_vec(), vec![0, 1, 2, 3, 4]);
        assert!(missing_edge_audit(&trace));
    }

    #[test]
    fn density_precondition() {
        assert!(matches!(drc_clique(&gen_cycle(5), 0.9), Err(Error::Precondition(_))));
        assert!(matches!(drc_clique(&gen_cycle(5), 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn beta_rules() {
        assert!((BetaRule::Standard.beta(0.8) - 0.005).abs() < 1e-15);
        assert!((BetaRule::Sharper.beta(0.75) - 0.25).abs() < 1e-15);
    }
}
