//! Deterministic graph generators. Every random generator is a pure function of its seed.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};
use crate::rng::seeded;

pub fn gen_empty(n: usize) -> Graph {
    Graph::empty(n)
}

pub fn gen_complete(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add_edge(u, v);
        }
    }
    b.build()
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn gen_path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge(v - 1, v);
    }
    b.build()
}

/// Cycle `0 - 1 - ... - (n-1) - 0`. Requires `n >= 3`.
pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let mut b = GraphBuilder::new(n);
    for v in 0..n {
        b.add_edge(v, (v + 1) % n);
    }
    b.build()
}

/// Star `K_{1,leaves}` with centre 0.
pub fn gen_star(leaves: usize) -> Graph {
    let mut b = GraphBuilder::new(leaves + 1);
    for v in 1..=leaves {
        b.add_edge(0, v);
    }
    b.build()
}

/// Petersen graph: outer 5-cycle on 0..5, inner pentagram on 5..10, spokes `i ~ i+5`.
pub fn gen_petersen() -> Graph {
    let mut b = GraphBuilder::new(10);
    for i in 0..5 {
        b.add_edge(i, (i + 1) % 5);
        b.add_edge(5 + i, 5 + (i + 2) % 5);
        b.add_edge(i, i + 5);
    }
    b.build()
}

/// Erdős–Rényi `G(n, p)`: each pair independently, scanned in lexicographic order.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = seeded(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

/// Disjoint union of cliques, numbered consecutively clique by clique.
pub fn gen_cluster(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("cluster graph needs at least one clique".into()));
    }
    if let Some(&bad) = sizes.iter().find(|&&s| s == 0) {
        return Err(Error::InvalidArgument(format!("clique size {bad} must be at least 1")));
    }
    let n = sizes.iter().sum();
    let mut b = GraphBuilder::new(n);
    let mut start = 0;
    for &size in sizes {
        for u in start..start + size {
            for v in u + 1..start + size {
                b.add_edge(u, v);
            }
        }
        start += size;
    }
    Ok(b.build())
}

/// Split graph: a clique on `0..clique`, an independent set on the remaining
/// `independent` vertices, and each cross pair joined with probability `p`.
/// Split graphs are chordal, hence free of induced `C4`.
pub fn gen_split(clique: usize, independent: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = seeded(seed);
    let mut b = GraphBuilder::new(clique + independent);
    for u in 0..clique {
        for v in u + 1..clique {
            b.add_edge(u, v);
        }
    }
    for u in 0..clique {
        for v in clique..clique + independent {
            if rng.random_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    Ok(b.build())
}

/// Random edge-addition process that never creates a 4-cycle subgraph.
///
/// All pairs are visited once in a seeded random order; a pair is added unless it
/// closes a `C4`. Stops after `target_m` edges or when the pairs run out, so the
/// result may have fewer edges than requested.
pub fn gen_c4_free_process(n: usize, target_m: usize, seed: u64) -> Result<Graph> {
    let pairs_total = n * n.saturating_sub(1) / 2;
    if target_m > pairs_total {
        return Err(Error::InvalidArgument(format!("target of {target_m} edges exceeds C({n}, 2) = {pairs_total}")));
    }
    let mut rng = seeded(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut b = GraphBuilder::new(n);
    for (u, v) in pairs {
        if b.m() >= target_m {
            break;
        }
        if !closes_four_cycle(&b, u, v) {
            b.add_edge(u, v);
        }
    }
    Ok(b.build())
}

/// Whether adding `uv` creates a path `u - a - w - v` with four distinct vertices.
fn closes_four_cycle(b: &GraphBuilder, u: usize, v: usize) -> bool {
    b.neighbors(u).iter().filter(|&a| a != v).any(|a| {
        let mut shared = b.neighbors(a).intersection(b.neighbors(v));
        shared.remove(u);
        !shared.is_empty()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_induced_kst;

    /// Exhaustive 4-cycle subgraph check over all ordered 4-tuples.
    fn has_c4_subgraph(g: &Graph) -> bool {
        let n = g.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                        if distinct && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(gen_gnp(9, 0.0, 3).unwrap().m(), 0);
        assert_eq!(gen_gnp(9, 1.0, 3).unwrap(), gen_complete(9));
        assert_eq!(gen_gnp(20, 0.5, 11).unwrap(), gen_gnp(20, 0.5, 11).unwrap());
        assert_ne!(gen_gnp(20, 0.5, 11).unwrap(), gen_gnp(20, 0.5, 12).unwrap());
        assert!(gen_gnp(5, 1.5, 0).is_err());
    }

    #[test]
    fn cluster_examples() {
        assert_eq!(gen_cluster(&[3]).unwrap(), gen_complete(3));
        let g = gen_cluster(&[2, 3]).unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert_eq!(gen_cluster(&[1, 1, 1]).unwrap(), Graph::empty(3));
        assert!(gen_cluster(&[]).is_err());
        assert!(gen_cluster(&[2, 0]).is_err());
    }

    #[test]
    fn c4_free_process_small() {
        for seed in 0..50 {
            let g = gen_c4_free_process(4, 6, seed).unwrap();
            assert!(!has_c4_subgraph(&g));
            assert!(g.m() <= 5);
        }
        assert_eq!(gen_c4_free_process(10, 0, 1).unwrap().m(), 0);
        assert!(gen_c4_free_process(4, 7, 0).is_err());
    }

    #[test]
    fn c4_free_process_is_induced_c4_free() {
        for seed in 0..20 {
            let g = gen_c4_free_process(14, 91, seed).unwrap();
            g.validate().unwrap();
            assert!(!has_c4_subgraph(&g));
            assert!(find_induced_kst(&g, 2, 2).is_none());
        }
    }

    #[test]
    fn petersen_is_cubic() {
        let g = gen_petersen();
        g.validate().unwrap();
        assert_eq!(g.m(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn split_graphs_are_c4_free() {
        for seed in 0..10 {
            let g = gen_split(6, 6, 0.5, seed).unwrap();
            g.validate().unwrap();
            assert!(find_induced_kst(&g, 2, 2).is_none());
        }
    }
}
