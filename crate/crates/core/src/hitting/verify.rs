//! Exact checks against the full family of maximum independent sets.

use rand::seq::index;
use rayon::prelude::*;

use super::certificate::{HittingCertificate, Mode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::mis::{alpha_with_witness, enumerate_mis, enumerate_mis_with_cap, independence_number_within, MisFamily};
use crate::rng::stream;

/// True iff `t` meets every maximum independent set of `g`.
pub fn verify_hitting_set(g: &Graph, t: &VertexSet) -> Result<bool> {
    Ok(enumerate_mis(g)?.all_hit_by(t))
}

pub fn verify_hitting_set_with_cap(g: &Graph, t: &VertexSet, cap: usize) -> Result<bool> {
    Ok(enumerate_mis_with_cap(g, cap)?.all_hit_by(t))
}

/// Enumeration-free check: `t` is a hitting set iff `alpha(G - t) < alpha(G)`.
pub fn verify_by_deletion(g: &Graph, t: &VertexSet) -> bool {
    let (alpha, _) = alpha_with_witness(g);
    independence_number_within(g, &t.complement()) < alpha
}

/// Exact minimum transversal of the maximum-independent-set hypergraph, with the
/// lexicographically least witness among optimal solutions.
pub fn min_hitting_set(g: &Graph) -> Result<(usize, VertexSet)> {
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    Ok(min_transversal(&enumerate_mis(g)?))
}

pub fn min_hitting_set_with_cap(g: &Graph, cap: usize) -> Result<(usize, VertexSet)> {
    if g.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    Ok(min_transversal(&enumerate_mis_with_cap(g, cap)?))
}

/// Minimum transversal of a nonempty family.
pub fn min_transversal(family: &MisFamily) -> (usize, VertexSet) {
    let n = family.host_n();
    let edges = family.sets();
    let mut best = greedy_transversal(edges, n);
    let mut current = VertexSet::new(n);
    branch(edges, &mut current, &mut VertexSet::new(n), &mut best);
    let size = best.len();
    let mut chosen = VertexSet::new(n);
    let witness = lex_first(edges, size, 0, &mut chosen).expect("an optimal transversal exists");
    (size, witness)
}

fn greedy_transversal(edges: &[VertexSet], n: usize) -> VertexSet {
    let mut chosen = VertexSet::new(n);
    let mut open: Vec<&VertexSet> = edges.iter().collect();
    while !open.is_empty() {
        let mut counts = vec![0usize; n];
        for e in &open {
            for v in e.iter() {
                counts[v] += 1;
            }
        }
        let v = (0..n).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("n > 0");
        chosen.insert(v);
        open.retain(|e| !e.contains(v));
    }
    chosen
}

/// Lower bound on the vertices still needed: a greedy packing of pairwise disjoint
/// uncovered hyperedges, restricted to vertices outside `banned`. An edge with no
/// allowed vertex makes the branch infeasible.
fn packing_bound(open: &[&VertexSet], banned: &VertexSet) -> usize {
    let mut used = VertexSet::new(banned.universe());
    let mut count = 0;
    for e in open {
        let allowed = e.difference(banned);
        if allowed.is_empty() {
            return usize::MAX;
        }
        if allowed.is_disjoint(&used) {
            count += 1;
            used.union_with(&allowed);
        }
    }
    count
}

/// Branches on the vertices of the first uncovered hyperedge: take its i-th
/// allowed vertex and forbid the earlier ones.
fn branch(edges: &[VertexSet], current: &mut VertexSet, banned: &mut VertexSet, best: &mut VertexSet) {
    let open: Vec<&VertexSet> = edges.iter().filter(|e| e.is_disjoint(current)).collect();
    let Some(first) = open.first() else {
        if current.len() < best.len() {
            *best = current.clone();
        }
        return;
    };
    if current.len().saturating_add(packing_bound(&open, banned)) >= best.len() {
        return;
    }
    let candidates = first.difference(banned);
    let mut newly_banned = Vec::new();
    for v in candidates.iter() {
        current.insert(v);
        branch(edges, current, banned, best);
        current.remove(v);
        banned.insert(v);
        newly_banned.push(v);
    }
    for v in newly_banned {
        banned.remove(v);
    }
}

/// Lexicographically first transversal of exactly `size` vertices, choosing members
/// in increasing order from `from` onwards.
fn lex_first(edges: &[VertexSet], size: usize, from: usize, chosen: &mut VertexSet) -> Option<VertexSet> {
    let open: Vec<&VertexSet> = edges.iter().filter(|e| e.is_disjoint(chosen)).collect();
    if open.is_empty() {
        return Some(chosen.clone());
    }
    if chosen.len() == size {
        return None;
    }
    let n = chosen.universe();
    let remaining = size - chosen.len();
    let mut tail = VertexSet::new(n);
    for v in from..n {
        tail.insert(v);
    }
    // Every open hyperedge must still be reachable with vertices >= from.
    if open.iter().any(|e| e.is_disjoint(&tail)) {
        return None;
    }
    if packing_bound(&open, &tail.complement()) > remaining {
        return None;
    }
    for v in from..n {
        chosen.insert(v);
        if let Some(found) = lex_first(edges, size, v + 1, chosen) {
            return Some(found);
        }
        chosen.remove(v);
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    /// First successful sample, if any trial succeeded.
    pub hit: Option<VertexSet>,
    /// Zero-based trial index of `hit`.
    pub first_success: Option<u64>,
    pub trials: u64,
    pub failures: u64,
    pub fail_rate: f64,
    /// `m (1 - p/n)^alpha` with `m` the number of maximum independent sets.
    pub union_bound: f64,
    pub mis_count: usize,
    pub alpha: usize,
}

impl SampleReport {
    /// Sampling-mode certificate for the first successful draw.
    pub fn certificate(&self, n: usize, seed: u64) -> Option<HittingCertificate> {
        let hit = self.hit.clone()?;
        let mut cert = HittingCertificate::bare(Mode::Sampling, n, hit);
        cert.seed = seed;
        cert.alpha = Some(self.alpha);
        Some(cert)
    }
}

/// Trial `i` draws a uniform `p`-subset from stream `i` of `seed`.
pub fn sample_subset(n: usize, p: usize, seed: u64, trial: u64) -> VertexSet {
    let mut rng = stream(seed, trial);
    VertexSet::from_vertices(n, index::sample(&mut rng, n, p).iter())
}

/// Repeated uniform sampling of `p` vertices, each draw checked against the full family.
pub fn sample_hitting_set(g: &Graph, p: usize, seed: u64, trials: u64) -> Result<SampleReport> {
    let n = g.n();
    if p > n {
        return Err(Error::InvalidArgument(format!("sample size {p} exceeds n = {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let family = enumerate_mis(g)?;
    let outcomes: Vec<bool> = (0..trials).into_par_iter().map(|i| family.all_hit_by(&sample_subset(n, p, seed, i))).collect();
    let first_success = outcomes.iter().position(|&ok| ok).map(|i| i as u64);
    let failures = outcomes.iter().filter(|&&ok| !ok).count() as u64;
    let alpha = family.alpha();
    let union_bound = family.len() as f64 * (1.0 - p as f64 / n as f64).powi(alpha as i32);
    Ok(SampleReport {
        hit: first_success.map(|i| sample_subset(n, p, seed, i)),
        first_success,
        trials,
        failures,
        fail_rate: failures as f64 / trials as f64,
        union_bound,
        mis_count: family.len(),
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cluster, gen_complete, gen_cycle, gen_gnp};

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, ids.iter().copied())
    }

    /// Smallest hitting set by scanning all subsets in order of size, then bitmask.
    fn brute_min(g: &Graph) -> (usize, VertexSet) {
        let n = g.n();
        let family = enumerate_mis(g).unwrap();
        let mut best: Option<VertexSet> = None;
        for mask in 0u32..1 << n {
            let t = VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            if family.all_hit_by(&t) {
                let better = match &best {
                    None => true,
                    Some(b) => (t.len(), &t) < (b.len(), b),
                };
                if better {
                    best = Some(t);
                }
            }
        }
        let b = best.unwrap();
        (b.len(), b)
    }

    #[test]
    fn c5_examples() {
        // Labels 1..5 map to ids 0..4.
        let g = gen_cycle(5);
        assert!(!verify_hitting_set(&g, &set(5, &[0])).unwrap());
        assert!(verify_hitting_set(&g, &set(5, &[0, 1, 2])).unwrap());
        assert!(verify_hitting_set(&g, &VertexSet::full(5)).unwrap());
        assert!(!verify_by_deletion(&g, &set(5, &[0])));
        assert!(verify_by_deletion(&g, &set(5, &[0, 1, 2])));
    }

    #[test]
    fn closed_forms() {
        for q in 1..=6 {
            assert_eq!(min_hitting_set(&gen_complete(q)).unwrap().0, q);
        }
        let (size, witness) = min_hitting_set(&gen_cycle(5)).unwrap();
        assert_eq!(size, 3);
        assert!(verify_hitting_set(&gen_cycle(5), &witness).unwrap());
        assert_eq!(min_hitting_set(&gen_cluster(&[2, 3]).unwrap()).unwrap(), (2, set(5, &[0, 1])));
        assert!(min_hitting_set(&Graph::empty(0)).is_err());
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        for seed in 0..80 {
            let n = 4 + seed as usize % 9;
            let g = gen_gnp(n, [0.2, 0.4, 0.6][seed as usize % 3], seed).unwrap();
            let (size, witness) = min_hitting_set(&g).unwrap();
            assert_eq!((size, witness), brute_min(&g), "seed {seed}");
        }
    }

    #[test]
    fn deletion_check_agrees_with_enumeration() {
        for seed in 0..40 {
            let g = gen_gnp(10, 0.35, seed).unwrap();
            for trial in 0..10 {
                let t = sample_subset(10, 1 + trial as usize % 5, seed, trial);
                assert_eq!(verify_hitting_set(&g, &t).unwrap(), verify_by_deletion(&g, &t));
            }
        }
    }

    #[test]
    fn sampling_extremes() {
        let g = gen_cycle(5);
        let all = sample_hitting_set(&g, 5, 3, 20).unwrap();
        assert_eq!(all.first_success, Some(0));
        assert_eq!(all.fail_rate, 0.0);
        let none = sample_hitting_set(&g, 0, 3, 20).unwrap();
        assert_eq!(none.failures, 20);
        assert!(none.hit.is_none());
        assert!(sample_hitting_set(&g, 6, 3, 20).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = gen_cluster(&[3, 3, 3]).unwrap();
        let a = sample_hitting_set(&g, 6, 11, 500).unwrap();
        let b = sample_hitting_set(&g, 6, 11, 500).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mis_count, 27);
        let cert = a.certificate(9, 11).unwrap();
        assert!(verify_hitting_set(&g, &cert.hitting_set).unwrap());
    }
}
