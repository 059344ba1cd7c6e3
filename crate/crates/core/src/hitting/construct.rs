//! Hitting-set construction for induced-`K_{s,t}`-free graphs.
//!
//! Given a maximum independent set `I`, anchors `I_j ⊆ I`, the union `K` of the common
//! neighbourhoods of all `s`-subsets of anchors, and the bin `S_j`, any exchange set
//! `H ⊆ I` of size `(t-1) C(k,s) + 1` yields the hitting set `T = H ∪ N(H) ∪ S_j`:
//! a maximum independent set `I'` avoiding `T` meets `K` in at most `(t-1) C(k,s)`
//! vertices, so `H ∪ (I' \ K)` would be a larger independent set. Validity therefore
//! holds for every seed; only `|T|` depends on the sample.

use itertools::Itertools;
use rand::seq::index;
use rand::Rng;

use super::certificate::{HittingCertificate, Mode};
use super::schedule::ParamSchedule;
use crate::error::{Error, Result};
use crate::graph::{find_independent_subset, Graph, InducedEmbedding, VertexSet};
use crate::mis::{alpha_with_witness, independence_number_within};
use crate::rng::seeded;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Return `{v} ∪ N(v)` when the minimum degree is below `delta n - 1`.
    pub low_degree_shortcut: bool,
    /// Return `T = V` instead of failing when the exchange set cannot fit inside `I`.
    pub allow_fallback: bool,
    /// When `alpha > n/2`, return a single kernel vertex instead of running the construction.
    pub kernel_route: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self { low_degree_shortcut: true, allow_fallback: false, kernel_route: true }
    }
}

/// `T = {v} ∪ N(v)`. Always a hitting set: an independent set avoiding it could take `v`.
pub fn closed_neighborhood_hitting(g: &Graph, v: usize) -> Result<HittingCertificate> {
    if v >= g.n() {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range for n = {}", g.n())));
    }
    let mut t = g.neighbors(v).clone();
    t.insert(v);
    let mut cert = HittingCertificate::bare(Mode::LowDegree, g.n(), t);
    cert.pivot = Some(v);
    Ok(cert)
}

/// Assigns each `v ∉ I` to the bin containing `|N_I(v)|` and returns the 1-based index
/// of the smallest bin (lowest index on ties) with its members.
pub fn bin_and_select(g: &Graph, independent: &VertexSet, sched: &ParamSchedule) -> (usize, VertexSet) {
    let n = g.n();
    let mut members = vec![VertexSet::new(n); sched.bins.len()];
    for v in independent.complement().iter() {
        let d = g.degree_into(v, independent);
        if let Some(j) = sched.bins.iter().position(|b| b.contains(d)) {
            members[j].insert(v);
        }
    }
    let (j, set) = members.into_iter().enumerate().min_by_key(|(j, set)| (set.len(), *j)).expect("schedule has bins");
    (j + 1, set)
}

/// Uniform `k`-subset of `independent` without replacement, fixed by `seed`.
pub fn sample_anchors(independent: &VertexSet, k: usize, seed: u64) -> Result<VertexSet> {
    sample_anchors_with(independent, k, &mut seeded(seed))
}

pub fn sample_anchors_with<R: Rng + ?Sized>(independent: &VertexSet, k: usize, rng: &mut R) -> Result<VertexSet> {
    if k > independent.len() {
        return Err(Error::Precondition(format!("cannot sample {k} anchors from a set of {}", independent.len())));
    }
    let members = independent.to_vec();
    let picks = index::sample(rng, members.len(), k);
    Ok(VertexSet::from_vertices(independent.universe(), picks.iter().map(|i| members[i])))
}

/// Union of the common neighbourhoods of all `s`-subsets of `anchors`.
///
/// Each common neighbourhood must have independence number at most `t - 1`; a
/// violation means the graph contains an induced `K_{s,t}` and is reported with it.
pub fn build_common_neighborhood(g: &Graph, anchors: &VertexSet, s: usize, t: usize) -> Result<VertexSet> {
    if anchors.len() < s {
        return Err(Error::Precondition(format!("need at least s = {s} anchors, got {}", anchors.len())));
    }
    if !g.is_independent(anchors) {
        return Err(Error::Precondition("anchors are not independent".into()));
    }
    let mut k_set = VertexSet::new(g.n());
    for tuple in anchors.iter().combinations(s) {
        let common = g.common_neighbors(tuple.iter().copied());
        if let Some(side_b) = find_independent_subset(g, &common, t) {
            return Err(Error::FreenessViolation { witness: InducedEmbedding { side_a: tuple, side_b } });
        }
        k_set.union_with(&common);
    }
    Ok(k_set)
}

/// The `size` vertices of `independent` with fewest neighbours in `residual`, ties by id.
///
/// Picking the smallest residual degrees guarantees `Σ_{v∈H} |N_R(v)| <= size * e / |I|`
/// with `e = |E(I, R)|`.
pub fn choose_exchange(g: &Graph, independent: &VertexSet, residual: &VertexSet, size: usize) -> Result<VertexSet> {
    if !independent.is_disjoint(residual) {
        return Err(Error::Precondition("residual set meets I".into()));
    }
    if size > independent.len() {
        return Err(Error::Infeasible(format!("exchange set of size {size} does not fit in |I| = {}", independent.len())));
    }
    let mut ranked: Vec<(usize, usize)> = independent.iter().map(|v| (g.degree_into(v, residual), v)).collect();
    ranked.sort_unstable();
    Ok(VertexSet::from_vertices(g.n(), ranked.into_iter().take(size).map(|(_, v)| v)))
}

/// Exact-integer form of the averaging guarantee: `|I| Σ_{v∈H} |N_R(v)| <= |H| e`.
pub fn averaging_bound_holds(g: &Graph, independent: &VertexSet, residual: &VertexSet, exchange: &VertexSet) -> bool {
    let chosen: usize = exchange.iter().map(|v| g.degree_into(v, residual)).sum();
    let e = g.edges_between(independent, residual);
    (independent.len() as u128) * (chosen as u128) <= (exchange.len() as u128) * (e as u128)
}

pub fn construct_bet_hitting_set(g: &Graph, sched: &ParamSchedule, seed: u64) -> Result<HittingCertificate> {
    construct_with(g, sched, seed, &ConstructOptions::default())
}

/// Full pipeline: low-degree shortcut, kernel route, then the anchor construction
/// inside the solver's canonical maximum independent set.
pub fn construct_with(g: &Graph, sched: &ParamSchedule, seed: u64, opts: &ConstructOptions) -> Result<HittingCertificate> {
    if !sched.feasible {
        return Err(Error::Infeasible("schedule is flagged infeasible at this n".into()));
    }
    sched.validate()?;
    let n = g.n();
    let (v, degree) = g.min_degree_vertex().ok_or_else(|| Error::InvalidArgument("graph has no vertices".into()))?;
    if opts.low_degree_shortcut && (degree as f64) < sched.delta * n as f64 - 1.0 {
        let mut cert = closed_neighborhood_hitting(g, v)?;
        stamp(&mut cert, sched, seed);
        return Ok(cert);
    }
    let (alpha, independent) = alpha_with_witness(g);
    if opts.kernel_route && 2 * alpha > n {
        if let Some(kv) = first_kernel_vertex(g, alpha) {
            let mut cert = HittingCertificate::bare(Mode::Kernel, n, VertexSet::from_vertices(n, [kv]));
            cert.pivot = Some(kv);
            cert.alpha = Some(alpha);
            stamp(&mut cert, sched, seed);
            return Ok(cert);
        }
    }
    construct_inside(g, &independent, sched, seed, opts)
}

/// The anchor construction inside a caller-supplied maximum independent set.
pub fn construct_inside(
    g: &Graph,
    independent: &VertexSet,
    sched: &ParamSchedule,
    seed: u64,
    opts: &ConstructOptions,
) -> Result<HittingCertificate> {
    let n = g.n();
    if !g.is_independent(independent) {
        return Err(Error::Precondition("I is not independent".into()));
    }
    let alpha = independent.len();
    let (bin_index, bin_members) = bin_and_select(g, independent, sched);
    let bin = &sched.bins[bin_index - 1];
    let k = bin.k;
    let h_size = sched.exchange_size(k).filter(|&h| h <= alpha && k <= alpha);
    let Some(h_size) = h_size else {
        if opts.allow_fallback {
            let mut cert = HittingCertificate::bare(Mode::Fallback, n, VertexSet::full(n));
            cert.alpha = Some(alpha);
            stamp(&mut cert, sched, seed);
            return Ok(cert);
        }
        return Err(Error::Infeasible(format!(
            "need k = {k} <= alpha = {alpha} and (t-1) C(k, s) + 1 <= alpha (s = {}, t = {})",
            sched.s, sched.t
        )));
    };

    let anchors = sample_anchors(independent, k, seed)?;
    let common = build_common_neighborhood(g, &anchors, sched.s, sched.t)?;
    let mut residual = VertexSet::full(n);
    residual.subtract(independent);
    residual.subtract(&common);
    residual.subtract(&bin_members);
    let exchange = choose_exchange(g, independent, &residual, h_size)?;
    let mut exchange_neighbors = VertexSet::new(n);
    for h in &exchange {
        exchange_neighbors.union_with(&g.neighbors(h).intersection(&residual));
    }
    let hitting_set = exchange.union(&exchange_neighbors).union(&bin_members);

    let mut cert = HittingCertificate::bare(Mode::BetConstruction, n, hitting_set);
    stamp(&mut cert, sched, seed);
    cert.alpha = Some(alpha);
    cert.bin_index = Some(bin_index);
    cert.bin_range = Some((bin.theta_lo, bin.theta_hi));
    cert.k = Some(k);
    cert.residual_edges = Some(g.edges_between(independent, &residual));
    cert.independent_set = independent.clone();
    cert.bin_members = bin_members;
    cert.anchors = anchors;
    cert.common_neighborhood = common;
    cert.exchange = exchange;
    cert.exchange_neighbors = exchange_neighbors;
    Ok(cert)
}

fn stamp(cert: &mut HittingCertificate, sched: &ParamSchedule, seed: u64) {
    cert.pattern = Some((sched.s, sched.t));
    cert.delta = Some(sched.delta);
    cert.seed = seed;
}

/// Smallest vertex whose deletion lowers the independence number.
fn first_kernel_vertex(g: &Graph, alpha: usize) -> Option<usize> {
    let all = g.vertex_set();
    (0..g.n()).find(|&v| {
        let mut rest = all.clone();
        rest.remove(v);
        independence_number_within(g, &rest) < alpha
    })
}

/// Audits the size accounting of a construction certificate:
/// `|T| < h + h e / |I| + delta n / 2` with `h = (t-1) C(k, s) + 1`.
pub fn size_bound_check(cert: &HittingCertificate, e_observed: usize) -> Result<bool> {
    if cert.mode != Mode::BetConstruction {
        return Err(Error::Precondition(format!("size audit applies to bet-construction certificates, not {}", cert.mode)));
    }
    let (s, t) = cert.pattern.ok_or_else(|| Error::Precondition("certificate lacks (s, t)".into()))?;
    let k = cert.k.ok_or_else(|| Error::Precondition("certificate lacks k".into()))?;
    let delta = cert.delta.ok_or_else(|| Error::Precondition("certificate lacks delta".into()))?;
    let h = super::schedule::exchange_size(s, t, k).ok_or_else(|| Error::Infeasible("exchange size overflows".into()))? as f64;
    let cn = cert.independent_set.len() as f64;
    let bound = h + h * e_observed as f64 / cn + delta * cert.n as f64 / 2.0;
    Ok((cert.hitting_set.len() as f64) < bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cluster, gen_complete, gen_cycle, gen_gnp, gen_star};
    use crate::hitting::verify::verify_hitting_set;

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, ids.iter().copied())
    }

    fn c5_schedule(delta: f64) -> ParamSchedule {
        ParamSchedule::explicit(2, 2, delta, &[(1.0, 2.0)], 2).unwrap()
    }

    fn no_shortcut() -> ConstructOptions {
        ConstructOptions { low_degree_shortcut: false, ..Default::default() }
    }

    fn c5_trace() -> HittingCertificate {
        construct_with(&gen_cycle(5), &c5_schedule(0.9), 7, &no_shortcut()).unwrap()
    }

    #[test]
    fn closed_neighborhood_examples() {
        let g = Graph::empty(4);
        let cert = closed_neighborhood_hitting(&g, 0).unwrap();
        assert_eq!(cert.hitting_set.to_vec(), vec![0]);
        assert!(verify_hitting_set(&g, &cert.hitting_set).unwrap());

        let k4 = gen_complete(4);
        let cert = closed_neighborhood_hitting(&k4, 0).unwrap();
        assert_eq!(cert.hitting_set.len(), 4);
        assert!(verify_hitting_set(&k4, &cert.hitting_set).unwrap());

        // Labels 1..5 of the cycle map to ids 0..4; vertex 1 is id 0.
        let c5 = gen_cycle(5);
        let cert = closed_neighborhood_hitting(&c5, 0).unwrap();
        assert_eq!(cert.hitting_set.to_vec(), vec![0, 1, 4]);
        assert!(verify_hitting_set(&c5, &cert.hitting_set).unwrap());
        assert!(closed_neighborhood_hitting(&c5, 5).is_err());
    }

    #[test]
    fn bin_selection_on_c5() {
        let g = gen_cycle(5);
        let (j, s_j) = bin_and_select(&g, &set(5, &[0, 2]), &c5_schedule(0.9));
        assert_eq!(j, 1);
        assert_eq!(s_j.to_vec(), vec![3, 4]);
    }

    #[test]
    fn bin_selection_edge_cases() {
        let g = gen_cycle(5);
        let far = ParamSchedule::explicit(1, 1, 0.5, &[(10.0, 20.0), (20.0, 30.0)], 1).unwrap();
        let (j, s_j) = bin_and_select(&g, &set(5, &[0, 2]), &far);
        assert_eq!((j, s_j.len()), (1, 0));
        // Degrees into I = {0, 2}: vertex 1 -> 2, vertices 3, 4 -> 1.
        let sched = ParamSchedule::explicit(1, 1, 0.5, &[(2.0, 3.0), (5.0, 6.0), (1.0, 2.0)], 1).unwrap();
        let (j, s_j) = bin_and_select(&g, &set(5, &[0, 2]), &sched);
        assert_eq!((j, s_j.len()), (2, 0));
    }

    #[test]
    fn sampling_edge_cases() {
        let i = set(8, &[1, 3, 5, 7]);
        assert_eq!(sample_anchors(&i, 4, 9).unwrap(), i);
        assert!(sample_anchors(&i, 0, 9).unwrap().is_empty());
        assert!(sample_anchors(&i, 5, 9).is_err());
        assert_eq!(sample_anchors(&i, 2, 9).unwrap(), sample_anchors(&i, 2, 9).unwrap());
        assert!(sample_anchors(&i, 2, 9).unwrap().is_subset(&i));
    }

    #[test]
    fn anchor_pairs_are_uniform() {
        // 10^4 draws of 2 out of 5: each of the 10 pairs has probability 1/10.
        let i = set(5, &[0, 1, 2, 3, 4]);
        let mut counts = std::collections::HashMap::new();
        let draws = 10_000u64;
        for seed in 0..draws {
            *counts.entry(sample_anchors(&i, 2, seed).unwrap().to_vec()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 10);
        let p = 0.1;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for (pair, count) in counts {
            assert!((count as f64 - draws as f64 * p).abs() <= 3.0 * sigma + 1e-9, "{pair:?}: {count}");
        }
    }

    #[test]
    fn common_neighborhood_on_c5() {
        let g = gen_cycle(5);
        let k = build_common_neighborhood(&g, &set(5, &[0, 2]), 2, 2).unwrap();
        assert_eq!(k.to_vec(), vec![1]);
    }

    #[test]
    fn common_neighborhood_reports_k22() {
        let g = gen_cycle(4);
        match build_common_neighborhood(&g, &set(4, &[0, 2]), 2, 2) {
            Err(Error::FreenessViolation { witness }) => {
                assert_eq!(witness.side_a, vec![0, 2]);
                assert_eq!(witness.side_b, vec![1, 3]);
                assert!(witness.is_valid_in(&g));
            }
            other => panic!("expected violation, got {other:?}"),
        }
        assert!(matches!(build_common_neighborhood(&g, &set(4, &[0]), 2, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn exchange_selection() {
        let g = gen_star(4);
        let i = set(5, &[1, 2, 3]);
        let r = set(5, &[0, 4]);
        let h = choose_exchange(&g, &i, &r, 2).unwrap();
        assert_eq!(h.to_vec(), vec![1, 2]);
        let none = VertexSet::new(5);
        assert_eq!(choose_exchange(&g, &i, &none, 3).unwrap(), i);
        assert!(matches!(choose_exchange(&g, &i, &r, 4), Err(Error::Infeasible(_))));
        assert!(choose_exchange(&g, &i, &set(5, &[1]), 1).is_err());
    }

    #[test]
    fn exchange_prefers_low_residual_degree() {
        // 0 is adjacent to all of R = {3, 4, 5}; 1 and 2 have no residual neighbours.
        let g = Graph::from_edges(6, [(0, 3), (0, 4), (0, 5), (1, 3)]).unwrap();
        let i = set(6, &[0, 1, 2]);
        let r = set(6, &[3, 4, 5]);
        assert_eq!(choose_exchange(&g, &i, &r, 2).unwrap().to_vec(), vec![1, 2]);
        assert_eq!(choose_exchange(&g, &i, &r, 3).unwrap().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn averaging_bound_on_random_graphs() {
        for seed in 0..50 {
            let g = gen_gnp(20, 0.3, seed).unwrap();
            let (_, i) = alpha_with_witness(&g);
            let r = i.complement();
            for size in 1..=i.len() {
                let h = choose_exchange(&g, &i, &r, size).unwrap();
                assert!(averaging_bound_holds(&g, &i, &r, &h), "seed {seed} size {size}");
            }
        }
    }

    #[test]
    fn c5_hand_trace() {
        let g = gen_cycle(5);
        let cert = c5_trace();
        assert_eq!(cert.mode, Mode::BetConstruction);
        assert_eq!(cert.independent_set.to_vec(), vec![0, 2]);
        assert_eq!(cert.bin_members.to_vec(), vec![3, 4]);
        assert_eq!(cert.anchors.to_vec(), vec![0, 2]);
        assert_eq!(cert.common_neighborhood.to_vec(), vec![1]);
        assert!(cert.residual().is_empty());
        assert_eq!(cert.exchange.to_vec(), vec![0, 2]);
        assert!(cert.exchange_neighbors.is_empty());
        assert_eq!(cert.hitting_set.to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(cert.residual_edges, Some(0));
        assert!(verify_hitting_set(&g, &cert.hitting_set).unwrap());
        cert.check_consistency(&g).unwrap();
    }

    #[test]
    fn c5_at_high_delta_takes_shortcut() {
        // Minimum degree 2 < 0.9 * 5 - 1, so the default pipeline stops at {v} ∪ N(v).
        let cert = construct_bet_hitting_set(&gen_cycle(5), &c5_schedule(0.9), 7).unwrap();
        assert_eq!(cert.mode, Mode::LowDegree);
        assert_eq!(cert.hitting_set.to_vec(), vec![0, 1, 4]);
    }

    #[test]
    fn empty_graph_takes_low_degree_shortcut() {
        let g = Graph::empty(6);
        let sched = ParamSchedule::explicit(1, 1, 0.5, &[(0.0, 1.0)], 1).unwrap();
        let cert = construct_bet_hitting_set(&g, &sched, 1).unwrap();
        assert_eq!(cert.mode, Mode::LowDegree);
        assert_eq!(cert.hitting_set.to_vec(), vec![0]);
        cert.check_consistency(&g).unwrap();
    }

    #[test]
    fn cluster_444_valid_for_many_seeds() {
        let g = gen_cluster(&[4, 4, 4]).unwrap();
        let sched = ParamSchedule::explicit(2, 2, 0.3, &[(0.0, 1.0), (1.0, 2.0)], 2).unwrap();
        for seed in 0..100 {
            let cert = construct_bet_hitting_set(&g, &sched, seed).unwrap();
            assert_eq!(cert.mode, Mode::BetConstruction);
            assert!(verify_hitting_set(&g, &cert.hitting_set).unwrap(), "seed {seed}");
            cert.check_consistency(&g).unwrap();
        }
    }

    #[test]
    fn infeasible_exchange_size() {
        let g = gen_cycle(5);
        let sched = ParamSchedule::explicit(2, 3, 0.9, &[(1.0, 2.0)], 2).unwrap();
        assert!(matches!(construct_with(&g, &sched, 0, &no_shortcut()), Err(Error::Infeasible(_))));
        let opts = ConstructOptions { allow_fallback: true, ..no_shortcut() };
        let cert = construct_with(&g, &sched, 0, &opts).unwrap();
        assert_eq!(cert.mode, Mode::Fallback);
        assert_eq!(cert.hitting_set.len(), 5);
    }

    #[test]
    fn asymptotic_schedule_refuses_to_run() {
        let g = gen_cycle(5);
        let sched = crate::hitting::paper_schedule(5, 1, 1, 0.5).unwrap();
        assert!(matches!(construct_bet_hitting_set(&g, &sched, 0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn kernel_route_for_large_alpha() {
        // Path on 5 vertices: alpha = 3 > 5/2, unique MIS {0, 2, 4}.
        let g = crate::graph::gen_path(5);
        let sched = ParamSchedule::explicit(1, 2, 0.1, &[(0.0, 1.0)], 1).unwrap();
        let cert = construct_bet_hitting_set(&g, &sched, 0).unwrap();
        assert_eq!(cert.mode, Mode::Kernel);
        assert_eq!(cert.hitting_set.to_vec(), vec![0]);
        assert!(verify_hitting_set(&g, &cert.hitting_set).unwrap());
        cert.check_consistency(&g).unwrap();
    }

    #[test]
    fn size_audit_on_c5_trace() {
        let g = gen_cycle(5);
        for (delta, expected) in [(0.9, true), (0.81, true), (0.8, false), (0.5, false)] {
            let mut cert = c5_trace();
            cert.delta = Some(delta);
            assert_eq!(size_bound_check(&cert, 0).unwrap(), expected, "delta {delta}");
        }
        let low = closed_neighborhood_hitting(&g, 0).unwrap();
        assert!(size_bound_check(&low, 0).is_err());
    }

    #[test]
    fn certificate_record_round_trip() {
        let cert = c5_trace();
        let text = cert.to_record();
        assert!(text.contains("T: 0 2 3 4\n"));
        assert!(text.contains("NH:\n"));
        assert_eq!(HittingCertificate::from_record(&text).unwrap(), cert);
    }
}
