use hitlab_core::analysis::{expectation_audit, monte_carlo_e, AuditOutcome};
use hitlab_core::graph::{
    find_induced_kst, format_dimacs, format_edge_list, gen_c4_free_process, gen_cluster, gen_cycle, gen_gnp, gen_path,
    gen_split, parse_dimacs, parse_edge_list,
};
use hitlab_core::hitting::{
    bin_and_select, construct_with, exchange_size, min_hitting_set, ConstructOptions, HittingCertificate, Mode,
    ParamSchedule,
};
use hitlab_core::mis::{alpha_with_witness, clique_number, enumerate_mis, kernel, kernel_by_deletion};
use hitlab_core::{Graph, VertexSet};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_is_an_involution(g in graph_strategy(14)) {
        let h = g.complement();
        prop_assert!(h.validate().is_ok());
        prop_assert_eq!(h.complement(), g.clone());
        prop_assert_eq!(g.m() + h.m(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn independent_sets_are_cliques_of_the_complement(g in graph_strategy(12)) {
        let (alpha, witness) = alpha_with_witness(&g);
        let h = g.complement();
        prop_assert!(h.is_clique(&witness));
        prop_assert_eq!(clique_number(&h).0, alpha);
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(16)) {
        prop_assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_dimacs(&format_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn family_members_are_maximum_and_independent(g in graph_strategy(12)) {
        let family = enumerate_mis(&g).unwrap();
        let (alpha, _) = alpha_with_witness(&g);
        prop_assert_eq!(family.alpha(), alpha);
        let mut previous: Option<&VertexSet> = None;
        for set in family.iter() {
            prop_assert_eq!(set.len(), alpha);
            prop_assert!(g.is_independent(set));
            if let Some(p) = previous {
                prop_assert!(p < set);
            }
            previous = Some(set);
        }
    }

    #[test]
    fn kernel_routes_agree_and_hit(g in graph_strategy(12)) {
        let k = kernel(&g).unwrap();
        prop_assert_eq!(&k, &kernel_by_deletion(&g));
        let family = enumerate_mis(&g).unwrap();
        if let Some(v) = k.first() {
            prop_assert!(family.all_hit_by(&VertexSet::from_vertices(g.n(), [v])));
        }
    }

    #[test]
    fn vertex_set_algebra(a in proptest::collection::btree_set(0usize..100, 0..40),
                          b in proptest::collection::btree_set(0usize..100, 0..40)) {
        let sa = VertexSet::from_vertices(100, a.iter().copied());
        let sb = VertexSet::from_vertices(100, b.iter().copied());
        let union: Vec<usize> = a.union(&b).copied().collect();
        let inter: Vec<usize> = a.intersection(&b).copied().collect();
        let diff: Vec<usize> = a.difference(&b).copied().collect();
        prop_assert_eq!(sa.union(&sb).to_vec(), union);
        prop_assert_eq!(sa.intersection(&sb).to_vec(), inter.clone());
        prop_assert_eq!(sa.difference(&sb).to_vec(), diff);
        prop_assert_eq!(sa.intersection_len(&sb), inter.len());
        prop_assert_eq!(sa.complement().len(), 100 - a.len());
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
    }
}

/// Graphs that avoid an induced `C4`, with enough structure for the construction.
fn c4_free_corpus() -> Vec<Graph> {
    let mut out = Vec::new();
    for seed in 0..15 {
        let n = 9 + seed as usize % 6;
        out.push(gen_c4_free_process(n, n * (n - 1) / 2, seed).unwrap());
        out.push(gen_split(4 + seed as usize % 3, 6, 0.5, seed).unwrap());
    }
    for n in [8, 9, 12] {
        out.push(gen_cycle(n));
        out.push(gen_path(n));
    }
    out.push(gen_cluster(&[3, 3, 4]).unwrap());
    out.push(gen_cluster(&[2, 2, 2, 3]).unwrap());
    out
}

fn bet_certificates() -> Vec<(Graph, ParamSchedule, HittingCertificate)> {
    let opts = ConstructOptions { kernel_route: false, ..Default::default() };
    let mut out = Vec::new();
    for g in c4_free_corpus() {
        assert!(find_induced_kst(&g, 2, 2).is_none());
        let (alpha, _) = alpha_with_witness(&g);
        let Some(k) = (2..=alpha).take_while(|&k| exchange_size(2, 2, k).is_some_and(|h| h <= alpha)).last() else {
            continue;
        };
        let (_, min_degree) = g.min_degree_vertex().unwrap();
        let delta = (min_degree as f64 + 0.5) / g.n() as f64;
        let sched = ParamSchedule::even_bins(2, 2, delta, g.n(), k).unwrap();
        for seed in 0..5 {
            let cert = construct_with(&g, &sched, seed, &opts).unwrap();
            assert_eq!(cert.mode, Mode::BetConstruction);
            out.push((g.clone(), sched.clone(), cert));
        }
    }
    assert!(out.len() >= 100);
    out
}

#[test]
fn hitting_set_is_never_below_the_optimum() {
    for (g, _, cert) in bet_certificates() {
        let (h, _) = min_hitting_set(&g).unwrap();
        assert!(h <= cert.hitting_set.len());
    }
}

#[test]
fn maximum_independent_sets_meet_k_in_few_vertices() {
    for (g, sched, cert) in bet_certificates() {
        let limit = (sched.t - 1) * exchange_tuples(cert.k.unwrap(), sched.s);
        for set in enumerate_mis(&g).unwrap().iter() {
            assert!(set.intersection_len(&cert.common_neighborhood) <= limit);
        }
    }
}

fn exchange_tuples(k: usize, s: usize) -> usize {
    (0..s).fold(1, |acc, i| acc * (k - i) / (i + 1))
}

#[test]
fn selected_bin_obeys_pigeonhole() {
    for (g, sched, cert) in bet_certificates() {
        let (j, members) = bin_and_select(&g, &cert.independent_set, &sched);
        assert_eq!(Some(j), cert.bin_index);
        assert!(members.len() * sched.bins.len() <= g.n() - cert.independent_set.len());
    }
}

#[test]
fn certificates_replay_and_round_trip() {
    let opts = ConstructOptions { kernel_route: false, ..Default::default() };
    for (g, sched, cert) in bet_certificates() {
        cert.check_consistency(&g).unwrap();
        let replay = construct_with(&g, &sched, cert.seed, &opts).unwrap();
        assert_eq!(replay.to_record(), cert.to_record());
        assert_eq!(HittingCertificate::from_record(&cert.to_record()).unwrap(), cert);
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let (g, _, cert) = bet_certificates().swap_remove(0);
    let mut bad = cert.clone();
    let extra = bad.hitting_set.complement().first().unwrap();
    bad.hitting_set.insert(extra);
    assert!(bad.check_consistency(&g).is_err());
    let mut bad = cert;
    bad.residual_edges = Some(bad.residual_edges.unwrap() + 1);
    assert!(bad.check_consistency(&g).is_err());
}

#[test]
fn monte_carlo_mean_stays_below_the_trivial_envelope() {
    for (g, sched, cert) in bet_certificates().into_iter().step_by(5) {
        let stats = monte_carlo_e(&g, &cert.independent_set, &sched, 200, 5).unwrap();
        let envelope = g.edges_between(&cert.independent_set, &cert.independent_set.complement());
        assert!(stats.mean <= envelope as f64);
        assert_eq!(stats.samples.len(), 200);
    }
}

#[test]
fn expectation_audit_on_a_matching() {
    // Ten disjoint edges; I takes one end of each. Every other vertex has exactly one
    // neighbour in I, the single bin [0, 1) is empty, and E[e] = 10 * C(9, 2) / C(10, 2) = 8.
    let g = gen_cluster(&[2; 10]).unwrap();
    let (_, i) = alpha_with_witness(&g);
    let sched = ParamSchedule::explicit(1, 2, 0.5, &[(0.0, 1.0)], 2).unwrap();
    match expectation_audit(&g, &i, &sched, 2000, 1).unwrap() {
        AuditOutcome::Checked { exact_mean, bound, holds, .. } => {
            assert!((exact_mean - 8.0).abs() < 1e-9);
            assert!((bound - 81.0).abs() < 1e-9);
            assert!(holds);
        }
        AuditOutcome::Skipped { reason } => panic!("unexpected skip: {reason}"),
    }
}

#[test]
fn expectation_audit_skips_outside_its_regime() {
    let g = gen_gnp(12, 0.4, 3).unwrap();
    let (_, i) = alpha_with_witness(&g);
    let sched = ParamSchedule::explicit(1, 12, 0.5, &[(100.0, 200.0)], 1).unwrap();
    assert!(matches!(expectation_audit(&g, &i, &sched, 10, 1).unwrap(), AuditOutcome::Skipped { .. }));
}
