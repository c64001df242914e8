//! Property tests for the structural invariants: per-channel
//! independence, critical-valuation bounds, neighborhood symmetry,
//! optimal-baseline dominance, determinism, and format round-trips.

use proptest::prelude::*;

use spectrum_auctions::io::{ProfilesDoc, TopologyDoc};
use spectrum_auctions::*;

/// A random multi-operator instance small enough for the brute-force
/// baseline: 3 operators, 1..=4 stations each, arbitrary inter-operator
/// edges, bids on the milli grid, demands 0..=3.
#[derive(Clone, Debug)]
struct SmallInstance {
    graph: ConflictGraph,
    profiles: Vec<OperatorProfile>,
}

fn small_instance() -> impl Strategy<Value = SmallInstance> {
    (
        proptest::collection::vec(1usize..=4, 3),
        proptest::collection::vec(any::<bool>(), 16 * 3),
        proptest::collection::vec(0i64..=25_000, 12),
        proptest::collection::vec(0u32..=3, 12),
    )
        .prop_map(|(counts, edge_bits, bid_millis, demands)| {
            let mut edges = Vec::new();
            let mut bit = edge_bits.iter();
            for a in 0..3usize {
                for b in (a + 1)..3usize {
                    for i in 0..4usize {
                        for j in 0..4usize {
                            let on = *bit.next().unwrap_or(&false);
                            if on && i < counts[a] && j < counts[b] {
                                edges.push((Vertex::new(a, i), Vertex::new(b, j)));
                            }
                        }
                    }
                }
            }
            let graph = ConflictGraph::new(counts.clone(), &edges).unwrap();
            let mut bids = bid_millis.iter();
            let mut ds = demands.iter();
            let profiles = (0..3)
                .map(|op| {
                    let values: Vec<Price> = (0..counts[op])
                        .map(|_| Price::from_millis(*bids.next().unwrap()))
                        .collect();
                    let demand: Vec<u32> =
                        (0..counts[op]).map(|_| *ds.next().unwrap()).collect();
                    OperatorProfile::truthful(op, values, demand)
                })
                .collect();
            SmallInstance { graph, profiles }
        })
}

/// Every channel's grants must be pairwise non-conflicting, checked
/// against the raw edge list rather than the adjacency structure.
fn assert_per_channel_independence(graph: &ConflictGraph, outcome: &AuctionOutcome) {
    let max_channel = outcome.trace.iter().map(|r| r.channel).max().unwrap_or(0);
    for channel in 1..=max_channel {
        let granted: Vec<Vertex> = outcome
            .trace
            .iter()
            .filter(|r| r.channel == channel)
            .flat_map(|r| r.base_stations.iter().copied())
            .collect();
        for (i, &a) in granted.iter().enumerate() {
            for &b in &granted[i + 1..] {
                let conflict = graph
                    .edges()
                    .iter()
                    .any(|&(x, y)| (x, y) == (a.min(b), a.max(b)));
                assert!(!conflict, "channel {channel} grants conflicting {a} and {b}");
            }
        }
    }
    // The trace must agree with the allocation matrix.
    let mut from_trace = vec![vec![0u32; 0]; outcome.allocation.len()];
    for (op, per_bs) in outcome.allocation.iter().enumerate() {
        from_trace[op] = vec![0; per_bs.len()];
    }
    for r in &outcome.trace {
        for v in &r.base_stations {
            from_trace[v.operator][v.bs] += 1;
        }
    }
    assert_eq!(&from_trace, &outcome.allocation);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn neighborhoods_match_the_edge_definition(instance in small_instance()) {
        let graph = &instance.graph;
        for op in 0..3 {
            let neighborhood = graph.neighbors_of_operator(op).unwrap();
            for v in graph.vertices() {
                let adjacent = (0..graph.bs_counts()[op])
                    .any(|bs| graph.is_edge(Vertex::new(op, bs), v));
                prop_assert_eq!(
                    neighborhood.contains(&v),
                    adjacent && v.operator != op,
                    "vertex {} vs neighborhood of {}", v, op
                );
            }
        }
    }

    #[test]
    fn critical_valuation_is_bounded_by_best_rival_bid(instance in small_instance()) {
        let bids: Vec<Vec<Price>> = instance.profiles.iter().map(|p| p.bids.clone()).collect();
        for op in 0..3 {
            let critical = critical_operator(&instance.graph, &bids, op).unwrap();
            let best_rival: Price = (0..3)
                .filter(|&j| j != op)
                .map(|j| bids[j].iter().copied().sum())
                .max()
                .unwrap_or(Price::ZERO);
            prop_assert!(critical.critical_valuation <= best_rival);
        }
    }

    #[test]
    fn all_mechanisms_allocate_independent_sets(instance in small_instance()) {
        let single = run_sc_spam(&instance.graph, &instance.profiles).unwrap();
        assert_per_channel_independence(&instance.graph, &single);

        let multi = run_nud_am(&instance.graph, &instance.profiles, 3).unwrap();
        assert_per_channel_independence(&instance.graph, &multi);

        let ladders = constant_ladders(&instance.profiles);
        let demands: Vec<Vec<u32>> = instance.profiles.iter().map(|p| p.demands.clone()).collect();
        let wspam = run_nud_wspam(&instance.graph, &ladders, &demands, 3).unwrap();
        assert_per_channel_independence(&instance.graph, &wspam);

        let grouped = run_small(&instance.graph, &instance.profiles, 3).unwrap();
        assert_per_channel_independence(&instance.graph, &grouped);

        let optimal = run_vcg(&instance.graph, &instance.profiles, DEFAULT_VCG_CAP).unwrap();
        let allocated: Vec<Vertex> = instance
            .graph
            .vertices()
            .filter(|v| optimal.allocation[v.operator][v.bs] > 0)
            .collect();
        prop_assert!(instance.graph.is_independent(&allocated));
    }

    #[test]
    fn optimal_baseline_dominates(instance in small_instance()) {
        let optimal = run_vcg(&instance.graph, &instance.profiles, DEFAULT_VCG_CAP).unwrap();
        let single = run_sc_spam(&instance.graph, &instance.profiles).unwrap();
        let grouped = run_small(&instance.graph, &instance.profiles, 1).unwrap();
        prop_assert!(optimal.welfare >= single.welfare);
        prop_assert!(optimal.welfare >= grouped.welfare);
        // Station payments stay within bids (individual rationality).
        for v in instance.graph.vertices() {
            let rho = optimal.bs_prices[v.operator][v.bs];
            prop_assert!(rho >= Price::ZERO);
            prop_assert!(rho <= instance.profiles[v.operator].bids[v.bs]);
        }
    }

    #[test]
    fn winner_rounds_never_charge_above_the_winning_bid(instance in small_instance()) {
        let outcome = run_sc_spam(&instance.graph, &instance.profiles).unwrap();
        for record in &outcome.trace {
            prop_assert!(record.price.unwrap() <= record.winner_bid);
        }
    }

    #[test]
    fn runs_are_deterministic(instance in small_instance()) {
        let a = run_sc_spam(&instance.graph, &instance.profiles).unwrap();
        let b = run_sc_spam(&instance.graph, &instance.profiles).unwrap();
        prop_assert_eq!(a, b);
        let ladders = constant_ladders(&instance.profiles);
        let demands: Vec<Vec<u32>> = instance.profiles.iter().map(|p| p.demands.clone()).collect();
        let c = run_nud_wspam(&instance.graph, &ladders, &demands, 2).unwrap();
        let d = run_nud_wspam(&instance.graph, &ladders, &demands, 2).unwrap();
        prop_assert_eq!(c, d);
    }

    #[test]
    fn documents_round_trip(instance in small_instance()) {
        let topo = TopologyDoc::from_graph(&instance.graph);
        let text = serde_json::to_string(&topo).unwrap();
        let back: TopologyDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_graph().unwrap(), instance.graph.clone());

        let doc = ProfilesDoc::from_profiles(&instance.profiles);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ProfilesDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_profiles().unwrap(), instance.profiles.clone());
    }

    #[test]
    fn generated_topologies_keep_their_invariants(seed in any::<u64>(), degree_max in 0u32..=4) {
        let spec = TopologySpec::uniform(vec![5, 4, 6], degree_max, seed);
        let graph = generate_topology(&spec).unwrap();
        for &(a, b) in graph.edges() {
            prop_assert_ne!(a.operator, b.operator, "intra-operator edge {}-{}", a, b);
            prop_assert!(a < b);
        }
        let again = generate_topology(&spec).unwrap();
        prop_assert_eq!(graph, again);
    }
}
