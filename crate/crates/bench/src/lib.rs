//! Shared instance builders for the benchmark targets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectrum_auctions::{
    generate_topology, sample_ladder_profiles, sample_profiles, ConflictGraph, LadderProfile,
    OperatorProfile, Regime, TopologySpec,
};

pub fn linear_instance(size: usize, seed: u64) -> (ConflictGraph, Vec<OperatorProfile>) {
    let spec = TopologySpec::uniform(TopologySpec::split_evenly(size, 3), 2, seed);
    let graph = generate_topology(&spec).expect("valid spec");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb1a5);
    let profiles = sample_profiles(&graph, Regime::UniformDemand2, &mut rng);
    (graph, profiles)
}

pub fn ladder_instance(
    size: usize,
    seed: u64,
) -> (ConflictGraph, Vec<LadderProfile>, Vec<Vec<u32>>) {
    let spec = TopologySpec::uniform(TopologySpec::split_evenly(size, 3), 2, seed);
    let graph = generate_topology(&spec).expect("valid spec");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1add);
    let profiles = sample_ladder_profiles(&graph, Regime::NonUniform, &mut rng);
    let demands: Vec<Vec<u32>> = profiles.iter().map(|p| p.demands()).collect();
    (graph, profiles, demands)
}
