//! Seeded Monte Carlo experiment harness.
//!
//! For each (size, replicate) pair the harness generates one topology and
//! one truthful profile set, runs every requested mechanism on that same
//! instance, and records welfare, utilization, and runtime. Replicates
//! own derived seeds, so results are independent of scheduling; rows
//! merge back in (size, replicate, mechanism) order.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mechanisms::{
    run_nud_am, run_nud_wspam, run_sc_spam, run_small, run_vcg, Mechanism, DEFAULT_VCG_CAP,
};
use crate::model::graph::ConflictGraph;
use crate::model::profile::{
    constant_ladders, first_marginal_profiles, LadderProfile, OperatorProfile,
};
use crate::price::Price;
use crate::topology::{
    generate_topology, mix, sample_ladder_profiles, sample_profiles, Regime, TopologySpec,
};

/// Sweep parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub regime: Regime,
    pub mechanisms: Vec<Mechanism>,
    /// Total base-station counts, split as evenly as possible across
    /// operators.
    pub sizes: Vec<usize>,
    pub k: u32,
    pub replicates: u32,
    pub base_seed: u64,
    pub num_operators: usize,
    /// Per-pair degree bound for the configuration model.
    pub degree_max: u32,
    pub vcg_cap: usize,
}

impl SweepConfig {
    pub fn new(regime: Regime, mechanisms: Vec<Mechanism>, sizes: Vec<usize>) -> Self {
        SweepConfig {
            regime,
            mechanisms,
            sizes,
            k: match regime {
                Regime::SingleChannel => 1,
                Regime::UniformDemand2 | Regime::NonUniform => 3,
            },
            replicates: 50,
            base_seed: 1,
            num_operators: 3,
            degree_max: 2,
            vcg_cap: DEFAULT_VCG_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidConfig("replicates must be at least 1".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidConfig("no sizes requested".into()));
        }
        if self.mechanisms.is_empty() {
            return Err(Error::InvalidConfig("no mechanisms requested".into()));
        }
        if self.num_operators < 2 {
            return Err(Error::InvalidConfig(
                "experiments need at least two operators".into(),
            ));
        }
        if self.sizes.iter().any(|&s| s < self.num_operators) {
            return Err(Error::InvalidConfig(
                "every size must grant each operator at least one base station".into(),
            ));
        }
        Ok(())
    }
}

/// One mechanism run on one replicate instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub mechanism: Mechanism,
    pub size: usize,
    pub k: u32,
    pub replicate: u32,
    pub seed: u64,
    /// Absent when the run errored (e.g. the brute-force cap).
    pub welfare: Option<Price>,
    pub utilization: Option<u64>,
    pub runtime_ms: f64,
    pub violation_count: u32,
    pub error: Option<String>,
}

/// Per-(mechanism, size) aggregate over replicates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AggregateRow {
    pub mechanism: Mechanism,
    pub size: usize,
    pub k: u32,
    pub replicates: u32,
    pub errors: u32,
    pub welfare_mean: f64,
    pub welfare_std: f64,
    pub utilization_mean: f64,
    pub utilization_std: f64,
    pub runtime_ms_mean: f64,
}

#[derive(Clone, Debug)]
pub struct MonteCarloResult {
    pub rows: Vec<MetricsRecord>,
    pub aggregates: Vec<AggregateRow>,
}

/// One generated instance, viewable both as linear profiles and as the
/// equivalent ladders so every mechanism prices the same valuations.
pub(crate) struct ReplicateInstance {
    pub graph: ConflictGraph,
    pub linear: Vec<OperatorProfile>,
    pub ladders: Vec<LadderProfile>,
    pub demands: Vec<Vec<u32>>,
}

const PROFILE_SALT: u64 = 0x70726f66;

pub(crate) fn generate_instance(
    regime: Regime,
    size: usize,
    num_operators: usize,
    degree_max: u32,
    seed: u64,
) -> Result<ReplicateInstance> {
    let counts = TopologySpec::split_evenly(size, num_operators);
    let spec = TopologySpec::uniform(counts, degree_max, seed);
    let graph = generate_topology(&spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, PROFILE_SALT));

    match regime {
        Regime::SingleChannel | Regime::UniformDemand2 => {
            // Linear valuations; the ladder view repeats the per-channel
            // bid at every demand level.
            let linear = sample_profiles(&graph, regime, &mut rng);
            let demands: Vec<Vec<u32>> = linear.iter().map(|p| p.demands.clone()).collect();
            let ladders = constant_ladders(&linear);
            Ok(ReplicateInstance {
                graph,
                linear,
                ladders,
                demands,
            })
        }
        Regime::NonUniform => {
            // Ladder-native; the linear view bids each station's first
            // marginal.
            let ladders = sample_ladder_profiles(&graph, regime, &mut rng);
            let demands: Vec<Vec<u32>> = ladders.iter().map(|p| p.demands()).collect();
            let linear = first_marginal_profiles(&ladders);
            Ok(ReplicateInstance {
                graph,
                linear,
                ladders,
                demands,
            })
        }
    }
}

pub(crate) fn replicate_seed(base_seed: u64, size: usize, replicate: u32) -> u64 {
    mix(mix(base_seed, size as u64), replicate as u64)
}

fn run_one(
    mechanism: Mechanism,
    instance: &ReplicateInstance,
    config: &SweepConfig,
) -> (Option<Price>, Option<u64>, f64, Option<String>) {
    let start = Instant::now();
    let result: Result<(Price, u64)> = match mechanism {
        Mechanism::ScSpam => run_sc_spam(&instance.graph, &instance.linear)
            .map(|o| (o.welfare, o.utilization())),
        Mechanism::NudAm => run_nud_am(&instance.graph, &instance.linear, config.k)
            .map(|o| (o.welfare, o.utilization())),
        Mechanism::NudWspam => run_nud_wspam(
            &instance.graph,
            &instance.ladders,
            &instance.demands,
            config.k,
        )
        .map(|o| (o.welfare, o.utilization())),
        Mechanism::Vcg => run_vcg(&instance.graph, &instance.linear, config.vcg_cap)
            .map(|o| (o.welfare, o.utilization())),
        Mechanism::Small => run_small(&instance.graph, &instance.linear, config.k)
            .map(|o| (o.welfare, o.utilization())),
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok((welfare, utilization)) => (Some(welfare), Some(utilization), runtime_ms, None),
        Err(e) => (None, None, runtime_ms, Some(e.to_string())),
    }
}

/// Runs the sweep. Replicates run in parallel; output order and content
/// are independent of scheduling (runtimes aside).
pub fn monte_carlo(config: &SweepConfig) -> Result<MonteCarloResult> {
    config.validate()?;

    let jobs: Vec<(usize, u32)> = config
        .sizes
        .iter()
        .flat_map(|&size| (0..config.replicates).map(move |r| (size, r)))
        .collect();

    let rows_nested: Vec<Result<Vec<MetricsRecord>>> = jobs
        .par_iter()
        .map(|&(size, replicate)| {
            let seed = replicate_seed(config.base_seed, size, replicate);
            let instance = generate_instance(
                config.regime,
                size,
                config.num_operators,
                config.degree_max,
                seed,
            )?;
            Ok(config
                .mechanisms
                .iter()
                .map(|&mechanism| {
                    let (welfare, utilization, runtime_ms, error) =
                        run_one(mechanism, &instance, config);
                    MetricsRecord {
                        mechanism,
                        size,
                        k: config.k,
                        replicate,
                        seed,
                        welfare,
                        utilization,
                        runtime_ms,
                        violation_count: 0,
                        error,
                    }
                })
                .collect())
        })
        .collect();

    let mut rows = Vec::with_capacity(jobs.len() * config.mechanisms.len());
    for nested in rows_nested {
        rows.extend(nested?);
    }

    let mut aggregates = Vec::new();
    for &mechanism in &config.mechanisms {
        for &size in &config.sizes {
            let group: Vec<&MetricsRecord> = rows
                .iter()
                .filter(|r| r.mechanism == mechanism && r.size == size)
                .collect();
            let ok: Vec<&&MetricsRecord> =
                group.iter().filter(|r| r.error.is_none()).collect();
            let errors = (group.len() - ok.len()) as u32;
            let welfare: Vec<f64> =
                ok.iter().filter_map(|r| r.welfare.map(|w| w.to_f64())).collect();
            let utilization: Vec<f64> =
                ok.iter().filter_map(|r| r.utilization.map(|u| u as f64)).collect();
            let runtime: Vec<f64> = ok.iter().map(|r| r.runtime_ms).collect();
            aggregates.push(AggregateRow {
                mechanism,
                size,
                k: config.k,
                replicates: ok.len() as u32,
                errors,
                welfare_mean: mean(&welfare),
                welfare_std: std_dev(&welfare),
                utilization_mean: mean(&utilization),
                utilization_std: std_dev(&utilization),
                runtime_ms_mean: mean(&runtime),
            });
        }
    }

    Ok(MonteCarloResult { rows, aggregates })
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

fn std_dev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    var.sqrt()
}

/// Result of the channel-requirement scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelRequirement {
    /// Smallest channel count that satisfies every demand, when one
    /// exists within the scanned range.
    pub required: Option<u32>,
    /// `(k, utilization)` for each scanned channel count.
    pub curve: Vec<(u32, u64)>,
}

/// Scans `k = 1..=k_max` with the ladder mechanism and reports the first
/// channel count that satisfies all demand, plus the utilization curve.
pub fn channels_to_satisfy(
    graph: &ConflictGraph,
    profiles: &[LadderProfile],
    demands: &[Vec<u32>],
    k_max: u32,
) -> Result<ChannelRequirement> {
    let total_demand: u64 = demands
        .iter()
        .map(|d| d.iter().map(|&x| x as u64).sum::<u64>())
        .sum();
    if total_demand == 0 {
        return Ok(ChannelRequirement {
            required: Some(0),
            curve: Vec::new(),
        });
    }
    let mut required = None;
    let mut curve = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        // Allocation rounds are a prefix of any longer run, so once all
        // demand is met the utilization stays flat.
        if required.is_some() {
            curve.push((k, total_demand));
            continue;
        }
        let outcome = run_nud_wspam(graph, profiles, demands, k)?;
        let utilization = outcome.utilization();
        curve.push((k, utilization));
        if utilization == total_demand {
            required = Some(k);
        }
    }
    Ok(ChannelRequirement { required, curve })
}

/// One replicate of the channel-requirement experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelRequirementRow {
    pub size: usize,
    pub replicate: u32,
    pub seed: u64,
    /// Smallest channel count satisfying all demand, if within `k_max`.
    pub required: Option<u32>,
}

/// Runs the channel-requirement scan over the sweep grid, using the same
/// derived seeds (and therefore the same instances) as `monte_carlo`.
pub fn channel_requirement_sweep(
    config: &SweepConfig,
    k_max: u32,
) -> Result<Vec<ChannelRequirementRow>> {
    config.validate()?;
    let jobs: Vec<(usize, u32)> = config
        .sizes
        .iter()
        .flat_map(|&size| (0..config.replicates).map(move |r| (size, r)))
        .collect();
    jobs.par_iter()
        .map(|&(size, replicate)| {
            let seed = replicate_seed(config.base_seed, size, replicate);
            let instance = generate_instance(
                config.regime,
                size,
                config.num_operators,
                config.degree_max,
                seed,
            )?;
            let requirement = channels_to_satisfy(
                &instance.graph,
                &instance.ladders,
                &instance.demands,
                k_max,
            )?;
            Ok(ChannelRequirementRow {
                size,
                replicate,
                seed,
                required: requirement.required,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::Vertex;
    use crate::model::profile::BidLadder;
    use crate::price::Price;

    #[test]
    fn sweep_is_deterministic_modulo_runtime() {
        let config = SweepConfig {
            replicates: 3,
            sizes: vec![6, 9],
            ..SweepConfig::new(
                Regime::SingleChannel,
                vec![Mechanism::ScSpam, Mechanism::Small],
                vec![6, 9],
            )
        };
        let a = monte_carlo(&config).unwrap();
        let b = monte_carlo(&config).unwrap();
        assert_eq!(a.rows.len(), b.rows.len());
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!(x.mechanism, y.mechanism);
            assert_eq!((x.size, x.replicate, x.seed), (y.size, y.replicate, y.seed));
            assert_eq!(x.welfare, y.welfare);
            assert_eq!(x.utilization, y.utilization);
        }
    }

    #[test]
    fn vcg_cap_produces_error_rows_and_run_continues() {
        let mut config = SweepConfig::new(
            Regime::SingleChannel,
            vec![Mechanism::Vcg, Mechanism::ScSpam],
            vec![9],
        );
        config.replicates = 2;
        config.vcg_cap = 5;
        let result = monte_carlo(&config).unwrap();
        let vcg_rows: Vec<_> = result
            .rows
            .iter()
            .filter(|r| r.mechanism == Mechanism::Vcg)
            .collect();
        assert!(vcg_rows.iter().all(|r| r.error.is_some() && r.welfare.is_none()));
        let sc_rows: Vec<_> = result
            .rows
            .iter()
            .filter(|r| r.mechanism == Mechanism::ScSpam)
            .collect();
        assert!(sc_rows.iter().all(|r| r.error.is_none() && r.welfare.is_some()));
        let agg = result
            .aggregates
            .iter()
            .find(|a| a.mechanism == Mechanism::Vcg)
            .unwrap();
        assert_eq!(agg.errors, 2);
        assert_eq!(agg.replicates, 0);
    }

    #[test]
    fn edgeless_requirement_equals_max_demand() {
        let graph = ConflictGraph::new(vec![2, 1], &[]).unwrap();
        let mk = |op: usize, levels: &[&[i64]]| {
            LadderProfile::truthful(
                op,
                levels
                    .iter()
                    .enumerate()
                    .map(|(bs, lv)| {
                        BidLadder::new(op, bs, lv.iter().map(|&v| Price::from_int(v)).collect())
                            .unwrap()
                    })
                    .collect(),
            )
        };
        let profiles = vec![mk(0, &[&[9, 8, 7], &[5]]), mk(1, &[&[4, 3]])];
        let demands = vec![vec![3, 1], vec![2]];
        let req = channels_to_satisfy(&graph, &profiles, &demands, 6).unwrap();
        assert_eq!(req.required, Some(3));
        assert_eq!(req.curve.last().unwrap().1, 6);
    }

    #[test]
    fn single_edge_unit_demand_needs_two_channels() {
        let graph =
            ConflictGraph::new(vec![1, 1], &[(Vertex::new(0, 0), Vertex::new(1, 0))]).unwrap();
        let profiles = vec![
            LadderProfile::truthful(
                0,
                vec![BidLadder::new(0, 0, vec![Price::from_int(5)]).unwrap()],
            ),
            LadderProfile::truthful(
                1,
                vec![BidLadder::new(1, 0, vec![Price::from_int(4)]).unwrap()],
            ),
        ];
        let demands = vec![vec![1], vec![1]];
        let req = channels_to_satisfy(&graph, &profiles, &demands, 4).unwrap();
        assert_eq!(req.required, Some(2));
    }
}
