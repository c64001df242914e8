//! Synthetic multi-operator topologies: pairwise bipartite conflict graphs
//! drawn from a configuration model and composed into one interference
//! matrix, plus the experiment bid/demand samplers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::profile::{BidLadder, LadderProfile, OperatorProfile};
use crate::price::Price;

/// Parameters for one synthetic topology.
///
/// For every unordered operator pair, each station draws an integer degree
/// uniformly from `[0, degree_max]`; stub totals on the two sides are then
/// balanced by adding single stubs to uniformly chosen stations on the
/// lighter side, stubs are paired uniformly, and multi-edges collapse.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TopologySpec {
    pub bs_counts: Vec<usize>,
    /// Per-pair degree bound, keyed by `(i, j)` with `i < j`.
    pub pair_degree_max: BTreeMap<(usize, usize), u32>,
    pub seed: u64,
}

impl TopologySpec {
    /// Same degree bound for every operator pair.
    pub fn uniform(bs_counts: Vec<usize>, degree_max: u32, seed: u64) -> Self {
        let n = bs_counts.len();
        let mut pair_degree_max = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pair_degree_max.insert((i, j), degree_max);
            }
        }
        TopologySpec {
            bs_counts,
            pair_degree_max,
            seed,
        }
    }

    /// Splits `total` stations as evenly as possible across `operators`.
    pub fn split_evenly(total: usize, operators: usize) -> Vec<usize> {
        (0..operators)
            .map(|i| total / operators + usize::from(i < total % operators))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bs_counts.len() < 2 {
            return Err(Error::InvalidTopology(
                "a topology needs at least two operators".into(),
            ));
        }
        if self.bs_counts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidTopology(
                "every operator needs at least one base station".into(),
            ));
        }
        for (&(i, j), _) in &self.pair_degree_max {
            if i >= j || j >= self.bs_counts.len() {
                return Err(Error::InvalidTopology(format!(
                    "degree bound names invalid operator pair ({i}, {j})"
                )));
            }
        }
        Ok(())
    }
}

/// Binary interference between the stations of one operator pair;
/// `rows x cols` with `rows` stations of `op_a` and `cols` of `op_b`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InterferenceMatrix {
    pub op_a: usize,
    pub op_b: usize,
    pub rows: usize,
    pub cols: usize,
    bits: Vec<bool>,
}

impl InterferenceMatrix {
    pub fn zero(op_a: usize, op_b: usize, rows: usize, cols: usize) -> Self {
        InterferenceMatrix {
            op_a,
            op_b,
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.cols + col] = true;
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The same interference seen from the other operator.
    pub fn transposed(&self) -> Self {
        let mut t = InterferenceMatrix::zero(self.op_b, self.op_a, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r);
                }
            }
        }
        t
    }
}

/// Derives the RNG stream for one operator pair of one topology, so pair
/// draws are independent of generation order.
fn pair_rng(seed: u64, i: usize, j: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, (i as u64) << 32 | j as u64))
}

/// splitmix64-style mixer for deriving independent seeds.
pub(crate) fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Samples the bipartite configuration-model conflicts for one operator
/// pair. Deterministic in `(spec.seed, pair)`.
pub fn generate_pairwise_graph(
    spec: &TopologySpec,
    pair: (usize, usize),
) -> Result<InterferenceMatrix> {
    spec.validate()?;
    let (i, j) = pair;
    let (lo, hi) = (i.min(j), i.max(j));
    if lo == hi || hi >= spec.bs_counts.len() {
        return Err(Error::InvalidTopology(format!(
            "invalid operator pair ({i}, {j})"
        )));
    }
    let degree_max = *spec.pair_degree_max.get(&(lo, hi)).unwrap_or(&0);
    let rows = spec.bs_counts[lo];
    let cols = spec.bs_counts[hi];
    let mut rng = pair_rng(spec.seed, lo, hi);

    let mut matrix = InterferenceMatrix::zero(lo, hi, rows, cols);
    if degree_max == 0 {
        return Ok(matrix);
    }

    let mut left_degrees: Vec<u32> = (0..rows).map(|_| rng.gen_range(0..=degree_max)).collect();
    let mut right_degrees: Vec<u32> = (0..cols).map(|_| rng.gen_range(0..=degree_max)).collect();

    // Balance stub totals by topping up the lighter side one stub at a
    // time on a uniformly chosen station.
    loop {
        let left_total: u64 = left_degrees.iter().map(|&d| d as u64).sum();
        let right_total: u64 = right_degrees.iter().map(|&d| d as u64).sum();
        if left_total == right_total {
            break;
        }
        if left_total < right_total {
            left_degrees[rng.gen_range(0..rows)] += 1;
        } else {
            right_degrees[rng.gen_range(0..cols)] += 1;
        }
    }

    let mut left_stubs: Vec<usize> = Vec::new();
    for (station, &d) in left_degrees.iter().enumerate() {
        left_stubs.extend(std::iter::repeat(station).take(d as usize));
    }
    let mut right_stubs: Vec<usize> = Vec::new();
    for (station, &d) in right_degrees.iter().enumerate() {
        right_stubs.extend(std::iter::repeat(station).take(d as usize));
    }
    // Fisher-Yates on the right side, then pair in order; multi-edges
    // collapse through the binary matrix.
    for idx in (1..right_stubs.len()).rev() {
        right_stubs.swap(idx, rng.gen_range(0..=idx));
    }
    for (l, r) in left_stubs.iter().zip(&right_stubs) {
        matrix.set(*l, *r);
    }
    Ok(matrix)
}

/// Composes pairwise interference matrices into one conflict graph. Every
/// unordered operator pair must appear exactly once with dimensions
/// matching `bs_counts`.
pub fn compose_interference(
    bs_counts: &[usize],
    parts: &[InterferenceMatrix],
) -> Result<ConflictGraph> {
    let n = bs_counts.len();
    let mut seen = BTreeMap::new();
    let mut edges = Vec::new();
    for part in parts {
        let (lo, hi) = (part.op_a.min(part.op_b), part.op_a.max(part.op_b));
        if lo == hi || hi >= n {
            return Err(Error::InvalidTopology(format!(
                "interference part names invalid pair ({}, {})",
                part.op_a, part.op_b
            )));
        }
        if seen.insert((lo, hi), ()).is_some() {
            return Err(Error::InvalidTopology(format!(
                "operator pair ({lo}, {hi}) appears more than once"
            )));
        }
        let oriented = if part.op_a == lo { part.clone() } else { part.transposed() };
        if oriented.rows != bs_counts[lo] || oriented.cols != bs_counts[hi] {
            return Err(Error::InvalidTopology(format!(
                "pair ({lo}, {hi}) is {}x{}, expected {}x{}",
                oriented.rows, oriented.cols, bs_counts[lo], bs_counts[hi]
            )));
        }
        for r in 0..oriented.rows {
            for c in 0..oriented.cols {
                if oriented.get(r, c) {
                    edges.push((Vertex::new(lo, r), Vertex::new(hi, c)));
                }
            }
        }
    }
    let expected_pairs = n * (n - 1) / 2;
    if seen.len() != expected_pairs {
        return Err(Error::InvalidTopology(format!(
            "{} operator pairs covered, expected {expected_pairs}",
            seen.len()
        )));
    }
    ConflictGraph::new(bs_counts.to_vec(), &edges)
}

/// Generates the full topology for a spec.
pub fn generate_topology(spec: &TopologySpec) -> Result<ConflictGraph> {
    spec.validate()?;
    let n = spec.bs_counts.len();
    let mut parts = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            parts.push(generate_pairwise_graph(spec, (i, j))?);
        }
    }
    compose_interference(&spec.bs_counts, &parts)
}

/// The bid/demand distributions used by the experiments.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Unit demand everywhere, bids uniform on [15, 25].
    SingleChannel,
    /// Demand of exactly 2 channels per station, per-channel bids uniform
    /// on [10, 25].
    UniformDemand2,
    /// Demand uniform on {0, 1, 2, 3}, marginal bids uniform on [10, 25]
    /// sorted non-increasing per station.
    NonUniform,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::SingleChannel => "single-channel",
            Regime::UniformDemand2 => "uniform-demand-2",
            Regime::NonUniform => "nonuniform",
        }
    }

    pub fn max_demand(&self) -> u32 {
        match self {
            Regime::SingleChannel => 1,
            Regime::UniformDemand2 => 2,
            Regime::NonUniform => 3,
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single-channel" => Ok(Regime::SingleChannel),
            "uniform-demand-2" => Ok(Regime::UniformDemand2),
            "nonuniform" => Ok(Regime::NonUniform),
            other => Err(Error::InvalidConfig(format!(
                "unknown regime {other:?} (expected single-channel, uniform-demand-2, or nonuniform)"
            ))),
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Bids are drawn on a milli-unit grid so all downstream arithmetic stays
/// exact.
fn uniform_price<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Price {
    Price::from_millis(rng.gen_range(lo * 1000..=hi * 1000))
}

/// Truthful linear profiles for a graph under a regime. Deterministic in
/// the RNG stream.
pub fn sample_profiles<R: Rng>(
    graph: &ConflictGraph,
    regime: Regime,
    rng: &mut R,
) -> Vec<OperatorProfile> {
    let (lo, hi) = match regime {
        Regime::SingleChannel => (15, 25),
        Regime::UniformDemand2 | Regime::NonUniform => (10, 25),
    };
    (0..graph.num_operators())
        .map(|op| {
            let m = graph.bs_counts()[op];
            let values: Vec<Price> = (0..m).map(|_| uniform_price(rng, lo, hi)).collect();
            let demands: Vec<u32> = (0..m)
                .map(|_| match regime {
                    Regime::SingleChannel => 1,
                    Regime::UniformDemand2 => 2,
                    Regime::NonUniform => rng.gen_range(0..=3),
                })
                .collect();
            OperatorProfile::truthful(op, values, demands)
        })
        .collect()
}

/// Truthful ladder profiles: per-station marginal bids drawn from the
/// regime's bid range and sorted non-increasing.
pub fn sample_ladder_profiles<R: Rng>(
    graph: &ConflictGraph,
    regime: Regime,
    rng: &mut R,
) -> Vec<LadderProfile> {
    let (lo, hi) = match regime {
        Regime::SingleChannel => (15, 25),
        Regime::UniformDemand2 | Regime::NonUniform => (10, 25),
    };
    (0..graph.num_operators())
        .map(|op| {
            let m = graph.bs_counts()[op];
            let ladders: Vec<BidLadder> = (0..m)
                .map(|bs| {
                    let demand = match regime {
                        Regime::SingleChannel => 1,
                        Regime::UniformDemand2 => 2,
                        Regime::NonUniform => rng.gen_range(0..=3),
                    };
                    let mut marginals: Vec<Price> =
                        (0..demand).map(|_| uniform_price(rng, lo, hi)).collect();
                    marginals.sort_by(|a, b| b.cmp(a));
                    BidLadder::new(op, bs, marginals)
                        .expect("sorted non-negative marginals form a valid ladder")
                })
                .collect();
            LadderProfile::truthful(op, ladders)
        })
        .collect()
}
