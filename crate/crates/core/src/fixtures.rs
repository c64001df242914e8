//! Bundled example instances.
//!
//! Three small hand-built instances exercise every mechanism end to end:
//! `fig2` is a 3x3-station single-channel instance, `sec4` a two-channel
//! instance with non-uniform demand and linear bids, and `sec5` the same
//! topology with non-increasing bid ladders. Each carries a documented
//! deviation for one operator. `self_check` re-derives every aggregate
//! the instances were built to produce (bid sums, critical valuations,
//! prices, utilities) and fails loudly on any drift, so the fixtures
//! cannot silently rot.

use crate::error::{Error, Result};
use crate::mechanisms::{run_nud_am, run_nud_wspam, run_sc_spam};
use crate::model::critical::critical_operator;
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::outcome::{utility, TrueValuation};
use crate::model::profile::{BidLadder, LadderProfile, OperatorProfile};
use crate::price::Price;

/// A single-channel or linear-bid instance.
#[derive(Clone, Debug)]
pub struct LinearFixture {
    pub graph: ConflictGraph,
    pub profiles: Vec<OperatorProfile>,
    /// Channels on auction.
    pub k: u32,
}

/// A ladder-bid instance.
#[derive(Clone, Debug)]
pub struct LadderFixture {
    pub graph: ConflictGraph,
    pub profiles: Vec<LadderProfile>,
    pub demands: Vec<Vec<u32>>,
    pub k: u32,
}

pub const FIXTURE_NAMES: [&str; 3] = ["fig2", "sec4", "sec5"];

fn p(v: i64) -> Price {
    Price::from_int(v)
}

fn ladder(op: usize, bs: usize, levels: &[i64]) -> BidLadder {
    BidLadder::new(op, bs, levels.iter().map(|&v| p(v)).collect())
        .expect("fixture ladders are non-increasing")
}

/// Three operators with three stations each, single channel.
///
/// Operator 0's stations conflict with stations 0 and 1 of both rivals;
/// rival stations 2 conflict only with each other. Bids sum to 25, 22,
/// and 21.
pub fn fig2() -> LinearFixture {
    let graph = ConflictGraph::new(
        vec![3, 3, 3],
        &[
            (Vertex::new(0, 0), Vertex::new(1, 0)),
            (Vertex::new(0, 2), Vertex::new(1, 0)),
            (Vertex::new(0, 1), Vertex::new(1, 1)),
            (Vertex::new(0, 0), Vertex::new(2, 0)),
            (Vertex::new(0, 1), Vertex::new(2, 1)),
            (Vertex::new(1, 2), Vertex::new(2, 2)),
        ],
    )
    .expect("fig2 topology is valid");
    let profiles = vec![
        OperatorProfile::truthful(0, vec![p(10), p(8), p(7)], vec![1, 1, 1]),
        OperatorProfile::truthful(1, vec![p(9), p(8), p(5)], vec![1, 1, 1]),
        OperatorProfile::truthful(2, vec![p(10), p(8), p(3)], vec![1, 1, 1]),
    ];
    LinearFixture {
        graph,
        profiles,
        k: 1,
    }
}

/// `fig2` with operator 1's bids proportionally raised so they sum to 28.
pub fn fig2_deviated() -> LinearFixture {
    let mut fixture = fig2();
    let scale = Price::new(28, 22);
    for b in &mut fixture.profiles[1].bids {
        *b = *b * scale;
    }
    fixture
}

/// Shared topology of the two-channel fixtures: operators 0 and 1 with
/// four stations each in full pairwise conflict, operator 2's station 0
/// conflicting with 0/2 and station 1 with 1/1.
fn two_channel_graph() -> ConflictGraph {
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            edges.push((Vertex::new(0, a), Vertex::new(1, b)));
        }
    }
    edges.push((Vertex::new(2, 0), Vertex::new(0, 2)));
    edges.push((Vertex::new(2, 1), Vertex::new(1, 1)));
    ConflictGraph::new(vec![4, 4, 2], &edges).expect("two-channel topology is valid")
}

const SEC4_DEMANDS: [&[u32]; 3] = [&[2, 1, 2, 2], &[2, 1, 1, 2], &[2, 1]];

/// Two channels, non-uniform demand, linear per-channel bids.
pub fn sec4() -> LinearFixture {
    let profiles = vec![
        OperatorProfile::truthful(0, vec![p(8), p(10), p(7), p(6)], SEC4_DEMANDS[0].to_vec()),
        OperatorProfile::truthful(1, vec![p(8), p(9), p(9), p(10)], SEC4_DEMANDS[1].to_vec()),
        OperatorProfile::truthful(2, vec![p(10), p(9)], SEC4_DEMANDS[2].to_vec()),
    ];
    LinearFixture {
        graph: two_channel_graph(),
        profiles,
        k: 2,
    }
}

/// `sec4` with operator 1 under-bidding as `[8, 6, 6, 9]`; true values
/// stay at the truthful vector.
pub fn sec4_deviated() -> LinearFixture {
    let mut fixture = sec4();
    fixture.profiles[1].bids = vec![p(8), p(6), p(6), p(9)];
    fixture
}

/// Two channels, non-uniform demand, non-increasing ladder bids on the
/// `sec4` topology.
pub fn sec5() -> LadderFixture {
    let profiles = vec![
        LadderProfile::truthful(
            0,
            vec![
                ladder(0, 0, &[8, 5]),
                ladder(0, 1, &[10, 0]),
                ladder(0, 2, &[7, 3]),
                ladder(0, 3, &[6, 3]),
            ],
        ),
        LadderProfile::truthful(
            1,
            vec![
                ladder(1, 0, &[8, 4]),
                ladder(1, 1, &[9, 0]),
                ladder(1, 2, &[9, 0]),
                ladder(1, 3, &[10, 3]),
            ],
        ),
        LadderProfile::truthful(2, vec![ladder(2, 0, &[10, 5]), ladder(2, 1, &[9, 0])]),
    ];
    LadderFixture {
        graph: two_channel_graph(),
        profiles,
        demands: SEC4_DEMANDS.iter().map(|d| d.to_vec()).collect(),
        k: 2,
    }
}

/// `sec5` with operator 1 lowering three of its ladders; true ladders
/// stay at the truthful ones.
pub fn sec5_deviated() -> LadderFixture {
    let mut fixture = sec5();
    fixture.profiles[1].ladders = vec![
        ladder(1, 0, &[8, 4]),
        ladder(1, 1, &[6, 0]),
        ladder(1, 2, &[6, 0]),
        ladder(1, 3, &[9, 3]),
    ];
    fixture
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("fixture self-check failed: {what}")))
    }
}

fn check_eq<T: PartialEq + std::fmt::Debug>(actual: T, expected: T, what: &str) -> Result<()> {
    if actual == expected {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "fixture self-check failed: {what}: got {actual:?}, expected {expected:?}"
        )))
    }
}

/// Re-derives every aggregate the fig2 instance is built to produce.
pub fn self_check_fig2() -> Result<()> {
    let fixture = fig2();
    let graph = &fixture.graph;
    let profiles = &fixture.profiles;

    let sums: Vec<Price> = profiles
        .iter()
        .map(|pr| pr.bids.iter().copied().sum())
        .collect();
    check_eq(sums, vec![p(25), p(22), p(21)], "fig2 aggregate bids")?;

    let neighborhood = graph.neighbors_of_operator(0)?;
    let expected: std::collections::BTreeSet<Vertex> = [
        Vertex::new(1, 0),
        Vertex::new(1, 1),
        Vertex::new(2, 0),
        Vertex::new(2, 1),
    ]
    .into_iter()
    .collect();
    check_eq(neighborhood, expected, "fig2 neighborhood of operator 0")?;

    let bids: Vec<Vec<Price>> = profiles.iter().map(|pr| pr.bids.clone()).collect();
    let critical = critical_operator(graph, &bids, 0)?;
    check_eq(critical.critical_operator, Some(2), "fig2 critical operator of 0")?;
    check_eq(critical.critical_valuation, p(18), "fig2 critical valuation of 0")?;

    let outcome = run_sc_spam(graph, profiles)?;
    check_eq(outcome.prices.clone(), vec![p(18), p(3), p(0)], "fig2 prices")?;
    check_eq(
        outcome.allocation.clone(),
        vec![vec![1, 1, 1], vec![0, 0, 1], vec![0, 0, 0]],
        "fig2 allocation",
    )?;
    check_eq(outcome.welfare, p(30), "fig2 welfare")?;
    for (op, expected) in [(0usize, p(7)), (1, p(2)), (2, p(0))] {
        let report = utility(&outcome, &TrueValuation::Linear(&profiles[op]), op)?;
        check_eq(report.utility, expected, "fig2 utility")?;
    }

    let deviated = fig2_deviated();
    let sum: Price = deviated.profiles[1].bids.iter().copied().sum();
    check_eq(sum, p(28), "fig2 deviated bid sum")?;
    let dev_outcome = run_sc_spam(&deviated.graph, &deviated.profiles)?;
    check_eq(dev_outcome.prices[1], p(25), "fig2 deviated price of operator 1")?;
    let report = utility(&dev_outcome, &TrueValuation::Linear(&profiles[1]), 1)?;
    check_eq(report.utility, p(-3), "fig2 deviated utility of operator 1")?;
    Ok(())
}

pub fn self_check_sec4() -> Result<()> {
    let fixture = sec4();
    let sums: Vec<Price> = fixture
        .profiles
        .iter()
        .map(|pr| pr.bids.iter().copied().sum())
        .collect();
    check_eq(sums, vec![p(31), p(36), p(19)], "sec4 aggregate bids")?;

    let outcome = run_nud_am(&fixture.graph, &fixture.profiles, fixture.k)?;
    check_eq(outcome.prices.clone(), vec![p(18), p(31), p(0)], "sec4 prices")?;
    check_eq(
        vec![
            outcome.operator_allocation(0),
            outcome.operator_allocation(1),
            outcome.operator_allocation(2),
        ],
        vec![4, 4, 2],
        "sec4 allocation counts",
    )?;

    let deviated = sec4_deviated();
    let dev = run_nud_am(&deviated.graph, &deviated.profiles, deviated.k)?;
    check_eq(dev.prices[1], p(21), "sec4 deviated price of operator 1")?;
    check_eq(dev.operator_allocation(1), 4, "sec4 deviated allocation of operator 1")?;

    let truthful_report = utility(&outcome, &TrueValuation::Linear(&fixture.profiles[1]), 1)?;
    let deviated_report = utility(&dev, &TrueValuation::Linear(&fixture.profiles[1]), 1)?;
    check_eq(
        deviated_report.utility - truthful_report.utility,
        p(10),
        "sec4 deviation gain of operator 1",
    )?;
    Ok(())
}

pub fn self_check_sec5() -> Result<()> {
    let fixture = sec5();
    let outcome = run_nud_wspam(&fixture.graph, &fixture.profiles, &fixture.demands, fixture.k)?;
    check_eq(outcome.prices.clone(), vec![p(7), p(11), p(3)], "sec5 prices")?;
    check_eq(
        vec![
            outcome.operator_allocation(0),
            outcome.operator_allocation(1),
            outcome.operator_allocation(2),
        ],
        vec![4, 4, 2],
        "sec5 allocation counts",
    )?;

    let deviated = sec5_deviated();
    let dev = run_nud_wspam(&deviated.graph, &deviated.profiles, &deviated.demands, deviated.k)?;
    check_eq(dev.prices.clone(), outcome.prices.clone(), "sec5 deviated prices")?;
    for op in 0..3 {
        check_eq(
            dev.operator_allocation(op),
            outcome.operator_allocation(op),
            "sec5 deviated allocation counts",
        )?;
    }
    // Deviating gains operator 1 nothing.
    let truthful_report = utility(
        &outcome,
        &TrueValuation::Ladder(&fixture.profiles[1].true_ladders),
        1,
    )?;
    let deviated_report = utility(
        &dev,
        &TrueValuation::Ladder(&fixture.profiles[1].true_ladders),
        1,
    )?;
    check(
        deviated_report.utility <= truthful_report.utility,
        "sec5 deviation must not gain",
    )?;
    Ok(())
}

/// Validates every bundled fixture.
pub fn self_check_all() -> Result<()> {
    self_check_fig2()?;
    self_check_sec4()?;
    self_check_sec5()?;
    Ok(())
}
