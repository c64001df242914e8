//! Baseline auction that groups non-conflicting stations and sacrifices
//! each winning group's minimum bidder.
//!
//! Stations are partitioned into independent groups by greedy coloring in
//! descending bid order (ties by operator id then station index), each
//! vertex taking the lowest-index group it does not conflict with. A
//! group's valuation is the number of members bidding strictly above the
//! group minimum times that minimum. Each channel serves the best unserved
//! group: every member except one minimum bidder receives the channel and
//! pays the group minimum; the remaining minimum bidder is sacrificed to
//! keep the payment independent of any served member's own bid.

use crate::error::Result;
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::outcome::{AuctionOutcome, RoundRecord};
use crate::model::profile::{validate_profiles, OperatorProfile};
use crate::price::Price;

/// Runs the grouping baseline for `k` channels. Demands are ignored: the
/// baseline serves each station at most one channel, in its group's turn.
pub fn run_small(
    graph: &ConflictGraph,
    profiles: &[OperatorProfile],
    k: u32,
) -> Result<AuctionOutcome> {
    validate_profiles(graph, profiles)?;
    let mut outcome = AuctionOutcome::empty(graph);
    if k == 0 || graph.num_vertices() == 0 {
        return Ok(outcome);
    }

    let bid_of = |v: Vertex| profiles[v.operator].bids[v.bs];

    // Greedy coloring in descending bid order.
    let mut order: Vec<Vertex> = graph.vertices().collect();
    order.sort_by(|&a, &b| {
        bid_of(b)
            .cmp(&bid_of(a))
            .then(a.operator.cmp(&b.operator))
            .then(a.bs.cmp(&b.bs))
    });
    let mut color_of = vec![usize::MAX; graph.num_vertices()];
    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    for &v in &order {
        let flat = graph.flat_index(v);
        let mut taken = vec![false; groups.len()];
        for &nb in graph.adjacent_flat(flat) {
            let c = color_of[nb as usize];
            if c != usize::MAX {
                taken[c] = true;
            }
        }
        let color = taken.iter().position(|&t| !t).unwrap_or(groups.len());
        if color == groups.len() {
            groups.push(Vec::new());
        }
        color_of[flat] = color;
        groups[color].push(v);
    }

    // Group valuation: members strictly above the minimum, times the
    // minimum.
    let group_stats: Vec<(Price, Price)> = groups
        .iter()
        .map(|members| {
            let min = members
                .iter()
                .map(|&v| bid_of(v))
                .min()
                .unwrap_or(Price::ZERO);
            let above = members.iter().filter(|&&v| bid_of(v) > min).count() as i64;
            (min * Price::from_int(above), min)
        })
        .collect();

    // Serve the best-valued unserved group per channel.
    let mut ranked: Vec<usize> = (0..groups.len()).collect();
    ranked.sort_by(|&a, &b| group_stats[b].0.cmp(&group_stats[a].0).then(a.cmp(&b)));

    let mut round_counter = 0u32;
    for (channel, &g) in ranked.iter().take(k as usize).enumerate() {
        let members = &groups[g];
        let (valuation, min_bid) = group_stats[g];
        // Exactly one minimum bidder is sacrificed: lowest operator id,
        // then lowest station index.
        let sacrificed = *members
            .iter()
            .filter(|&&v| bid_of(v) == min_bid)
            .min()
            .expect("groups are never empty");

        let mut per_op: Vec<Vec<Vertex>> = vec![Vec::new(); graph.num_operators()];
        for &v in members {
            if v == sacrificed {
                continue;
            }
            outcome.allocation[v.operator][v.bs] += 1;
            outcome.welfare += bid_of(v);
            outcome.prices[v.operator] += min_bid;
            per_op[v.operator].push(v);
        }
        if members.len() > 1 {
            outcome.channels_used += 1;
        }
        for (op, stations) in per_op.into_iter().enumerate() {
            if stations.is_empty() {
                continue;
            }
            round_counter += 1;
            outcome.trace.push(RoundRecord {
                round: round_counter,
                channel: channel as u32 + 1,
                winner: op,
                winner_bid: valuation,
                price: Some(min_bid * Price::from_int(stations.len() as i64)),
                base_stations: stations,
            });
        }
    }
    Ok(outcome)
}
