//! Single-channel auction for unit demand.
//!
//! Rounds repeat on a shrinking working graph: the operator with the
//! highest aggregate bid wins the channel at all of its remaining
//! stations, pays its critical operator's conflict valuation on the
//! current graph, and its stations plus their neighborhood drop out.

use crate::error::Result;
use crate::mechanisms::auction_pass;
use crate::model::graph::ConflictGraph;
use crate::model::outcome::{AuctionOutcome, RoundRecord};
use crate::model::profile::{validate_profiles, OperatorProfile};
use crate::price::Price;

/// Runs the single-channel mechanism. Demands are treated as one channel
/// per station; an empty graph yields an empty outcome.
pub fn run_sc_spam(graph: &ConflictGraph, profiles: &[OperatorProfile]) -> Result<AuctionOutcome> {
    validate_profiles(graph, profiles)?;

    let mut bids = vec![Price::ZERO; graph.num_vertices()];
    for p in profiles {
        for (bs, &b) in p.bids.iter().enumerate() {
            bids[graph.flat_index(crate::model::Vertex::new(p.operator, bs))] = b;
        }
    }

    let mut working = graph.clone();
    working.activate_all();
    let rounds = auction_pass(&mut working, &bids, true);

    let mut outcome = AuctionOutcome::empty(graph);
    for (idx, round) in rounds.iter().enumerate() {
        let price = round.price.expect("charging pass always prices rounds");
        outcome.prices[round.winner] += price;
        let mut stations = Vec::with_capacity(round.allocated.len());
        for &flat in &round.allocated {
            let v = graph.vertex_of(flat);
            outcome.allocation[v.operator][v.bs] += 1;
            outcome.welfare += bids[flat];
            stations.push(v);
        }
        outcome.trace.push(RoundRecord {
            round: idx as u32 + 1,
            channel: 1,
            winner: round.winner,
            winner_bid: round.sigma,
            price: Some(price),
            base_stations: stations,
        });
    }
    outcome.channels_used = u32::from(outcome.utilization() > 0);
    Ok(outcome)
}
