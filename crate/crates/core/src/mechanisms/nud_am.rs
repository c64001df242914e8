//! Multi-channel extension for non-uniform demand with linear valuations.
//!
//! One single-channel pass runs per available channel. After each pass the
//! per-station demands shrink by the channels just granted and satisfied
//! stations leave the working graph, so later passes see only stations
//! with open demand. Prices accumulate across the passes an operator wins.

use crate::error::Result;
use crate::mechanisms::auction_pass;
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::outcome::{AuctionOutcome, RoundRecord};
use crate::model::profile::{validate_profiles, OperatorProfile};
use crate::price::Price;

/// Runs the non-uniform-demand mechanism for `k` channels. `bids[j]` is
/// the per-channel bid at station `j`; a station with demand `d` values
/// `d` channels at `d` times its bid.
pub fn run_nud_am(
    graph: &ConflictGraph,
    profiles: &[OperatorProfile],
    k: u32,
) -> Result<AuctionOutcome> {
    validate_profiles(graph, profiles)?;
    let mut outcome = AuctionOutcome::empty(graph);
    if k == 0 {
        return Ok(outcome);
    }

    let mut bids = vec![Price::ZERO; graph.num_vertices()];
    let mut remaining = vec![0u32; graph.num_vertices()];
    for p in profiles {
        for bs in 0..p.bids.len() {
            let flat = graph.flat_index(Vertex::new(p.operator, bs));
            bids[flat] = p.bids[bs];
            remaining[flat] = p.demands[bs];
        }
    }

    let mut working = graph.clone();
    let mut round_counter = 0u32;
    for channel in 1..=k {
        // Stations with open demand form this iteration's working graph.
        let mask: Vec<bool> = remaining.iter().map(|&d| d > 0).collect();
        if !mask.iter().any(|&m| m) {
            break;
        }
        working.set_active_mask(&mask);

        let rounds = auction_pass(&mut working, &bids, true);
        let mut served_any = false;
        for round in rounds {
            let price = round.price.expect("charging pass always prices rounds");
            outcome.prices[round.winner] += price;
            round_counter += 1;
            let mut stations = Vec::with_capacity(round.allocated.len());
            for &flat in &round.allocated {
                let v = graph.vertex_of(flat);
                outcome.allocation[v.operator][v.bs] += 1;
                outcome.welfare += bids[flat];
                remaining[flat] -= 1;
                stations.push(v);
                served_any = true;
            }
            outcome.trace.push(RoundRecord {
                round: round_counter,
                channel,
                winner: round.winner,
                winner_bid: round.sigma,
                price: Some(price),
                base_stations: stations,
            });
        }
        if served_any {
            outcome.channels_used += 1;
        }
    }
    Ok(outcome)
}
