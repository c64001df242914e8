//! Multi-channel mechanism for non-uniform demand and non-increasing
//! marginal bids, with pricing deferred to a final phase.
//!
//! Phase 1 allocates channel by channel: each pass runs the single-channel
//! allocation rule with every station bidding the marginal bid for its
//! next channel, then demands shrink, satisfied stations leave the working
//! graph, and active bids refresh from the ladders. No prices are charged
//! during allocation.
//!
//! Phase 2 prices winners from the final graph of unsatisfied stations:
//! operator `i` pays the largest conflict valuation among other operators,
//! where each operator's valuation sums the final marginal bids of its
//! unsatisfied stations that neighbor `i`'s stations in the ORIGINAL
//! topology. Operators that won nothing pay nothing.

use crate::error::Result;
use crate::mechanisms::auction_pass;
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::outcome::{AuctionOutcome, RoundRecord};
use crate::model::profile::LadderProfile;
use crate::price::Price;

/// Runs the weakly strategy-proof mechanism for `k` channels. `demands`
/// gives per-operator per-station channel requirements; every ladder must
/// cover its station's demand. Demand beyond `k` simply goes unserved.
pub fn run_nud_wspam(
    graph: &ConflictGraph,
    profiles: &[LadderProfile],
    demands: &[Vec<u32>],
    k: u32,
) -> Result<AuctionOutcome> {
    if profiles.len() != graph.num_operators() || demands.len() != graph.num_operators() {
        return Err(crate::error::Error::InvalidProfile(format!(
            "{} ladder profiles and {} demand vectors for {} operators",
            profiles.len(),
            demands.len(),
            graph.num_operators()
        )));
    }
    for (i, p) in profiles.iter().enumerate() {
        if p.operator != i {
            return Err(crate::error::Error::InvalidProfile(format!(
                "ladder profile at position {i} names operator {}",
                p.operator
            )));
        }
        p.validate(graph, &demands[i])?;
    }

    let num_vertices = graph.num_vertices();
    let mut outcome = AuctionOutcome::empty(graph);
    let mut allocated = vec![0u32; num_vertices];
    let mut remaining = vec![0u32; num_vertices];
    let mut bids = vec![Price::ZERO; num_vertices];
    for (op, per_bs) in demands.iter().enumerate() {
        for (bs, &d) in per_bs.iter().enumerate() {
            let flat = graph.flat_index(Vertex::new(op, bs));
            remaining[flat] = d;
            bids[flat] = profiles[op].ladders[bs].marginal(0).unwrap_or(Price::ZERO);
        }
    }

    // Phase 1: allocation only.
    let mut working = graph.clone();
    let mut round_counter = 0u32;
    for channel in 1..=k {
        let mask: Vec<bool> = remaining.iter().map(|&d| d > 0).collect();
        if !mask.iter().any(|&m| m) {
            break;
        }
        working.set_active_mask(&mask);

        let rounds = auction_pass(&mut working, &bids, false);
        let mut served_any = false;
        for round in rounds {
            round_counter += 1;
            let mut stations = Vec::with_capacity(round.allocated.len());
            for &flat in &round.allocated {
                let v = graph.vertex_of(flat);
                outcome.allocation[v.operator][v.bs] += 1;
                outcome.welfare += bids[flat];
                allocated[flat] += 1;
                remaining[flat] -= 1;
                stations.push(v);
                served_any = true;
            }
            outcome.trace.push(RoundRecord {
                round: round_counter,
                channel,
                winner: round.winner,
                winner_bid: round.sigma,
                price: None,
                base_stations: stations,
            });
        }
        if served_any {
            outcome.channels_used += 1;
        }

        // Refresh active bids to the marginal bid for each station's next
        // channel.
        for flat in 0..num_vertices {
            if remaining[flat] > 0 {
                let v = graph.vertex_of(flat);
                bids[flat] = profiles[v.operator].ladders[v.bs]
                    .marginal(allocated[flat])
                    .unwrap_or(Price::ZERO);
            }
        }
    }

    // Phase 2: price winners from the final graph of unsatisfied stations.
    // Final bids are the marginal bids stations would place for one more
    // channel.
    let final_bid = |flat: usize| -> Price {
        let v = graph.vertex_of(flat);
        profiles[v.operator].ladders[v.bs]
            .marginal(allocated[flat])
            .unwrap_or(Price::ZERO)
    };
    for op in 0..graph.num_operators() {
        if !outcome.is_winner(op) {
            continue;
        }
        let neighborhood = graph.full_neighbors_of_operator(op)?;
        let mut conflict_value = vec![Price::ZERO; graph.num_operators()];
        let mut has_conflict = vec![false; graph.num_operators()];
        for v in neighborhood {
            let flat = graph.flat_index(v);
            if remaining[flat] > 0 {
                conflict_value[v.operator] += final_bid(flat);
                has_conflict[v.operator] = true;
            }
        }
        let mut price = Price::ZERO;
        let mut found = false;
        for other in 0..graph.num_operators() {
            if other != op && has_conflict[other] && (!found || conflict_value[other] > price) {
                price = conflict_value[other];
                found = true;
            }
        }
        outcome.prices[op] = price;
    }

    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::profile::BidLadder;

    fn ladder(op: usize, bs: usize, levels: &[i64]) -> BidLadder {
        BidLadder::new(op, bs, levels.iter().map(|&v| Price::from_int(v)).collect()).unwrap()
    }

    #[test]
    fn edgeless_graph_serves_all_demand_at_zero_price() {
        let graph = ConflictGraph::new(vec![2, 1], &[]).unwrap();
        let profiles = vec![
            LadderProfile::truthful(0, vec![ladder(0, 0, &[5, 3]), ladder(0, 1, &[4])]),
            LadderProfile::truthful(1, vec![ladder(1, 0, &[9, 2, 1])]),
        ];
        let demands = vec![vec![2, 1], vec![3]];
        let outcome = run_nud_wspam(&graph, &profiles, &demands, 3).unwrap();
        assert_eq!(outcome.allocation, vec![vec![2, 1], vec![3]]);
        assert_eq!(outcome.prices, vec![Price::ZERO, Price::ZERO]);
        assert_eq!(outcome.welfare, Price::from_int(5 + 3 + 4 + 9 + 2 + 1));
        assert_eq!(outcome.channels_used, 3);
    }

    #[test]
    fn ladder_shorter_than_demand_is_rejected() {
        let graph = ConflictGraph::new(vec![1], &[]).unwrap();
        let profiles = vec![LadderProfile::truthful(0, vec![ladder(0, 0, &[5])])];
        let demands = vec![vec![2]];
        assert!(run_nud_wspam(&graph, &profiles, &demands, 2).is_err());
    }

    #[test]
    fn under_provisioned_run_leaves_demand_unserved() {
        let graph = ConflictGraph::new(vec![1], &[]).unwrap();
        let profiles = vec![LadderProfile::truthful(0, vec![ladder(0, 0, &[5, 4, 3])])];
        let demands = vec![vec![3]];
        let outcome = run_nud_wspam(&graph, &profiles, &demands, 2).unwrap();
        assert_eq!(outcome.allocation, vec![vec![2]]);
        assert_eq!(outcome.welfare, Price::from_int(9));
    }

    #[test]
    fn final_graph_pricing_can_exceed_the_winners_own_bids() {
        // Documented sharp edge: the pricing phase anchors neighborhoods
        // in the original topology, so a station pruned during rounds can
        // still price its neighbors. A cheap winner next to a rich
        // unsatisfied rival pays that rival's valuation, above its own
        // allocated bid sum.
        let graph = ConflictGraph::new(
            vec![1, 2, 1],
            &[
                (Vertex::new(0, 0), Vertex::new(1, 0)),
                (Vertex::new(1, 0), Vertex::new(2, 0)),
            ],
        )
        .unwrap();
        let profiles = vec![
            LadderProfile::truthful(0, vec![ladder(0, 0, &[1])]),
            LadderProfile::truthful(1, vec![ladder(1, 0, &[10]), ladder(1, 1, &[10])]),
            LadderProfile::truthful(2, vec![ladder(2, 0, &[25])]),
        ];
        let demands = vec![vec![1], vec![1, 1], vec![1]];
        let outcome = run_nud_wspam(&graph, &profiles, &demands, 1).unwrap();
        assert_eq!(outcome.allocation, vec![vec![1], vec![0, 1], vec![1]]);
        // Operator 0 won a bid-1 station yet pays the unsatisfied
        // neighbor's 10.
        assert_eq!(outcome.prices[0], Price::from_int(10));
    }

    #[test]
    fn zero_bids_still_win_rounds() {
        // A station whose next marginal bid is zero keeps its place in the
        // working graph and can still be served.
        let graph = ConflictGraph::new(vec![1, 1], &[(Vertex::new(0, 0), Vertex::new(1, 0))])
            .unwrap();
        let profiles = vec![
            LadderProfile::truthful(0, vec![ladder(0, 0, &[7, 0])]),
            LadderProfile::truthful(1, vec![ladder(1, 0, &[2])]),
        ];
        let demands = vec![vec![2], vec![1]];
        let outcome = run_nud_wspam(&graph, &profiles, &demands, 2).unwrap();
        // Channel 1 goes to op0 (7 > 2); channel 2 again to op0 at a zero
        // marginal bid (0 < 2 fails: op1 wins channel 2 instead).
        assert_eq!(outcome.allocation[0][0], 1);
        assert_eq!(outcome.allocation[1][0], 1);
    }
}
