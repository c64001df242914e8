//! Operator bid/valuation/demand profiles and multi-channel bid ladders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::graph::ConflictGraph;
use crate::price::Price;

/// One operator's sealed bid: per-base-station per-channel bids, private
/// true valuations, and integer channel demands.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OperatorProfile {
    pub operator: usize,
    pub bids: Vec<Price>,
    pub true_values: Vec<Price>,
    pub demands: Vec<u32>,
}

impl OperatorProfile {
    /// A truthful profile: bids equal to true values.
    pub fn truthful(operator: usize, values: Vec<Price>, demands: Vec<u32>) -> Self {
        OperatorProfile {
            operator,
            bids: values.clone(),
            true_values: values,
            demands,
        }
    }

    pub fn num_base_stations(&self) -> usize {
        self.bids.len()
    }

    pub fn validate(&self, graph: &ConflictGraph) -> Result<()> {
        let m = graph.bs_count(self.operator)?;
        if self.bids.len() != m || self.true_values.len() != m || self.demands.len() != m {
            return Err(Error::InvalidProfile(format!(
                "operator {} profile has lengths bids={} values={} demands={}, expected {m}",
                self.operator,
                self.bids.len(),
                self.true_values.len(),
                self.demands.len()
            )));
        }
        for (j, b) in self.bids.iter().enumerate() {
            if b.is_negative() {
                return Err(Error::InvalidProfile(format!(
                    "negative bid {b} at operator {} base station {j}",
                    self.operator
                )));
            }
        }
        for (j, v) in self.true_values.iter().enumerate() {
            if v.is_negative() {
                return Err(Error::InvalidProfile(format!(
                    "negative true value {v} at operator {} base station {j}",
                    self.operator
                )));
            }
        }
        Ok(())
    }
}

/// Validates a full profile set against a graph: one profile per operator,
/// in operator order.
pub fn validate_profiles(graph: &ConflictGraph, profiles: &[OperatorProfile]) -> Result<()> {
    if profiles.len() != graph.num_operators() {
        return Err(Error::InvalidProfile(format!(
            "{} profiles for {} operators",
            profiles.len(),
            graph.num_operators()
        )));
    }
    for (i, p) in profiles.iter().enumerate() {
        if p.operator != i {
            return Err(Error::InvalidProfile(format!(
                "profile at position {i} names operator {}",
                p.operator
            )));
        }
        p.validate(graph)?;
    }
    Ok(())
}

/// Marginal bids for one base station, indexed by demand level. Level `l`
/// (0-based) is the bid for the `l+1`-th channel at this station. Must be
/// non-negative and non-increasing; its length is the station's demand.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BidLadder {
    levels: Vec<Price>,
}

impl BidLadder {
    pub fn new(operator: usize, bs: usize, levels: Vec<Price>) -> Result<Self> {
        for (l, b) in levels.iter().enumerate() {
            if b.is_negative() {
                return Err(Error::InvalidLadder {
                    operator,
                    bs,
                    reason: format!("negative bid {b} at level {}", l + 1),
                });
            }
            if l > 0 && levels[l - 1] < *b {
                return Err(Error::InvalidLadder {
                    operator,
                    bs,
                    reason: format!(
                        "bids increase from level {} ({}) to level {} ({})",
                        l,
                        levels[l - 1],
                        l + 1,
                        b
                    ),
                });
            }
        }
        Ok(BidLadder { levels })
    }

    /// Demand at this station: one channel per ladder level.
    pub fn demand(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn levels(&self) -> &[Price] {
        &self.levels
    }

    /// Bid for the next channel once `allocated` channels are already held.
    pub fn marginal(&self, allocated: u32) -> Option<Price> {
        self.levels.get(allocated as usize).copied()
    }

    /// Sum of the first `count` marginal bids.
    pub fn value_of(&self, count: u32) -> Price {
        self.levels.iter().take(count as usize).copied().sum()
    }
}

/// One operator's multi-channel bid: a ladder per base station plus the
/// private true-value ladders.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LadderProfile {
    pub operator: usize,
    pub ladders: Vec<BidLadder>,
    pub true_ladders: Vec<BidLadder>,
}

impl LadderProfile {
    pub fn truthful(operator: usize, ladders: Vec<BidLadder>) -> Self {
        LadderProfile {
            operator,
            true_ladders: ladders.clone(),
            ladders,
        }
    }

    pub fn demands(&self) -> Vec<u32> {
        self.ladders.iter().map(|l| l.demand()).collect()
    }

    /// Every ladder must cover its station's demand. Demand above the
    /// channel count is permitted (the channel-requirement scan runs
    /// under-provisioned); the surplus simply goes unserved.
    pub fn validate(&self, graph: &ConflictGraph, demands: &[u32]) -> Result<()> {
        let m = graph.bs_count(self.operator)?;
        if self.ladders.len() != m || self.true_ladders.len() != m || demands.len() != m {
            return Err(Error::InvalidProfile(format!(
                "operator {} has {} ladders / {} true ladders / {} demands, expected {m}",
                self.operator,
                self.ladders.len(),
                self.true_ladders.len(),
                demands.len()
            )));
        }
        for (bs, (ladder, &d)) in self.ladders.iter().zip(demands).enumerate() {
            if ladder.demand() < d {
                return Err(Error::InvalidLadder {
                    operator: self.operator,
                    bs,
                    reason: format!("ladder has {} levels but demand is {d}", ladder.demand()),
                });
            }
        }
        Ok(())
    }
}

/// The ladder view of linear profiles: each station repeats its
/// per-channel bid at every demand level.
pub fn constant_ladders(profiles: &[OperatorProfile]) -> Vec<LadderProfile> {
    profiles
        .iter()
        .map(|p| {
            let per_bs = p
                .bids
                .iter()
                .zip(&p.demands)
                .enumerate()
                .map(|(bs, (&bid, &d))| {
                    BidLadder::new(p.operator, bs, vec![bid; d as usize])
                        .expect("constant ladders are valid")
                })
                .collect();
            LadderProfile::truthful(p.operator, per_bs)
        })
        .collect()
}

/// The linear view of ladder profiles: each station bids its first
/// marginal, with demands taken from the ladder lengths.
pub fn first_marginal_profiles(profiles: &[LadderProfile]) -> Vec<OperatorProfile> {
    profiles
        .iter()
        .map(|p| {
            let bids: Vec<Price> = p
                .ladders
                .iter()
                .map(|l| l.marginal(0).unwrap_or(Price::ZERO))
                .collect();
            OperatorProfile::truthful(p.operator, bids, p.demands())
        })
        .collect()
}

/// Sum of bids over an operator's base stations that are active in the
/// working graph and still have positive remaining demand.
pub fn operator_bid_sum(
    graph: &ConflictGraph,
    profile: &OperatorProfile,
    remaining_demand: &[u32],
) -> Price {
    let mut total = Price::ZERO;
    for bs in 0..profile.bids.len() {
        let v = crate::model::graph::Vertex::new(profile.operator, bs);
        if graph.is_active(v) && remaining_demand[bs] > 0 {
            total += profile.bids[bs];
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::Vertex;

    #[test]
    fn ladder_rejects_increasing_and_negative() {
        assert!(BidLadder::new(0, 0, vec![Price::from_int(5), Price::from_int(7)]).is_err());
        assert!(BidLadder::new(0, 0, vec![Price::from_int(-1)]).is_err());
        let ok = BidLadder::new(0, 0, vec![Price::from_int(7), Price::from_int(7)]).unwrap();
        assert_eq!(ok.demand(), 2);
        assert_eq!(ok.marginal(1), Some(Price::from_int(7)));
        assert_eq!(ok.marginal(2), None);
        assert_eq!(ok.value_of(2), Price::from_int(14));
    }

    #[test]
    fn bid_sum_skips_inactive_and_satisfied() {
        let mut graph = ConflictGraph::new(vec![3], &[]).unwrap();
        let profile = OperatorProfile::truthful(
            0,
            vec![Price::from_int(4), Price::from_int(5), Price::from_int(6)],
            vec![1, 1, 1],
        );
        assert_eq!(
            operator_bid_sum(&graph, &profile, &[1, 1, 1]),
            Price::from_int(15)
        );
        assert_eq!(
            operator_bid_sum(&graph, &profile, &[1, 0, 1]),
            Price::from_int(10)
        );
        graph.deactivate(Vertex::new(0, 0));
        assert_eq!(
            operator_bid_sum(&graph, &profile, &[1, 1, 1]),
            Price::from_int(11)
        );
        assert_eq!(operator_bid_sum(&graph, &profile, &[0, 0, 0]), Price::ZERO);
    }
}
