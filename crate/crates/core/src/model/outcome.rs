//! Auction outcomes, round traces, and operator utilities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::profile::{BidLadder, OperatorProfile};
use crate::price::Price;

/// One winner record in a mechanism's round trace.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RoundRecord {
    /// Global 1-based round counter across the whole run.
    pub round: u32,
    /// 1-based channel iteration this round belongs to (always 1 for
    /// single-channel mechanisms).
    pub channel: u32,
    pub winner: usize,
    /// The winner's aggregate bid at the moment it won.
    pub winner_bid: Price,
    /// Price charged in this round; `None` for mechanisms that defer all
    /// pricing to a final phase.
    pub price: Option<Price>,
    /// Base stations granted a channel in this round.
    pub base_stations: Vec<Vertex>,
}

/// Result of one mechanism run: per-station channel counts, per-operator
/// prices, and diagnostics.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AuctionOutcome {
    /// `allocation[i][j]` = channels granted to operator `i`'s station `j`.
    pub allocation: Vec<Vec<u32>>,
    /// Price charged to each operator.
    pub prices: Vec<Price>,
    /// Sum of the bids of every allocated channel.
    pub welfare: Price,
    /// Number of channel iterations in which at least one station was
    /// served.
    pub channels_used: u32,
    pub trace: Vec<RoundRecord>,
}

impl AuctionOutcome {
    pub fn empty(graph: &ConflictGraph) -> Self {
        AuctionOutcome {
            allocation: graph.bs_counts().iter().map(|&m| vec![0; m]).collect(),
            prices: vec![Price::ZERO; graph.num_operators()],
            welfare: Price::ZERO,
            channels_used: 0,
            trace: Vec::new(),
        }
    }

    /// Total channel grants across all stations (the spectrum-utilization
    /// metric).
    pub fn utilization(&self) -> u64 {
        self.allocation
            .iter()
            .map(|ops| ops.iter().map(|&x| x as u64).sum::<u64>())
            .sum()
    }

    pub fn operator_allocation(&self, operator: usize) -> u64 {
        self.allocation[operator].iter().map(|&x| x as u64).sum()
    }

    /// True when the operator holds at least one channel.
    pub fn is_winner(&self, operator: usize) -> bool {
        self.operator_allocation(operator) > 0
    }
}

/// Private valuation data used to score an outcome for one operator.
///
/// `Linear` values one channel at station `j` at `v[j]` and scales with
/// the number of channels; `Ladder` prices each successive channel at the
/// station's true marginal value.
#[derive(Clone, Debug)]
pub enum TrueValuation<'a> {
    Linear(&'a OperatorProfile),
    Ladder(&'a [BidLadder]),
}

impl TrueValuation<'_> {
    /// Total true value of the channels an operator actually received.
    fn gross_value(&self, operator: usize, allocation: &[u32], demands: &[u32]) -> Result<Price> {
        let mut total = Price::ZERO;
        for (bs, &count) in allocation.iter().enumerate() {
            if count > demands[bs] {
                return Err(Error::AllocationExceedsDemand {
                    operator,
                    bs,
                    allocated: count,
                    demand: demands[bs],
                });
            }
            match self {
                TrueValuation::Linear(profile) => {
                    total += profile.true_values[bs] * Price::from_int(count as i64);
                }
                TrueValuation::Ladder(ladders) => {
                    total += ladders[bs].value_of(count);
                }
            }
        }
        Ok(total)
    }

    fn demands(&self) -> Vec<u32> {
        match self {
            TrueValuation::Linear(profile) => profile.demands.clone(),
            TrueValuation::Ladder(ladders) => ladders.iter().map(|l| l.demand()).collect(),
        }
    }
}

/// An operator's net gain from an outcome.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UtilityReport {
    pub operator: usize,
    /// True value of the allocated channels (zero when nothing was won).
    pub gross_true_value: Price,
    pub price: Price,
    /// `gross_true_value - price` when at least one channel was allocated,
    /// zero otherwise.
    pub utility: Price,
}

/// Scores `outcome` for one operator against its private valuation.
/// Errors if the allocation exceeds the operator's declared demand.
pub fn utility(
    outcome: &AuctionOutcome,
    valuation: &TrueValuation<'_>,
    operator: usize,
) -> Result<UtilityReport> {
    if operator >= outcome.allocation.len() {
        return Err(Error::UnknownOperator(operator));
    }
    let allocation = &outcome.allocation[operator];
    let demands = valuation.demands();
    if demands.len() != allocation.len() {
        return Err(Error::InvalidProfile(format!(
            "valuation covers {} base stations, outcome has {}",
            demands.len(),
            allocation.len()
        )));
    }
    let gross = valuation.gross_value(operator, allocation, &demands)?;
    let won = allocation.iter().any(|&x| x > 0);
    let (gross_true_value, price, utility) = if won {
        let price = outcome.prices[operator];
        (gross, price, gross - price)
    } else {
        (Price::ZERO, outcome.prices[operator], Price::ZERO)
    };
    Ok(UtilityReport {
        operator,
        gross_true_value,
        price,
        utility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome_with(allocation: Vec<Vec<u32>>, prices: Vec<Price>) -> AuctionOutcome {
        AuctionOutcome {
            allocation,
            prices,
            welfare: Price::ZERO,
            channels_used: 1,
            trace: Vec::new(),
        }
    }

    #[test]
    fn utility_is_zero_without_allocation() {
        let outcome = outcome_with(vec![vec![0, 0]], vec![Price::ZERO]);
        let profile = OperatorProfile::truthful(
            0,
            vec![Price::from_int(9), Price::from_int(4)],
            vec![1, 1],
        );
        let report = utility(&outcome, &TrueValuation::Linear(&profile), 0).unwrap();
        assert_eq!(report.utility, Price::ZERO);
        assert_eq!(report.gross_true_value, Price::ZERO);
    }

    #[test]
    fn utility_can_be_negative() {
        let outcome = outcome_with(vec![vec![1]], vec![Price::from_int(25)]);
        let profile = OperatorProfile::truthful(0, vec![Price::from_int(22)], vec![1]);
        let report = utility(&outcome, &TrueValuation::Linear(&profile), 0).unwrap();
        assert_eq!(report.utility, Price::from_int(-3));
    }

    #[test]
    fn ladder_valuation_sums_marginals() {
        let outcome = outcome_with(vec![vec![2]], vec![Price::from_int(5)]);
        let ladders =
            vec![BidLadder::new(0, 0, vec![Price::from_int(8), Price::from_int(5)]).unwrap()];
        let report = utility(&outcome, &TrueValuation::Ladder(&ladders), 0).unwrap();
        assert_eq!(report.gross_true_value, Price::from_int(13));
        assert_eq!(report.utility, Price::from_int(8));
    }

    #[test]
    fn over_allocation_is_an_error() {
        let outcome = outcome_with(vec![vec![2]], vec![Price::ZERO]);
        let profile = OperatorProfile::truthful(0, vec![Price::from_int(3)], vec![1]);
        assert!(matches!(
            utility(&outcome, &TrueValuation::Linear(&profile), 0),
            Err(Error::AllocationExceedsDemand { .. })
        ));
    }
}
