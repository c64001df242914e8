//! Exhaustive single-channel winner determination with critical-payment
//! pricing.
//!
//! The optimal allocation is the maximum-weight independent set under the
//! bid weights, found by dynamic programming over all vertex subsets, so
//! instances are capped. Each allocated station pays the welfare loss its
//! presence inflicts on everyone else.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::profile::{validate_profiles, OperatorProfile};
use crate::price::Price;

/// Default limit on brute-force instance size (base stations).
pub const DEFAULT_VCG_CAP: usize = 22;

/// Result of the optimal mechanism.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VcgOutcome {
    /// `allocation[i][j]` = 1 when operator `i`'s station `j` is served.
    pub allocation: Vec<Vec<u32>>,
    /// Optimal social welfare.
    pub welfare: Price,
    /// Per-station payments; zero for unallocated stations.
    pub bs_prices: Vec<Vec<Price>>,
    /// Per-operator sums of station payments.
    pub operator_prices: Vec<Price>,
}

impl VcgOutcome {
    pub fn utilization(&self) -> u64 {
        self.allocation
            .iter()
            .map(|ops| ops.iter().map(|&x| x as u64).sum::<u64>())
            .sum()
    }
}

/// Integer subset-DP state: bid weights scaled to a common denominator.
struct ScaledBids {
    weights: Vec<i64>,
    denom: i64,
}

fn scale_bids(graph: &ConflictGraph, profiles: &[OperatorProfile]) -> Result<ScaledBids> {
    let mut denom: i64 = 1;
    for p in profiles {
        for b in &p.bids {
            denom = num_integer::lcm(denom, b.denom());
            if denom > 1_000_000_000 {
                return Err(Error::Arithmetic(
                    "reducing bids to a common denominator".into(),
                ));
            }
        }
    }
    let mut weights = vec![0i64; graph.num_vertices()];
    for p in profiles {
        for (bs, b) in p.bids.iter().enumerate() {
            let w = b
                .numer()
                .checked_mul(denom / b.denom())
                .ok_or_else(|| Error::Arithmetic("scaling bids".into()))?;
            weights[graph.flat_index(Vertex::new(p.operator, bs))] = w;
        }
    }
    Ok(ScaledBids { weights, denom })
}

/// Maximum-weight independent set over `masks`/`weights` by subset DP.
/// Returns the first maximizer in ascending subset order and its weight.
fn max_weight_independent_set(masks: &[u64], weights: &[i64]) -> (u64, i64) {
    let m = masks.len();
    debug_assert!(m <= 63);
    if m == 0 {
        return (0, 0);
    }
    // value[s] = total weight of subset s, or MIN when s is dependent.
    let mut value = vec![0i64; 1usize << m];
    let mut best_set = 0u64;
    let mut best = 0i64;
    for s in 1u64..(1u64 << m) {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let rest_value = value[rest as usize];
        let entry = if rest_value == i64::MIN || masks[v] & rest != 0 {
            i64::MIN
        } else {
            rest_value + weights[v]
        };
        value[s as usize] = entry;
        if entry != i64::MIN && entry > best {
            best = entry;
            best_set = s;
        }
    }
    (best_set, best)
}

/// Runs the optimal mechanism on instances with at most `cap` stations.
pub fn run_vcg(
    graph: &ConflictGraph,
    profiles: &[OperatorProfile],
    cap: usize,
) -> Result<VcgOutcome> {
    validate_profiles(graph, profiles)?;
    let m = graph.num_vertices();
    if m > cap.min(63) {
        return Err(Error::InstanceTooLarge {
            size: m,
            cap: cap.min(63),
        });
    }

    let scaled = scale_bids(graph, profiles)?;
    let masks: Vec<u64> = (0..m)
        .map(|flat| {
            graph
                .adjacent_flat(flat)
                .iter()
                .fold(0u64, |acc, &nb| acc | 1u64 << nb)
        })
        .collect();

    let (best_set, best_weight) = max_weight_independent_set(&masks, &scaled.weights);

    let mut outcome = VcgOutcome {
        allocation: graph.bs_counts().iter().map(|&c| vec![0; c]).collect(),
        welfare: Price::new(best_weight, scaled.denom),
        bs_prices: graph.bs_counts().iter().map(|&c| vec![Price::ZERO; c]).collect(),
        operator_prices: vec![Price::ZERO; graph.num_operators()],
    };

    for flat in 0..m {
        if best_set & (1u64 << flat) == 0 {
            continue;
        }
        let v = graph.vertex_of(flat);
        outcome.allocation[v.operator][v.bs] = 1;

        // Others' best welfare with this station out of consideration,
        // via the same DP on the graph without the station.
        let mut sub_masks = Vec::with_capacity(m - 1);
        let mut sub_weights = Vec::with_capacity(m - 1);
        for u in 0..m {
            if u == flat {
                continue;
            }
            let mut mask = 0u64;
            for &nb in graph.adjacent_flat(u) {
                let nb = nb as usize;
                if nb == flat {
                    continue;
                }
                let shifted = if nb > flat { nb - 1 } else { nb };
                mask |= 1u64 << shifted;
            }
            sub_masks.push(mask);
            sub_weights.push(scaled.weights[u]);
        }
        let (_, others_best) = max_weight_independent_set(&sub_masks, &sub_weights);
        let others_at_optimum = best_weight - scaled.weights[flat];
        let rho = Price::new(others_best - others_at_optimum, scaled.denom);
        outcome.bs_prices[v.operator][v.bs] = rho;
        outcome.operator_prices[v.operator] += rho;
    }

    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_price_reduction_on_one_edge() {
        let graph =
            ConflictGraph::new(vec![1, 1], &[(Vertex::new(0, 0), Vertex::new(1, 0))]).unwrap();
        let profiles = vec![
            OperatorProfile::truthful(0, vec![Price::from_int(5)], vec![1]),
            OperatorProfile::truthful(1, vec![Price::from_int(3)], vec![1]),
        ];
        let outcome = run_vcg(&graph, &profiles, DEFAULT_VCG_CAP).unwrap();
        assert_eq!(outcome.allocation, vec![vec![1], vec![0]]);
        assert_eq!(outcome.welfare, Price::from_int(5));
        assert_eq!(outcome.bs_prices[0][0], Price::from_int(3));
        assert_eq!(outcome.operator_prices, vec![Price::from_int(3), Price::ZERO]);
    }

    #[test]
    fn edgeless_graph_allocates_everything_for_free() {
        let graph = ConflictGraph::new(vec![2, 1], &[]).unwrap();
        let profiles = vec![
            OperatorProfile::truthful(0, vec![Price::from_int(2), Price::from_int(7)], vec![1, 1]),
            OperatorProfile::truthful(1, vec![Price::from_int(4)], vec![1]),
        ];
        let outcome = run_vcg(&graph, &profiles, DEFAULT_VCG_CAP).unwrap();
        assert_eq!(outcome.welfare, Price::from_int(13));
        assert_eq!(outcome.utilization(), 3);
        assert!(outcome.operator_prices.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn cap_is_enforced() {
        let graph = ConflictGraph::new(vec![3, 3], &[]).unwrap();
        let profiles = vec![
            OperatorProfile::truthful(0, vec![Price::ZERO; 3], vec![1, 1, 1]),
            OperatorProfile::truthful(1, vec![Price::ZERO; 3], vec![1, 1, 1]),
        ];
        assert!(matches!(
            run_vcg(&graph, &profiles, 5),
            Err(Error::InstanceTooLarge { size: 6, cap: 5 })
        ));
    }

    #[test]
    fn fractional_bids_stay_exact() {
        let graph =
            ConflictGraph::new(vec![1, 1], &[(Vertex::new(0, 0), Vertex::new(1, 0))]).unwrap();
        let profiles = vec![
            OperatorProfile::truthful(0, vec![Price::new(7, 2)], vec![1]),
            OperatorProfile::truthful(1, vec![Price::new(10, 3)], vec![1]),
        ];
        let outcome = run_vcg(&graph, &profiles, DEFAULT_VCG_CAP).unwrap();
        assert_eq!(outcome.welfare, Price::new(7, 2));
        assert_eq!(outcome.bs_prices[0][0], Price::new(10, 3));
    }
}
