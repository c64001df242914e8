//! Critical-operator computation: the neighboring operator whose
//! conflicting base stations carry the largest bid sum. Its valuation is
//! the price a winning operator is charged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::graph::ConflictGraph;
use crate::price::Price;

/// Outcome of a critical-operator query for one subject operator.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CriticalOperatorResult {
    pub subject: usize,
    /// Lowest-id maximizer of the per-operator conflict valuations, absent
    /// when the subject has no active neighbors.
    pub critical_operator: Option<usize>,
    /// Largest neighboring conflict valuation; zero on an empty
    /// neighborhood.
    pub critical_valuation: Price,
    /// Conflict valuation of each neighboring operator: the bid sum of its
    /// active base stations inside the subject's neighborhood.
    pub per_operator_valuation: BTreeMap<usize, Price>,
}

/// Computes the critical operator of `subject` on the current working
/// graph. `bids[i][j]` is the active bid of operator `i`'s station `j`.
///
/// Ties in the maximum break toward the lowest operator id so traces are
/// reproducible.
pub fn critical_operator(
    graph: &ConflictGraph,
    bids: &[Vec<Price>],
    subject: usize,
) -> Result<CriticalOperatorResult> {
    let neighborhood = graph.neighbors_of_operator(subject)?;
    let mut per_operator: BTreeMap<usize, Price> = BTreeMap::new();
    for v in neighborhood {
        *per_operator.entry(v.operator).or_insert(Price::ZERO) += bids[v.operator][v.bs];
    }

    let mut best: Option<(usize, Price)> = None;
    for (&op, &value) in &per_operator {
        match best {
            Some((_, best_value)) if value <= best_value => {}
            _ => best = Some((op, value)),
        }
    }

    Ok(CriticalOperatorResult {
        subject,
        critical_operator: best.map(|(op, _)| op),
        critical_valuation: best.map(|(_, v)| v).unwrap_or(Price::ZERO),
        per_operator_valuation: per_operator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::Vertex;

    #[test]
    fn empty_neighborhood_gives_zero() {
        let graph = ConflictGraph::new(vec![2, 1], &[]).unwrap();
        let bids = vec![
            vec![Price::from_int(5), Price::from_int(3)],
            vec![Price::from_int(9)],
        ];
        let res = critical_operator(&graph, &bids, 0).unwrap();
        assert_eq!(res.critical_operator, None);
        assert_eq!(res.critical_valuation, Price::ZERO);
        assert!(res.per_operator_valuation.is_empty());
    }

    #[test]
    fn tie_breaks_to_lowest_operator_id() {
        // op0's station conflicts with one station of op1 and one of op2,
        // both bidding 4.
        let graph = ConflictGraph::new(
            vec![1, 1, 1],
            &[
                (Vertex::new(0, 0), Vertex::new(1, 0)),
                (Vertex::new(0, 0), Vertex::new(2, 0)),
            ],
        )
        .unwrap();
        let bids = vec![
            vec![Price::from_int(10)],
            vec![Price::from_int(4)],
            vec![Price::from_int(4)],
        ];
        let res = critical_operator(&graph, &bids, 0).unwrap();
        assert_eq!(res.critical_operator, Some(1));
        assert_eq!(res.critical_valuation, Price::from_int(4));
    }

    #[test]
    fn matches_brute_force_on_random_graph() {
        // Deterministic pseudo-random 9-vertex, 3-operator graph; the
        // oracle recomputes every conflict valuation by scanning edges.
        let mut edges = Vec::new();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for a in 0..3usize {
            for b in (a + 1)..3usize {
                for i in 0..3usize {
                    for j in 0..3usize {
                        if next() % 3 == 0 {
                            edges.push((Vertex::new(a, i), Vertex::new(b, j)));
                        }
                    }
                }
            }
        }
        let graph = ConflictGraph::new(vec![3, 3, 3], &edges).unwrap();
        let bids: Vec<Vec<Price>> = (0..3)
            .map(|_| (0..3).map(|_| Price::from_int((next() % 20) as i64)).collect())
            .collect();

        for subject in 0..3 {
            let res = critical_operator(&graph, &bids, subject).unwrap();
            // Independent route: per-edge scan over the full edge list.
            let mut sums: BTreeMap<usize, Price> = BTreeMap::new();
            for other in 0..3 {
                if other == subject {
                    continue;
                }
                let mut sum = Price::ZERO;
                for bs in 0..3 {
                    let v = Vertex::new(other, bs);
                    let conflicts = (0..3).any(|s| graph.is_edge(Vertex::new(subject, s), v));
                    if conflicts {
                        sum += bids[other][bs];
                    }
                }
                if graph
                    .edges()
                    .iter()
                    .any(|&(x, y)| (x.operator == subject && y.operator == other)
                        || (y.operator == subject && x.operator == other))
                {
                    sums.insert(other, sum);
                }
            }
            assert_eq!(res.per_operator_valuation, sums);
            let best = sums.iter().map(|(_, &v)| v).max().unwrap_or(Price::ZERO);
            assert_eq!(res.critical_valuation, best);
        }
    }
}
