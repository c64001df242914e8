//! The auction mechanisms: the strategy-proof single-channel mechanism,
//! its two multi-channel extensions, and the two baselines.

pub mod nud_am;
pub mod nud_wspam;
pub mod sc_spam;
pub mod small;
pub mod vcg;

pub use nud_am::run_nud_am;
pub use nud_wspam::run_nud_wspam;
pub use sc_spam::run_sc_spam;
pub use small::run_small;
pub use vcg::{run_vcg, VcgOutcome, DEFAULT_VCG_CAP};

use serde::{Deserialize, Serialize};

use crate::model::graph::ConflictGraph;
use crate::price::Price;

/// Mechanism identifiers as they appear on the command line and in result
/// tables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    ScSpam,
    NudAm,
    NudWspam,
    Vcg,
    Small,
}

impl Mechanism {
    pub const ALL: [Mechanism; 5] = [
        Mechanism::ScSpam,
        Mechanism::NudAm,
        Mechanism::NudWspam,
        Mechanism::Vcg,
        Mechanism::Small,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mechanism::ScSpam => "sc-spam",
            Mechanism::NudAm => "nud-am",
            Mechanism::NudWspam => "nud-wspam",
            Mechanism::Vcg => "vcg",
            Mechanism::Small => "small",
        }
    }
}

impl std::fmt::Display for Mechanism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mechanism {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sc-spam" => Ok(Mechanism::ScSpam),
            "nud-am" => Ok(Mechanism::NudAm),
            "nud-wspam" => Ok(Mechanism::NudWspam),
            "vcg" => Ok(Mechanism::Vcg),
            "small" => Ok(Mechanism::Small),
            other => Err(crate::error::Error::InvalidConfig(format!(
                "unknown mechanism {other:?} (expected sc-spam, nud-am, nud-wspam, vcg, or small)"
            ))),
        }
    }
}

/// One winner round inside a single-channel allocation pass.
#[derive(Clone, Debug)]
pub(crate) struct PassRound {
    pub winner: usize,
    /// The winner's aggregate bid over its active stations.
    pub sigma: Price,
    /// Critical-operator valuation on the working graph at win time;
    /// `None` when the pass runs in allocation-only mode.
    pub price: Option<Price>,
    /// Flat indices of the stations served this round.
    pub allocated: Vec<usize>,
}

/// Runs one single-channel allocation pass over the working graph.
///
/// Repeatedly picks the active operator with the highest aggregate bid
/// (ties to the lowest id), serves all of its active stations, optionally
/// charges it the critical-operator valuation, and removes the winner's
/// stations together with their neighborhood. Ends when no active vertex
/// remains. The graph's active mask is consumed by the pass.
pub(crate) fn auction_pass(
    graph: &mut ConflictGraph,
    bids: &[Price],
    charge: bool,
) -> Vec<PassRound> {
    let num_ops = graph.num_operators();
    let mut rounds = Vec::new();

    loop {
        // Highest aggregate bid among operators with an active station.
        let mut winner: Option<(usize, Price)> = None;
        for op in 0..num_ops {
            let mut sigma = Price::ZERO;
            let mut any = false;
            for bs in 0..graph.bs_counts()[op] {
                let flat = graph.flat_index(crate::model::Vertex::new(op, bs));
                if graph.is_active_flat(flat) {
                    sigma += bids[flat];
                    any = true;
                }
            }
            if !any {
                continue;
            }
            match winner {
                Some((_, best)) if sigma <= best => {}
                _ => winner = Some((op, sigma)),
            }
        }
        let Some((winner_op, sigma)) = winner else {
            break;
        };

        // Active neighborhood of the winner, with per-operator bid sums.
        let mut in_neighborhood = vec![false; graph.num_vertices()];
        let mut conflict_value = vec![Price::ZERO; num_ops];
        let mut has_conflict = vec![false; num_ops];
        let allocated: Vec<usize> = graph
            .active_vertices_of(winner_op)
            .into_iter()
            .map(|v| graph.flat_index(v))
            .collect();
        for &flat in &allocated {
            for &nb in graph.adjacent_flat(flat) {
                let nb = nb as usize;
                if graph.is_active_flat(nb) && !in_neighborhood[nb] {
                    in_neighborhood[nb] = true;
                    let op = graph.vertex_of(nb).operator;
                    conflict_value[op] += bids[nb];
                    has_conflict[op] = true;
                }
            }
        }

        let price = charge.then(|| {
            let mut best = Price::ZERO;
            let mut found = false;
            for op in 0..num_ops {
                if has_conflict[op] && (!found || conflict_value[op] > best) {
                    best = conflict_value[op];
                    found = true;
                }
            }
            best
        });

        for &flat in &allocated {
            graph.deactivate_flat(flat);
        }
        for (flat, marked) in in_neighborhood.iter().enumerate() {
            if *marked {
                graph.deactivate_flat(flat);
            }
        }

        rounds.push(PassRound {
            winner: winner_op,
            sigma,
            price,
            allocated,
        });
    }
    rounds
}
