//! File formats: topology documents, profile documents, and outcome
//! documents. All are UTF-8 JSON with canonical field ordering so a
//! load/save cycle is byte-identical.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mechanisms::VcgOutcome;
use crate::model::graph::{ConflictGraph, Vertex};
use crate::model::outcome::AuctionOutcome;
use crate::model::profile::{BidLadder, LadderProfile, OperatorProfile};
use crate::price::Price;

/// On-disk topology: operator sizes plus an edge list of
/// `[op_a, bs_a, op_b, bs_b]` quadruples (0-based).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TopologyDoc {
    pub num_operators: usize,
    pub num_base_stations: Vec<usize>,
    pub edges: Vec<[usize; 4]>,
}

impl TopologyDoc {
    pub fn from_graph(graph: &ConflictGraph) -> Self {
        TopologyDoc {
            num_operators: graph.num_operators(),
            num_base_stations: graph.bs_counts().to_vec(),
            edges: graph
                .edges()
                .iter()
                .map(|&(a, b)| [a.operator, a.bs, b.operator, b.bs])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<ConflictGraph> {
        if self.num_operators != self.num_base_stations.len() {
            return Err(Error::InvalidTopology(format!(
                "num_operators is {} but num_base_stations lists {}",
                self.num_operators,
                self.num_base_stations.len()
            )));
        }
        let edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .map(|&[oa, ba, ob, bb]| (Vertex::new(oa, ba), Vertex::new(ob, bb)))
            .collect();
        ConflictGraph::new(self.num_base_stations.clone(), &edges)
    }
}

/// One operator's entry in a profile document. Linear instances carry
/// `bids`/`true_values`; ladder instances carry `ladders`/`true_ladders`.
/// `demands` is always present.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub demands: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bids: Option<Vec<Price>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_values: Option<Vec<Price>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladders: Option<Vec<Vec<Price>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_ladders: Option<Vec<Vec<Price>>>,
}

/// On-disk bid/demand data, keyed by operator order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ProfilesDoc {
    pub operators: Vec<ProfileEntry>,
}

impl ProfilesDoc {
    pub fn from_profiles(profiles: &[OperatorProfile]) -> Self {
        ProfilesDoc {
            operators: profiles
                .iter()
                .map(|p| ProfileEntry {
                    demands: p.demands.clone(),
                    bids: Some(p.bids.clone()),
                    true_values: Some(p.true_values.clone()),
                    ladders: None,
                    true_ladders: None,
                })
                .collect(),
        }
    }

    pub fn from_ladder_profiles(profiles: &[LadderProfile], demands: &[Vec<u32>]) -> Self {
        ProfilesDoc {
            operators: profiles
                .iter()
                .zip(demands)
                .map(|(p, d)| ProfileEntry {
                    demands: d.clone(),
                    bids: None,
                    true_values: None,
                    ladders: Some(p.ladders.iter().map(|l| l.levels().to_vec()).collect()),
                    true_ladders: Some(
                        p.true_ladders.iter().map(|l| l.levels().to_vec()).collect(),
                    ),
                })
                .collect(),
        }
    }

    /// Linear profiles; true values default to the bids when absent.
    pub fn to_profiles(&self) -> Result<Vec<OperatorProfile>> {
        self.operators
            .iter()
            .enumerate()
            .map(|(op, entry)| {
                let bids = entry.bids.clone().ok_or_else(|| {
                    Error::InvalidProfile(format!("operator {op} entry has no bids"))
                })?;
                let true_values = entry.true_values.clone().unwrap_or_else(|| bids.clone());
                Ok(OperatorProfile {
                    operator: op,
                    bids,
                    true_values,
                    demands: entry.demands.clone(),
                })
            })
            .collect()
    }

    /// Ladder profiles; true ladders default to the bid ladders.
    pub fn to_ladder_profiles(&self) -> Result<Vec<LadderProfile>> {
        self.operators
            .iter()
            .enumerate()
            .map(|(op, entry)| {
                let raw = entry.ladders.clone().ok_or_else(|| {
                    Error::InvalidProfile(format!("operator {op} entry has no ladders"))
                })?;
                let ladders: Vec<BidLadder> = raw
                    .into_iter()
                    .enumerate()
                    .map(|(bs, levels)| BidLadder::new(op, bs, levels))
                    .collect::<Result<_>>()?;
                let true_ladders = match &entry.true_ladders {
                    Some(raw) => raw
                        .iter()
                        .enumerate()
                        .map(|(bs, levels)| BidLadder::new(op, bs, levels.clone()))
                        .collect::<Result<_>>()?,
                    None => ladders.clone(),
                };
                Ok(LadderProfile {
                    operator: op,
                    ladders,
                    true_ladders,
                })
            })
            .collect()
    }

    pub fn demands(&self) -> Vec<Vec<u32>> {
        self.operators.iter().map(|e| e.demands.clone()).collect()
    }
}

/// Serialized mechanism result: either the round-based outcome or the
/// optimal baseline's station-priced outcome.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OutcomeDoc {
    Auction {
        mechanism: String,
        utilization: u64,
        #[serde(flatten)]
        outcome: AuctionOutcome,
    },
    Optimal {
        mechanism: String,
        utilization: u64,
        #[serde(flatten)]
        outcome: VcgOutcome,
    },
}

impl OutcomeDoc {
    pub fn auction(mechanism: &str, outcome: AuctionOutcome) -> Self {
        OutcomeDoc::Auction {
            mechanism: mechanism.to_string(),
            utilization: outcome.utilization(),
            outcome,
        }
    }

    pub fn optimal(outcome: VcgOutcome) -> Self {
        OutcomeDoc::Optimal {
            mechanism: "vcg".to_string(),
            utilization: outcome.utilization(),
            outcome,
        }
    }
}

fn render<T: Serialize>(value: &T) -> Result<String> {
    let mut body = serde_json::to_string_pretty(value)?;
    body.push('\n');
    Ok(body)
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, render(value)?)?;
    Ok(())
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let body = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&body)?)
}

pub fn save_topology(path: &Path, graph: &ConflictGraph) -> Result<()> {
    save_json(path, &TopologyDoc::from_graph(graph))
}

pub fn load_topology(path: &Path) -> Result<ConflictGraph> {
    let doc: TopologyDoc = load_json(path)?;
    doc.to_graph()
}
