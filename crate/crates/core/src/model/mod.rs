//! Shared domain model: conflict graphs, operator profiles, bid ladders,
//! critical operators, outcomes, and utilities.

pub mod critical;
pub mod graph;
pub mod outcome;
pub mod profile;

pub use critical::{critical_operator, CriticalOperatorResult};
pub use graph::{ConflictGraph, Vertex};
pub use outcome::{utility, AuctionOutcome, RoundRecord, TrueValuation, UtilityReport};
pub use profile::{
    constant_ladders, first_marginal_profiles, operator_bid_sum, validate_profiles, BidLadder,
    LadderProfile, OperatorProfile,
};
