//! Sealed-bid spectrum auctions over multi-operator conflict graphs.
//!
//! Operators — not individual base stations — are the bidders: each one
//! submits per-station bids (or marginal-bid ladders) and channel demands,
//! and interference constraints between stations of different operators
//! decide which stations can share a channel. The crate provides:
//!
//! * the single-channel auction (`sc-spam`) and its two multi-channel
//!   extensions (`nud-am`, `nud-wspam`),
//! * the optimal brute-force baseline (`vcg`) and the group-based
//!   baseline (`small`),
//! * synthetic topology generation, an adversarial deviation oracle, and
//!   a seeded Monte Carlo harness,
//! * JSON file formats for topologies, profiles, and outcomes.
//!
//! All money amounts are exact rationals; equal inputs produce equal
//! outputs bit for bit.

pub mod analysis;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod mechanisms;
pub mod model;
pub mod price;
pub mod topology;

pub use error::{Error, Result};
pub use mechanisms::{
    run_nud_am, run_nud_wspam, run_sc_spam, run_small, run_vcg, Mechanism, VcgOutcome,
    DEFAULT_VCG_CAP,
};
pub use model::{
    constant_ladders, critical_operator, first_marginal_profiles, operator_bid_sum, utility,
    AuctionOutcome, BidLadder, ConflictGraph, CriticalOperatorResult, LadderProfile,
    OperatorProfile, RoundRecord, TrueValuation, UtilityReport, Vertex,
};
pub use price::Price;
pub use topology::{
    compose_interference, generate_pairwise_graph, generate_topology, sample_ladder_profiles,
    sample_profiles, InterferenceMatrix, Regime, TopologySpec,
};
