//! Metrics, the adversarial deviation oracle, and the Monte Carlo
//! experiment harness.

pub mod deviation;
pub mod monte_carlo;

pub use deviation::{
    deviation_oracle, ladder_deviation_oracle, nud_am_fixture_gain, DeviationClass,
    DeviationReport, Instance, LadderInstance,
};
pub use monte_carlo::{
    channel_requirement_sweep, channels_to_satisfy, monte_carlo, AggregateRow,
    ChannelRequirement, ChannelRequirementRow, MetricsRecord, MonteCarloResult, SweepConfig,
};
