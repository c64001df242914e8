//! Adversarial deviation oracle.
//!
//! Runs a mechanism truthfully and under sampled misreports of a single
//! operator (all rivals fixed), scores both runs against the operator's
//! true valuation, and flags any strict utility gain. Gains are compared
//! in exact arithmetic; there is no tolerance.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::mechanisms::{run_nud_wspam, run_sc_spam, Mechanism};
use crate::model::graph::ConflictGraph;
use crate::model::outcome::{utility, TrueValuation};
use crate::model::profile::{BidLadder, LadderProfile, OperatorProfile};
use crate::price::Price;

/// A truthful linear-bid instance (bids equal true values).
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: ConflictGraph,
    pub profiles: Vec<OperatorProfile>,
    pub k: u32,
}

/// A truthful ladder-bid instance.
#[derive(Clone, Debug)]
pub struct LadderInstance {
    pub graph: ConflictGraph,
    pub profiles: Vec<LadderProfile>,
    pub demands: Vec<Vec<u32>>,
    pub k: u32,
}

/// Families of misreports the oracle can sample.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviationClass {
    /// Scale the whole bid vector by a factor in (0, 3].
    ProportionalScale,
    /// Strictly raise every level of one station's ladder.
    LadderRaiseAtBs,
    /// Strictly lower every level of one station's ladder.
    LadderLowerAtBs,
    /// Permute per-station bids, preserving the aggregate. Reported but
    /// not certified: a gain here fails no property suite.
    BsRedistribution,
}

impl DeviationClass {
    pub fn name(&self) -> &'static str {
        match self {
            DeviationClass::ProportionalScale => "proportional-scale",
            DeviationClass::LadderRaiseAtBs => "ladder-raise-at-bs",
            DeviationClass::LadderLowerAtBs => "ladder-lower-at-bs",
            DeviationClass::BsRedistribution => "bs-redistribution",
        }
    }

    /// Whether a gain in this class counts as a property failure.
    pub fn certified(&self) -> bool {
        !matches!(self, DeviationClass::BsRedistribution)
    }
}

/// One truthful-vs-deviated comparison.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeviationReport {
    pub mechanism: Mechanism,
    pub operator: usize,
    pub class: DeviationClass,
    /// Human-readable deviation parameters (scale factor, station, delta).
    pub descriptor: String,
    pub truthful_utility: Price,
    pub deviated_utility: Price,
    pub gain: Price,
    /// Exactly `gain > 0`.
    pub violation: bool,
    pub certified: bool,
}

impl DeviationReport {
    fn new(
        mechanism: Mechanism,
        operator: usize,
        class: DeviationClass,
        descriptor: String,
        truthful: Price,
        deviated: Price,
    ) -> Self {
        let gain = deviated - truthful;
        DeviationReport {
            mechanism,
            operator,
            class,
            descriptor,
            truthful_utility: truthful,
            deviated_utility: deviated,
            gain,
            violation: gain > Price::ZERO,
            certified: class.certified(),
        }
    }
}

/// Factors and deltas are sampled on a 1/10000 grid so every deviated bid
/// stays a small exact rational.
const FACTOR_GRID: i64 = 10_000;

fn factor_price(grid: i64) -> Price {
    Price::new(grid, FACTOR_GRID)
}

/// Samples deviations of `class` for `operator` on a linear instance and
/// reports the utility comparison for each. For `ProportionalScale`, each
/// sampled factor that flips the operator between winning and losing is
/// refined by bisection on the factor grid and the boundary factors are
/// probed as extra reports.
pub fn deviation_oracle(
    mechanism: Mechanism,
    instance: &Instance,
    operator: usize,
    class: DeviationClass,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DeviationReport>> {
    if operator >= instance.graph.num_operators() {
        return Err(Error::UnknownOperator(operator));
    }
    match (mechanism, class) {
        (Mechanism::ScSpam, DeviationClass::ProportionalScale)
        | (Mechanism::ScSpam, DeviationClass::BsRedistribution) => {}
        _ => {
            return Err(Error::IncompatibleDeviation {
                plan: class.name().into(),
                mechanism: mechanism.name().into(),
            })
        }
    }

    let truthful_outcome = run_sc_spam(&instance.graph, &instance.profiles)?;
    let truthful = utility(
        &truthful_outcome,
        &TrueValuation::Linear(&instance.profiles[operator]),
        operator,
    )?
    .utility;
    let truthful_won = truthful_outcome.is_winner(operator);

    let mut reports = Vec::with_capacity(trials);
    match class {
        DeviationClass::ProportionalScale => {
            let probe = |grid: i64, reports: &mut Vec<DeviationReport>| -> Result<bool> {
                let factor = factor_price(grid);
                let mut profiles = instance.profiles.clone();
                for b in &mut profiles[operator].bids {
                    *b = *b * factor;
                }
                let outcome = run_sc_spam(&instance.graph, &profiles)?;
                let deviated = utility(
                    &outcome,
                    &TrueValuation::Linear(&instance.profiles[operator]),
                    operator,
                )?
                .utility;
                reports.push(DeviationReport::new(
                    mechanism,
                    operator,
                    class,
                    format!("scale {factor}"),
                    truthful,
                    deviated,
                ));
                Ok(outcome.is_winner(operator))
            };

            for _ in 0..trials {
                let grid = rng.gen_range(1..=3 * FACTOR_GRID);
                let won = probe(grid, &mut reports)?;
                // When the sampled factor flips the operator between
                // winning and losing, bisect toward the boundary on the
                // factor grid; every probe lands in the report list, so
                // the factors hugging the flip get exercised.
                if won != truthful_won && grid != FACTOR_GRID {
                    let (mut lo, mut hi, mut lo_won) = if grid < FACTOR_GRID {
                        (grid, FACTOR_GRID, won)
                    } else {
                        (FACTOR_GRID, grid, truthful_won)
                    };
                    while hi - lo > 1 {
                        let mid = lo + (hi - lo) / 2;
                        let mid_won = probe(mid, &mut reports)?;
                        if mid_won == lo_won {
                            lo = mid;
                            lo_won = mid_won;
                        } else {
                            hi = mid;
                        }
                    }
                }
            }
        }
        DeviationClass::BsRedistribution => {
            for _ in 0..trials {
                let mut profiles = instance.profiles.clone();
                let bids = &mut profiles[operator].bids;
                if bids.len() < 2 {
                    continue;
                }
                for i in (1..bids.len()).rev() {
                    bids.swap(i, rng.gen_range(0..=i));
                }
                let descriptor = format!(
                    "permutation [{}]",
                    bids.iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                let outcome = run_sc_spam(&instance.graph, &profiles)?;
                let deviated = utility(
                    &outcome,
                    &TrueValuation::Linear(&instance.profiles[operator]),
                    operator,
                )?
                .utility;
                reports.push(DeviationReport::new(
                    mechanism, operator, class, descriptor, truthful, deviated,
                ));
            }
        }
        _ => unreachable!("class compatibility checked above"),
    }
    Ok(reports)
}

/// Samples ladder deviations for `operator` on a ladder instance.
///
/// Raises add a positive delta to every level of one station's ladder;
/// lowers scale one station's ladder by a factor in (0, 1), which needs
/// every level positive to stay a strict lowering. Stations with no
/// demand (or, for lowers, a zero level) are not eligible; the returned
/// list may be shorter than `trials` when no station qualifies.
pub fn ladder_deviation_oracle(
    instance: &LadderInstance,
    operator: usize,
    class: DeviationClass,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DeviationReport>> {
    if operator >= instance.graph.num_operators() {
        return Err(Error::UnknownOperator(operator));
    }
    let eligible: Vec<usize> = match class {
        DeviationClass::LadderRaiseAtBs => (0..instance.profiles[operator].ladders.len())
            .filter(|&bs| instance.demands[operator][bs] > 0)
            .collect(),
        DeviationClass::LadderLowerAtBs => (0..instance.profiles[operator].ladders.len())
            .filter(|&bs| {
                instance.demands[operator][bs] > 0
                    && instance.profiles[operator].ladders[bs]
                        .levels()
                        .iter()
                        .all(|&b| b > Price::ZERO)
            })
            .collect(),
        _ => {
            return Err(Error::IncompatibleDeviation {
                plan: class.name().into(),
                mechanism: Mechanism::NudWspam.name().into(),
            })
        }
    };

    let truthful_outcome = run_nud_wspam(
        &instance.graph,
        &instance.profiles,
        &instance.demands,
        instance.k,
    )?;
    let truthful = utility(
        &truthful_outcome,
        &TrueValuation::Ladder(&instance.profiles[operator].true_ladders),
        operator,
    )?
    .utility;

    let mut reports = Vec::with_capacity(trials);
    if eligible.is_empty() {
        return Ok(reports);
    }
    for _ in 0..trials {
        let bs = eligible[rng.gen_range(0..eligible.len())];
        let mut profiles = instance.profiles.clone();
        let descriptor;
        let old = profiles[operator].ladders[bs].levels().to_vec();
        let new_levels: Vec<Price> = match class {
            DeviationClass::LadderRaiseAtBs => {
                let delta = Price::new(rng.gen_range(1..=5 * FACTOR_GRID), FACTOR_GRID);
                descriptor = format!("raise bs {bs} by {delta}");
                old.iter().map(|&b| b + delta).collect()
            }
            DeviationClass::LadderLowerAtBs => {
                let factor = factor_price(rng.gen_range(1..FACTOR_GRID));
                descriptor = format!("lower bs {bs} by factor {factor}");
                old.iter().map(|&b| b * factor).collect()
            }
            _ => unreachable!(),
        };
        profiles[operator].ladders[bs] = BidLadder::new(operator, bs, new_levels)?;

        let outcome = run_nud_wspam(&instance.graph, &profiles, &instance.demands, instance.k)?;
        let deviated = utility(
            &outcome,
            &TrueValuation::Ladder(&instance.profiles[operator].true_ladders),
            operator,
        )?
        .utility;
        reports.push(DeviationReport::new(
            Mechanism::NudWspam,
            operator,
            class,
            descriptor,
            truthful,
            deviated,
        ));
    }
    Ok(reports)
}

/// The bundled two-channel instance's documented under-bid: operator 1
/// keeps its channel count and pays less. Returns the report; callers
/// expecting this mechanism's non-truthfulness assert `violation`.
pub fn nud_am_fixture_gain() -> Result<DeviationReport> {
    let truthful = fixtures::sec4();
    let deviated = fixtures::sec4_deviated();
    let truthful_outcome =
        crate::mechanisms::run_nud_am(&truthful.graph, &truthful.profiles, truthful.k)?;
    let deviated_outcome =
        crate::mechanisms::run_nud_am(&deviated.graph, &deviated.profiles, deviated.k)?;
    let valuation = TrueValuation::Linear(&truthful.profiles[1]);
    let truthful_utility = utility(&truthful_outcome, &valuation, 1)?.utility;
    let deviated_utility = utility(&deviated_outcome, &valuation, 1)?.utility;
    Ok(DeviationReport::new(
        Mechanism::NudAm,
        1,
        DeviationClass::ProportionalScale,
        "documented under-bid [8, 6, 6, 9]".into(),
        truthful_utility,
        deviated_utility,
    ))
}
