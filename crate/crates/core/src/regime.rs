//! First-stage choice between ML and FL.
//!
//! FL forms only when both firms strictly gain. The free rider always gains,
//! so formation reduces to the larger firm's condition
//! `(f(D1+D2) - f(Ds)) / (f(D1+D2) - f(Dl)) < (2 - g^2) / g`, where `Dl` and
//! `Ds` are the larger and smaller endowments. [`decide_regime`] evaluates
//! both routes and reports an error if they disagree.

use serde::Serialize;

use crate::equilibrium::{corner_outcome, EquilibriumOutcome};
use crate::error::{GameError, Result};
use crate::model::{
    check_interior_condition, EffectivenessSpec, Firm, Orientation, Regime, ScenarioConfig,
};

/// Relative tolerance under which profit and ratio comparisons count as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// `(2 - g^2) / g`; infinite at `g = 0`.
pub fn competition_bound(gamma: f64) -> f64 {
    if gamma == 0.0 {
        f64::INFINITY
    } else {
        (2.0 - gamma * gamma) / gamma
    }
}

/// Net pooled gain of the smaller-endowment firm over that of the larger one.
///
/// Orientation-free: the endowments are sorted first. Exactly 1 for equal
/// endowments and `+inf` when the smaller endowment is zero.
pub fn free_riding_ratio(effectiveness: &EffectivenessSpec, d1: f64, d2: f64) -> Result<f64> {
    for (name, value) in [("d1", d1), ("d2", d2)] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(GameError::InvalidParameter {
                name,
                value,
                expected: "a finite non-negative information volume",
            });
        }
    }
    if d1 == 0.0 && d2 == 0.0 {
        return Err(GameError::NoInformation);
    }
    if d1 == d2 {
        return Ok(1.0);
    }
    let (large, small) = (d1.max(d2), d1.min(d2));
    if small == 0.0 {
        return Ok(f64::INFINITY);
    }
    let pooled = effectiveness.eval(large + small);
    Ok((pooled - effectiveness.eval(small)) / (pooled - effectiveness.eval(large)))
}

/// FL verdict of the ratio test. The strict lower bound `1 < ratio` is not
/// applied: equal endowments form FL, as the profit comparison confirms.
pub fn formation_condition(ratio: f64, bound: f64) -> bool {
    ratio.is_finite() && ratio < bound
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeDecision {
    pub chosen: Regime,
    pub ratio: f64,
    pub bound: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub free_rider: Firm,
    pub orientation: Orientation,
}

impl RegimeDecision {
    pub fn delta(&self, firm: Firm) -> f64 {
        match firm {
            Firm::One => self.delta1,
            Firm::Two => self.delta2,
        }
    }
}

/// Regime decision from precomputed outcomes, cross-checked against the ratio test.
pub fn decide_from_outcomes(
    scenario: &ScenarioConfig,
    ml: &EquilibriumOutcome,
    fl: &EquilibriumOutcome,
) -> Result<RegimeDecision> {
    let endowment = scenario.endowment();
    let delta1 = fl.profit(Firm::One) - ml.profit(Firm::One);
    let delta2 = fl.profit(Firm::Two) - ml.profit(Firm::Two);
    let chosen = if delta1 > 0.0 && delta2 > 0.0 {
        Regime::Fl
    } else {
        Regime::Ml
    };

    let ratio = free_riding_ratio(scenario.effectiveness(), endowment.d1(), endowment.d2())?;
    let bound = competition_bound(scenario.gamma());
    let by_ratio = if formation_condition(ratio, bound) {
        Regime::Fl
    } else {
        Regime::Ml
    };

    if by_ratio != chosen {
        let free_rider = endowment.free_rider();
        let rival = free_rider.rival();
        let rival_delta = fl.profit(rival) - ml.profit(rival);
        let scale = fl.profit(rival).max(ml.profit(rival)).max(1.0);
        let profit_tie = rival_delta.abs() <= TIE_TOLERANCE * scale;
        let ratio_tie = ratio.is_finite() && (ratio - bound).abs() <= TIE_TOLERANCE * bound;
        if !(profit_tie || ratio_tie) {
            return Err(GameError::InconsistentVerdict {
                delta1,
                delta2,
                ratio,
                bound,
            });
        }
    }

    Ok(RegimeDecision {
        chosen,
        ratio,
        bound,
        delta1,
        delta2,
        free_rider: endowment.free_rider(),
        orientation: endowment.orientation(),
    })
}

/// ML-vs-FL verdict for a scenario that passes the interior-duopoly check.
pub fn decide_regime(scenario: &ScenarioConfig) -> Result<RegimeDecision> {
    let report = check_interior_condition(scenario);
    if !report.passes() {
        return Err(GameError::ConditionViolated(report.violations.join("; ")));
    }
    let ml = corner_outcome(scenario, Regime::Ml)?;
    let fl = corner_outcome(scenario, Regime::Fl)?;
    decide_from_outcomes(scenario, &ml, &fl)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FreeRiderCheck {
    pub free_rider: Firm,
    pub free_rider_gains: bool,
    pub rival_gains: bool,
}

/// Whether the free rider and its rival each profit strictly from FL.
pub fn free_rider_check(scenario: &ScenarioConfig) -> Result<FreeRiderCheck> {
    let decision = decide_regime(scenario)?;
    let free_rider = decision.free_rider;
    Ok(FreeRiderCheck {
        free_rider,
        free_rider_gains: decision.delta(free_rider) > 0.0,
        rival_gains: decision.delta(free_rider.rival()) > 0.0,
    })
}
