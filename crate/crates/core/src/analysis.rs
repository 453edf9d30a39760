//! Thresholds, welfare and subsidy feasibility.
//!
//! * `gamma*`: substitution level where the larger firm is indifferent
//!   between ML and FL; FL forms below it.
//! * `D2*`: free-rider endowment above which FL forms at a fixed `gamma`.
//! * `gamma_hat`: substitution level where the joint gain `delta1 + delta2`
//!   vanishes; above `gamma*` and below `gamma_hat` a side payment from the
//!   free rider can still make FL worthwhile for both firms.
//!
//! All searches are bracketed bisections. `gamma_hat` is only sought inside
//! the range of `gamma` where the scenario stays an interior duopoly.

use serde::Serialize;

use crate::equilibrium::corner_outcome;
use crate::error::{GameError, Result};
use crate::model::{
    check_gamma, check_interior_condition, EffectivenessSpec, Firm, Regime, ScenarioConfig,
};
use crate::regime::{competition_bound, decide_from_outcomes, decide_regime, free_riding_ratio};
use crate::roots::{bisect, bisect_predicate};

pub fn consumer_surplus(v1: f64, v2: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let g2 = gamma * gamma;
    let den = 2.0 * (4.0 - g2) * (4.0 - g2) * (1.0 - g2);
    Ok(((4.0 - 3.0 * g2) * (v1 * v1 + v2 * v2) - 2.0 * g2 * gamma * v1 * v2) / den)
}

/// Analytic `(dCS/dv1, dCS/dv2)`.
pub fn consumer_surplus_gradient(v1: f64, v2: f64, gamma: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    let g2 = gamma * gamma;
    let g3 = g2 * gamma;
    let den = (4.0 - g2) * (4.0 - g2) * (1.0 - g2);
    Ok((
        ((4.0 - 3.0 * g2) * v1 - g3 * v2) / den,
        ((4.0 - 3.0 * g2) * v2 - g3 * v1) / den,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelfareReport {
    pub cs_ml: f64,
    pub cs_fl: f64,
    pub sw_ml: f64,
    pub sw_fl: f64,
    /// FL forms and firms, consumers and total welfare all strictly gain.
    pub all_win: bool,
}

pub fn welfare_report(scenario: &ScenarioConfig) -> Result<WelfareReport> {
    let decision = decide_regime(scenario)?;
    let gamma = scenario.gamma();
    let ml = corner_outcome(scenario, Regime::Ml)?;
    let fl = corner_outcome(scenario, Regime::Fl)?;
    let [m1, m2] = ml.firms.map(|f| f.quality);
    let [f1, f2] = fl.firms.map(|f| f.quality);
    let cs_ml = consumer_surplus(m1, m2, gamma)?;
    let cs_fl = consumer_surplus(f1, f2, gamma)?;
    let sw_ml = cs_ml + ml.profit(Firm::One) + ml.profit(Firm::Two);
    let sw_fl = cs_fl + fl.profit(Firm::One) + fl.profit(Firm::Two);
    let all_win = decision.chosen == Regime::Fl
        && cs_fl > cs_ml
        && sw_fl > sw_ml
        && decision.delta1 > 0.0
        && decision.delta2 > 0.0;
    Ok(WelfareReport {
        cs_ml,
        cs_fl,
        sw_ml,
        sw_fl,
        all_win,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum AbsenceReason {
    /// Equal endowments: nobody free rides and FL forms for every valid `gamma`.
    EqualEndowments,
    /// The smaller endowment is empty: ML for every `gamma`.
    EmptySmallerEndowment,
    /// `gamma = 0`: FL forms for every positive free-rider endowment.
    NoCompetition,
    /// `gamma_hat` needs `gamma*`, which does not exist here.
    NoGammaStar,
    /// `gamma*` lies beyond the largest `gamma` keeping an interior duopoly.
    GammaStarOutsideValidRange { gamma_max: f64 },
    /// The joint gain is still positive at the largest valid `gamma`.
    BoundaryLimited { gamma_max: f64 },
    /// No valid `gamma` at all, or the bracket failed to change sign.
    InvalidBracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Threshold {
    Found { value: f64, residual: f64 },
    Absent(AbsenceReason),
}

impl Threshold {
    pub fn value(&self) -> Option<f64> {
        match self {
            Threshold::Found { value, .. } => Some(*value),
            Threshold::Absent(_) => None,
        }
    }

    pub fn residual(&self) -> Option<f64> {
        match self {
            Threshold::Found { residual, .. } => Some(*residual),
            Threshold::Absent(_) => None,
        }
    }
}

/// Root of `competition_bound(gamma) = ratio` on `(0, 1)` for a finite ratio above 1.
fn gamma_for_ratio(ratio: f64) -> Threshold {
    match bisect(|g| competition_bound(g) - ratio, 0.0, 1.0) {
        Some(root) => Threshold::Found {
            value: root.x,
            residual: root.residual,
        },
        None => Threshold::Absent(AbsenceReason::InvalidBracket),
    }
}

/// Substitution threshold below which FL forms. Does not depend on qualities.
pub fn solve_gamma_star(scenario: &ScenarioConfig) -> Result<Threshold> {
    let e = scenario.endowment();
    let ratio = free_riding_ratio(scenario.effectiveness(), e.d1(), e.d2())?;
    if ratio.is_infinite() {
        return Ok(Threshold::Absent(AbsenceReason::EmptySmallerEndowment));
    }
    if ratio <= 1.0 {
        return Ok(Threshold::Absent(AbsenceReason::EqualEndowments));
    }
    Ok(gamma_for_ratio(ratio))
}

/// Free-rider endowment above which FL forms, for a rival holding `d1`.
pub fn solve_d2_star(effectiveness: &EffectivenessSpec, d1: f64, gamma: f64) -> Result<Threshold> {
    check_gamma(gamma)?;
    if !(d1.is_finite() && d1 > 0.0) {
        return Err(GameError::InvalidParameter {
            name: "d1",
            value: d1,
            expected: "a positive information volume",
        });
    }
    effectiveness.validate(2.0 * d1)?;
    if gamma == 0.0 {
        return Ok(Threshold::Absent(AbsenceReason::NoCompetition));
    }
    let bound = competition_bound(gamma);
    let root = bisect(
        |d2| free_riding_ratio(effectiveness, d1, d2).unwrap_or(f64::NAN) - bound,
        0.0,
        d1,
    );
    Ok(match root {
        Some(root) => Threshold::Found {
            value: root.x,
            residual: root.residual,
        },
        None => Threshold::Absent(AbsenceReason::InvalidBracket),
    })
}

/// Largest `gamma` (to f64 resolution) at which the scenario still passes the
/// interior-duopoly check, or `None` if it fails even at `gamma = 0`.
pub fn max_valid_gamma(scenario: &ScenarioConfig) -> Option<f64> {
    let valid = |g: f64| {
        scenario
            .with_gamma(g)
            .map(|s| check_interior_condition(&s).passes())
            .unwrap_or(false)
    };
    if !valid(0.0) {
        return None;
    }
    Some(bisect_predicate(valid, 0.0, 1.0))
}

/// Joint gain `delta1 + delta2` from FL at substitution level `gamma`.
pub fn subsidy_gap(scenario: &ScenarioConfig, gamma: f64) -> Result<f64> {
    let s = scenario.with_gamma(gamma)?;
    let ml = corner_outcome(&s, Regime::Ml)?;
    let fl = corner_outcome(&s, Regime::Fl)?;
    Ok(Firm::BOTH
        .iter()
        .map(|&firm| fl.profit(firm) - ml.profit(firm))
        .sum())
}

/// Substitution level above `gamma*` where the joint FL gain turns negative.
pub fn solve_gamma_hat(scenario: &ScenarioConfig) -> Result<Threshold> {
    let Some(gamma_star) = solve_gamma_star(scenario)?.value() else {
        return Ok(Threshold::Absent(AbsenceReason::NoGammaStar));
    };
    let Some(gamma_max) = max_valid_gamma(scenario) else {
        return Ok(Threshold::Absent(AbsenceReason::InvalidBracket));
    };
    if gamma_star >= gamma_max {
        return Ok(Threshold::Absent(
            AbsenceReason::GammaStarOutsideValidRange { gamma_max },
        ));
    }
    if subsidy_gap(scenario, gamma_max)? > 0.0 {
        return Ok(Threshold::Absent(AbsenceReason::BoundaryLimited {
            gamma_max,
        }));
    }
    let gap = |g: f64| subsidy_gap(scenario, g).unwrap_or(f64::NAN);
    Ok(match bisect(gap, gamma_star, gamma_max) {
        Some(root) => Threshold::Found {
            value: root.x,
            residual: root.residual,
        },
        None => Threshold::Absent(AbsenceReason::InvalidBracket),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub gamma_star: Threshold,
    /// Evaluated with the larger endowment as the rival's and the scenario's `gamma`.
    pub d2_star: Threshold,
    pub gamma_hat: Threshold,
    pub gamma_max: Option<f64>,
}

pub fn threshold_report(scenario: &ScenarioConfig) -> Result<ThresholdReport> {
    let d2_star = if scenario.gamma() == 0.0 {
        Threshold::Absent(AbsenceReason::NoCompetition)
    } else {
        solve_d2_star(
            scenario.effectiveness(),
            scenario.endowment().larger(),
            scenario.gamma(),
        )?
    };
    Ok(ThresholdReport {
        gamma_star: solve_gamma_star(scenario)?,
        d2_star,
        gamma_hat: solve_gamma_hat(scenario)?,
        gamma_max: max_valid_gamma(scenario),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubsidyReport {
    pub delta1: f64,
    pub delta2: f64,
    /// `delta1 + delta2 >= 0`.
    pub feasible: bool,
    /// Side payment from the free rider that offsets its rival's loss.
    pub min_transfer: f64,
    pub payer: Firm,
}

pub fn subsidy_report(scenario: &ScenarioConfig) -> Result<SubsidyReport> {
    let report = check_interior_condition(scenario);
    if !report.passes() {
        return Err(GameError::ConditionViolated(report.violations.join("; ")));
    }
    let ml = corner_outcome(scenario, Regime::Ml)?;
    let fl = corner_outcome(scenario, Regime::Fl)?;
    let decision = decide_from_outcomes(scenario, &ml, &fl)?;
    let payer = decision.free_rider;
    Ok(SubsidyReport {
        delta1: decision.delta1,
        delta2: decision.delta2,
        feasible: decision.delta1 + decision.delta2 >= 0.0,
        min_transfer: (-decision.delta(payer.rival())).max(0.0),
        payer,
    })
}
