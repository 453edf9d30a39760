//! Everything known about one scenario, as text or JSON.

use std::fmt::Write;

use flgame_core::analysis::{
    subsidy_report, threshold_report, welfare_report, SubsidyReport, ThresholdReport, WelfareReport,
};
use flgame_core::equilibrium::{equilibrium_outcome, EquilibriumOutcome};
use flgame_core::model::ConditionReport;
use flgame_core::regime::{decide_regime, RegimeDecision};
use flgame_core::{Firm, Regime, Result, ScenarioConfig};
use serde::Serialize;

use crate::format::{flag, num, threshold};

/// Violations listed by `render_condition` before it summarises the rest.
pub const SHOWN_VIOLATIONS: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub scenario: ScenarioConfig,
    pub decision: RegimeDecision,
    pub ml: EquilibriumOutcome,
    pub fl: EquilibriumOutcome,
    pub welfare: WelfareReport,
    pub subsidy: SubsidyReport,
    pub thresholds: ThresholdReport,
}

pub fn full_report(scenario: &ScenarioConfig) -> Result<FullReport> {
    Ok(FullReport {
        scenario: *scenario,
        decision: decide_regime(scenario)?,
        ml: equilibrium_outcome(scenario, Regime::Ml)?,
        fl: equilibrium_outcome(scenario, Regime::Fl)?,
        welfare: welfare_report(scenario)?,
        subsidy: subsidy_report(scenario)?,
        thresholds: threshold_report(scenario)?,
    })
}

pub fn render_condition(report: &ConditionReport) -> String {
    let mut out = String::new();
    let verdict = |ok| if ok { "pass" } else { "FAIL" };
    writeln!(out, "part (i):  {}", verdict(report.part_i_ok)).unwrap();
    writeln!(out, "part (ii): {}", verdict(report.part_ii_ok)).unwrap();
    writeln!(out, "binding margin: {}", num(report.binding_margin)).unwrap();
    writeln!(out, "points checked: {}", report.checked_points.len()).unwrap();
    for v in report.violations.iter().take(SHOWN_VIOLATIONS) {
        writeln!(out, "violation: {v}").unwrap();
    }
    if report.violations.len() > SHOWN_VIOLATIONS {
        writeln!(
            out,
            "... and {} more",
            report.violations.len() - SHOWN_VIOLATIONS
        )
        .unwrap();
    }
    out
}

pub fn render_thresholds(t: &ThresholdReport) -> String {
    let mut out = String::new();
    writeln!(out, "gamma*: {}", threshold(&t.gamma_star)).unwrap();
    writeln!(out, "d2*: {}", threshold(&t.d2_star)).unwrap();
    writeln!(out, "gamma_hat: {}", threshold(&t.gamma_hat)).unwrap();
    match t.gamma_max {
        Some(g) => writeln!(out, "gamma_max: {}", num(g)).unwrap(),
        None => writeln!(out, "gamma_max: none").unwrap(),
    }
    out
}

pub fn render_subsidy(s: &SubsidyReport) -> String {
    let mut out = String::new();
    writeln!(out, "delta1: {}", num(s.delta1)).unwrap();
    writeln!(out, "delta2: {}", num(s.delta2)).unwrap();
    writeln!(out, "feasible: {}", s.feasible).unwrap();
    writeln!(out, "payer: firm {}", s.payer).unwrap();
    writeln!(out, "min transfer: {}", num(s.min_transfer)).unwrap();
    out
}

fn render_outcome(out: &mut String, o: &EquilibriumOutcome) {
    let label = match o.regime {
        Regime::Ml => "ML",
        Regime::Fl => "FL",
    };
    writeln!(out, "[{label}]").unwrap();
    for firm in Firm::BOTH {
        let f = o.firm(firm);
        writeln!(
            out,
            "firm {firm}: quality {} price {} quantity {} profit {}",
            num(f.quality),
            num(f.price),
            num(f.quantity),
            num(f.profit)
        )
        .unwrap();
    }
}

pub fn render_report(r: &FullReport) -> String {
    let mut out = String::new();
    let d = &r.decision;
    writeln!(out, "[regime]").unwrap();
    writeln!(
        out,
        "chosen: {}",
        if d.chosen == Regime::Fl { "FL" } else { "ML" }
    )
    .unwrap();
    writeln!(out, "free-riding ratio: {}", num(d.ratio)).unwrap();
    writeln!(out, "competition bound: {}", num(d.bound)).unwrap();
    writeln!(out, "free rider: firm {}", d.free_rider).unwrap();
    render_outcome(&mut out, &r.ml);
    render_outcome(&mut out, &r.fl);
    writeln!(out, "[welfare]").unwrap();
    let w = &r.welfare;
    writeln!(out, "cs: ML {} FL {}", num(w.cs_ml), num(w.cs_fl)).unwrap();
    writeln!(out, "sw: ML {} FL {}", num(w.sw_ml), num(w.sw_fl)).unwrap();
    writeln!(out, "all win: {}", flag(w.all_win)).unwrap();
    writeln!(out, "[subsidy]").unwrap();
    out.push_str(&render_subsidy(&r.subsidy));
    writeln!(out, "[thresholds]").unwrap();
    out.push_str(&render_thresholds(&r.thresholds));
    out
}
