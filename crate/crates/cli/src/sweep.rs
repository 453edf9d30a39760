//! One-parameter sweeps written as CSV.

use flgame_core::analysis::welfare_report;
use flgame_core::equilibrium::corner_outcome;
use flgame_core::model::check_interior_condition;
use flgame_core::regime::decide_from_outcomes;
use flgame_core::{InformationEndowment, Regime, ScenarioConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::format::{flag, num};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Gamma,
    D1,
    D2,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Gamma => "gamma",
            SweepParameter::D1 => "d1",
            SweepParameter::D2 => "d2",
        }
    }
}

/// Column groups, emitted in declaration order whatever order they were requested in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputGroup {
    Prices,
    Profits,
    Deltas,
    Welfare,
    Regime,
}

impl OutputGroup {
    pub const ALL: [OutputGroup; 5] = [
        OutputGroup::Prices,
        OutputGroup::Profits,
        OutputGroup::Deltas,
        OutputGroup::Welfare,
        OutputGroup::Regime,
    ];

    fn columns(self) -> &'static [&'static str] {
        match self {
            OutputGroup::Prices => &["p1_ml", "p2_ml", "p1_fl", "p2_fl"],
            OutputGroup::Profits => &["pi1_ml", "pi2_ml", "pi1_fl", "pi2_fl"],
            OutputGroup::Deltas => &["delta1", "delta2"],
            OutputGroup::Welfare => &["cs_ml", "cs_fl", "sw_ml", "sw_fl", "all_win"],
            OutputGroup::Regime => &["regime"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub outputs: Vec<OutputGroup>,
}

impl SweepSpec {
    pub fn new(
        parameter: SweepParameter,
        from: f64,
        to: f64,
        steps: usize,
        outputs: &[OutputGroup],
    ) -> Result<Self, CliError> {
        if !(from.is_finite() && to.is_finite() && from < to) {
            return Err(CliError::Usage(format!(
                "sweep range needs from < to, got {from} .. {to}"
            )));
        }
        if steps < 2 {
            return Err(CliError::Usage(format!(
                "sweep needs at least 2 steps, got {steps}"
            )));
        }
        let mut outputs = if outputs.is_empty() {
            OutputGroup::ALL.to_vec()
        } else {
            outputs.to_vec()
        };
        outputs.sort();
        outputs.dedup();
        Ok(SweepSpec {
            parameter,
            from,
            to,
            steps,
            outputs,
        })
    }

    /// Evenly spaced values; the last one is exactly `to`.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.to
                } else {
                    self.from + (self.to - self.from) * k as f64 / n as f64
                }
            })
            .collect()
    }
}

/// One sweep row; `cells` is `None` when the point is not a valid interior duopoly.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub cells: Option<Vec<String>>,
}

fn scenario_at(
    base: &ScenarioConfig,
    parameter: SweepParameter,
    value: f64,
) -> Option<ScenarioConfig> {
    let e = base.endowment();
    match parameter {
        SweepParameter::Gamma => base.with_gamma(value).ok(),
        SweepParameter::D1 => InformationEndowment::new(value, e.d2())
            .and_then(|e| base.with_endowment(e))
            .ok(),
        SweepParameter::D2 => InformationEndowment::new(e.d1(), value)
            .and_then(|e| base.with_endowment(e))
            .ok(),
    }
}

fn evaluate(scenario: &ScenarioConfig, outputs: &[OutputGroup]) -> Option<Vec<String>> {
    if !check_interior_condition(scenario).passes() {
        return None;
    }
    let ml = corner_outcome(scenario, Regime::Ml).ok()?;
    let fl = corner_outcome(scenario, Regime::Fl).ok()?;
    let decision = decide_from_outcomes(scenario, &ml, &fl).ok()?;
    let mut cells = Vec::new();
    for group in outputs {
        match group {
            OutputGroup::Prices => cells.extend(
                [
                    ml.firms[0].price,
                    ml.firms[1].price,
                    fl.firms[0].price,
                    fl.firms[1].price,
                ]
                .map(num),
            ),
            OutputGroup::Profits => cells.extend(
                [
                    ml.firms[0].profit,
                    ml.firms[1].profit,
                    fl.firms[0].profit,
                    fl.firms[1].profit,
                ]
                .map(num),
            ),
            OutputGroup::Deltas => cells.extend([decision.delta1, decision.delta2].map(num)),
            OutputGroup::Welfare => {
                let w = welfare_report(scenario).ok()?;
                cells.extend([w.cs_ml, w.cs_fl, w.sw_ml, w.sw_fl].map(num));
                cells.push(flag(w.all_win).to_string());
            }
            OutputGroup::Regime => cells.push(
                match decision.chosen {
                    Regime::Ml => "ML",
                    Regime::Fl => "FL",
                }
                .to_string(),
            ),
        }
    }
    Some(cells)
}

/// Rows are computed in parallel and returned in parameter order.
pub fn run_sweep(base: &ScenarioConfig, spec: &SweepSpec) -> Vec<SweepRow> {
    spec.values()
        .into_par_iter()
        .map(|value| SweepRow {
            value,
            cells: scenario_at(base, spec.parameter, value)
                .and_then(|s| evaluate(&s, &spec.outputs)),
        })
        .collect()
}

pub fn sweep_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let columns: Vec<&str> = spec
        .outputs
        .iter()
        .flat_map(|g| g.columns().iter().copied())
        .collect();
    let mut out = format!("{},valid,{}\n", spec.parameter.name(), columns.join(","));
    for row in rows {
        out.push_str(&num(row.value));
        match &row.cells {
            Some(cells) => {
                out.push_str(",1,");
                out.push_str(&cells.join(","));
            }
            None => {
                out.push_str(",0");
                out.push_str(&",".repeat(columns.len()));
            }
        }
        out.push('\n');
    }
    out
}
