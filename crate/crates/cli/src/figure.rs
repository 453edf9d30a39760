//! Profit-versus-substitution figure: four profit curves over the valid
//! `gamma` range with the `gamma*` and `gamma_hat` markers.
//!
//! The data is produced once as CSV. The SVG is drawn by re-reading that CSV,
//! so the picture cannot disagree with the numbers.

use std::fmt::Write;

use flgame_core::analysis::{
    max_valid_gamma, solve_gamma_hat, solve_gamma_star, AbsenceReason, Threshold,
};
use flgame_core::equilibrium::corner_outcome;
use flgame_core::model::check_interior_condition;
use flgame_core::regime::decide_from_outcomes;
use flgame_core::{
    EffectivenessSpec, InformationEndowment, MarketPrimitives, Regime, ScenarioConfig,
};
use serde::Serialize;

use crate::format::{flag, num};
use crate::CliError;

pub const FIGURE_V1: f64 = 20.0;
pub const FIGURE_V2: f64 = 15.0;
pub const DEFAULT_D2: f64 = 10.0;
pub const DEFAULT_POINTS: usize = 400;
/// Grading of the `gamma` grid: spacing near 0 is `GRADING / expm1(GRADING)`
/// times the uniform spacing.
pub const GRADING: f64 = 4.0;

pub const CSV_HEADER: &str =
    "gamma,valid,pi1_ml,pi1_fl,pi2_ml,pi2_fl,delta1,delta2,fl_formed,subsidy_feasible";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureSpec {
    pub effectiveness: EffectivenessSpec,
    pub d1: f64,
    pub d2: f64,
    pub points: usize,
}

impl FigureSpec {
    pub fn new(effectiveness: EffectivenessSpec, d1: f64) -> Self {
        FigureSpec {
            effectiveness,
            d1,
            d2: DEFAULT_D2,
            points: DEFAULT_POINTS,
        }
    }

    pub fn scenario(&self) -> Result<ScenarioConfig, CliError> {
        let market = MarketPrimitives::new(FIGURE_V1, FIGURE_V2, 0.0)?;
        let endowment = InformationEndowment::new(self.d1, self.d2)?;
        Ok(ScenarioConfig::new(market, endowment, self.effectiveness)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Markers {
    pub gamma_star: Threshold,
    pub gamma_hat: Threshold,
    pub gamma_max: f64,
}

impl Markers {
    /// Right edge of the subsidy region: `gamma_hat`, or `gamma_max` when the
    /// joint gain is still positive there.
    pub fn subsidy_edge(&self) -> Option<f64> {
        match self.gamma_hat {
            Threshold::Found { value, .. } => Some(value),
            Threshold::Absent(AbsenceReason::BoundaryLimited { gamma_max }) => Some(gamma_max),
            Threshold::Absent(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub spec: FigureSpec,
    pub markers: Markers,
    pub csv: String,
}

/// A parsed CSV row; profit fields are `None` on invalid rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub gamma: f64,
    pub valid: bool,
    pub pi1_ml: f64,
    pub pi1_fl: f64,
    pub pi2_ml: f64,
    pub pi2_fl: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub fl_formed: bool,
    pub subsidy_feasible: bool,
}

/// `points` values on `[0, gamma_max]`, dense near 0 and hitting both ends exactly.
pub fn gamma_grid(gamma_max: f64, points: usize) -> Vec<f64> {
    let n = points.max(2) - 1;
    (0..=n)
        .map(|k| {
            if k == n {
                gamma_max
            } else {
                gamma_max * (GRADING * k as f64 / n as f64).exp_m1() / GRADING.exp_m1()
            }
        })
        .collect()
}

fn csv_row(base: &ScenarioConfig, gamma: f64) -> Result<String, CliError> {
    let s = base.with_gamma(gamma)?;
    if !check_interior_condition(&s).passes() {
        return Ok(format!("{},0,,,,,,,,", num(gamma)));
    }
    let ml = corner_outcome(&s, Regime::Ml)?;
    let fl = corner_outcome(&s, Regime::Fl)?;
    let d = decide_from_outcomes(&s, &ml, &fl)?;
    let free_rider = d.free_rider;
    if fl.profit(free_rider) <= ml.profit(free_rider) {
        return Err(CliError::Invariant(format!(
            "free rider loses from FL at gamma = {}",
            num(gamma)
        )));
    }
    Ok(format!(
        "{},1,{},{},{},{},{},{},{},{}",
        num(gamma),
        num(ml.firms[0].profit),
        num(fl.firms[0].profit),
        num(ml.firms[1].profit),
        num(fl.firms[1].profit),
        num(d.delta1),
        num(d.delta2),
        flag(d.chosen == Regime::Fl),
        flag(d.delta1 + d.delta2 >= 0.0)
    ))
}

pub fn compute_figure(spec: &FigureSpec) -> Result<Figure, CliError> {
    let base = spec.scenario()?;
    let gamma_max = max_valid_gamma(&base).ok_or_else(|| {
        CliError::Condition("no gamma keeps this scenario an interior duopoly".to_string())
    })?;
    let markers = Markers {
        gamma_star: solve_gamma_star(&base)?,
        gamma_hat: solve_gamma_hat(&base)?,
        gamma_max,
    };
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for gamma in gamma_grid(gamma_max, spec.points) {
        csv.push_str(&csv_row(&base, gamma)?);
        csv.push('\n');
    }
    Ok(Figure {
        spec: *spec,
        markers,
        csv,
    })
}

pub fn parse_figure_csv(text: &str) -> Result<Vec<FigureRow>, CliError> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(CliError::Invariant(
            "figure CSV has an unexpected header".to_string(),
        ));
    }
    let bad = |i: usize| CliError::Invariant(format!("figure CSV row {} is malformed", i + 2));
    lines
        .enumerate()
        .map(|(i, line)| {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 10 {
                return Err(bad(i));
            }
            let gamma: f64 = cells[0].parse().map_err(|_| bad(i))?;
            let valid = cells[1] == "1";
            let n = |j: usize| -> Result<f64, CliError> {
                if valid {
                    cells[j].parse().map_err(|_| bad(i))
                } else {
                    Ok(f64::NAN)
                }
            };
            Ok(FigureRow {
                gamma,
                valid,
                pi1_ml: n(2)?,
                pi1_fl: n(3)?,
                pi2_ml: n(4)?,
                pi2_fl: n(5)?,
                delta1: n(6)?,
                delta2: n(7)?,
                fl_formed: cells[8] == "1",
                subsidy_feasible: cells[9] == "1",
            })
        })
        .collect()
}

const WIDTH: f64 = 800.0;
/// Extra canvas to the right of the plot that holds the legend.
const LEGEND_WIDTH: f64 = 140.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const ML_COLOUR: &str = "#d62728";
const FL_COLOUR: &str = "#1f77b4";
const FL_REGION: &str = "#2ca02c";
const SUBSIDY_REGION: &str = "#9467bd";

/// Colour, stroke width, value and legend label of one profit curve.
type Curve = (&'static str, f64, fn(&FigureRow) -> f64, &'static str);

struct Frame {
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, g: f64) -> f64 {
        MARGIN + (WIDTH - 2.0 * MARGIN) * g / self.x_max
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * (v - self.y_min) / (self.y_max - self.y_min)
    }
}

/// Maximal runs of consecutive valid rows where `pick` holds, as `(from, to)` in `gamma`.
fn runs(rows: &[FigureRow], pick: impl Fn(&FigureRow) -> bool) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    for (i, row) in rows.iter().enumerate() {
        let on = row.valid && pick(row);
        match (on, start) {
            (true, None) => start = Some(row.gamma),
            (false, Some(s)) => {
                out.push((s, rows[i - 1].gamma));
                start = None;
            }
            _ => {}
        }
    }
    if let (Some(s), Some(last)) = (start, rows.last()) {
        out.push((s, last.gamma));
    }
    out
}

pub fn render_svg(csv: &str, markers: &Markers, title: &str) -> Result<String, CliError> {
    let rows: Vec<FigureRow> = parse_figure_csv(csv)?;
    let valid: Vec<&FigureRow> = rows.iter().filter(|r| r.valid).collect();
    if valid.is_empty() {
        return Err(CliError::Invariant("figure has no valid rows".to_string()));
    }
    let profits = || {
        valid
            .iter()
            .flat_map(|r| [r.pi1_ml, r.pi1_fl, r.pi2_ml, r.pi2_fl])
    };
    let lo = profits().fold(f64::INFINITY, f64::min);
    let hi = profits().fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.05 * (hi - lo).max(1.0);
    let frame = Frame {
        x_max: markers.gamma_max,
        y_min: lo - pad,
        y_max: hi + pad,
    };
    let (top, bottom) = (MARGIN, HEIGHT - MARGIN);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{HEIGHT}" viewBox="0 0 {total} {HEIGHT}" font-family="sans-serif" font-size="12">"#,
        total = WIDTH + LEGEND_WIDTH
    )
    .unwrap();
    writeln!(
        svg,
        r#"<rect width="{}" height="{HEIGHT}" fill="white"/>"#,
        WIDTH + LEGEND_WIDTH
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="30" text-anchor="middle" font-size="15">{title}</text>"#,
        WIDTH / 2.0
    )
    .unwrap();

    for (fill, region) in [
        (FL_REGION, runs(&rows, |r| r.fl_formed)),
        (
            SUBSIDY_REGION,
            runs(&rows, |r| !r.fl_formed && r.subsidy_feasible),
        ),
    ] {
        for (a, b) in region {
            writeln!(
                svg,
                r#"<rect x="{:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="{fill}" fill-opacity="0.15"/>"#,
                frame.x(a),
                frame.x(b) - frame.x(a),
                bottom - top
            )
            .unwrap();
        }
    }

    writeln!(
        svg,
        r#"<path d="M{m:.2},{top:.2} V{bottom:.2} H{:.2}" fill="none" stroke="black"/>"#,
        WIDTH - MARGIN,
        m = MARGIN
    )
    .unwrap();
    for k in 0..=5 {
        let g = frame.x_max * k as f64 / 5.0;
        let v = frame.y_min + (frame.y_max - frame.y_min) * k as f64 / 5.0;
        writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{g:.2}</text>"#,
            frame.x(g),
            bottom + 18.0
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.0}</text>"#,
            MARGIN - 6.0,
            frame.y(v) + 4.0
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">substitution gamma</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();

    let curves: [Curve; 4] = [
        (ML_COLOUR, 1.2, |r| r.pi1_ml, "firm 1, ML"),
        (FL_COLOUR, 1.2, |r| r.pi1_fl, "firm 1, FL"),
        (ML_COLOUR, 3.0, |r| r.pi2_ml, "firm 2, ML"),
        (FL_COLOUR, 3.0, |r| r.pi2_fl, "firm 2, FL"),
    ];
    for (i, (colour, width, value, label)) in curves.iter().enumerate() {
        let points: Vec<String> = valid
            .iter()
            .map(|r| format!("{:.2},{:.2}", frame.x(r.gamma), frame.y(value(r))))
            .collect();
        writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="{width}"/>"#,
            points.join(" ")
        )
        .unwrap();
        let ly = top + 16.0 * i as f64 + 10.0;
        let lx = WIDTH - MARGIN + 20.0;
        writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="{width}"/><text x="{:.2}" y="{:.2}">{label}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0
        )
        .unwrap();
    }

    for (threshold, colour, label) in [
        (markers.gamma_star, FL_REGION, "gamma*"),
        (markers.gamma_hat, SUBSIDY_REGION, "gamma_hat"),
    ] {
        if let Some(g) = threshold.value() {
            let x = frame.x(g);
            writeln!(
                svg,
                r#"<line x1="{x:.2}" y1="{top:.2}" x2="{x:.2}" y2="{bottom:.2}" stroke="{colour}" stroke-width="1.5" stroke-dasharray="6,4"/><text x="{:.2}" y="{:.2}" fill="{colour}">{label}</text>"#,
                x + 4.0,
                top + 12.0
            )
            .unwrap();
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
