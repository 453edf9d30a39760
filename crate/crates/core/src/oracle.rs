//! Numeric cross-checks for the closed forms.
//!
//! Nothing here calls the closed-form price formulas. Best responses come
//! from a bracketed one-dimensional search over profit, equilibria from
//! iterating those best responses, and the full-contribution result is
//! re-derived by finite differences of re-solved stage-two profits.

use serde::Serialize;

use crate::equilibrium::direct_demand;
use crate::model::{check_gamma, InformationEndowment, MarketPrimitives, Regime, ScenarioConfig};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 10_000;

/// Golden-section stops once the bracket is this fraction of its initial width.
const BRACKET_FRACTION: f64 = 1e-3;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Relative step for central differences in the contribution.
pub const CONTRIBUTION_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BestResponse {
    pub price: f64,
    /// False when no positive price yields positive demand.
    pub profitable: bool,
}

fn profit_at(v_own: f64, v_rival: f64, gamma: f64, p_own: f64, p_rival: f64) -> f64 {
    // gamma is validated by the callers
    p_own * direct_demand(v_own, v_rival, p_own, p_rival, gamma).unwrap_or(f64::NAN)
}

/// Maximizes a unimodal `f` on `[lo, hi]`: golden-section narrowing followed
/// by one parabolic step through the final bracket.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    let min_width = (hi - lo) * BRACKET_FRACTION;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > min_width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let num = (m - a).powi(2) * (fm - fb) - (m - b).powi(2) * (fm - fa);
    let den = (m - a) * (fm - fb) - (m - b) * (fm - fa);
    if den != 0.0 {
        let vertex = m - 0.5 * num / den;
        if (a..=b).contains(&vertex) {
            return vertex;
        }
    }
    m
}

/// Profit-maximizing price against a fixed rival price, found numerically on
/// `[0, choke]` where `choke` is the price at which own demand vanishes.
pub fn best_response_price(v_own: f64, v_rival: f64, gamma: f64, p_rival: f64) -> BestResponse {
    let scale = 1.0 - gamma * gamma;
    let choke = direct_demand(v_own, v_rival, 0.0, p_rival, gamma).unwrap_or(f64::NAN) * scale;
    if !(choke > 0.0) {
        return BestResponse {
            price: 0.0,
            profitable: false,
        };
    }
    let price = golden_section_max(|p| profit_at(v_own, v_rival, gamma, p, p_rival), 0.0, choke);
    BestResponse {
        price,
        profitable: true,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointTrace {
    pub iterates: Vec<(f64, f64)>,
    pub converged: bool,
    pub iterations: usize,
    /// `max |BR(p) - p|` at the final iterate.
    pub residual: f64,
}

impl FixedPointTrace {
    pub fn last(&self) -> (f64, f64) {
        *self
            .iterates
            .last()
            .expect("trace always holds the start point")
    }
}

fn residual(qualities: [f64; 2], gamma: f64, p: (f64, f64)) -> f64 {
    let [v1, v2] = qualities;
    let b1 = best_response_price(v1, v2, gamma, p.1).price;
    let b2 = best_response_price(v2, v1, gamma, p.0).price;
    (b1 - p.0).abs().max((b2 - p.1).abs())
}

/// Alternating (Gauss-Seidel) best-response iteration from `start`.
pub fn iterate_best_responses(
    qualities: [f64; 2],
    gamma: f64,
    start: (f64, f64),
    tolerance: f64,
) -> FixedPointTrace {
    let [v1, v2] = qualities;
    let mut iterates = vec![start];
    if check_gamma(gamma).is_err() {
        return FixedPointTrace {
            iterates,
            converged: false,
            iterations: 0,
            residual: f64::NAN,
        };
    }
    let mut p = start;
    let mut iterations = 0;
    loop {
        let r = residual(qualities, gamma, p);
        if r < tolerance || iterations == MAX_ITERATIONS {
            return FixedPointTrace {
                iterates,
                converged: r < tolerance,
                iterations,
                residual: r,
            };
        }
        p.0 = best_response_price(v1, v2, gamma, p.1).price;
        p.1 = best_response_price(v2, v1, gamma, p.0).price;
        iterates.push(p);
        iterations += 1;
    }
}

/// Best-response iteration at full contribution for `regime`.
pub fn iterate_to_fixed_point(
    scenario: &ScenarioConfig,
    regime: Regime,
    start: (f64, f64),
    tolerance: f64,
) -> FixedPointTrace {
    iterate_best_responses(
        scenario.corner_qualities(regime),
        scenario.gamma(),
        start,
        tolerance,
    )
}

/// Stage-two profits for given qualities, solving the pair of first-order
/// conditions `2 p_i - g p_j = v_i - g v_j` by Cramer's rule.
fn stage_two_profits(w: [f64; 2], gamma: f64) -> [f64; 2] {
    let rhs = [w[0] - gamma * w[1], w[1] - gamma * w[0]];
    let det = 4.0 - gamma * gamma;
    let p1 = (2.0 * rhs[0] + gamma * rhs[1]) / det;
    let p2 = (2.0 * rhs[1] + gamma * rhs[0]) / det;
    [
        profit_at(w[0], w[1], gamma, p1, p2),
        profit_at(w[1], w[0], gamma, p2, p1),
    ]
}

fn interior(w: [f64; 2], gamma: f64) -> bool {
    let g2 = gamma * gamma;
    w[0] > 0.0
        && w[1] > 0.0
        && (2.0 - g2) * w[0] - gamma * w[1] > 0.0
        && (2.0 - g2) * w[1] - gamma * w[0] > 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeSignReport {
    pub regime: Regime,
    /// Minimum over the grid of `dPi_i / dR_i` for firms 1 and 2.
    pub min_derivative: [f64; 2],
    pub evaluated: usize,
    /// Grid points where a firm would lose its positive markup.
    pub excluded: Vec<(f64, f64)>,
}

impl DerivativeSignReport {
    pub fn all_positive(&self) -> bool {
        self.evaluated > 0 && self.min_derivative.iter().all(|d| *d > 0.0)
    }
}

/// Minimum marginal profit of own contribution over a `grid_density`^2 grid
/// on `(0, d1] x (0, d2]`, using an arbitrary effectiveness function.
pub fn info_derivative_sign_with<F: Fn(f64) -> f64>(
    market: &MarketPrimitives,
    endowment: &InformationEndowment,
    f: F,
    regime: Regime,
    grid_density: usize,
) -> DerivativeSignReport {
    let gamma = market.gamma();
    let (v1, v2) = (market.v1(), market.v2());
    let qualities = |r1: f64, r2: f64| -> [f64; 2] {
        match regime {
            Regime::Ml => [v1 + f(r1), v2 + f(r2)],
            Regime::Fl => {
                let pooled = f(r1 + r2);
                [v1 + pooled, v2 + pooled]
            }
        }
    };
    let (d1, d2) = (endowment.d1(), endowment.d2());
    let (h1, h2) = (CONTRIBUTION_STEP * d1, CONTRIBUTION_STEP * d2);
    let n = grid_density.max(1);

    let mut report = DerivativeSignReport {
        regime,
        min_derivative: [f64::INFINITY; 2],
        evaluated: 0,
        excluded: Vec::new(),
    };
    if d1 == 0.0 || d2 == 0.0 {
        return report;
    }
    for i in 1..=n {
        let r1 = d1 * i as f64 / n as f64;
        for j in 1..=n {
            let r2 = d2 * j as f64 / n as f64;
            if !interior(qualities(r1, r2), gamma) {
                report.excluded.push((r1, r2));
                continue;
            }
            let dpi1 = (stage_two_profits(qualities(r1 + h1, r2), gamma)[0]
                - stage_two_profits(qualities(r1 - h1, r2), gamma)[0])
                / (2.0 * h1);
            let dpi2 = (stage_two_profits(qualities(r1, r2 + h2), gamma)[1]
                - stage_two_profits(qualities(r1, r2 - h2), gamma)[1])
                / (2.0 * h2);
            report.min_derivative[0] = report.min_derivative[0].min(dpi1);
            report.min_derivative[1] = report.min_derivative[1].min(dpi2);
            report.evaluated += 1;
        }
    }
    report
}

pub fn info_derivative_sign(
    scenario: &ScenarioConfig,
    regime: Regime,
    grid_density: usize,
) -> DerivativeSignReport {
    info_derivative_sign_with(
        scenario.market(),
        scenario.endowment(),
        |r| scenario.f(r),
        regime,
        grid_density,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeEquilibrium {
    pub prices: (f64, f64),
    /// Lattice spacing for each firm.
    pub cell: (f64, f64),
    pub rounds: usize,
    /// True when a full round left both prices unchanged.
    pub settled: bool,
}

const MAX_LATTICE_ROUNDS: usize = 1_000;

/// Alternating exhaustive best responses on the lattice `{k v_i / steps}`.
pub fn grid_equilibrium(
    scenario: &ScenarioConfig,
    regime: Regime,
    price_steps: usize,
) -> LatticeEquilibrium {
    let steps = price_steps.max(1);
    let gamma = scenario.gamma();
    let [v1, v2] = scenario.corner_qualities(regime);
    let cell = (v1 / steps as f64, v2 / steps as f64);
    let argmax = |v_own: f64, v_rival: f64, spacing: f64, p_rival: f64| -> usize {
        let mut best = (0, f64::NEG_INFINITY);
        for k in 0..=steps {
            let profit = profit_at(v_own, v_rival, gamma, k as f64 * spacing, p_rival);
            if profit > best.1 {
                best = (k, profit);
            }
        }
        best.0
    };

    let (mut k1, mut k2) = (0usize, 0usize);
    let mut rounds = 0;
    let mut settled = false;
    while rounds < MAX_LATTICE_ROUNDS {
        rounds += 1;
        let n1 = argmax(v1, v2, cell.0, k2 as f64 * cell.1);
        let n2 = argmax(v2, v1, cell.1, n1 as f64 * cell.0);
        let unchanged = n1 == k1 && n2 == k2;
        k1 = n1;
        k2 = n2;
        if unchanged {
            settled = true;
            break;
        }
    }
    LatticeEquilibrium {
        prices: (k1 as f64 * cell.0, k2 as f64 * cell.1),
        cell,
        rounds,
        settled,
    }
}
