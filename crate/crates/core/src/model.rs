//! Game instances: market primitives, information endowments, the training
//! effectiveness function and the interior-duopoly validity check.
//!
//! Firm 1 is the (weakly) higher-quality firm. Endowments may be ordered
//! either way; [`Orientation`] records which firm holds more information.

use std::fmt;

use serde::Serialize;

use crate::error::{GameError, Result};

/// Relative tolerance for floating point comparisons.
pub const NUM_TOLERANCE: f64 = 1e-9;

/// Points per axis used when checking the ML-quality condition over contributions.
pub const CONDITION_GRID: usize = 8;

/// Samples used to verify that an effectiveness function is increasing and concave.
pub const SHAPE_CHECK_POINTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Firm {
    One,
    Two,
}

impl Firm {
    pub const BOTH: [Firm; 2] = [Firm::One, Firm::Two];

    pub fn rival(self) -> Firm {
        match self {
            Firm::One => Firm::Two,
            Firm::Two => Firm::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Firm::One => 0,
            Firm::Two => 1,
        }
    }
}

impl fmt::Display for Firm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Firm::One => f.write_str("1"),
            Firm::Two => f.write_str("2"),
        }
    }
}

/// How firms improve quality: independently (ML) or by pooling information (FL).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    #[serde(rename = "ML")]
    Ml,
    #[serde(rename = "FL")]
    Fl,
}

impl Regime {
    pub const BOTH: [Regime; 2] = [Regime::Ml, Regime::Fl];
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Ml => f.write_str("ML"),
            Regime::Fl => f.write_str("FL"),
        }
    }
}

/// Base qualities and the degree of product substitution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarketPrimitives {
    v1: f64,
    v2: f64,
    gamma: f64,
}

impl MarketPrimitives {
    /// Qualities must be strictly positive and `gamma` must lie in `[0, 1)`.
    ///
    /// The labeling convention `v1 >= v2` is not enforced here; it is part of
    /// the interior-duopoly check so that mirrored instances stay expressible.
    pub fn new(v1: f64, v2: f64, gamma: f64) -> Result<Self> {
        for (name, value) in [("v1", v1), ("v2", v2)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(GameError::InvalidParameter {
                    name,
                    value,
                    expected: "a finite positive quality",
                });
            }
        }
        check_gamma(gamma)?;
        Ok(Self { v1, v2, gamma })
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn v2(&self) -> f64 {
        self.v2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn base_quality(&self, firm: Firm) -> f64 {
        match firm {
            Firm::One => self.v1,
            Firm::Two => self.v2,
        }
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.v1, self.v2, gamma)
    }
}

/// Rejects `gamma` outside `[0, 1)`. At `gamma = 1` the demand system is singular.
pub fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && (0.0..1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(GameError::InvalidParameter {
            name: "gamma",
            value: gamma,
            expected: "a degree of substitution in [0, 1)",
        })
    }
}

/// Which firm holds more information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `d1 > d2`: firm 2 free rides.
    Main,
    /// `d2 >= d1`: firm 1 free rides.
    Mirrored,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformationEndowment {
    d1: f64,
    d2: f64,
}

impl InformationEndowment {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
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
        Ok(Self { d1, d2 })
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    pub fn of(&self, firm: Firm) -> f64 {
        match firm {
            Firm::One => self.d1,
            Firm::Two => self.d2,
        }
    }

    pub fn total(&self) -> f64 {
        self.d1 + self.d2
    }

    pub fn orientation(&self) -> Orientation {
        if self.d1 > self.d2 {
            Orientation::Main
        } else {
            Orientation::Mirrored
        }
    }

    /// The firm with the smaller endowment (firm 1 on ties).
    pub fn free_rider(&self) -> Firm {
        match self.orientation() {
            Orientation::Main => Firm::Two,
            Orientation::Mirrored => Firm::One,
        }
    }

    pub fn larger(&self) -> f64 {
        self.d1.max(self.d2)
    }

    pub fn smaller(&self) -> f64 {
        self.d1.min(self.d2)
    }
}

/// Training effectiveness `f`: maps an information volume to a quality gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EffectivenessSpec {
    SquareRoot,
    LogPlusOne,
    /// `a - b * exp(-x / c)`.
    SaturatingExp {
        a: f64,
        b: f64,
        c: f64,
    },
}

impl EffectivenessSpec {
    /// Evaluates `f(r)` without checking the domain.
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            EffectivenessSpec::SquareRoot => r.sqrt(),
            EffectivenessSpec::LogPlusOne => r.ln_1p(),
            EffectivenessSpec::SaturatingExp { a, b, c } => a - b * (-r / c).exp(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EffectivenessSpec::SquareRoot => "sqrt",
            EffectivenessSpec::LogPlusOne => "log1p",
            EffectivenessSpec::SaturatingExp { .. } => "satexp",
        }
    }

    /// Checks that `f` is strictly increasing and strictly concave on `(0, upper]`
    /// by forward and second differences on an evenly spaced grid.
    pub fn validate(&self, upper: f64) -> Result<()> {
        if let EffectivenessSpec::SaturatingExp { a, b, c } = *self {
            for (name, value) in [("f.a", a), ("f.b", b), ("f.c", c)] {
                if !value.is_finite() {
                    return Err(GameError::InvalidParameter {
                        name,
                        value,
                        expected: "a finite parameter",
                    });
                }
            }
            if c <= 0.0 {
                return Err(GameError::InvalidParameter {
                    name: "f.c",
                    value: c,
                    expected: "a positive decay scale",
                });
            }
        }
        if !(upper.is_finite() && upper > 0.0) {
            return Err(GameError::InvalidParameter {
                name: "upper",
                value: upper,
                expected: "a positive domain bound",
            });
        }
        check_shape(|x| self.eval(x), upper, SHAPE_CHECK_POINTS)
    }
}

/// Strict monotonicity and concavity of `f` on `(0, upper]` sampled at `points` nodes.
pub fn check_shape<F: Fn(f64) -> f64>(f: F, upper: f64, points: usize) -> Result<()> {
    let values: Vec<f64> = (1..=points)
        .map(|k| f(upper * k as f64 / points as f64))
        .collect();
    for (k, w) in values.windows(2).enumerate() {
        if !(w[1] - w[0] > 0.0) {
            return Err(GameError::InvalidEffectiveness {
                property: "strictly increasing",
                upper,
                detail: format!("forward difference {} at node {}", w[1] - w[0], k + 1),
            });
        }
    }
    for (k, w) in values.windows(3).enumerate() {
        let second = w[2] - 2.0 * w[1] + w[0];
        if !(second < 0.0) {
            return Err(GameError::InvalidEffectiveness {
                property: "strictly concave",
                upper,
                detail: format!("second difference {second} at node {}", k + 2),
            });
        }
    }
    Ok(())
}

pub fn eval_effectiveness(spec: &EffectivenessSpec, r: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(GameError::NegativeVolume(r));
    }
    Ok(spec.eval(r))
}

/// A full game instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioConfig {
    market: MarketPrimitives,
    endowment: InformationEndowment,
    effectiveness: EffectivenessSpec,
}

impl ScenarioConfig {
    /// Validates the effectiveness function over the pooled domain `(0, d1 + d2]`.
    pub fn new(
        market: MarketPrimitives,
        endowment: InformationEndowment,
        effectiveness: EffectivenessSpec,
    ) -> Result<Self> {
        effectiveness.validate(endowment.total())?;
        Ok(Self {
            market,
            endowment,
            effectiveness,
        })
    }

    pub fn market(&self) -> &MarketPrimitives {
        &self.market
    }

    pub fn endowment(&self) -> &InformationEndowment {
        &self.endowment
    }

    pub fn effectiveness(&self) -> &EffectivenessSpec {
        &self.effectiveness
    }

    pub fn gamma(&self) -> f64 {
        self.market.gamma
    }

    pub fn f(&self, r: f64) -> f64 {
        self.effectiveness.eval(r)
    }

    /// Same instance at another degree of substitution. The effectiveness
    /// domain is unchanged so no re-validation is needed.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Ok(Self {
            market: self.market.with_gamma(gamma)?,
            ..*self
        })
    }

    pub fn with_market(&self, market: MarketPrimitives) -> Self {
        Self { market, ..*self }
    }

    pub fn with_endowment(&self, endowment: InformationEndowment) -> Result<Self> {
        Self::new(self.market, endowment, self.effectiveness)
    }

    /// Exchanges the firms' labels, swapping both qualities and endowments.
    pub fn swapped(&self) -> Self {
        Self {
            market: MarketPrimitives {
                v1: self.market.v2,
                v2: self.market.v1,
                gamma: self.market.gamma,
            },
            endowment: InformationEndowment {
                d1: self.endowment.d2,
                d2: self.endowment.d1,
            },
            effectiveness: self.effectiveness,
        }
    }

    /// Updated qualities `[v1', v2']` when firms use `(r1, r2)` units of information.
    pub fn qualities_at(&self, regime: Regime, r1: f64, r2: f64) -> [f64; 2] {
        match regime {
            Regime::Ml => [self.market.v1 + self.f(r1), self.market.v2 + self.f(r2)],
            Regime::Fl => {
                let pooled = self.f(r1 + r2);
                [self.market.v1 + pooled, self.market.v2 + pooled]
            }
        }
    }

    /// Updated qualities at full contribution `R_i = D_i`.
    pub fn corner_qualities(&self, regime: Regime) -> [f64; 2] {
        self.qualities_at(regime, self.endowment.d1, self.endowment.d2)
    }
}

/// Quality of `firm` after training with `r_own` (and, under FL, the rival's `r_rival`).
pub fn updated_quality(
    scenario: &ScenarioConfig,
    firm: Firm,
    regime: Regime,
    r_own: f64,
    r_rival: f64,
) -> Result<f64> {
    for (f, r) in [(firm, r_own), (firm.rival(), r_rival)] {
        if r.is_nan() || r < 0.0 {
            return Err(GameError::NegativeVolume(r));
        }
        let endowment = scenario.endowment.of(f);
        if r > endowment {
            return Err(GameError::VolumeExceedsEndowment {
                firm: f,
                volume: r,
                endowment,
            });
        }
    }
    let base = scenario.market.base_quality(firm);
    Ok(match regime {
        Regime::Ml => base + scenario.f(r_own),
        Regime::Fl => base + scenario.f(r_own + r_rival),
    })
}

/// Outcome of the interior-duopoly check.
///
/// Part (i) concerns base qualities. Part (ii) covers updated ML qualities on
/// a contribution grid together with the pooled FL qualities at full
/// contribution, and requires every updated quality to stay positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub part_i_ok: bool,
    pub part_ii_ok: bool,
    /// Smallest dimensionless slack over every checked inequality; negative when violated.
    pub binding_margin: f64,
    pub checked_points: Vec<(f64, f64)>,
    pub violations: Vec<String>,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.part_i_ok && self.part_ii_ok
    }
}

/// Slack of `strong / weak < (2 - gamma^2) / gamma`, rewritten so that `gamma = 0` is finite.
fn ratio_slack(strong: f64, weak: f64, gamma: f64) -> f64 {
    (2.0 - gamma * gamma) * weak / strong - gamma
}

/// Slack for one pair of updated qualities: both stay positive (relative to the
/// base qualities) and each firm keeps a positive markup against the other.
fn point_slack(w: [f64; 2], base: [f64; 2], gamma: f64) -> f64 {
    let positivity = (w[0] / base[0]).min(w[1] / base[1]);
    if positivity <= 0.0 {
        return positivity;
    }
    positivity
        .min(ratio_slack(w[0], w[1], gamma))
        .min(ratio_slack(w[1], w[0], gamma))
}

/// Contribution points on which the ML-quality condition is evaluated.
pub fn condition_grid(endowment: &InformationEndowment) -> Vec<(f64, f64)> {
    let axis = |d: f64| -> Vec<f64> {
        if d == 0.0 {
            vec![0.0]
        } else {
            (1..=CONDITION_GRID)
                .map(|k| {
                    if k == CONDITION_GRID {
                        d
                    } else {
                        d * k as f64 / CONDITION_GRID as f64
                    }
                })
                .collect()
        }
    };
    let (r1s, r2s) = (axis(endowment.d1), axis(endowment.d2));
    let mut points: Vec<(f64, f64)> = r1s
        .iter()
        .flat_map(|&r1| r2s.iter().map(move |&r2| (r1, r2)))
        .collect();
    let positive_min = [endowment.d1, endowment.d2]
        .into_iter()
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let eps = 1e-6 * positive_min;
    points.push((eps.min(endowment.d1), eps.min(endowment.d2)));
    points
}

/// Checks that both firms keep a positive markup (an interior duopoly).
pub fn check_interior_condition(scenario: &ScenarioConfig) -> ConditionReport {
    let gamma = scenario.gamma();
    let (v1, v2) = (scenario.market.v1, scenario.market.v2);
    let mut violations = Vec::new();

    let order_slack = v1 / v2 - 1.0;
    let base_slack = ratio_slack(v1, v2, gamma);
    if order_slack < 0.0 {
        violations.push(format!("v1/v2 = {} is below 1", v1 / v2));
    }
    if base_slack <= 0.0 {
        violations.push(format!(
            "v1/v2 = {} is not below (2 - gamma^2)/gamma at gamma = {gamma}",
            v1 / v2
        ));
    }
    let part_i_ok = order_slack >= 0.0 && base_slack > 0.0;
    let mut margin = order_slack.min(base_slack);

    let checked_points = condition_grid(&scenario.endowment);
    let mut part_ii_ok = true;
    for &(r1, r2) in &checked_points {
        let [w1, w2] = scenario.qualities_at(Regime::Ml, r1, r2);
        let slack = point_slack([w1, w2], [v1, v2], gamma);
        margin = margin.min(slack);
        if !(slack > 0.0) {
            part_ii_ok = false;
            violations.push(format!(
                "ML qualities ({w1}, {w2}) at contributions ({r1}, {r2}) leave a firm without positive markup"
            ));
        }
    }
    let [w1, w2] = scenario.corner_qualities(Regime::Fl);
    let slack = point_slack([w1, w2], [v1, v2], gamma);
    margin = margin.min(slack);
    if !(slack > 0.0) {
        part_ii_ok = false;
        violations.push(format!(
            "pooled FL qualities ({w1}, {w2}) leave a firm without positive markup"
        ));
    }

    ConditionReport {
        part_i_ok,
        part_ii_ok,
        binding_margin: margin,
        checked_points,
        violations,
    }
}

/// Builds the three effectiveness families used in the numerical experiments.
pub fn builtin_families() -> [EffectivenessSpec; 3] {
    [
        EffectivenessSpec::SquareRoot,
        EffectivenessSpec::LogPlusOne,
        EffectivenessSpec::SaturatingExp {
            a: 1.0,
            b: 10.0,
            c: 100.0,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baseline(gamma: f64) -> ScenarioConfig {
        ScenarioConfig::new(
            MarketPrimitives::new(20.0, 15.0, gamma).unwrap(),
            InformationEndowment::new(100.0, 10.0).unwrap(),
            EffectivenessSpec::SquareRoot,
        )
        .unwrap()
    }

    #[test]
    fn effectiveness_values() {
        let sqrt = EffectivenessSpec::SquareRoot;
        assert_eq!(eval_effectiveness(&sqrt, 0.0).unwrap(), 0.0);
        assert_eq!(eval_effectiveness(&sqrt, 100.0).unwrap(), 10.0);
        let sat = EffectivenessSpec::SaturatingExp {
            a: 1.0,
            b: 10.0,
            c: 100.0,
        };
        // mpmath, 40 digits: 1 - 10 exp(-1.1)
        let expected = -2.328_710_836_980_795_5;
        assert!((eval_effectiveness(&sat, 110.0).unwrap() - expected).abs() < 1e-13);
        assert!(matches!(
            eval_effectiveness(&sqrt, -1.0),
            Err(GameError::NegativeVolume(_))
        ));
    }

    #[test]
    fn updated_quality_cases() {
        let s = baseline(0.5);
        assert_eq!(
            updated_quality(&s, Firm::One, Regime::Ml, 100.0, 0.0).unwrap(),
            30.0
        );
        let fl = updated_quality(&s, Firm::Two, Regime::Fl, 10.0, 100.0).unwrap();
        assert!((fl - 25.488_088_481_701_515).abs() < 1e-12);
        assert_eq!(
            updated_quality(&s, Firm::Two, Regime::Fl, 0.0, 0.0).unwrap(),
            15.0
        );
        assert!(matches!(
            updated_quality(&s, Firm::Two, Regime::Ml, 11.0, 0.0),
            Err(GameError::VolumeExceedsEndowment { .. })
        ));
    }

    #[test]
    fn gamma_range() {
        assert!(MarketPrimitives::new(20.0, 15.0, 1.0).is_err());
        assert!(MarketPrimitives::new(20.0, 15.0, -0.1).is_err());
        assert!(MarketPrimitives::new(20.0, 15.0, 0.0).is_ok());
        assert!(MarketPrimitives::new(0.0, 15.0, 0.3).is_err());
    }

    #[test]
    fn endowments() {
        assert!(matches!(
            InformationEndowment::new(0.0, 0.0),
            Err(GameError::NoInformation)
        ));
        let e = InformationEndowment::new(100.0, 10.0).unwrap();
        assert_eq!(e.orientation(), Orientation::Main);
        assert_eq!(e.free_rider(), Firm::Two);
        let e = InformationEndowment::new(10.0, 10.0).unwrap();
        assert_eq!(e.orientation(), Orientation::Mirrored);
        assert!(InformationEndowment::new(10.0, 0.0).is_ok());
    }

    #[test]
    fn condition_part_i() {
        assert!(check_interior_condition(&baseline(0.5)).part_i_ok);
        let report = check_interior_condition(&baseline(0.95));
        assert!(!report.part_i_ok);
        assert!(!report.passes());

        let equal = ScenarioConfig::new(
            MarketPrimitives::new(15.0, 15.0, 0.0).unwrap(),
            InformationEndowment::new(10.0, 10.0).unwrap(),
            EffectivenessSpec::SquareRoot,
        )
        .unwrap();
        assert!(check_interior_condition(&equal).part_i_ok);
        assert!(check_interior_condition(&equal.with_gamma(1e-12).unwrap()).part_i_ok);
    }

    #[test]
    fn condition_part_i_boundary() {
        // (2 - g^2)/g = 4/3 at g = (-4/3 + sqrt(16/9 + 8))/2
        let boundary = (-4.0 / 3.0 + (16.0f64 / 9.0 + 8.0).sqrt()) / 2.0;
        assert!((boundary - 0.896_805_253_274_476_5).abs() < 1e-12);
        assert!(check_interior_condition(&baseline(boundary - 1e-9)).part_i_ok);
        assert!(!check_interior_condition(&baseline(boundary + 1e-9)).part_i_ok);
    }

    #[test]
    fn grid_contains_corner_and_near_zero() {
        let e = InformationEndowment::new(100.0, 10.0).unwrap();
        let grid = condition_grid(&e);
        assert_eq!(grid.len(), CONDITION_GRID * CONDITION_GRID + 1);
        assert!(grid.contains(&(100.0, 10.0)));
        let (e1, e2) = *grid.last().unwrap();
        assert!((e1 - 1e-5).abs() < 1e-18 && (e2 - 1e-5).abs() < 1e-18);
    }

    #[test]
    fn low_base_ordering_fails_part_i_only() {
        let s = baseline(0.3).swapped();
        let report = check_interior_condition(&s);
        assert!(!report.part_i_ok);
        assert_eq!(
            report.part_ii_ok,
            check_interior_condition(&baseline(0.3)).part_ii_ok
        );
    }

    #[test]
    fn rejects_non_concave_or_flat() {
        let flat = EffectivenessSpec::SaturatingExp {
            a: 1.0,
            b: 0.0,
            c: 100.0,
        };
        assert!(flat.validate(100.0).is_err());
        let convex = EffectivenessSpec::SaturatingExp {
            a: 1.0,
            b: -1.0,
            c: 100.0,
        };
        assert!(convex.validate(100.0).is_err());
        assert!(check_shape(|x| x * x, 10.0, 100).is_err());
        for f in builtin_families() {
            f.validate(110.0).unwrap();
        }
    }
}
