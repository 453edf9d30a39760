//! Second-stage Bertrand equilibrium with differentiated products.
//!
//! Both firms contribute their full endowment (the corner solution), so the
//! regime fixes the updated qualities and prices follow in closed form:
//! `p_i = ((2 - g^2) v_i - g v_j) / (4 - g^2)`, `q_i = p_i / (1 - g^2)`.

use serde::Serialize;

use crate::error::{GameError, Result};
use crate::model::{check_gamma, check_interior_condition, Firm, Regime, ScenarioConfig};

/// Direct demand for the own product given both prices.
///
/// May be negative; callers decide what a negative demand means.
pub fn direct_demand(
    v_own: f64,
    v_rival: f64,
    p_own: f64,
    p_rival: f64,
    gamma: f64,
) -> Result<f64> {
    check_gamma(gamma)?;
    Ok((v_own - p_own - gamma * (v_rival - p_rival)) / (1.0 - gamma * gamma))
}

/// Inverse demand: the price at which `q_own` units of the own product sell.
pub fn inverse_demand(v_own: f64, q_own: f64, q_rival: f64, gamma: f64) -> f64 {
    v_own - q_own - gamma * q_rival
}

pub fn closed_form_price(v_own: f64, v_rival: f64, gamma: f64) -> f64 {
    let g2 = gamma * gamma;
    ((2.0 - g2) * v_own - gamma * v_rival) / (4.0 - g2)
}

pub fn closed_form_profit(v_own: f64, v_rival: f64, gamma: f64) -> f64 {
    let g2 = gamma * gamma;
    let markup = (2.0 - g2) * v_own - gamma * v_rival;
    markup * markup / ((1.0 - g2) * (4.0 - g2) * (4.0 - g2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirmOutcome {
    pub quality: f64,
    pub price: f64,
    pub quantity: f64,
    pub profit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumOutcome {
    pub regime: Regime,
    pub gamma: f64,
    pub firms: [FirmOutcome; 2],
}

impl EquilibriumOutcome {
    pub fn firm(&self, firm: Firm) -> &FirmOutcome {
        &self.firms[firm.index()]
    }

    pub fn prices(&self) -> (f64, f64) {
        (self.firms[0].price, self.firms[1].price)
    }

    pub fn profit(&self, firm: Firm) -> f64 {
        self.firm(firm).profit
    }
}

/// Price equilibrium for given updated qualities, without the interior check.
///
/// Fails if either equilibrium demand is negative.
pub fn price_stage(qualities: [f64; 2], gamma: f64, regime: Regime) -> Result<EquilibriumOutcome> {
    check_gamma(gamma)?;
    let [v1, v2] = qualities;
    let (p1, p2) = (
        closed_form_price(v1, v2, gamma),
        closed_form_price(v2, v1, gamma),
    );
    let q1 = direct_demand(v1, v2, p1, p2, gamma)?;
    let q2 = direct_demand(v2, v1, p2, p1, gamma)?;
    for (firm, quantity) in [(Firm::One, q1), (Firm::Two, q2)] {
        if quantity < 0.0 {
            return Err(GameError::NegativeQuantity { firm, quantity });
        }
    }
    let outcome = |quality: f64, price: f64, quantity: f64| FirmOutcome {
        quality,
        price,
        quantity,
        profit: price * quantity,
    };
    Ok(EquilibriumOutcome {
        regime,
        gamma,
        firms: [outcome(v1, p1, q1), outcome(v2, p2, q2)],
    })
}

/// Equilibrium of `regime` at full contribution, refusing scenarios that
/// fail the interior-duopoly check.
pub fn equilibrium_outcome(
    scenario: &ScenarioConfig,
    regime: Regime,
) -> Result<EquilibriumOutcome> {
    let report = check_interior_condition(scenario);
    if !report.passes() {
        return Err(GameError::ConditionViolated(report.violations.join("; ")));
    }
    corner_outcome(scenario, regime)
}

/// Like [`equilibrium_outcome`] but skips the interior check.
pub fn corner_outcome(scenario: &ScenarioConfig, regime: Regime) -> Result<EquilibriumOutcome> {
    price_stage(scenario.corner_qualities(regime), scenario.gamma(), regime)
}
