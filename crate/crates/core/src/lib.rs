//! Equilibrium engine for a two-firm duopoly deciding between independent
//! training (ML) and federated training (FL) when the smaller data holder can
//! free ride on pooled information.
//!
//! * [`model`]: game instances and the interior-duopoly check
//! * [`equilibrium`]: closed-form price equilibria at full contribution
//! * [`oracle`]: independent numeric best-response and derivative checks
//! * [`regime`]: ML-vs-FL decision
//! * [`analysis`]: thresholds, welfare and subsidies

// `!(x > 0.0)` is used on purpose so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod equilibrium;
pub mod error;
pub mod model;
pub mod oracle;
pub mod regime;
pub mod roots;

pub use error::{GameError, Result};
pub use model::{
    EffectivenessSpec, Firm, InformationEndowment, MarketPrimitives, Orientation, Regime,
    ScenarioConfig,
};
