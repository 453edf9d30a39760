use thiserror::Error;

use crate::model::Firm;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("{name} = {value} is invalid: expected {expected}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("information volume {0} is negative")]
    NegativeVolume(f64),

    #[error("firm {firm} uses {volume} units of information but only holds {endowment}")]
    VolumeExceedsEndowment {
        firm: Firm,
        volume: f64,
        endowment: f64,
    },

    #[error("both information endowments are zero")]
    NoInformation,

    #[error("effectiveness function is not {property} on (0, {upper}]: {detail}")]
    InvalidEffectiveness {
        property: &'static str,
        upper: f64,
        detail: String,
    },

    #[error("scenario leaves the interior duopoly: {0}")]
    ConditionViolated(String),

    #[error("firm {firm} has negative equilibrium demand {quantity}")]
    NegativeQuantity { firm: Firm, quantity: f64 },

    #[error(
        "profit comparison (delta1 = {delta1}, delta2 = {delta2}) disagrees with ratio test \
         (ratio = {ratio}, bound = {bound})"
    )]
    InconsistentVerdict {
        delta1: f64,
        delta2: f64,
        ratio: f64,
        bound: f64,
    },
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
