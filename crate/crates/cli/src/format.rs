//! Bit-stable number rendering shared by every text and CSV output.

use flgame_core::analysis::{AbsenceReason, Threshold};

/// Twelve significant digits in scientific notation, e.g. `1.32089269908e-1`.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        // normalise -0 so identical inputs never differ by a sign bit
        format!("{:.11e}", if x == 0.0 { 0.0 } else { x })
    }
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn absence(reason: &AbsenceReason) -> String {
    match reason {
        AbsenceReason::EqualEndowments => "equal endowments".to_string(),
        AbsenceReason::EmptySmallerEndowment => "smaller endowment is empty".to_string(),
        AbsenceReason::NoCompetition => "no competition at gamma = 0".to_string(),
        AbsenceReason::NoGammaStar => "no gamma*".to_string(),
        AbsenceReason::GammaStarOutsideValidRange { gamma_max } => {
            format!(
                "gamma* beyond the valid range (gamma_max = {})",
                num(*gamma_max)
            )
        }
        AbsenceReason::BoundaryLimited { gamma_max } => {
            format!(
                "boundary-limited, joint gain still positive at gamma_max = {}",
                num(*gamma_max)
            )
        }
        AbsenceReason::InvalidBracket => "invalid bracket".to_string(),
    }
}

pub fn threshold(t: &Threshold) -> String {
    match t {
        Threshold::Found { value, residual } => {
            format!("{} (residual {})", num(*value), num(*residual))
        }
        Threshold::Absent(reason) => format!("absent: {}", absence(reason)),
    }
}
