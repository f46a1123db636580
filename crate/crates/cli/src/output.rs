use std::fmt;
use std::process::ExitCode;

use pinsker::{PinskerError, QuadConfig};
use serde_json::value::RawValue;

/// Fixed 17-significant-digit rendering; infinities as `inf`.
pub fn fmt_num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// A JSON number in [`fmt_num`] form, or the string `"inf"`.
pub fn json_num(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() {
        fmt_num(x)
    } else {
        format!("\"{}\"", fmt_num(x))
    };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable or malformed input: exit 1.
    Malformed(String),
    /// Constraints no pair of distributions satisfies: exit 2.
    Infeasible(String),
    /// An invariant suite reported a failure: exit 3.
    Verification,
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Malformed(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Verification => 3,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Malformed(m) | Failure::Infeasible(m) => f.write_str(m),
            Failure::Verification => f.write_str("one or more invariants failed"),
        }
    }
}

impl From<PinskerError> for Failure {
    fn from(e: PinskerError) -> Self {
        match e {
            PinskerError::Infeasible { .. } | PinskerError::InfeasibleValue { .. } => {
                Failure::Infeasible(e.to_string())
            }
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

/// Quadrature settings, with `PINSKER_QUAD_TOL` overriding the relative tolerance.
pub fn quad_config() -> Result<QuadConfig, Failure> {
    match std::env::var("PINSKER_QUAD_TOL") {
        Err(_) => Ok(QuadConfig::default()),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(tol) if tol > 0.0 && tol < 1.0 => Ok(QuadConfig::with_rel_tol(tol)),
            _ => Err(Failure::Malformed(format!(
                "PINSKER_QUAD_TOL must be a number in (0, 1), got `{raw}`"
            ))),
        },
    }
}
