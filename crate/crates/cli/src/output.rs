//! Canonical JSON emission and the exit-code scheme.

use serde::Serialize;
use serde_json::{json, Value};
use walland_core::Error;

pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input files.
    Usage(String),
    Core(Error),
    /// A check ran to completion and found violations; the payload says which.
    CheckFailed { message: String, payload: Value },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_SCHEMA,
            CliError::Core(Error::CertificateFailure(_)) => EXIT_CHECK_FAILED,
            CliError::Core(e) if e.is_precondition() => EXIT_PRECONDITION,
            CliError::Core(_) => EXIT_SCHEMA,
            CliError::CheckFailed { .. } => EXIT_CHECK_FAILED,
        }
    }

    pub fn to_json(&self) -> Value {
        let body = match self {
            CliError::Usage(m) => json!({"kind": "usage", "message": m}),
            CliError::Core(Error::CertificateFailure(c)) => json!({
                "kind": "certificate_failure",
                "message": Error::CertificateFailure(c.clone()).to_string(),
                "counterexample": to_value(c),
            }),
            CliError::Core(e) => json!({"kind": e.kind(), "message": e.to_string()}),
            CliError::CheckFailed { message, payload } => json!({
                "kind": "check_failed",
                "message": message,
                "report": payload,
            }),
        };
        json!({ "error": body })
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// `serde_json::Value` keeps object keys sorted, which makes the rendering
/// canonical.
pub fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("engine types serialize to JSON")
}

pub fn render(v: &Value, compact: bool) -> String {
    let mut s = if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    }
    .expect("values render");
    s.push('\n');
    s
}
