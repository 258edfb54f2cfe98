//! Machine-readable run reports.
//!
//! Every invocation prints exactly one JSON document to stdout. The schema
//! is versioned, field order is fixed, and nothing time- or host-dependent
//! goes into the document (wall-clock timing is stderr-only), so reports
//! are byte-stable for fixed inputs and grids.

use serde::Serialize;

/// One verified quantity: the measured value, what it should be, and how
/// close it must come.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// |value - target| <= tolerance.
    pub fn near(name: &str, value: f64, target: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target: Some(target),
            tolerance,
            pass: (value - target).abs() <= tolerance,
        }
    }

    /// |value| <= tolerance, for residuals whose target is zero.
    pub fn residual(name: &str, value: f64, tolerance: f64) -> Self {
        Check::near(name, value, 0.0, tolerance)
    }

    /// value <= bound, for one-sided inequalities.
    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target: Some(bound),
            tolerance: 0.0,
            pass: value <= bound,
        }
    }

    /// value >= bound, for separation thresholds.
    pub fn at_least(name: &str, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target: Some(bound),
            tolerance: 0.0,
            pass: value >= bound,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<serde_json::Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema: 1,
            command: command.into(),
            body: None,
            checks: Vec::new(),
            data: serde_json::Value::Null,
            pass: true,
        }
    }

    pub fn with_body(mut self, descriptor: serde_json::Value) -> Self {
        self.body = Some(descriptor);
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = data;
        self
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.pass = checks.iter().all(|c| c.pass);
        self.checks = checks;
        self
    }

    /// Print the document and return the exit code it implies.
    pub fn emit(&self) -> u8 {
        print_document(&serde_json::to_string_pretty(self).expect("report serializes"));
        u8::from(!self.pass)
    }
}

/// Write to stdout, tolerating a closed pipe (e.g. `visangle ... | head`).
fn print_document(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
    let _ = out.flush();
}

/// A failed computation, reported in the same envelope with exit code 1.
pub fn emit_error(command: &str, error: &visangle::Error) -> u8 {
    let doc = serde_json::json!({
        "schema": 1,
        "command": command,
        "error": {
            "kind": error_kind(error),
            "message": error.to_string(),
        },
        "pass": false,
    });
    print_document(&serde_json::to_string_pretty(&doc).expect("error report serializes"));
    1
}

fn error_kind(error: &visangle::Error) -> &'static str {
    use visangle::Error::*;
    match error {
        PositivityViolation { .. } => "positivity-violation",
        ConvexityViolation { .. } => "convexity-violation",
        ProjectionError { .. } => "projection-error",
        PointInsideBody { .. } => "point-inside-body",
        DegenerateTangency { .. } => "degenerate-tangency",
        CircleTooSmall { .. } => "circle-too-small",
        NoBracket { .. } => "no-bracket",
        TailTooLarge { .. } => "tail-too-large",
        SingularAtZero { .. } => "singular-at-zero",
        AlphaOutOfRange { .. } => "alpha-out-of-range",
        NegativeRadicand { .. } => "negative-radicand",
        RationalityViolation { .. } => "rationality-violation",
        PeriodicityViolation { .. } => "periodicity-violation",
        NoIsotopicCircle { .. } => "no-isotopic-circle",
        InvalidBody(_) => "invalid-body",
    }
}
