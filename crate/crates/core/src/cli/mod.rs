//! JSON-in/JSON-out front end used by the `dcm` binary.
//!
//! Every invocation produces one canonical report document. Exit codes: `0`
//! success, `2` invalid input, `3` numerical failure on valid input.

mod commands;
pub mod document;
pub mod json;

use serde_json::Value;

pub use document::{Kind, MediumDocument, Parameters, SCHEMA_VERSION};

use crate::error::Error;
use crate::tol::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Build,
    HoDecompose,
    DetectDcm,
    Dispersion,
    Planewave,
    Convert,
    ClassifyQuadratic,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Build,
        Command::HoDecompose,
        Command::DetectDcm,
        Command::Dispersion,
        Command::Planewave,
        Command::Convert,
        Command::ClassifyQuadratic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::HoDecompose => "ho-decompose",
            Command::DetectDcm => "detect-dcm",
            Command::Dispersion => "dispersion",
            Command::Planewave => "planewave",
            Command::Convert => "convert",
            Command::ClassifyQuadratic => "classify-quadratic",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Settings shared by all commands.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    /// Overrides the classification and detection thresholds.
    pub tol: Option<f64>,
    /// Seed for sampled routines (random documents, wave directions).
    pub seed: u64,
    /// `build` only: generate a random document of this kind instead of
    /// reading one.
    pub random: Option<Kind>,
    /// `convert` only: target kind (`raw6x6` or `gibbsian`).
    pub to: Kind,
    /// `planewave` only: number of sampled propagation directions.
    pub directions: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: None,
            seed: 0,
            random: None,
            to: Kind::Raw6x6,
            directions: 3,
        }
    }
}

impl Options {
    pub fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(x) = self.tol {
            t.classification = x;
        }
        t
    }

    pub fn detect_accept(&self) -> f64 {
        self.tol.unwrap_or(crate::media::DetectOptions::default().accept)
    }
}

/// Exit code and report text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// Failure of a command, before it is folded into the report.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = if e.is_validation() {
            (EXIT_VALIDATION, "validation")
        } else {
            (EXIT_NUMERIC, "numeric")
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub(crate) fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            kind: "validation",
            message: message.into(),
        }
    }
}

/// Parses the JSON input text, reporting the position of syntax errors.
fn parse_input(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure {
        code: EXIT_VALIDATION,
        kind: "parse",
        message: format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()),
    })
}

/// Runs `command` on the input document text (`None` when no input was
/// read, e.g. `build --random`).
pub fn run(command: &str, input: Option<&str>, opts: &Options) -> Outcome {
    let mut warnings = Vec::new();
    let mut echo = Value::Null;
    let result = (|| {
        let cmd = Command::parse(command).ok_or_else(|| Failure::validation(format!("unknown command '{command}'")))?;
        let doc = match (cmd, opts.random, input) {
            (Command::Build, Some(kind), _) => {
                MediumDocument::random(kind, &mut crate::sample::Sampler::new(opts.seed))
            }
            (_, _, Some(text)) => MediumDocument::from_value(&parse_input(text)?)?,
            (_, _, None) => return Err(Failure::validation("no input document")),
        };
        echo = doc.to_value();
        commands::dispatch(cmd, &doc, opts, &mut warnings)
    })();
    finish(command, opts, echo, result, warnings)
}

/// Report for an invocation whose input could not be read.
pub fn input_error(command: &str, message: &str, opts: &Options) -> Outcome {
    finish(command, opts, Value::Null, Err(Failure::validation(message)), Vec::new())
}

fn finish(
    command: &str,
    opts: &Options,
    echo: Value,
    result: Result<Value, Failure>,
    warnings: Vec<String>,
) -> Outcome {
    let (code, results, error) = match result {
        Ok(v) => (EXIT_OK, v, Value::Null),
        Err(f) => (
            f.code,
            Value::Null,
            json::object(vec![("kind", Value::String(f.kind.into())), ("message", Value::String(f.message))]),
        ),
    };
    let t = opts.tolerances();
    let report = json::object(vec![
        ("schema_version", Value::String(SCHEMA_VERSION.into())),
        ("command", Value::String(command.into())),
        ("input", echo),
        ("results", results),
        (
            "tolerances",
            json::object(vec![
                ("construction", json::real(t.construction)),
                ("classification", json::real(t.classification)),
                ("cross_separation", json::real(t.cross_separation)),
                ("invertible_cond", json::real(t.invertible_cond)),
                ("dispersion", json::real(t.dispersion)),
                ("detect_accept", json::real(opts.detect_accept())),
            ]),
        ),
        ("seed", Value::from(opts.seed)),
        ("warnings", Value::Array(warnings.into_iter().map(Value::String).collect())),
        ("error", error),
    ]);
    Outcome {
        code,
        report: json::canonical(&report),
    }
}
