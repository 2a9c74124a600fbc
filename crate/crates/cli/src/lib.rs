//! Command dispatch for the `cend` binary, kept in a library so tests can
//! drive it without spawning processes.

mod commands;
mod render;
mod verify;

use clap::ValueEnum;
use serde_json::{json, Value};

use cend_core::{CendError, Result};

pub use render::render_pretty;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Product,
    Bracket,
    CheckAxioms,
    Smith,
    Iso,
    AntiAuto,
    AntiInvSearch,
    Ideal,
    #[value(name = "classify-cend1")]
    ClassifyCend1,
    ExtensionBuild,
    OcGens,
    InvarianceCheck,
    IrreducibilityProbe,
    UnitalProbe,
    Verify,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Product => "product",
            Verb::Bracket => "bracket",
            Verb::CheckAxioms => "check-axioms",
            Verb::Smith => "smith",
            Verb::Iso => "iso",
            Verb::AntiAuto => "anti-auto",
            Verb::AntiInvSearch => "anti-inv-search",
            Verb::Ideal => "ideal",
            Verb::ClassifyCend1 => "classify-cend1",
            Verb::ExtensionBuild => "extension-build",
            Verb::OcGens => "oc-gens",
            Verb::InvarianceCheck => "invariance-check",
            Verb::IrreducibilityProbe => "irreducibility-probe",
            Verb::UnitalProbe => "unital-probe",
            Verb::Verify => "verify",
        }
    }

    pub fn from_name(name: &str) -> Option<Verb> {
        Verb::value_variants().iter().copied().find(|v| v.name() == name)
    }
}

pub const DEFAULT_SEED: u64 = 20240611;

/// Budgets and mode. In machine mode (`--json`) the budgets a verb uses
/// must be given explicitly.
#[derive(Clone, Debug)]
pub struct Opts {
    pub seed: u64,
    pub degree_cap: Option<u32>,
    pub rounds: Option<usize>,
    pub machine: bool,
}

impl Default for Opts {
    fn default() -> Self {
        Opts {
            seed: DEFAULT_SEED,
            degree_cap: None,
            rounds: None,
            machine: false,
        }
    }
}

impl Opts {
    fn cap(&self, default: u32) -> Result<u32> {
        match (self.degree_cap, self.machine) {
            (Some(c), _) => Ok(c),
            (None, false) => Ok(default),
            (None, true) => Err(CendError::Budget("--degree-cap is required with --json".into())),
        }
    }

    fn rounds(&self, default: usize) -> Result<usize> {
        match (self.rounds, self.machine) {
            (Some(r), _) => Ok(r),
            (None, false) => Ok(default),
            (None, true) => Err(CendError::Budget("--rounds is required with --json".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Decided,
    Undecided,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Decided => 0,
            Status::Undecided => 2,
            Status::Failed => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub status: Status,
}

pub fn run(verb: Verb, input: &Value, opts: &Opts) -> Result<Outcome> {
    commands::dispatch(verb, input, opts)
}

/// Parses the input document; JSON syntax errors carry line and column.
pub fn parse_input(text: &str) -> std::result::Result<Value, Value> {
    serde_json::from_str(text).map_err(|e| {
        json!({
            "code": "E_PARSE",
            "message": e.to_string(),
            "line": e.line(),
            "column": e.column(),
        })
    })
}

pub fn error_json(err: &CendError) -> Value {
    let mut v = json!({ "code": err.code(), "message": err.to_string() });
    if let CendError::Parse { offset, .. } = err {
        v["offset"] = json!(offset);
    }
    v
}
