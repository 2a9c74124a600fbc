use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use cend_cli::{error_json, parse_input, render_pretty, run, Opts, Verb, DEFAULT_SEED};

/// Exact computations in conformal endomorphism algebras.
///
/// Exit status: 0 decided, 2 undecided within the budget, 1 error or a
/// failed check.
#[derive(Parser, Debug)]
#[command(name = "cend", version)]
struct Cli {
    verb: Verb,
    /// Input JSON file, `-` for stdin.
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Output file, `-` for stdout.
    #[arg(long = "out", default_value = "-")]
    output: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long)]
    rounds: Option<usize>,
    /// Machine-readable report; budgets become mandatory.
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    #[arg(long)]
    pretty: bool,
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn write_output(path: &str, text: &str) -> io::Result<()> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    }
}

fn emit(cli: &Cli, report: &Value) -> io::Result<()> {
    let text = if cli.json {
        format!("{report}\n")
    } else {
        render_pretty(report)
    };
    write_output(&cli.output, &text)
}

fn fail(cli: &Cli, err: Value) -> ExitCode {
    let report = json!({ "command": cli.verb.name(), "error": err });
    if cli.json {
        let _ = emit(cli, &report);
    } else {
        eprintln!("error[{}]: {}", err["code"].as_str().unwrap_or("E_IO"), err["message"].as_str().unwrap_or(""));
    }
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(&cli, json!({ "code": "E_IO", "message": e.to_string() })),
    };
    // check-axioms runs with defaults on empty input
    let input = if text.trim().is_empty() {
        Value::Null
    } else {
        match parse_input(&text) {
            Ok(v) => v,
            Err(e) => return fail(&cli, e),
        }
    };
    let opts = Opts {
        seed: cli.seed,
        degree_cap: cli.degree_cap,
        rounds: cli.rounds,
        machine: cli.json,
    };
    match run(cli.verb, &input, &opts) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.report) {
                return fail(&cli, json!({ "code": "E_IO", "message": e.to_string() }));
            }
            ExitCode::from(out.status.exit_code() as u8)
        }
        Err(e) => fail(&cli, error_json(&e)),
    }
}
