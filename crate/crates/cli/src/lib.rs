//! Command-line front end for `kborel-core`.
//!
//! [`run`] does all the work and returns the exit code with the text
//! for standard output and standard error, so tests can drive it without
//! spawning processes.

pub mod args;
mod commands;
mod input;

use std::ffi::OsString;

use clap::Parser;
use kborel_core::abelian::Notation;
use kborel_core::assemble::GroupPackage;
use kborel_core::error::ErrorClass;
use kborel_core::{Error, Result, SCHEMA};
use serde_json::json;

use args::{Cli, Command, Format, ProCommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Input => EXIT_INPUT,
        ErrorClass::Hypothesis => EXIT_HYPOTHESIS,
        ErrorClass::Unsupported => EXIT_UNSUPPORTED,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

fn class_name(e: &Error) -> &'static str {
    match e.class() {
        ErrorClass::Input => "input",
        ErrorClass::Hypothesis => "hypothesis",
        ErrorClass::Unsupported => "unsupported",
        ErrorClass::Internal => "internal",
    }
}

/// Parses `args` (program name first) and runs the command. `env_cap` is
/// the value of `KBOREL_ORDER_CAP`, if set.
pub fn run<I, T>(args: I, env_cap: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let notation = if cli.ascii { Notation::Ascii } else { Notation::Unicode };
    match execute(&cli, env_cap, notation) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values print") + "\n",
                Format::Text => report.text,
            };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = format!("kborel: {} error: {e}\n", class_name(&e));
            let stdout = match cli.format {
                Format::Json => {
                    let doc = json!({
                        "schema": SCHEMA,
                        "error": { "class": class_name(&e), "message": e.to_string() },
                    });
                    serde_json::to_string_pretty(&doc).expect("JSON values print") + "\n"
                }
                Format::Text => String::new(),
            };
            Outcome { code: exit_code(&e), stdout, stderr }
        }
    }
}

fn execute(cli: &Cli, env_cap: Option<&str>, n: Notation) -> Result<commands::Report> {
    let cap = input::order_cap(cli.order_cap, env_cap)?;
    match &cli.command {
        Command::FiniteGroup { file, k } => commands::finite_group(input::read_document(file)?, cap, *k, n),
        Command::Package { file, builtin, sharpen, k } => {
            let pkg = match (file, builtin) {
                (_, Some(name)) => GroupPackage::builtin(name)?,
                (Some(file), None) => input::decode(input::read_document(file)?)?,
                (None, None) => unreachable!("clap requires a file or --builtin"),
            };
            commands::package(pkg, *sharpen, *k, n)
        }
        Command::Fuchsian { genus, periods, k } => commands::fuchsian(*genus, periods, *k, n),
        Command::Gcw { file, assume_acyclic, k } => {
            commands::gcw(input::read_document(file)?, cap, *assume_acyclic, *k, n)
        }
        Command::Pro(pro) => match (&pro.command, &pro.file) {
            (Some(ProCommand::IdealTower { m, depth, p }), _) => commands::ideal_tower(*m, *depth, *p, n),
            (None, Some(file)) => commands::pro_file(input::read_document(file)?, n),
            (None, None) => unreachable!("clap requires a file or a subcommand"),
        },
        Command::Validate { file } => commands::validate(input::read_document(file)?, cap, n),
    }
}
