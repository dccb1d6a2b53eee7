//! Command-line front end: argument parsing, subcommands, CSV output and the
//! built-in self-test.

pub mod args;
pub mod commands;
pub mod output;
pub mod selftest;

use std::io::Write;

use askey_core::{FamilyKind, MpComplex, Precision};
use num_complex::Complex64;

use args::{Command, Parsed, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

/// Run one invocation; `argv[0]` is the program name. Returns the exit code.
pub fn run(argv: &[String], env_digits: Option<&str>) -> i32 {
    let config = match args::parse_args(argv, env_digits) {
        Ok(Parsed::Run(config)) => config,
        Ok(Parsed::Print(text)) => {
            print!("{text}");
            return EXIT_OK;
        }
        Err(e) => {
            eprintln!("askey: {e}");
            return EXIT_USAGE;
        }
    };
    match &config.command {
        Command::Selftest { corrupt } => selftest(config.precision, *corrupt),
        _ => compute(&config),
    }
}

fn compute(config: &RunConfig) -> i32 {
    let report = match config.precision {
        Precision::Double => commands::run::<Complex64>(&config.command, config.precision),
        Precision::Digits(_) => commands::run::<MpComplex>(&config.command, config.precision),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("askey: {e}");
            return EXIT_COMPUTATION;
        }
    };
    for note in &report.notes {
        eprintln!("{note}");
    }
    match output::emit_csv(&report.table, config.output.as_deref()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("askey: cannot write output: {e}");
            EXIT_COMPUTATION
        }
    }
}

fn selftest(precision: Precision, corrupt: Option<FamilyKind>) -> i32 {
    let checks = match precision {
        Precision::Double => selftest::run::<Complex64>(precision, corrupt),
        Precision::Digits(_) => selftest::run::<MpComplex>(precision, corrupt),
    };
    let text = selftest::render(&checks);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
    if checks.iter().all(|c| c.pass) {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    }
}
