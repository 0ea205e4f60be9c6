// Validation guards use negated comparisons (`!(x > 0.0)`) on purpose: they
// must also trip on NaN, which the un-negated forms let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod run;

use clap::Parser;

/// Errors with their process exit code: config problems exit 2, runtime
/// (numeric or I/O) problems exit 1.
#[derive(Debug)]
pub enum AppError {
    Config(String),
    Run(String),
}

impl AppError {
    fn config(message: impl Into<String>) -> Self {
        AppError::Config(message.into())
    }

    fn run(message: impl Into<String>) -> Self {
        AppError::Run(message.into())
    }

    fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 2,
            AppError::Run(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Config(m) | AppError::Run(m) => m,
        }
    }
}

fn main() {
    let cli = config::Cli::parse();
    let outcome = config::resolve(cli).and_then(|resolved| match resolved.sweep.clone() {
        Some(alphas) => run::run_sweep(&resolved, &alphas),
        None => run::run(&resolved),
    });
    if let Err(error) = outcome {
        eprintln!("error: {}", error.message());
        std::process::exit(error.exit_code());
    }
}
