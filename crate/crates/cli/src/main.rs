//! `fmoon`: command line access to the Golay code, Clifford algebra, spin
//! module, superconformal checks, q-series and Fock space computations.

mod commands;

use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::Value;

use commands::Command;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_BAD_JSON: u8 = 65;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "fmoon", version, about = "Golay code, spin module and fermionic moonshine computations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for the randomized parts (ascent restarts, random test vectors).
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// What a command produced.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when a check ran but did not hold.
    pub ok: bool,
}

impl Output {
    pub fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), ok: true }
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    BadJson(String),
    Invalid(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::BadJson(_) => EXIT_BAD_JSON,
            CliError::Invalid(_) | CliError::Io(_) => EXIT_INVALID,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::BadJson(_) => "malformed-json",
            CliError::Invalid(_) => "invalid",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::BadJson(m) | CliError::Invalid(m) | CliError::Io(m) => m,
        }
    }
}

fn emit(format: Format, out: &Output) {
    let mut stdout = std::io::stdout().lock();
    let text = match format {
        Format::Json => serde_json::to_string(&out.json).expect("serializable"),
        Format::Pretty => out.text.trim_end().to_string(),
    };
    let _ = writeln!(stdout, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("{{\"error\":\"internal\",\"message\":\"{e}\"}}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    panic::set_hook(Box::new(|info| {
        let msg = serde_json::json!({ "error": "internal", "message": info.to_string() });
        eprintln!("{msg}");
    }));
    let (format, seed) = (cli.format, cli.seed);
    match panic::catch_unwind(move || commands::run(cli.command, seed)) {
        Ok(Ok(out)) => {
            emit(format, &out);
            ExitCode::from(if out.ok { EXIT_OK } else { EXIT_INVALID })
        }
        Ok(Err(e)) => {
            let msg = serde_json::json!({ "error": e.kind(), "message": e.message() });
            eprintln!("{msg}");
            ExitCode::from(e.code())
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
