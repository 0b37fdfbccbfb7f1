use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equizeta_core::pipeline::{self, Command, Config, Outcome, EXIT_PARSE, EXIT_UNSUPPORTED};

/// Equivariant Poincaré series, monodromy zeta functions and orbit invariants
/// of quasihomogeneous polynomials, computed exactly.
#[derive(Parser)]
#[command(name = "equizeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weights, groups, strata and all invariants of one problem.
    Analyze(ProblemArgs),
    /// Checks Tau(Log P_X) − Or_X = Ind ζ̃_f exactly; exits 2 if it fails.
    Verify(ProblemArgs),
    /// The classical one-variable relation, for G generated by the monodromy.
    Classical(ProblemArgs),
    /// Runs verify and classical over the built-in corpus.
    Corpus(OutputArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem description in JSON; read from stdin when omitted.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Truncation depth of the Poincaré series, replacing the one in the input.
    #[arg(long, value_name = "D")]
    truncation: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(outcome: &Outcome, args: &OutputArgs) -> io::Result<()> {
    let body = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => outcome.text.clone(),
    };
    match &args.output {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return exit(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let mut config = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit(EXIT_PARSE);
        }
    };
    let (outcome, output) = match &cli.command {
        Cmd::Corpus(out) => (pipeline::run_corpus(&config), out),
        Cmd::Analyze(a) | Cmd::Verify(a) | Cmd::Classical(a) => {
            let command = match cli.command {
                Cmd::Analyze(_) => Command::Analyze,
                Cmd::Verify(_) => Command::Verify,
                _ => Command::Classical,
            };
            config.truncation = a.truncation;
            let input = match read_input(a.input.as_ref()) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read input: {e}");
                    return exit(EXIT_PARSE);
                }
            };
            (pipeline::run(command, &input, &config), &a.output)
        }
    };
    if let Err(e) = emit(&outcome, output) {
        eprintln!("error: cannot write output: {e}");
        return exit(EXIT_UNSUPPORTED);
    }
    if outcome.exit_code != 0 {
        if let Some(msg) = outcome.json["error"]["message"].as_str() {
            eprintln!("error: {msg}");
        } else {
            eprintln!("identity check failed");
        }
    }
    exit(outcome.exit_code)
}
