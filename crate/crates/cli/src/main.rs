//! Command-line surface for the peg-swap puzzle tools.
//!
//! Exit codes are uniform across subcommands: 0 success, 1 usage or input
//! error, 2 verification failure.

use std::fmt;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use pegswap_core::audit::audit_solution;
use pegswap_core::doc::{audit_document, trace_document};
use pegswap_core::notation::{MoveScript, classify_move, replay};
use pegswap_core::oracle::{OracleConfig, bfs_min_moves};
use pegswap_core::solver::{SolutionForm, expected_counts, solution_sequence};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;

#[derive(Parser)]
#[command(
    name = "pegswap",
    version,
    about = "Solve, verify and audit the red/blue peg-swap puzzle",
    long_about = "A row of 2n+1 holes starts as B^n O R^n and must become R^n O B^n using \
                  steps and jumps into the single empty hole. This tool prints the optimal \
                  n^2+2n move solution, confirms minimality by exhaustive search at small n, \
                  and audits the weight/crossing accounting of concrete solutions."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Direct,
    Symmetric,
}

impl From<FormArg> for SolutionForm {
    fn from(arg: FormArg) -> SolutionForm {
        match arg {
            FormArg::Direct => SolutionForm::Direct,
            FormArg::Symmetric => SolutionForm::Symmetric,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the generated optimal solution for size n.
    Solve {
        n: usize,
        /// Which printed form to emit (both denote the same move sequence).
        #[arg(long, value_enum, default_value = "direct")]
        form: FormArg,
        /// Run-length encode repeated tokens (j3 instead of jjj).
        #[arg(long)]
        compact: bool,
        /// Replay the solution and check the move counts before printing.
        #[arg(long)]
        verify: bool,
    },
    /// Replay a move script from the start position.
    Replay {
        n: usize,
        /// Script text, or @path to read it from a file.
        #[arg(long)]
        moves: String,
        /// Emit the full trace document instead of the summary.
        #[arg(long)]
        trace: bool,
    },
    /// Measure the exact optimum by exhaustive breadth-first search.
    Oracle {
        n: usize,
        /// Also print one shortest solution as a move list.
        #[arg(long)]
        path: bool,
        /// Raise the feasibility bound (default 12).
        #[arg(long)]
        max_n: Option<usize>,
        /// Worker threads for frontier expansion (results are identical for
        /// any count).
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Audit the lower-bound accounting of a concrete solution.
    Audit {
        n: usize,
        /// Script text, or @path to read it from a file.
        #[arg(long)]
        moves: String,
    },
    /// Compare generated solution lengths against the search optimum.
    Table {
        n_max: usize,
        /// Raise the feasibility bound for the search column (default 12).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Time the exhaustive search.
    Bench {
        n: usize,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Raise the feasibility bound (default 12).
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl fmt::Display) -> CliError {
        CliError { code: EXIT_USAGE, message: message.to_string() }
    }

    fn verify(message: impl fmt::Display) -> CliError {
        CliError { code: EXIT_VERIFY, message: message.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("pegswap: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { n, form, compact, verify } => cmd_solve(n, form.into(), compact, verify),
        Command::Replay { n, moves, trace } => cmd_replay(n, &moves, trace),
        Command::Oracle { n, path, max_n, workers } => cmd_oracle(n, path, max_n, workers),
        Command::Audit { n, moves } => cmd_audit(n, &moves),
        Command::Table { n_max, max_n } => cmd_table(n_max, max_n),
        Command::Bench { n, repeat, max_n, workers } => cmd_bench(n, repeat, max_n, workers),
    }
}

/// A `--moves` argument is inline script text, or `@path` naming a file that
/// may contain whitespace and newlines anywhere.
fn load_script(arg: &str) -> Result<MoveScript, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|err| CliError::usage(format!("cannot read {path}: {err}")))?,
        None => arg.to_string(),
    };
    MoveScript::parse(&text).map_err(CliError::usage)
}

fn cmd_solve(n: usize, form: SolutionForm, compact: bool, verify: bool) -> Result<(), CliError> {
    let script = solution_sequence(n, form).map_err(CliError::usage)?;
    if verify {
        let counts = expected_counts(n).map_err(CliError::usage)?;
        let trace = replay(n, &script).map_err(|err| {
            CliError::verify(format!("generated solution failed to replay: {err}"))
        })?;
        if !trace.solved {
            return Err(CliError::verify("generated solution does not reach the goal"));
        }
        if (trace.counts.total as u64, trace.counts.steps as u64, trace.counts.jumps as u64)
            != (counts.total, counts.steps, counts.jumps)
        {
            return Err(CliError::verify(format!(
                "move counts {}/{}/{} differ from expected {}/{}/{}",
                trace.counts.total,
                trace.counts.steps,
                trace.counts.jumps,
                counts.total,
                counts.steps,
                counts.jumps
            )));
        }
    }
    if compact {
        println!("{}", script.format_compact());
    } else {
        println!("{}", script.format_plain());
    }
    Ok(())
}

fn cmd_replay(n: usize, moves: &str, trace_doc: bool) -> Result<(), CliError> {
    let script = load_script(moves)?;
    let trace = replay(n, &script).map_err(CliError::verify)?;
    if trace_doc {
        print!("{}", trace_document(&trace));
    } else {
        println!("final: {}", trace.final_board().render());
        println!("solved: {}", trace.solved);
        println!(
            "moves: {} (steps {}, jumps {})",
            trace.counts.total, trace.counts.steps, trace.counts.jumps
        );
        println!("final_weight: {}", trace.weight_trace.last().copied().unwrap_or(0));
    }
    if !trace.solved {
        return Err(CliError::verify("script does not solve the puzzle"));
    }
    Ok(())
}

fn oracle_config(max_n: Option<usize>, workers: usize) -> OracleConfig {
    let mut config = OracleConfig { workers, ..OracleConfig::default() };
    if let Some(max_n) = max_n {
        config.max_n = max_n;
    }
    config
}

fn cmd_oracle(n: usize, path: bool, max_n: Option<usize>, workers: usize) -> Result<(), CliError> {
    let config = oracle_config(max_n, workers);
    let result = bfs_min_moves(n, path, &config).map_err(CliError::usage)?;
    let expected = (n * n + 2 * n) as u32;
    let verdict = match result.min_moves {
        Some(found) if found == expected => "OK",
        _ => "MISMATCH",
    };
    let found =
        result.min_moves.map(|m| m.to_string()).unwrap_or_else(|| "unreachable".to_string());
    println!("min_moves={found} expected={expected} {verdict}");
    println!(
        "reachable_states={} peak_frontier={} expanded={}",
        result.reachable_states, result.peak_frontier, result.expanded
    );
    if let Some(witness) = &result.witness {
        let classified: String =
            witness.iter().map(|mv| classify_move(*mv).map_or('-', |t| t.to_char())).collect();
        println!("witness: {classified}");
        for (i, mv) in witness.iter().enumerate() {
            println!("  - index={} {}", i + 1, mv);
        }
    }
    if verdict != "OK" {
        return Err(CliError::verify(format!(
            "search minimum {found} does not equal n^2+2n = {expected}"
        )));
    }
    Ok(())
}

fn cmd_audit(n: usize, moves: &str) -> Result<(), CliError> {
    let script = load_script(moves)?;
    let trace = replay(n, &script).map_err(CliError::verify)?;
    let report = audit_solution(n, &trace.moves)
        .map_err(|err| CliError::verify(format!("audit could not replay the moves: {err}")))?;
    print!("{}", audit_document(&trace, &report));
    if !report.passed {
        return Err(CliError::verify("audit checks failed"));
    }
    if !report.solved {
        return Err(CliError::verify("script does not solve the puzzle"));
    }
    Ok(())
}

fn cmd_table(n_max: usize, max_n: Option<usize>) -> Result<(), CliError> {
    if n_max < 1 {
        return Err(CliError::usage("table needs n_max >= 1"));
    }
    let config = oracle_config(max_n, 1);
    println!("n generated bfs match");
    let mut mismatched = false;
    for n in 1..=n_max {
        let script = solution_sequence(n, SolutionForm::Direct).map_err(CliError::usage)?;
        let generated = script.len();
        if n > config.max_n {
            println!("{n} {generated} - -");
            continue;
        }
        let result = bfs_min_moves(n, false, &config).map_err(CliError::usage)?;
        match result.min_moves {
            Some(found) if found as usize == generated => {
                println!("{n} {generated} {found} OK");
            }
            Some(found) => {
                println!("{n} {generated} {found} MISMATCH");
                mismatched = true;
            }
            None => {
                println!("{n} {generated} unreachable MISMATCH");
                mismatched = true;
            }
        }
    }
    if mismatched {
        return Err(CliError::verify("generated lengths disagree with the search optimum"));
    }
    Ok(())
}

fn cmd_bench(
    n: usize,
    repeat: usize,
    max_n: Option<usize>,
    workers: usize,
) -> Result<(), CliError> {
    if repeat < 1 {
        return Err(CliError::usage("bench needs --repeat >= 1"));
    }
    let config = oracle_config(max_n, workers);
    for run in 1..=repeat {
        let started = Instant::now();
        let result = bfs_min_moves(n, false, &config).map_err(CliError::usage)?;
        let elapsed = started.elapsed();
        println!(
            "run={run} time_ms={:.1} expanded={} peak_frontier={} reachable_states={} min_moves={}",
            elapsed.as_secs_f64() * 1e3,
            result.expanded,
            result.peak_frontier,
            result.reachable_states,
            result.min_moves.map(|m| m.to_string()).unwrap_or_else(|| "unreachable".into()),
        );
    }
    Ok(())
}
