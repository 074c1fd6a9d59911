use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use transversals_cli::commands::{
    cmd_bounds, cmd_count, cmd_gen, cmd_multiply, cmd_sample_set, cmd_second, BoundsArgs, CountArgs, GenArgs,
    MultiplyArgs, SampleArgs, SecondArgs,
};
use transversals_cli::report::Timing;

/// Hamiltonian and perfect matching transversals of graph families.
#[derive(Parser)]
#[command(name = "transversals", version)]
struct Cli {
    /// Leave the wall-clock field out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Run the oracle and the multipliers on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance file.
    Gen(GenArgs),
    /// Count transversals exactly by exhaustive search.
    Count(CountArgs),
    /// Exchange the planted transversal for a second one.
    Second(SecondArgs),
    /// Construct a candidate set by randomized resampling.
    SampleSet(SampleArgs),
    /// Multiply the planted transversal into at least (d+1)! transversals.
    Multiply(MultiplyArgs),
    /// Evaluate a bound or inequality.
    Bounds(BoundsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Count(a) => cmd_count(a, cli.sequential),
        Command::Second(a) => cmd_second(a),
        Command::SampleSet(a) => cmd_sample_set(a),
        Command::Multiply(a) => cmd_multiply(a, cli.sequential),
        Command::Bounds(a) => cmd_bounds(a),
    };
    match result {
        Ok(mut report) => {
            if !cli.no_timing {
                report.timing = Some(Timing { wall_seconds: start.elapsed().as_secs_f64() });
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
