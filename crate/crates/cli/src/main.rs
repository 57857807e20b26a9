use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corona_cli::commands::{self, CommandOutput, KSpec, SolveOptions, EXIT_INPUT};
use corona_core::solve::Mode;

#[derive(Parser)]
#[command(name = "corona", version, about = "Exact constructive solutions of F V^T = h in subalgebras of H^inf")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether K defines an algebra H_K.
    CheckK(CheckKArgs),
    /// Solve an instance file and write a certified report.
    Solve(SolveArgs),
    /// Koszul operator identities on seeded random vectors.
    Koszul {
        #[command(subcommand)]
        command: KoszulCommand,
    },
    /// Recompute a stored report's certificate.
    Verify {
        report: PathBuf,
        /// Write the verification summary as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckKArgs {
    /// Comma-separated elements of a finite K, e.g. 1,2,5.
    #[arg(long, conflicts_with = "complement_generators", required_unless_present = "complement_generators")]
    set: Option<String>,
    /// Comma-separated generators of the complement of an infinite K.
    #[arg(long)]
    complement_generators: Option<String>,
    /// Write the verdict as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Treil,
    Wolff3,
    Radical,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Treil => Mode::Treil,
            ModeArg::Wolff3 => Mode::Wolff3,
            ModeArg::Radical => Mode::Radical,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Hypothesis form and target power; defaults to the file's mode, then treil.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Points per circle for both the hypothesis and the norm grids.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum KoszulCommand {
    /// Check Q^(k) Q^(k+1) = 0 at every grade and the rank-one identity.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(out: CommandOutput, path: Option<&PathBuf>, json_to_stdout: bool) -> ExitCode {
    match (path, out.json.as_deref()) {
        (Some(p), Some(json)) => {
            if let Err(e) = std::fs::write(p, json) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
            print!("{}", out.text);
        }
        (None, Some(json)) if json_to_stdout => {
            eprint!("{}", out.text);
            print!("{json}");
        }
        _ => print!("{}", out.text),
    }
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::CheckK(a) => {
            let k = match (a.set, a.complement_generators) {
                (Some(s), _) => KSpec::Set(s),
                (_, Some(g)) => KSpec::ComplementGenerators(g),
                _ => unreachable!("clap enforces one of the two"),
            };
            emit(commands::check_k(&k), a.out.as_ref(), false)
        }
        Command::Solve(a) => {
            let opts = SolveOptions { mode: a.mode.map(Mode::from), grid_points: a.grid_points, timings: a.timings };
            emit(commands::solve(&a.instance, &opts), a.out.as_ref(), true)
        }
        Command::Koszul { command: KoszulCommand::Verify { dim, trials, seed } } => {
            emit(commands::koszul_verify(dim, trials, seed), None, false)
        }
        Command::Verify { report, out } => emit(commands::verify(&report), out.as_ref(), false),
    }
}
