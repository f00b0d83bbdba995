//! `adiclab`: batch front end for the adiclab library.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input
//! error, 3 a resource cap was hit.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser)]
#[command(name = "adiclab", version, about = "Ordered Pascal adic systems: blocks, decoding, odometers")]
struct Cli {
    /// Output format; csv applies to tabular commands only.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Memory budget for materialized blocks, in MiB.
    #[arg(long, global = true, value_name = "MiB")]
    max_mem: Option<usize>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct OrderingArg {
    /// Ordering: inline JSON, a JSON file, or one of `constant0`,
    /// `constant1`, `seeded:<seed>`, `tree:<depth>`, `small`, `small-prime`.
    #[arg(long, default_value = "constant0")]
    pub ordering: String,
}

#[derive(Subcommand)]
enum Command {
    /// Basic block of a vertex with its letter census.
    Block {
        #[command(flatten)]
        ordering: OrderingArg,
        x: usize,
        y: usize,
        /// Print the k-symbol block instead of letters.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Recover the vertex and restricted ordering from a block.
    Decode {
        /// Block in letters or power notation, e.g. `ab^3ab^2a^2b`.
        word: String,
    },
    /// Complexity of an ordering's language over a range of lengths.
    Complexity {
        #[command(flatten)]
        ordering: OrderingArg,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Highest block level scanned.
        #[arg(long)]
        level: usize,
    },
    /// Search telescopings of a diagram for uniformly ordered levels.
    Odometer {
        /// Diagram JSON file.
        #[arg(long)]
        diagram: PathBuf,
        /// Longest window of levels composed at once.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Frequency of uniformly ordered levels under random orderings.
    Montecarlo {
        /// JSON file holding one shape or a list of consecutive shapes.
        #[arg(long)]
        shapes: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Check return times at sampled kinks.
    Kink {
        /// Fixed ordering; by default each trial draws a seeded one.
        #[arg(long)]
        ordering: Option<String>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Largest kink level `n`.
        #[arg(long, default_value_t = 12)]
        level: usize,
    },
    /// Exclude blocks holding both `(ab)^j` and `(ba)^j`.
    Alternation {
        #[arg(long, default_value_t = 12)]
        level: usize,
        #[arg(long, default_value_t = 9)]
        j: usize,
    },
    /// Common windows of the small-subshift orderings.
    Smallshift {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = cli.max_mem.map(|m| m.saturating_mul(1 << 20));
    let result = match cli.command {
        Command::Block { ordering, x, y, k } => commands::block(&ordering.ordering, x, y, k, budget),
        Command::Decode { word } => commands::decode(&word),
        Command::Complexity { ordering, n_min, n_max, level } => {
            commands::complexity(&ordering.ordering, n_min, n_max, level)
        }
        Command::Odometer { diagram, depth } => commands::odometer(&diagram, depth),
        Command::Montecarlo { shapes, trials, seed } => commands::montecarlo(&shapes, trials, seed),
        Command::Kink { ordering, trials, seed, level } => commands::kink(ordering.as_deref(), trials, seed, level),
        Command::Alternation { level, j } => commands::alternation(level, j),
        Command::Smallshift { n, level } => commands::smallshift(n, level),
    };
    match result {
        Ok(report) => match report.render(cli.format) {
            Some(out) => {
                print!("{out}");
                ExitCode::from(if report.ok { 0 } else { 1 })
            }
            None => {
                eprintln!("error: this command has no tabular output; use --format json or text");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
