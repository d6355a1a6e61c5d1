//! `mimicnet`: build and check connectivity-c mimicking networks, and solve
//! the related cut and network design problems.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure,
//! 3 infeasible.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "mimicnet", version, about = "Connectivity-c mimicking networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Common {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check the result against the exhaustive reference.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a mimicking network and write it with terminal mapping records.
    Sparsify {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        c: u32,
        /// Output file; defaults to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the JSON summary here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare thresholded terminal cuts of a graph and a sparsifier file.
    Verify {
        graph: PathBuf,
        sparsifier: PathBuf,
        #[arg(long, default_value_t = 2)]
        c: u32,
        /// Query cap; larger query spaces are sampled.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run queries on one thread.
        #[arg(long)]
        sequential: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a vertex set is connectivity-c linked.
    Linked {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        c: u32,
        /// Vertices of the set, 1-indexed.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Find a cut with forced sides, terminal quotas and an edge budget.
    ConstrainedCut {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        q0: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        q1: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        c0: u32,
        #[arg(long, default_value_t = 0)]
        c1: u32,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        common: Common,
    },
    /// List the important (X, Y)-cuts of size at most ell.
    ImportantCuts {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<usize>,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Solve rooted survivable network design over a tree decomposition.
    Sndp {
        input: PathBuf,
        /// Threshold; defaults to the largest demand.
        #[arg(long)]
        c: Option<u32>,
        /// Tree decomposition in PACE .td format.
        #[arg(long)]
        td: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::Graph)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        c: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Graph,
    Sndp,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sparsify {
            input,
            c,
            output,
            report,
            common,
        } => commands::sparsify(&input, c, output.as_deref(), report.as_deref(), common),
        Command::Verify {
            graph,
            sparsifier,
            c,
            budget,
            seed,
            sequential,
            report,
            common,
        } => commands::verify(
            &graph,
            &sparsifier,
            c,
            budget,
            seed,
            sequential,
            report.as_deref(),
            common,
        ),
        Command::Linked { input, c, set, common } => commands::linked(&input, c, &set, common),
        Command::ConstrainedCut {
            input,
            q0,
            q1,
            c0,
            c1,
            ell,
            common,
        } => commands::constrained_cut(&input, &q0, &q1, c0, c1, ell, common),
        Command::ImportantCuts {
            input,
            x,
            y,
            ell,
            common,
        } => commands::important_cuts(&input, &x, &y, ell, common),
        Command::Sndp { input, c, td, common } => commands::sndp(&input, c, td.as_deref(), common),
        Command::Gen {
            kind,
            n,
            m,
            k,
            c,
            seed,
            output,
        } => commands::gen(kind, n, m, k, c, seed, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
