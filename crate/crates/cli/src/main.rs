mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{emit_report, write_out, Format};

#[derive(Parser)]
#[command(name = "lcwalk", version, about = "Exit laws of absorbed lattice walks and their log-concavity")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "LCWALK_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, alias = "report")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Region files.
    #[command(subcommand)]
    Region(RegionCmd),
    /// Exact exit distributions.
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Infinite strips by truncation.
    #[command(subcommand)]
    Strip(StripCmd),
    /// The path-pair injection.
    #[command(subcommand)]
    Inject(InjectCmd),
    /// Dyck, Schröder or monotone path counts through a column.
    Count(CountArgs),
    /// Binomial, Delannoy and ballot rows with their log-concavity.
    Famous(FamousArgs),
    /// Monte Carlo runs.
    #[command(subcommand)]
    Mc(McCmd),
}

#[derive(Subcommand)]
enum RegionCmd {
    Validate {
        #[arg(long)]
        region: PathBuf,
    },
}

#[derive(Args)]
struct WalkArgs {
    #[arg(long)]
    region: PathBuf,
    /// Transition model; the uniform 1/4 model when omitted.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Start point `x,y` on the left column.
    #[arg(long, value_parser = commands::parse_point)]
    start: (i64, i64),
}

#[derive(Subcommand)]
enum ExactCmd {
    Solve {
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Log-concavity of exact exit laws on seeded random fixtures.
    Audit {
        /// Fixtures with the uniform model.
        #[arg(long, default_value_t = 200)]
        fixtures: usize,
        /// Fixtures with random rational y-invariant models.
        #[arg(long, default_value_t = 100)]
        rational: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum StripCmd {
    Solve {
        /// Width-one strip with up, down and right each 1/3.
        #[arg(long, conflicts_with = "model")]
        ladder: bool,
        #[arg(long, required_unless_present = "ladder")]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        start_y: i64,
        #[arg(long, allow_hyphen_values = true)]
        floor: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        ceiling: Option<i64>,
        #[arg(long, default_value = "1e-10")]
        tol: String,
        #[arg(long, default_value_t = lcwalk::walker::DEFAULT_MAX_HEIGHT)]
        max_height: i64,
    },
}

#[derive(Subcommand)]
enum InjectCmd {
    /// Exhaustive check on all domain pairs up to a total length.
    Verify {
        #[arg(long)]
        region: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Skip the inverse round trip.
        #[arg(long)]
        no_inverse: bool,
    },
    /// Intermediate objects for one pair, optionally drawn as SVG.
    Trace {
        #[arg(long)]
        region: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_parser = commands::parse_mode)]
    mode: lcwalk::paths::CountMode,
    #[arg(long)]
    region: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    column: i64,
    /// Start `x,y`; defaults to `0,0`.
    #[arg(long, value_parser = commands::parse_point)]
    from: Option<(i64, i64)>,
    /// End `x,y`; defaults to `m,0`.
    #[arg(long, value_parser = commands::parse_point)]
    to: Option<(i64, i64)>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Famous {
    Delannoy,
    Ballot,
    Binomial,
}

#[derive(Args)]
struct FamousArgs {
    #[arg(value_enum)]
    family: Famous,
    #[arg(long)]
    n: u64,
}

#[derive(Subcommand)]
enum McCmd {
    Run {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = lcwalk::mc::DEFAULT_MAX_STEPS)]
        max_steps: u64,
    },
    /// z-scores of a simulation against the exact law.
    Compare {
        #[command(flatten)]
        walk: WalkArgs,
        /// A saved `mc run` result; otherwise a fresh run with `--n` and `--seed`.
        #[arg(long)]
        sim: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn dispatch(cmd: Cmd) -> commands::CmdResult {
    use commands as c;
    match cmd {
        Cmd::Region(RegionCmd::Validate { region }) => c::region_validate(&region),
        Cmd::Exact(ExactCmd::Solve { walk }) => c::exact_solve(&walk.region, walk.model.as_deref(), walk.start),
        Cmd::Exact(ExactCmd::Audit { fixtures, rational, seed }) => c::exact_audit(fixtures, rational, seed),
        Cmd::Strip(StripCmd::Solve { ladder, model, start_y, floor, ceiling, tol, max_height }) => {
            c::strip_solve(ladder, model.as_deref(), start_y, floor, ceiling, &tol, max_height)
        }
        Cmd::Inject(InjectCmd::Verify { region, instance, bound, no_inverse }) => {
            c::inject_verify(&region, &instance, bound, !no_inverse)
        }
        Cmd::Inject(InjectCmd::Trace { region, instance, pair, svg }) => {
            c::inject_trace(&region, &instance, &pair, svg.as_deref())
        }
        Cmd::Count(a) => c::count(a.mode, &a.region, a.column, a.from, a.to),
        Cmd::Famous(a) => match a.family {
            Famous::Delannoy => c::famous_delannoy(a.n),
            Famous::Ballot => c::famous_ballot(a.n),
            Famous::Binomial => c::famous_binomial(a.n),
        },
        Cmd::Mc(McCmd::Run { walk, n, seed, max_steps }) => {
            c::mc_run(&walk.region, walk.model.as_deref(), walk.start, n, seed, max_steps)
        }
        Cmd::Mc(McCmd::Compare { walk, sim, n, seed }) => {
            c::mc_compare(&walk.region, walk.model.as_deref(), walk.start, sim.as_deref(), n, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{e}");
        }
    }
    let format = cli.format;
    let out = cli.out.clone();
    match dispatch(cli.cmd) {
        Ok(outcome) => {
            if let Err(e) = write_out(&emit_report(&outcome, format), out.as_deref()) {
                println!("{}", commands::CliError::Io(e.to_string()).to_json());
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
