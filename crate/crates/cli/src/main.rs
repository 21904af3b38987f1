//! `qgw`: quantum walks of one and two particles on dot graphs, from the
//! command line. Results go out as CSV.

mod commands;
mod config;
mod csv;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qgw_core::{SiteId, SiteSubset, TimeGrid};

use commands::SweepRequest;
use config::{
    parse_init, parse_set, parse_subset, parse_sweep, resolve, Builtin, Failure, Resolved, Source,
    StatsChoice, DEFAULT_SUBSET,
};

#[derive(Parser, Debug)]
#[command(name = "qgw", version, about = "Continuous-time quantum walks on quantum-dot graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph and print a summary with its spectral gap.
    Validate {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// One particle: transition probability P(t) between two sites.
    Single {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 2)]
        to: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Two particles: probability that both stay inside the subset.
    Pair {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decay rate and half-passage time over a range of one parameter.
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        pair: PairArgs,
        /// NAME=START:STEP:END, end inclusive.
        #[arg(long, value_name = "RANGE", default_value = "c=0.01:0.01:0.30", value_parser = parse_sweep)]
        sweep: (String, Vec<f64>),
        /// Also run the parameter at zero.
        #[arg(long)]
        baseline: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Two-particle space dimensions.
    Dims {
        #[command(flatten)]
        graph: GraphArgs,
        /// Sites to restrict to [default: 0-7 when the graph has them]
        #[arg(long)]
        subset: Option<String>,
    },
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Parameter value, repeatable. For builtins this sets couplings and
    /// potentials; for files it overrides named parameters.
    #[arg(long = "set", value_name = "NAME=VALUE", value_parser = parse_set)]
    set: Vec<(String, f64)>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Graph description (JSON).
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

impl GraphArgs {
    fn source(&self) -> Source {
        match (&self.source.graph, self.source.builtin) {
            (Some(path), _) => Source::File(path.clone()),
            (None, Some(b)) => Source::Builtin(b),
            (None, None) => unreachable!("clap enforces one graph source"),
        }
    }

    fn resolve(&self, keep: Option<&str>) -> Result<Resolved, Failure> {
        resolve(&self.source(), &self.set, keep)
    }
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long, value_enum, default_value = "both")]
    stats: StatsChoice,
    #[arg(long, default_value = DEFAULT_SUBSET)]
    subset: String,
    /// Starting sites of the two particles.
    #[arg(long, value_name = "I,J", default_value = "0,1", value_parser = parse_init)]
    init: (SiteId, SiteId),
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Final time.
    #[arg(long = "T", value_name = "T", default_value_t = 2000.0)]
    t_end: f64,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
}

impl GridArgs {
    fn grid(&self) -> Result<TimeGrid, Failure> {
        Ok(TimeGrid::until(self.t_end, self.dt)?)
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: &OutArgs) -> Result<(), Failure> {
    use std::io::Write;
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("QGW_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Validation(format!(
                "QGW_THREADS={v}: expected a positive integer"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { graph } => {
            let g = graph.resolve(None)?;
            emit(&commands::validate(&g)?, &OutArgs { out: None })
        }
        Command::Single {
            graph,
            from,
            to,
            grid,
            out,
        } => {
            let g = graph.resolve(None)?;
            let text = commands::single(&g, SiteId(from), SiteId(to), grid.grid()?)?;
            emit(&text, &out)
        }
        Command::Pair {
            graph,
            pair,
            grid,
            out,
        } => {
            let g = graph.resolve(None)?;
            let subset = parse_subset(&pair.subset, g.spec.n_sites())?;
            let text = commands::pair(&g, &pair.stats.list(), &subset, pair.init, grid.grid()?)?;
            emit(&text, &out)
        }
        Command::Sweep {
            graph,
            pair,
            sweep: (parameter, values),
            baseline,
            grid,
            out,
        } => {
            let threads = threads_from_env()?;
            let g = graph.resolve(Some(&parameter))?;
            let subset = parse_subset(&pair.subset, g.spec.n_sites())?;
            let stats = pair.stats.list();
            let text = commands::sweep_csv(
                &g,
                SweepRequest {
                    parameter,
                    values,
                    baseline,
                    statistics: &stats,
                    subset,
                    initial: pair.init,
                    grid: grid.grid()?,
                    threads,
                },
            )?;
            emit(&text, &out)
        }
        Command::Dims { graph, subset } => {
            let g = graph.resolve(None)?;
            let n = g.spec.n_sites();
            let subset: Option<SiteSubset> = match subset {
                Some(s) => Some(parse_subset(&s, n)?),
                None if n >= 8 => Some(parse_subset(DEFAULT_SUBSET, n)?),
                None => None,
            };
            emit(&commands::dims(n, subset.as_ref()), &OutArgs { out: None })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qgw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
