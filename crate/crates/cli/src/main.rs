use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quintic_lines_cli::commands::{self, Outcome};
use quintic_lines_cli::config::DEFAULT_MAGNITUDE;
use quintic_lines_cli::RunConfig;

#[derive(Parser)]
#[command(name = "quintic-lines", version, about = "Census of tropical lines on the tropical quintic threefold")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Perturbation magnitude as p/q, a multiple of 1/1000000.
    #[arg(long, global = true, default_value = DEFAULT_MAGNITUDE)]
    magnitude: String,
    /// Facets to process, e.g. 1,3,5.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2,3,4,5")]
    facets: Vec<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Output directory.
    #[arg(long, global = true, env = "QUINTIC_LINES_OUT", default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Write heights.json for the seed and magnitude.
    Generate,
    /// Enumerate all lines; writes lines.jsonl, summary.json and curves.json.
    Census {
        /// Heights file; defaults to the heights of --seed and --magnitude.
        #[arg(long)]
        heights: Option<PathBuf>,
    },
    /// Conflict graph, ranks and disjoint families of a census.
    Analyze {
        /// Census files, merged when they cover disjoint facets.
        #[arg(long = "lines", required = true, num_args = 1..)]
        lines: Vec<PathBuf>,
        /// Largest component searched exactly for a maximum disjoint family.
        #[arg(long, default_value_t = 128)]
        exact_limit: usize,
    },
    /// One OBJ file per facet with its curves at infinity and lines.
    ExportViz {
        #[arg(long = "lines", required = true, num_args = 1..)]
        lines: Vec<PathBuf>,
        /// Leg truncation radius as p/q; chosen from the data by default.
        #[arg(long)]
        radius: Option<String>,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long)]
        heights: Option<PathBuf>,
        /// Also run the census and check every line.
        #[arg(long)]
        full: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let g = cli.global;
    let mut config = RunConfig {
        seed: g.seed,
        magnitude: g.magnitude,
        facets: g.facets,
        threads: g.threads,
        out: g.out,
        ..RunConfig::default()
    };
    match &cli.command {
        Command::Analyze { exact_limit, .. } => config.exact_limit = *exact_limit,
        Command::ExportViz { radius, .. } => config.radius = radius.clone(),
        Command::Verify { full, .. } => config.full = *full,
        _ => {}
    }
    let config = config.normalized()?;
    match cli.command {
        Command::Generate => commands::generate(&config),
        Command::Census { heights } => commands::census(&config, heights.as_deref()),
        Command::Analyze { lines, .. } => commands::analyze_cmd(&config, &lines),
        Command::ExportViz { lines, .. } => commands::export_viz_cmd(&config, &lines),
        Command::Verify { heights, .. } => commands::verify_cmd(&config, heights.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
