use std::io::{self, BufReader};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use skillcraft_core::fabric::family_names;
use skillcraft_core::harness::wire::{self, ServeConfig, Session};
use skillcraft_core::harness::{
    compare, emit_report, read_edge_cases, read_metrics, run_suite, Limits, ReportFormat, RunConfig, TokenModel, Transfer,
};
use skillcraft_core::library::DEFAULT_NESTING_LIMIT;
use skillcraft_core::policy::{EpisodeConfig, Mode};
use skillcraft_core::suite::{generate_suite, read_tasks, write_tasks};

#[derive(Parser)]
#[command(name = "skillcraft", version, about = "Skill-library runtime and tool-use benchmark simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the task manifest.
    GenSuite(GenSuiteArgs),
    /// Run every task of a manifest under one mode.
    Run(RunArgs),
    /// Compare two runs and emit a report.
    Compare(CompareArgs),
    /// Serve the skill primitives and tools over newline-delimited JSON.
    Serve(ServeArgs),
}

#[derive(Args)]
struct GenSuiteArgs {
    /// Families to include (comma separated or repeated); all when omitted.
    #[arg(long, value_delimiter = ',')]
    families: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    #[arg(long)]
    tasks: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// JSON file mapping family name to a list of edge-case entities.
    #[arg(long)]
    edge_cases: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_NESTING_LIMIT)]
    nesting_limit: u32,
    /// Static mode only: easy-hard or hard-easy.
    #[arg(long, default_value = "easy-hard", value_parser = |s: &str| s.parse::<Transfer>())]
    transfer: Transfer,
    /// Parallel episodes (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 4)]
    bytes_per_token: u32,
    /// Price per million input tokens.
    #[arg(long, default_value_t = 1.25)]
    price_in: f64,
    /// Price per million output tokens.
    #[arg(long, default_value_t = 10.0)]
    price_out: f64,
    #[arg(long)]
    max_turns: Option<u32>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    variant: PathBuf,
    #[arg(long, default_value = "md", value_parser = |s: &str| s.parse::<ReportFormat>())]
    format: ReportFormat,
    /// Where to write the report; defaults to report.<format> in the variant run.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("transport").required(true).args(["stdio", "socket"]))]
struct ServeArgs {
    #[arg(long)]
    stdio: bool,
    #[arg(long)]
    socket: Option<PathBuf>,
    /// Session directory holding skill_cache.json and workspace/.
    #[arg(long)]
    workspace: PathBuf,
    /// Default family for call_tool and tool calls made by skills.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    hierarchical: bool,
    #[arg(long, default_value_t = DEFAULT_NESTING_LIMIT)]
    nesting_limit: u32,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}

fn gen_suite(args: GenSuiteArgs) -> Result<()> {
    let families: Vec<String> =
        if args.families.is_empty() { family_names().into_iter().map(String::from).collect() } else { args.families };
    let tasks = generate_suite(&families, args.seed)?;
    write_tasks(&args.out, &tasks).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} tasks to {}", tasks.len(), args.out.display());
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let tasks = read_tasks(&args.tasks).with_context(|| format!("reading {}", args.tasks.display()))?;
    let mut limits = Limits::default();
    if let Some(t) = args.max_turns {
        limits.max_turns = t;
    }
    let token_model = TokenModel::new(args.bytes_per_token, args.price_in, args.price_out)?;
    let mut config = RunConfig::new(args.mode, args.seed);
    config.nesting_limit = args.nesting_limit;
    config.transfer = args.transfer;
    config.workers = args.workers;
    config.episode = EpisodeConfig { limits, token_model };
    if let Some(path) = &args.edge_cases {
        config.edge_cases = read_edge_cases(path)?;
    }
    let out = run_suite(&tasks, &args.out, &config)?;
    let m = &out.metrics;
    let pct = |v: Option<f64>| v.map_or("n/a".to_string(), |v| format!("{:.1}%", v * 100.0));
    println!("mode {}: {} tasks scored in {}", args.mode, m.tasks.len(), args.out.display());
    println!("  success {}", pct(m.success_rate()));
    println!("  exec    {}", pct(m.exec_rate()));
    println!("  reuse   {}", m.reuse_rate().map_or("n/a".to_string(), |v| format!("{v:.2}")));
    Ok(())
}

fn compare_runs(args: CompareArgs) -> Result<()> {
    let base = read_metrics(&args.base)?;
    let variant = read_metrics(&args.variant)?;
    if base.tasks.len() != variant.tasks.len() || base.tasks.iter().any(|t| variant.task(&t.task_id).is_none()) {
        bail!("runs {} and {} cover different task sets", args.base.display(), args.variant.display());
    }
    let report = emit_report(&[compare(&base, &variant)], args.format);
    let path = args.out.unwrap_or_else(|| args.variant.join(format!("report.{}", args.format)));
    std::fs::write(&path, &report).with_context(|| format!("writing {}", path.display()))?;
    print!("{report}");
    Ok(())
}

fn serve(args: ServeArgs) -> Result<()> {
    let config = ServeConfig { seed: args.seed, family: args.family, hierarchical: args.hierarchical, nesting_limit: args.nesting_limit };
    match args.socket {
        Some(socket) => serve_socket(&socket, &args.workspace, config),
        None => {
            let mut session = Session::open(&args.workspace, config)?;
            wire::serve_stream(&mut session, BufReader::new(io::stdin().lock()), io::stdout().lock())?;
            Ok(())
        }
    }
}

#[cfg(unix)]
fn serve_socket(socket: &Path, root: &Path, config: ServeConfig) -> Result<()> {
    Ok(wire::serve_socket(socket, root, config)?)
}

#[cfg(not(unix))]
fn serve_socket(_: &Path, _: &Path, _: ServeConfig) -> Result<()> {
    bail!("socket transport needs a Unix platform")
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::GenSuite(a) => gen_suite(a),
        Command::Run(a) => run(a),
        Command::Compare(a) => compare_runs(a),
        Command::Serve(a) => serve(a),
    }
}
