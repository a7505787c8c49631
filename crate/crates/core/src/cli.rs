//! Command-line front end: `solve`, `bench`, `verify` and `info`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::bench::{
    emit_results, parse_witness, run_benchmark, verify_colors, witness_document, BenchOptions, InstanceMeta,
    OutputFormat, Registry, Verdict,
};
use crate::graph::{parse_dimacs_with_warnings, Graph};
use crate::island::{solve, EnsembleConfig, ExecutionMode};
use crate::tabucol::TabuParams;

#[derive(Debug, Parser)]
#[command(
    name = "ensemble-color",
    version,
    about = "Graph coloring with an island ensemble of HHO, ABC and TLBO"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color one DIMACS instance.
    Solve(SolveArgs),
    /// Repeated runs over several instances with hit counting.
    Bench(BenchArgs),
    /// Check a solution file against an instance.
    Verify { file: PathBuf, solution: PathBuf },
    /// Report instance statistics.
    Info { file: PathBuf },
}

#[derive(Debug, Args, Clone)]
pub struct SearchArgs {
    /// Worker islands.
    #[arg(long, default_value_t = 63)]
    pub islands: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub generations: usize,
    #[arg(long, default_value_t = 20)]
    pub population: usize,
    /// TabuCol iterations per invocation.
    #[arg(long, default_value_t = 100_000)]
    pub tabu_depth: usize,
    #[arg(long, default_value_t = 7)]
    pub tabu_tenure: usize,
    /// Wall-clock limit in seconds for each solve.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Fitness evaluations per island and per k.
    #[arg(long)]
    pub eval_budget: Option<u64>,
    /// Run islands one after another on the calling thread.
    #[arg(long)]
    pub sequential: bool,
    /// Worker threads in concurrent mode.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    /// Search only this number of colors.
    #[arg(long, conflicts_with = "auto_k")]
    pub k: Option<usize>,
    /// Descend from the DSATUR bound (the default).
    #[arg(long)]
    pub auto_k: bool,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Write the witness here instead of stdout.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    /// csv, json or table.
    #[arg(long, default_value = "table")]
    pub output: OutputFormat,
    /// Write the document here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// One witness file per successful run.
    #[arg(long)]
    pub witness_dir: Option<PathBuf>,
    /// Zero the time columns so documents are byte-reproducible.
    #[arg(long)]
    pub no_times: bool,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub search: SearchArgs,
}

impl SearchArgs {
    pub fn to_config(&self, target_k: Option<usize>) -> Result<EnsembleConfig, String> {
        let time_limit = match self.time_limit {
            Some(s) if !(s.is_finite() && s > 0.0) => return Err(format!("time limit must be positive, got {s}")),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        let config = EnsembleConfig {
            island_count: self.islands,
            generations: self.generations,
            population_size: self.population,
            base_seed: self.seed,
            tabu: TabuParams {
                tenure: self.tabu_tenure,
                max_iterations: self.tabu_depth,
                ..TabuParams::default()
            },
            time_limit,
            eval_budget: self.eval_budget,
            target_k,
            mode: if self.sequential {
                ExecutionMode::Sequential
            } else {
                ExecutionMode::Concurrent
            },
            threads: self.threads,
            ..EnsembleConfig::default()
        };
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }
}

const EXIT_OK: i32 = 0;
const EXIT_FAILURE: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn load_graph(path: &Path, err: &mut dyn Write) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (graph, warnings) = parse_dimacs_with_warnings(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    for w in warnings {
        let _ = writeln!(err, "warning: {}: {w}", path.display());
    }
    Ok(graph)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Verify { file, solution } => cmd_verify(&file, &solution, out, err),
        Command::Info { file } => cmd_info(&file, out, err),
    }
}

fn io(e: std::io::Error) -> String {
    e.to_string()
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let graph = load_graph(&a.file, err)?;
    let config = a.search.to_config(a.k)?;
    let meta = InstanceMeta::from_path(&a.file);
    let result = solve(&graph, &config).map_err(|e| e.to_string())?;
    for attempt in &result.per_k_history {
        writeln!(
            err,
            "k = {:>4}: {} (best f = {})",
            attempt.k,
            if attempt.success { "legal" } else { "failed" },
            attempt.best_conflicts
        )
        .map_err(io)?;
    }
    writeln!(err, "fitness evaluations: {}", result.total_fitness_evaluations).map_err(io)?;
    match &result.witness {
        Some(w) => {
            writeln!(err, "smallest legal k: {}", w.k()).map_err(io)?;
            let doc = witness_document(&meta.name, w, config.base_seed);
            match &a.witness {
                Some(path) => std::fs::write(path, doc).map_err(|e| format!("{}: {e}", path.display()))?,
                None => write!(out, "{doc}").map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        None => {
            writeln!(err, "no legal coloring found").map_err(io)?;
            Ok(EXIT_FAILURE)
        }
    }
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<i32, String> {
    if a.runs == 0 {
        return Err("runs must be at least 1".into());
    }
    let config = a.search.to_config(a.k)?;
    if let Some(dir) = &a.witness_dir {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    let options = BenchOptions {
        record_times: !a.no_times,
        witness_dir: a.witness_dir.clone(),
    };
    let records = run_benchmark(&a.files, &config, a.runs, &options);
    let doc = emit_results(&records, a.output);
    match &a.out {
        Some(path) => std::fs::write(path, doc).map_err(|e| format!("{}: {e}", path.display()))?,
        None => write!(out, "{doc}").map_err(io)?,
    }
    Ok(if records.iter().any(|r| r.error.is_some()) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn cmd_verify(file: &Path, solution: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let graph = load_graph(file, err)?;
    let text = std::fs::read_to_string(solution).map_err(|e| format!("{}: {e}", solution.display()))?;
    let colors = parse_witness(&text).map_err(|e| format!("{}: {e}", solution.display()))?;
    match verify_colors(&graph, &colors) {
        Verdict::Proper { colors_used } => {
            writeln!(out, "proper coloring with {colors_used} colors").map_err(io)?;
            Ok(EXIT_OK)
        }
        Verdict::WrongLength { expected, got } => {
            writeln!(out, "solution has {got} colors for {expected} vertices").map_err(io)?;
            Ok(EXIT_FAILURE)
        }
        Verdict::Conflicts(edges) => {
            writeln!(out, "{} monochromatic edge(s):", edges.len()).map_err(io)?;
            for (u, v) in edges {
                writeln!(out, "  {u} {v} (color {})", colors[u - 1]).map_err(io)?;
            }
            Ok(EXIT_FAILURE)
        }
    }
}

fn cmd_info(file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let graph = load_graph(file, err)?;
    let meta = InstanceMeta::from_path(file);
    writeln!(out, "instance:     {}", meta.name).map_err(io)?;
    writeln!(out, "vertices:     {}", graph.vertex_count()).map_err(io)?;
    writeln!(out, "edges:        {}", graph.edge_count()).map_err(io)?;
    match graph.density() {
        Ok(d) => writeln!(out, "density:      {d:.4}").map_err(io)?,
        Err(_) => writeln!(out, "density:      undefined").map_err(io)?,
    }
    writeln!(out, "max degree:   {}", graph.max_degree()).map_err(io)?;
    writeln!(out, "DSATUR bound: {}", graph.greedy_upper_bound()).map_err(io)?;
    match Registry::lookup(&meta.name) {
        Some(e) => {
            writeln!(out, "best known k: {}", e.best_known_k).map_err(io)?;
            if (e.vertices, e.edges) != (graph.vertex_count(), graph.edge_count()) {
                writeln!(
                    out,
                    "warning: registry lists {} vertices and {} edges",
                    e.vertices, e.edges
                )
                .map_err(io)?;
            }
        }
        None => writeln!(out, "best known k: unregistered").map_err(io)?,
    }
    Ok(EXIT_OK)
}
