//! Benchmark harness: the instance registry, repeated solves with hit
//! counting, result documents (CSV, JSON, text table) and witness files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::{monochromatic_edges, parse_color_line, Coloring, ColoringError};
use crate::graph::{parse_dimacs, Graph};
use crate::island::{solve, EnsembleConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    /// The 19 small instances.
    Small,
    /// The 24 larger instances.
    Large,
}

/// Published reference row for one benchmark instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub vertices: usize,
    pub edges: usize,
    /// Best-known number of colors.
    pub best_known_k: usize,
    /// Number of colors reported for the ensemble.
    pub reported_k: usize,
    /// Hits out of 20 runs.
    pub reported_hits: usize,
    pub reported_time_sec: f64,
    pub table: Table,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    name: &'static str,
    vertices: usize,
    edges: usize,
    best_known_k: usize,
    reported_k: usize,
    reported_hits: usize,
    reported_time_sec: f64,
    table: Table,
) -> RegistryEntry {
    RegistryEntry {
        name,
        vertices,
        edges,
        best_known_k,
        reported_k,
        reported_hits,
        reported_time_sec,
        table,
    }
}

/// 43 rows; DSJC250.5 appears in both tables with identical counts.
pub const REGISTRY: &[RegistryEntry] = &[
    row("DSJC125.1", 125, 736, 5, 5, 20, 0.026, Table::Small),
    row("DSJC125.5", 125, 3891, 17, 17, 20, 0.135, Table::Small),
    row("DSJC125.9", 125, 6961, 44, 44, 20, 0.011, Table::Small),
    row("DSJC250.1", 250, 3218, 8, 8, 20, 0.018, Table::Small),
    row("DSJC250.5", 250, 15668, 28, 28, 20, 10.214, Table::Small),
    row("DSJC250.9", 250, 27897, 72, 72, 20, 1.822, Table::Small),
    row("DSJR500.1", 500, 3555, 12, 12, 20, 0.023, Table::Small),
    row("school1", 385, 19095, 14, 14, 20, 0.098, Table::Small),
    row("school1_nsh", 352, 14612, 14, 14, 20, 0.070, Table::Small),
    row("flat300_20_0", 300, 21375, 20, 20, 20, 0.020, Table::Small),
    row("le450_15a", 450, 8168, 15, 15, 20, 0.187, Table::Small),
    row("le450_15b", 450, 8169, 15, 15, 20, 0.101, Table::Small),
    row("le450_25a", 450, 8260, 25, 25, 20, 0.007, Table::Small),
    row("le450_25b", 450, 8263, 25, 25, 20, 0.011, Table::Small),
    row("R1000.1", 1000, 14348, 20, 20, 20, 0.038, Table::Small),
    row("R125.1", 125, 209, 5, 5, 20, 0.001, Table::Small),
    row("R125.1c", 125, 7501, 46, 46, 20, 4.925, Table::Small),
    row("R125.5", 125, 3838, 36, 36, 20, 0.143, Table::Small),
    row("R250.1", 250, 867, 8, 8, 20, 0.003, Table::Small),
    row("C2000.5", 2000, 999836, 153, 148, 20, 187.6, Table::Large),
    row("C4000.5", 4000, 4000268, 280, 272, 0, 468.2, Table::Large),
    row("latin_sqr_10", 900, 307350, 98, 98, 20, 614.1, Table::Large),
    row("DSJC250.5", 250, 15668, 28, 28, 20, 8.7, Table::Large),
    row("DSJC500.1", 500, 12458, 12, 12, 20, 670.5, Table::Large),
    row("DSJC500.5", 500, 62624, 49, 48, 20, 22.4, Table::Large),
    row("DSJC500.9", 500, 112437, 126, 126, 20, 420.2, Table::Large),
    row("DSJC1000.1", 1000, 49629, 20, 20, 20, 2.7, Table::Large),
    row("DSJC1000.5", 1000, 249826, 83, 83, 0, 88.2, Table::Large),
    row("DSJC1000.9", 1000, 449449, 224, 223, 0, 110.8, Table::Large),
    row("DSJR500.1c", 500, 121275, 85, 85, 20, 1318.8, Table::Large),
    row("DSJR500.5", 500, 58862, 122, 122, 0, 325.7, Table::Large),
    row("R250.5", 250, 14849, 65, 65, 20, 38.4, Table::Large),
    row("R1000.1c", 1000, 485090, 98, 98, 20, 7.7, Table::Large),
    row("R1000.5", 1000, 238267, 234, 240, 0, 1240.1, Table::Large),
    row("flat300_26_0", 300, 21633, 26, 26, 20, 15.7, Table::Large),
    row("flat300_28_0", 300, 21695, 28, 28, 20, 956.5, Table::Large),
    row("flat1000_50_0", 1000, 245000, 50, 50, 20, 846.3, Table::Large),
    row("flat1000_60_0", 1000, 245830, 60, 60, 20, 1705.4, Table::Large),
    row("flat1000_76_0", 1000, 246708, 82, 82, 0, 198.2, Table::Large),
    row("le450_15c", 450, 16680, 15, 15, 20, 121.4, Table::Large),
    row("le450_15d", 450, 16750, 15, 15, 20, 840.2, Table::Large),
    row("le450_25c", 450, 17343, 25, 25, 20, 190.5, Table::Large),
    row("le450_25d", 450, 17425, 25, 25, 20, 445.8, Table::Large),
];

pub struct Registry;

impl Registry {
    pub fn entries() -> &'static [RegistryEntry] {
        REGISTRY
    }

    /// First row registered under `name`.
    pub fn lookup(name: &str) -> Option<&'static RegistryEntry> {
        REGISTRY.iter().find(|e| e.name == name)
    }

    /// Rows of one table in published order.
    pub fn table(table: Table) -> impl Iterator<Item = &'static RegistryEntry> {
        REGISTRY.iter().filter(move |e| e.table == table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub name: String,
    pub best_known_k: Option<usize>,
    pub source_path: String,
}

impl InstanceMeta {
    pub fn from_path(path: &Path) -> Self {
        let name = instance_name(path);
        Self {
            best_known_k: Registry::lookup(&name).map(|e| e.best_known_k),
            name,
            source_path: path.display().to_string(),
        }
    }
}

/// File name without a trailing `.col` (or `.col.txt`).
pub fn instance_name(path: &Path) -> String {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    for suffix in [".col.txt", ".col"] {
        if let Some(stem) = file.strip_suffix(suffix) {
            return stem.to_string();
        }
    }
    file
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunDetail {
    pub seed: u64,
    pub k: Option<usize>,
    pub time_sec: f64,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: InstanceMeta,
    pub vertices: usize,
    pub edges: usize,
    /// Fewest colors reached over all runs.
    pub k_reported: Option<usize>,
    /// Runs reaching `k <= k*`; absent for unregistered instances.
    pub hits: Option<usize>,
    pub runs: usize,
    pub mean_time_sec: f64,
    pub total_evaluations: u64,
    pub per_run_details: Vec<RunDetail>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct BenchOptions {
    /// Record wall-clock times. Off gives byte-reproducible documents.
    pub record_times: bool,
    /// Directory receiving one witness file per successful run.
    pub witness_dir: Option<PathBuf>,
}

/// Runs `runs` independent solves per instance. Run `r` uses seed
/// `config.base_seed + r`. Instances are processed one after another.
pub fn run_benchmark(
    paths: &[PathBuf],
    config: &EnsembleConfig,
    runs: usize,
    options: &BenchOptions,
) -> Vec<RunRecord> {
    paths.iter().map(|p| bench_instance(p, config, runs, options)).collect()
}

fn bench_instance(path: &Path, config: &EnsembleConfig, runs: usize, options: &BenchOptions) -> RunRecord {
    let instance = InstanceMeta::from_path(path);
    let mut record = RunRecord {
        instance,
        vertices: 0,
        edges: 0,
        k_reported: None,
        hits: None,
        runs,
        mean_time_sec: 0.0,
        total_evaluations: 0,
        per_run_details: Vec::with_capacity(runs),
        error: None,
    };
    let graph = match std::fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|text| parse_dimacs(&text).map_err(|e| e.to_string()))
    {
        Ok(g) => g,
        Err(e) => {
            record.error = Some(e);
            return record;
        }
    };
    record.vertices = graph.vertex_count();
    record.edges = graph.edge_count();
    bench_graph(&graph, &mut record, config, runs, options);
    record
}

/// Benchmarks an in-memory graph under the given instance metadata.
pub fn run_benchmark_graph(
    graph: &Graph,
    instance: InstanceMeta,
    config: &EnsembleConfig,
    runs: usize,
    options: &BenchOptions,
) -> RunRecord {
    let mut record = RunRecord {
        instance,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        k_reported: None,
        hits: None,
        runs,
        mean_time_sec: 0.0,
        total_evaluations: 0,
        per_run_details: Vec::with_capacity(runs),
        error: None,
    };
    bench_graph(graph, &mut record, config, runs, options);
    record
}

fn bench_graph(graph: &Graph, record: &mut RunRecord, config: &EnsembleConfig, runs: usize, options: &BenchOptions) {
    let k_star = record.instance.best_known_k;
    let mut hits = 0;
    let mut total_time = 0.0;
    for r in 0..runs {
        let seed = config.base_seed.wrapping_add(r as u64);
        let cfg = EnsembleConfig {
            base_seed: seed,
            ..config.clone()
        };
        let started = Instant::now();
        let result = match solve(graph, &cfg) {
            Ok(res) => res,
            Err(e) => {
                record.error = Some(e.to_string());
                return;
            }
        };
        let time_sec = if options.record_times {
            started.elapsed().as_secs_f64()
        } else {
            0.0
        };
        total_time += time_sec;
        record.total_evaluations += result.total_fitness_evaluations;
        let k = result.smallest_legal_k;
        let success = match (k, k_star) {
            (Some(k), Some(star)) => k <= star,
            (Some(_), None) => true,
            (None, _) => false,
        };
        if success && k_star.is_some() {
            hits += 1;
        }
        if let (Some(dir), Some(w)) = (&options.witness_dir, &result.witness) {
            let file = dir.join(format!("{}.k{}.seed{}.sol", record.instance.name, w.k(), seed));
            if let Err(e) = std::fs::write(&file, witness_document(&record.instance.name, w, seed)) {
                log::warn!("cannot write witness {}: {e}", file.display());
            }
        }
        record.k_reported = match (record.k_reported, k) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        record.per_run_details.push(RunDetail {
            seed,
            k,
            time_sec,
            success,
        });
    }
    record.hits = k_star.map(|_| hits);
    record.mean_time_sec = if runs > 0 { total_time / runs as f64 } else { 0.0 };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "table" => Ok(Self::Table),
            other => Err(format!("unknown output format `{other}` (csv, json, table)")),
        }
    }
}

pub const CSV_HEADER: [&str; 9] = [
    "instance",
    "vertices",
    "edges",
    "k_star",
    "k",
    "hits",
    "runs",
    "mean_time_sec",
    "total_evals",
];

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn emit_results(records: &[RunRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in records {
                w.write_record([
                    r.instance.name.clone(),
                    r.vertices.to_string(),
                    r.edges.to_string(),
                    opt(r.instance.best_known_k),
                    opt(r.k_reported),
                    opt(r.hits),
                    r.runs.to_string(),
                    format!("{:.6}", r.mean_time_sec),
                    r.total_evaluations.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
        }
        OutputFormat::Json => serde_json::to_string_pretty(records).expect("records serialize") + "\n",
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<16} {:>9} {:>10} {:>4} {:>4} {:>10} {:>10} {:>14}",
                "instance", "#vertices", "#edges", "k*", "k", "hits/runs", "time(s)", "evaluations"
            );
            for r in records {
                let hits = r.hits.map_or_else(|| "-".to_string(), |h| format!("{h}/{}", r.runs));
                let _ = writeln!(
                    out,
                    "{:<16} {:>9} {:>10} {:>4} {:>4} {:>10} {:>10.3} {:>14}",
                    r.instance.name,
                    r.vertices,
                    r.edges,
                    r.instance.best_known_k.map_or("-".into(), |k| k.to_string()),
                    r.k_reported.map_or("-".into(), |k| k.to_string()),
                    hits,
                    r.mean_time_sec,
                    r.total_evaluations
                );
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "  error: {e}");
                }
            }
            out
        }
    }
}

pub fn parse_records_json(text: &str) -> Result<Vec<RunRecord>, serde_json::Error> {
    serde_json::from_str(text)
}

/// Witness file: a `c instance=<name> k=<k> seed=<s>` line, then the
/// 0-based colors in vertex order.
pub fn witness_document(instance: &str, coloring: &Coloring, seed: u64) -> String {
    format!(
        "c instance={instance} k={} seed={seed}\n{}\n",
        coloring.k(),
        coloring.to_line()
    )
}

/// Colors from a witness document: the first line that is neither blank
/// nor a `c` comment.
pub fn parse_witness(text: &str) -> Result<Vec<usize>, ColoringError> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !(l.starts_with('c') && (l.len() == 1 || l.as_bytes()[1].is_ascii_whitespace())))
        .unwrap_or("");
    parse_color_line(line)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proper {
        colors_used: usize,
    },
    WrongLength {
        expected: usize,
        got: usize,
    },
    /// Monochromatic edges, 1-based.
    Conflicts(Vec<(usize, usize)>),
}

/// Checks a color vector against the edge list directly.
pub fn verify_colors(g: &Graph, colors: &[usize]) -> Verdict {
    if colors.len() != g.vertex_count() {
        return Verdict::WrongLength {
            expected: g.vertex_count(),
            got: colors.len(),
        };
    }
    let bad = monochromatic_edges(g, colors);
    if bad.is_empty() {
        let mut used: Vec<usize> = colors.to_vec();
        used.sort_unstable();
        used.dedup();
        Verdict::Proper {
            colors_used: used.len(),
        }
    } else {
        Verdict::Conflicts(bad.into_iter().map(|(u, v)| (u + 1, v + 1)).collect())
    }
}
