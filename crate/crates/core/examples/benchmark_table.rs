//! Repeated seeded runs with hit counting, rendered as a table, CSV and
//! JSON. Instance files given on the command line are benchmarked;
//! otherwise two generated graphs are.

use std::path::PathBuf;
use std::time::Duration;

use ensemble_color::bench::{
    emit_results, run_benchmark, run_benchmark_graph, BenchOptions, InstanceMeta, OutputFormat, Registry, Table,
};
use ensemble_color::graph::generate::{gnp, planted};
use ensemble_color::{EnsembleConfig, TabuParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let config = EnsembleConfig {
        island_count: 4,
        generations: 20,
        time_limit: Some(Duration::from_secs(5)),
        tabu: TabuParams {
            max_iterations: 2_000,
            ..TabuParams::default()
        },
        ..EnsembleConfig::default()
    };
    let options = BenchOptions {
        record_times: true,
        witness_dir: None,
    };
    let files: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    let records = if files.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let meta = |name: &str, k| InstanceMeta {
            name: name.into(),
            best_known_k: k,
            source_path: String::new(),
        };
        vec![
            run_benchmark_graph(
                &planted(120, 6, 0.5, &mut rng),
                meta("planted-120-6", Some(6)),
                &config,
                3,
                &options,
            ),
            run_benchmark_graph(
                &gnp(100, 0.1, &mut rng),
                meta("gnp-100-0.1", None),
                &config,
                3,
                &options,
            ),
        ]
    } else {
        run_benchmark(&files, &config, 3, &options)
    };

    print!("{}", emit_results(&records, OutputFormat::Table));
    println!();
    print!("{}", emit_results(&records, OutputFormat::Csv));
    println!();
    println!("{}", emit_results(&records[..1], OutputFormat::Json));

    println!("registered small instances:");
    for e in Registry::table(Table::Small) {
        println!("  {:<12} n={:<4} k*={}", e.name, e.vertices, e.best_known_k);
    }
}
