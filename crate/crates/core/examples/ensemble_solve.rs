//! Full ensemble: islands run HHO, ABC and TLBO round-robin on worker
//! threads, the master keeps the best report per k, and k descends from the
//! DSATUR bound. The whole descent is capped at one minute.
//!
//!     RUST_LOG=debug cargo run --release --example ensemble_solve -- [file.col] [islands]

use std::time::{Duration, Instant};

use ensemble_color::graph::generate::gnp;
use ensemble_color::{parse_dimacs, solve, EnsembleConfig, TabuParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let mut args = std::env::args().skip(1);
    let g = match args.next() {
        Some(path) => parse_dimacs(&std::fs::read_to_string(path)?)?,
        None => gnp(125, 0.5, &mut ChaCha8Rng::seed_from_u64(125)),
    };
    let islands = args.next().map(|s| s.parse()).transpose()?.unwrap_or(6);

    let config = EnsembleConfig {
        island_count: islands,
        generations: 50,
        time_limit: Some(Duration::from_secs(60)),
        tabu: TabuParams {
            max_iterations: 20_000,
            ..TabuParams::default()
        },
        ..EnsembleConfig::default()
    };
    let started = Instant::now();
    let result = solve(&g, &config)?;
    for attempt in &result.per_k_history {
        let solved_by: Vec<String> = attempt
            .reports
            .iter()
            .filter(|r| r.best.is_proper())
            .map(|r| format!("{}#{}", r.metaheuristic.name(), r.island_id))
            .collect();
        println!(
            "k = {:>3}: best f = {:>3}  solved by [{}]",
            attempt.k,
            attempt.best_conflicts,
            solved_by.join(" ")
        );
    }
    println!(
        "smallest legal k = {:?} in {:.2}s, {} fitness evaluations",
        result.smallest_legal_k,
        started.elapsed().as_secs_f64(),
        result.total_fitness_evaluations
    );
    Ok(())
}
