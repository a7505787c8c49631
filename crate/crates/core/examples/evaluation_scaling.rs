//! Total fitness evaluations grow linearly with the number of islands when
//! each island gets the same budget and k is out of reach.

use ensemble_color::graph::generate::gnp;
use ensemble_color::{solve, EnsembleConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let g = gnp(80, 0.5, &mut ChaCha8Rng::seed_from_u64(4));
    let per_island = 20_000;
    println!("{:>8} {:>14} {:>14}", "islands", "evaluations", "per island");
    for islands in [1, 2, 4, 8, 16, 64] {
        let config = EnsembleConfig {
            island_count: islands,
            target_k: Some(4),
            eval_budget: Some(per_island),
            ..EnsembleConfig::default()
        };
        let result = solve(&g, &config).unwrap();
        let total = result.total_fitness_evaluations;
        println!("{islands:>8} {total:>14} {:>14.1}", total as f64 / islands as f64);
    }
}
