//! One bee colony island: employed, onlooker and scout phases per
//! generation, with abandonment counters.

use ensemble_color::abc::{AbcParams, AbcState};
use ensemble_color::graph::generate::gnp;
use ensemble_color::population::{Population, Progress};
use ensemble_color::{EvalBudget, TabuParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let k = 17;
    let g = gnp(125, 0.5, &mut rng);
    let params = AbcParams {
        generations: 50,
        ..AbcParams::with_colony(10)
    };
    let tabu = TabuParams {
        max_iterations: 1_000,
        ..TabuParams::default()
    };

    let mut budget = EvalBudget::unlimited();
    let (sources, seeded) = Population::seeded(&g, k, params.colony_size, &tabu, &mut rng, &mut budget);
    let mut colony = AbcState::new(sources);
    println!("seeded: best f = {} ({seeded:?})", colony.best().conflict_count());
    if seeded != Progress::Completed {
        return;
    }
    for t in 1..=params.generations {
        let progress = colony.generation(&g, &params, &tabu, &mut rng, &mut budget);
        let trials: Vec<usize> = colony.sources.iter().map(|s| s.trials).collect();
        println!(
            "generation {t:>2}: best f = {:>2}, trials {trials:?}",
            colony.best().conflict_count()
        );
        if progress != Progress::Completed {
            break;
        }
    }
    println!("{} fitness evaluations", budget.used());
}
