//! One Harris Hawk island driven generation by generation.

use ensemble_color::graph::generate::gnp;
use ensemble_color::hho::{escaping_energy, HhoParams, HhoState};
use ensemble_color::population::{Population, Progress};
use ensemble_color::{EvalBudget, TabuParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = 17;
    let g = gnp(125, 0.5, &mut rng);
    let params = HhoParams {
        population_size: 10,
        generations: 50,
        ..HhoParams::default()
    };
    let tabu = TabuParams {
        max_iterations: 1_000,
        ..TabuParams::default()
    };
    println!(
        "|E| ranges over [0, {:.2}] at t = 0",
        escaping_energy(1.0, 0, params.generations).unwrap()
    );

    let mut budget = EvalBudget::unlimited();
    let (hawks, seeded) = Population::seeded(&g, k, params.population_size, &tabu, &mut rng, &mut budget);
    let mut state = HhoState::new(hawks, params.generations);
    println!("seeded: rabbit f = {} ({seeded:?})", state.best().conflict_count());
    if seeded != Progress::Completed {
        return;
    }
    for t in 1..=params.generations {
        let progress = state.generation(&g, &params, &tabu, &mut rng, &mut budget);
        println!("generation {t:>2}: rabbit f = {}", state.best().conflict_count());
        if progress != Progress::Completed {
            break;
        }
    }
    println!("{} fitness evaluations", budget.used());
}
