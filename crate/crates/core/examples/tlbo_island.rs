//! One teaching-learning island. Learners recombine through partition
//! crossover followed by TabuCol.

use ensemble_color::graph::generate::gnp;
use ensemble_color::population::{Population, Progress};
use ensemble_color::tlbo::{partition_crossover, ClassState, TlboParams};
use ensemble_color::{Coloring, EvalBudget, TabuParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = 17;
    let g = gnp(125, 0.5, &mut rng);

    let a = Coloring::random(&g, k, &mut rng).unwrap();
    let b = Coloring::random(&g, k, &mut rng).unwrap();
    let child = partition_crossover(&g, &a, &b, &mut rng).unwrap();
    println!(
        "crossover of two random parents: f = {} and {} -> child f = {}",
        a.conflict_count(),
        b.conflict_count(),
        child.conflict_count()
    );

    let params = TlboParams {
        population_size: 10,
        generations: 50,
    };
    let tabu = TabuParams {
        max_iterations: 1_000,
        ..TabuParams::default()
    };
    let mut budget = EvalBudget::unlimited();
    let (learners, seeded) = Population::seeded(&g, k, params.population_size, &tabu, &mut rng, &mut budget);
    let mut class = ClassState::new(learners);
    println!("seeded: teacher f = {} ({seeded:?})", class.best().conflict_count());
    if seeded != Progress::Completed {
        return;
    }
    for t in 1..=params.generations {
        let progress = class.generation(&g, &tabu, &mut rng, &mut budget);
        println!("generation {t:>2}: teacher f = {}", class.best().conflict_count());
        if progress != Progress::Completed {
            break;
        }
    }
    println!("{} fitness evaluations", budget.used());
}
