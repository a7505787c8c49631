//! TabuCol on its own: lower k on a random graph until the search stalls,
//! then trace a few moves of a stepwise run.

use ensemble_color::graph::generate::gnp;
use ensemble_color::tabucol::TabuSearch;
use ensemble_color::{tabucol, Coloring, EvalBudget, TabuParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = gnp(150, 0.1, &mut rng);
    let params = TabuParams::default();

    let mut k = g.greedy_upper_bound();
    println!("DSATUR bound: {k}");
    loop {
        let start = Coloring::random(&g, k, &mut rng).unwrap();
        let mut budget = EvalBudget::unlimited();
        let out = tabucol(&g, start, &params, &mut rng, &mut budget);
        println!(
            "k = {k:>2}: best f = {:>3} after {:>6} moves",
            out.best.conflict_count(),
            out.iterations
        );
        if !out.best.is_proper() || k == 1 {
            break;
        }
        k -= 1;
    }

    let start = Coloring::random(&g, k, &mut rng).unwrap();
    let mut search = TabuSearch::new(&g, start, params);
    for _ in 0..5 {
        let f = search.current().conflict_count();
        if let Some(m) = search.step(&mut rng) {
            println!("f = {f:>3}: v{} {} -> {} (delta {:+})", m.vertex, m.from, m.to, m.delta);
        }
    }
}
