//! Write a witness file for a solved instance, read it back and check it
//! edge by edge, then break it on purpose.

use ensemble_color::bench::{parse_witness, verify_colors, witness_document, Verdict};
use ensemble_color::graph::generate::petersen;
use ensemble_color::{solve, EnsembleConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = petersen();
    let config = EnsembleConfig {
        island_count: 3,
        generations: 20,
        ..EnsembleConfig::default()
    };
    let result = solve(&g, &config)?;
    let witness = result.witness.expect("the descent always keeps a legal coloring");
    let doc = witness_document("petersen", &witness, config.base_seed);
    print!("{doc}");

    let mut colors = parse_witness(&doc)?;
    println!("{:?}", verify_colors(&g, &colors));

    let (u, v) = g.edges().next().unwrap();
    colors[v] = colors[u];
    match verify_colors(&g, &colors) {
        Verdict::Conflicts(edges) => println!("after recoloring vertex {}: conflicts on {edges:?}", v + 1),
        other => println!("{other:?}"),
    }
    Ok(())
}
