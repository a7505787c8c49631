//! Parse a DIMACS file (or a built-in Petersen graph) and print its
//! statistics and the DSATUR upper bound.
//!
//!     cargo run --example parse_and_inspect -- path/to/instance.col

use ensemble_color::bench::{instance_name, Registry};
use ensemble_color::graph::{generate, parse_dimacs_with_warnings};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (name, g) = match std::env::args().nth(1) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)?;
            let (g, warnings) = parse_dimacs_with_warnings(&text)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            (instance_name(path.as_ref()), g)
        }
        None => ("petersen".to_string(), generate::petersen()),
    };

    println!("{name}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    if let Ok(d) = g.density() {
        println!("density {d:.4}, max degree {}", g.max_degree());
    }
    let colors = g.dsatur();
    println!("DSATUR uses {} colors", g.greedy_upper_bound());
    println!("first colors: {:?}", &colors[..colors.len().min(10)]);
    if let Some(e) = Registry::lookup(&name) {
        println!("best known k = {}", e.best_known_k);
    }
    Ok(())
}
