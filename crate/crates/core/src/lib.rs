//! Graph coloring with an island-parallel ensemble of population
//! metaheuristics (Harris Hawk Optimization, Artificial Bee Colony,
//! Teaching-Learning-Based Optimization), each hybridized with TabuCol.
//!
//! Islands search at a fixed color budget `k` and report their best coloring
//! to a master reducer; [`island::solve`] lowers `k` from the DSATUR bound
//! until the ensemble fails.

pub mod abc;
pub mod bench;
pub mod budget;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod hho;
pub mod island;
pub mod population;
pub mod tabucol;
pub mod tlbo;

pub use budget::EvalBudget;
pub use coloring::{Coloring, Move};
pub use error::ParamError;
pub use graph::{parse_dimacs, Graph};
pub use island::{solve, EnsembleConfig, IslandReport, Metaheuristic, SolveResult};
pub use tabucol::{tabucol, TabuParams};
