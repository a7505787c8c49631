//! The ensemble engine: islands, the master reducer and the descending-k
//! driver.
//!
//! Island `i` runs HHO, ABC or TLBO (round-robin on `i mod 3`) from a random
//! stream seeded by `(base_seed, i, k)`. Islands never talk to each other;
//! each sends exactly one [`IslandReport`] to the master per `k`. Because
//! nothing else crosses island boundaries, sequential and concurrent
//! execution produce the same reports.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abc::{AbcParams, AbcState};
use crate::budget::EvalBudget;
use crate::coloring::{count_conflicts, Coloring};
use crate::error::ParamError;
use crate::graph::Graph;
use crate::hho::{HhoParams, HhoState};
use crate::population::{Population, Progress};
use crate::tabucol::TabuParams;
use crate::tlbo::{ClassState, TlboParams};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("master received no island reports")]
    NoReports,
    #[error("witness for k = {k} has {conflicts} conflicting edges")]
    InvalidWitness { k: usize, conflicts: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metaheuristic {
    Hho,
    Abc,
    Tlbo,
}

impl Metaheuristic {
    pub fn name(self) -> &'static str {
        match self {
            Metaheuristic::Hho => "HHO",
            Metaheuristic::Abc => "ABC",
            Metaheuristic::Tlbo => "TLBO",
        }
    }
}

/// Round-robin: `id mod 3` selects HHO, ABC, TLBO.
pub fn assign_metaheuristic(island_id: usize) -> Metaheuristic {
    match island_id % 3 {
        0 => Metaheuristic::Hho,
        1 => Metaheuristic::Abc,
        _ => Metaheuristic::Tlbo,
    }
}

/// SplitMix64 finalizer; a bijection on `u64`.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of island `island_id` at color budget `k`. For fixed `base_seed`
/// and `k` the map from island id is injective, since every step is a
/// bijection of the previous value.
pub fn island_seed(base_seed: u64, island_id: usize, k: usize) -> u64 {
    mix(mix(mix(base_seed) ^ island_id as u64) ^ (k as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExecutionMode {
    Sequential,
    Concurrent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    /// Worker islands; the master is not counted.
    pub island_count: usize,
    /// Generations per island and `k`. Overrides the per-metaheuristic blocks.
    pub generations: usize,
    /// Population size of every island. Overrides the per-metaheuristic blocks.
    pub population_size: usize,
    pub base_seed: u64,
    pub tabu: TabuParams,
    pub hho: HhoParams,
    pub abc: AbcParams,
    pub tlbo: TlboParams,
    /// Wall-clock cap for a whole [`solve`] call.
    pub time_limit: Option<Duration>,
    /// Fitness evaluations allowed per island and per `k`.
    pub eval_budget: Option<u64>,
    /// Search only this `k` instead of descending from the greedy bound.
    pub target_k: Option<usize>,
    pub mode: ExecutionMode,
    /// Worker threads in concurrent mode; defaults to the available cores.
    pub threads: Option<usize>,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            island_count: 63,
            generations: 1000,
            population_size: 20,
            base_seed: 0,
            tabu: TabuParams::default(),
            hho: HhoParams::default(),
            abc: AbcParams::default(),
            tlbo: TlboParams::default(),
            time_limit: None,
            eval_budget: None,
            target_k: None,
            mode: ExecutionMode::Concurrent,
            threads: None,
        }
    }
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.island_count == 0 {
            return Err(ParamError::new("island_count must be at least 1"));
        }
        if self.target_k == Some(0) {
            return Err(ParamError::new("target k must be at least 1"));
        }
        if self.eval_budget == Some(0) {
            return Err(ParamError::new("evaluation budget must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(ParamError::new("threads must be at least 1"));
        }
        self.tabu.validate().map_err(ParamError::new)?;
        self.hho_params().validate()?;
        self.abc_params().validate()?;
        self.tlbo_params().validate()?;
        Ok(())
    }

    pub fn hho_params(&self) -> HhoParams {
        HhoParams {
            population_size: self.population_size,
            generations: self.generations,
            ..self.hho
        }
    }

    /// The colony keeps its own onlooker/scout counts unless they were left
    /// at the defaults for a different colony size.
    pub fn abc_params(&self) -> AbcParams {
        let defaults = AbcParams::with_colony(self.abc.colony_size);
        let mut p = AbcParams {
            colony_size: self.population_size,
            generations: self.generations,
            ..self.abc
        };
        if self.abc.onlooker_count == defaults.onlooker_count {
            p.onlooker_count = AbcParams::with_colony(self.population_size).onlooker_count;
        }
        p
    }

    pub fn tlbo_params(&self) -> TlboParams {
        TlboParams {
            population_size: self.population_size,
            generations: self.generations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Solved,
    Generations,
    EvalBudget,
    TimeLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IslandReport {
    pub island_id: usize,
    pub metaheuristic: Metaheuristic,
    pub k: usize,
    pub best: Coloring,
    pub fitness_evaluations: u64,
    pub generations_completed: usize,
    pub stop: StopReason,
    pub wall_time: Duration,
}

/// Runs one island at budget `k`. The deadline, if any, is `time_limit`
/// from now.
pub fn run_island(g: &Graph, k: usize, island_id: usize, config: &EnsembleConfig) -> IslandReport {
    let deadline = config.time_limit.map(|d| Instant::now() + d);
    run_island_until(g, k, island_id, config, deadline)
}

pub fn run_island_until(
    g: &Graph,
    k: usize,
    island_id: usize,
    config: &EnsembleConfig,
    deadline: Option<Instant>,
) -> IslandReport {
    assert!(k >= 1, "color budget must be positive");
    let started = Instant::now();
    let metaheuristic = assign_metaheuristic(island_id);
    let mut rng = ChaCha8Rng::seed_from_u64(island_seed(config.base_seed, island_id, k));
    let mut budget = EvalBudget::new(config.eval_budget, deadline);
    let tabu = &config.tabu;

    let (population, seeded) = Population::seeded(g, k, config.population_size, tabu, &mut rng, &mut budget);
    let mut generations_completed = 0;
    let mut last = seeded;

    let best = if seeded != Progress::Completed {
        population.best().clone()
    } else {
        let mut drive = |step: &mut dyn FnMut(&mut EvalBudget) -> Progress| {
            while generations_completed < config.generations {
                last = step(&mut budget);
                if last != Progress::Exhausted {
                    generations_completed += 1;
                }
                if last != Progress::Completed {
                    break;
                }
            }
        };
        match metaheuristic {
            Metaheuristic::Hho => {
                let params = config.hho_params();
                let mut state = HhoState::new(population, params.generations);
                drive(&mut |b| state.generation(g, &params, tabu, &mut rng, b));
                state.rabbit
            }
            Metaheuristic::Abc => {
                let params = config.abc_params();
                let mut state = AbcState::new(population);
                drive(&mut |b| state.generation(g, &params, tabu, &mut rng, b));
                state.best
            }
            Metaheuristic::Tlbo => {
                let mut state = ClassState::new(population);
                drive(&mut |b| state.generation(g, tabu, &mut rng, b));
                state.teacher
            }
        }
    };

    let stop = if best.is_proper() {
        StopReason::Solved
    } else if budget.timed_out() {
        StopReason::TimeLimit
    } else if last == Progress::Exhausted {
        StopReason::EvalBudget
    } else {
        StopReason::Generations
    };
    IslandReport {
        island_id,
        metaheuristic,
        k,
        best,
        fitness_evaluations: budget.used(),
        generations_completed,
        stop,
        wall_time: started.elapsed(),
    }
}

/// Best report: fewest conflicts, lowest island id on ties.
pub fn master_reduce(reports: &[IslandReport]) -> Result<IslandReport, EngineError> {
    reports
        .iter()
        .min_by_key(|r| (r.best.conflict_count(), r.island_id))
        .cloned()
        .ok_or(EngineError::NoReports)
}

/// Runs every island at `k` and returns their reports ordered by island id.
pub fn run_islands(g: &Graph, k: usize, config: &EnsembleConfig, deadline: Option<Instant>) -> Vec<IslandReport> {
    let islands = config.island_count;
    match config.mode {
        ExecutionMode::Sequential => (0..islands)
            .map(|id| run_island_until(g, k, id, config, deadline))
            .collect(),
        ExecutionMode::Concurrent => {
            let workers = config
                .threads
                .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
                .min(islands);
            let next = AtomicUsize::new(0);
            let (tx, rx) = mpsc::channel();
            thread::scope(|scope| {
                for _ in 0..workers {
                    let tx = tx.clone();
                    let next = &next;
                    scope.spawn(move || loop {
                        let id = next.fetch_add(1, Ordering::Relaxed);
                        if id >= islands {
                            break;
                        }
                        let report = run_island_until(g, k, id, config, deadline);
                        if tx.send(report).is_err() {
                            break;
                        }
                    });
                }
                drop(tx);
                let mut reports: Vec<IslandReport> = rx.iter().collect();
                reports.sort_by_key(|r| r.island_id);
                reports
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KAttempt {
    pub k: usize,
    pub success: bool,
    pub best_conflicts: usize,
    pub reports: Vec<IslandReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    /// Starting budget: the DSATUR bound, or the requested target.
    pub initial_k: usize,
    /// Smallest k with a proper coloring. `None` only when a target k failed.
    pub smallest_legal_k: Option<usize>,
    pub witness: Option<Coloring>,
    pub per_k_history: Vec<KAttempt>,
    pub total_fitness_evaluations: u64,
}

impl SolveResult {
    pub fn success(&self) -> bool {
        self.witness.is_some()
    }

    /// JSON with every wall-clock field zeroed. Equal configurations give
    /// equal bytes.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut copy = self.clone();
        for attempt in &mut copy.per_k_history {
            for r in &mut attempt.reports {
                r.wall_time = Duration::ZERO;
            }
        }
        serde_json::to_vec(&copy).expect("result serializes")
    }
}

/// Sum of fitness evaluations over every island report of every attempt.
pub fn total_evaluations(result: &SolveResult) -> u64 {
    result
        .per_k_history
        .iter()
        .flat_map(|a| &a.reports)
        .map(|r| r.fitness_evaluations)
        .sum()
}

fn attempt(g: &Graph, k: usize, config: &EnsembleConfig, deadline: Option<Instant>) -> Result<KAttempt, EngineError> {
    let reports = run_islands(g, k, config, deadline);
    let best = master_reduce(&reports)?;
    let success = best.best.is_proper();
    if success {
        let conflicts = count_conflicts(g, best.best.colors());
        if conflicts != 0 {
            return Err(EngineError::InvalidWitness { k, conflicts });
        }
    }
    log::debug!(
        "k = {k}: best f = {} ({})",
        best.best.conflict_count(),
        if success { "legal" } else { "failed" }
    );
    Ok(KAttempt {
        k,
        success,
        best_conflicts: best.best.conflict_count(),
        reports,
    })
}

fn best_of(attempt: &KAttempt) -> Coloring {
    master_reduce(&attempt.reports).expect("attempt has reports").best
}

/// Finds the smallest k the ensemble can color. Starts at the DSATUR bound
/// and lowers k after every success; the first failure ends the descent.
/// With `target_k` set, only that budget is tried.
pub fn solve(g: &Graph, config: &EnsembleConfig) -> Result<SolveResult, EngineError> {
    config.validate()?;
    let deadline = config.time_limit.map(|d| Instant::now() + d);
    let mut history = Vec::new();

    let (initial_k, smallest_legal_k, witness) = if let Some(k) = config.target_k {
        let a = attempt(g, k, config, deadline)?;
        let witness = a.success.then(|| best_of(&a));
        history.push(a);
        (k, witness.as_ref().map(|_| k), witness)
    } else {
        let start_k = g.greedy_upper_bound();
        let mut found: Option<(usize, Coloring)> = None;
        let mut k = start_k;
        loop {
            let a = attempt(g, k, config, deadline)?;
            let success = a.success;
            if success {
                found = Some((k, best_of(&a)));
            }
            history.push(a);
            if !success || k == 1 {
                break;
            }
            k -= 1;
        }
        let (k, witness) = found.unwrap_or_else(|| {
            // The ensemble failed even at the greedy bound; DSATUR's own
            // coloring is still a legal witness there.
            let colors = g.dsatur();
            (
                start_k,
                Coloring::from_assignment(g, start_k, colors).expect("DSATUR fits its bound"),
            )
        });
        (start_k, Some(k), Some(witness))
    };

    let mut result = SolveResult {
        initial_k,
        smallest_legal_k,
        witness,
        per_k_history: history,
        total_fitness_evaluations: 0,
    };
    result.total_fitness_evaluations = total_evaluations(&result);
    Ok(result)
}
