//! Artificial Bee Colony over colorings.
//!
//! Each food source is a coloring plus a counter of visits that failed to
//! improve it. A visit recolors a few conflicting vertices, runs TabuCol on
//! the result, and keeps it only if the conflict count drops. Phases run in
//! the order scouts, onlookers, employed bees.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::EvalBudget;
use crate::coloring::Coloring;
use crate::error::ParamError;
use crate::graph::Graph;
use crate::population::{Population, Progress};
use crate::tabucol::{tabucol, TabuParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcParams {
    /// Number of food sources; every source has one employed bee.
    pub colony_size: usize,
    pub generations: usize,
    pub onlooker_count: usize,
    pub scout_count: usize,
    /// Failed visits after which a source may be abandoned.
    pub abandonment_limit: usize,
    /// Vertices recolored per visit.
    pub neighbor_perturbation: usize,
}

impl Default for AbcParams {
    fn default() -> Self {
        Self::with_colony(20)
    }
}

impl AbcParams {
    /// Half of the colony are onlookers, one scout.
    pub fn with_colony(colony_size: usize) -> Self {
        Self {
            colony_size,
            generations: 1000,
            onlooker_count: (colony_size / 2).max(1),
            scout_count: 1,
            abandonment_limit: 10,
            neighbor_perturbation: 1,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let checks = [
            (self.colony_size, "colony_size"),
            (self.generations, "generations"),
            (self.onlooker_count, "onlooker_count"),
            (self.scout_count, "scout_count"),
            (self.abandonment_limit, "abandonment_limit"),
            (self.neighbor_perturbation, "neighbor_perturbation"),
        ];
        match checks.iter().find(|(v, _)| *v == 0) {
            Some((_, name)) => Err(ParamError::new(format!("{name} must be at least 1"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoodSource {
    pub solution: Coloring,
    pub trials: usize,
}

impl FoodSource {
    pub fn new(solution: Coloring) -> Self {
        Self { solution, trials: 0 }
    }
}

/// Neighbor of `s`: `count` distinct conflicting vertices (any vertices when
/// the coloring is proper) each move to a different random color.
pub fn neighbor<R: Rng + ?Sized>(g: &Graph, s: &Coloring, count: usize, rng: &mut R) -> Coloring {
    let mut out = s.clone();
    let k = s.k();
    if k < 2 {
        return out;
    }
    let pool: Vec<usize> = if s.is_proper() {
        (0..s.vertex_count()).collect()
    } else {
        s.conflicting_vertices()
    };
    for i in index::sample(rng, pool.len(), count.min(pool.len())) {
        let v = pool[i];
        let to = (out.color(v) + rng.random_range(1..k)) % k;
        out.recolor(g, v, to);
    }
    out
}

/// Selection weight `1 / (1 + f)` of every source.
pub fn onlooker_weights(sources: &[FoodSource]) -> Vec<f64> {
    sources
        .iter()
        .map(|s| 1.0 / (1.0 + s.solution.conflict_count() as f64))
        .collect()
}

/// One bee visit with greedy acceptance. Returns `None` when the budget
/// refused the candidate.
fn visit<R: Rng + ?Sized>(
    g: &Graph,
    source: &mut FoodSource,
    tabu: &TabuParams,
    params: &AbcParams,
    rng: &mut R,
    budget: &mut EvalBudget,
) -> Option<bool> {
    let candidate = neighbor(g, &source.solution, params.neighbor_perturbation, rng);
    if !budget.try_consume() {
        return None;
    }
    let refined = tabucol(g, candidate, tabu, rng, budget).best;
    if refined.conflict_count() < source.solution.conflict_count() {
        source.solution = refined;
        source.trials = 0;
        Some(true)
    } else {
        source.trials += 1;
        Some(false)
    }
}

fn after_visit(source: &FoodSource, budget: &EvalBudget) -> Option<Progress> {
    if source.solution.is_proper() {
        Some(Progress::Solved)
    } else if budget.is_exhausted() {
        Some(Progress::Exhausted)
    } else {
        None
    }
}

/// Every source receives one employed-bee visit.
pub fn employed_phase<R: Rng + ?Sized>(
    g: &Graph,
    sources: &mut [FoodSource],
    tabu: &TabuParams,
    params: &AbcParams,
    rng: &mut R,
    budget: &mut EvalBudget,
) -> Progress {
    for source in sources.iter_mut() {
        if source.solution.is_proper() {
            source.trials += 1;
            continue;
        }
        if visit(g, source, tabu, params, rng, budget).is_none() {
            return Progress::Exhausted;
        }
        if let Some(p) = after_visit(source, budget) {
            return p;
        }
    }
    Progress::Completed
}

/// `onlooker_count` visits to sources drawn proportionally to `1 / (1 + f)`.
pub fn onlooker_phase<R: Rng + ?Sized>(
    g: &Graph,
    sources: &mut [FoodSource],
    tabu: &TabuParams,
    params: &AbcParams,
    rng: &mut R,
    budget: &mut EvalBudget,
) -> Progress {
    for _ in 0..params.onlooker_count {
        let weights = WeightedIndex::new(onlooker_weights(sources)).expect("weights are positive");
        let source = &mut sources[weights.sample(rng)];
        if source.solution.is_proper() {
            source.trials += 1;
            continue;
        }
        if visit(g, source, tabu, params, rng, budget).is_none() {
            return Progress::Exhausted;
        }
        if let Some(p) = after_visit(source, budget) {
            return p;
        }
    }
    Progress::Completed
}

/// Replaces up to `scout_count` stale sources (most failed visits first)
/// with fresh random colorings. The current best source is never abandoned.
/// Returns the replaced indices, or `Err` with those replaced so far when the
/// budget ran out.
pub fn scout_phase<R: Rng + ?Sized>(
    g: &Graph,
    sources: &mut [FoodSource],
    params: &AbcParams,
    rng: &mut R,
    budget: &mut EvalBudget,
) -> Result<Vec<usize>, Vec<usize>> {
    let best = best_source(sources);
    let mut stale: Vec<usize> = (0..sources.len())
        .filter(|&i| i != best && sources[i].trials >= params.abandonment_limit)
        .collect();
    stale.sort_by_key(|&i| (std::cmp::Reverse(sources[i].trials), i));
    stale.truncate(params.scout_count);
    let mut replaced = Vec::with_capacity(stale.len());
    for i in stale {
        if !budget.try_consume() {
            return Err(replaced);
        }
        let k = sources[i].solution.k();
        sources[i] = FoodSource::new(Coloring::random(g, k, rng).expect("k >= 1"));
        replaced.push(i);
    }
    Ok(replaced)
}

fn best_source(sources: &[FoodSource]) -> usize {
    let mut best = 0;
    for (i, s) in sources.iter().enumerate() {
        if s.solution.conflict_count() < sources[best].solution.conflict_count() {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct AbcState {
    pub sources: Vec<FoodSource>,
    pub best: Coloring,
    pub generation: usize,
}

impl AbcState {
    pub fn new(population: Population) -> Self {
        let sources: Vec<FoodSource> = population.into_members().into_iter().map(FoodSource::new).collect();
        let best = sources[best_source(&sources)].solution.clone();
        Self {
            sources,
            best,
            generation: 0,
        }
    }

    pub fn best(&self) -> &Coloring {
        &self.best
    }

    fn refresh_best(&mut self) {
        let i = best_source(&self.sources);
        if self.sources[i].solution.conflict_count() < self.best.conflict_count() {
            self.best = self.sources[i].solution.clone();
        }
    }

    pub fn generation<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        params: &AbcParams,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> Progress {
        if self.best.is_proper() {
            self.generation += 1;
            return Progress::Solved;
        }
        let progress = self.run_phases(g, params, tabu, rng, budget);
        self.refresh_best();
        if progress != Progress::Exhausted {
            self.generation += 1;
        }
        progress
    }

    fn run_phases<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        params: &AbcParams,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> Progress {
        if scout_phase(g, &mut self.sources, params, rng, budget).is_err() {
            return Progress::Exhausted;
        }
        if self.sources.iter().any(|s| s.solution.is_proper()) {
            return Progress::Solved;
        }
        match onlooker_phase(g, &mut self.sources, tabu, params, rng, budget) {
            Progress::Completed => employed_phase(g, &mut self.sources, tabu, params, rng, budget),
            other => other,
        }
    }
}
