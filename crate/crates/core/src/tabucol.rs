//! TabuCol: tabu search over one-vertex recolor moves at a fixed budget k.
//!
//! The candidate neighborhood is every `(v, c)` with `v` conflicting and
//! `c != color(v)`. After moving `v` away from color `i`, the pair `(v, i)`
//! is tabu for `tenure` iterations. A tabu move is still admissible when it
//! would lead strictly below the best conflict count seen so far.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::EvalBudget;
use crate::coloring::{Coloring, Move};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Neighborhood {
    /// All moves of conflicting vertices.
    AllCritical,
    /// `count` random moves of conflicting vertices, drawn with replacement.
    Sampled(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabuParams {
    pub tenure: usize,
    /// Maximum number of iterations (moves) per invocation.
    pub max_iterations: usize,
    pub neighborhood: Neighborhood,
}

impl Default for TabuParams {
    fn default() -> Self {
        Self {
            tenure: 7,
            max_iterations: 100_000,
            neighborhood: Neighborhood::AllCritical,
        }
    }
}

impl TabuParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.tenure == 0 {
            return Err("tabu tenure must be at least 1".into());
        }
        if self.max_iterations == 0 {
            return Err("tabu depth must be at least 1".into());
        }
        if self.neighborhood == Neighborhood::Sampled(0) {
            return Err("sampled neighborhood needs at least one move".into());
        }
        Ok(())
    }
}

/// Tabu list realized as expiry iterations per `(vertex, color)` pair.
#[derive(Debug, Clone)]
pub struct TabuState {
    k: usize,
    expiry: Vec<u64>,
    iteration: u64,
    best_conflicts: usize,
}

impl TabuState {
    pub fn new(vertex_count: usize, k: usize, best_conflicts: usize) -> Self {
        Self {
            k,
            expiry: vec![0; vertex_count * k],
            iteration: 0,
            best_conflicts,
        }
    }

    #[inline]
    pub fn is_tabu(&self, v: usize, c: usize) -> bool {
        self.expiry[v * self.k + c] > self.iteration
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Aspiration level: the best conflict count seen so far.
    pub fn best_conflicts(&self) -> usize {
        self.best_conflicts
    }

    /// Records an applied move: forbids returning to the old color for
    /// `tenure` iterations and advances the clock.
    pub fn record(&mut self, m: &Move, conflicts_after: usize, tenure: usize) {
        self.expiry[m.vertex * self.k + m.from] = self.iteration + tenure as u64 + 1;
        self.iteration += 1;
        self.best_conflicts = self.best_conflicts.min(conflicts_after);
    }

    #[inline]
    fn aspirates(&self, current: usize, delta: i64) -> bool {
        (current as i64 + delta) < self.best_conflicts as i64
    }
}

/// Picks the minimum-delta admissible move; ties are broken uniformly.
/// Falls back to the least-bad tabu move when nothing is admissible.
/// Returns `None` only for a proper coloring.
pub fn select_move<R: Rng + ?Sized>(
    s: &Coloring,
    state: &TabuState,
    neighborhood: Neighborhood,
    rng: &mut R,
) -> Option<Move> {
    if s.is_proper() {
        return None;
    }
    assert!(s.critical_count() > 0, "conflicts without conflicting vertices");
    if s.k() < 2 {
        return None;
    }
    let current = s.conflict_count();
    let mut admissible = Reservoir::default();
    let mut fallback = Reservoir::default();
    let mut consider = |v: usize, c: usize, rng: &mut R| {
        let m = s.plan_move(v, c);
        if !state.is_tabu(v, c) || state.aspirates(current, m.delta) {
            admissible.offer(m, rng);
        } else {
            fallback.offer(m, rng);
        }
    };

    match neighborhood {
        Neighborhood::AllCritical => {
            for v in s.critical_vertices() {
                let own = s.color(v);
                for c in (0..s.k()).filter(|&c| c != own) {
                    consider(v, c, rng);
                }
            }
        }
        Neighborhood::Sampled(count) => {
            let critical: Vec<usize> = s.critical_vertices().collect();
            for _ in 0..count {
                let &v = critical.choose(rng).expect("non-empty");
                let c = (s.color(v) + rng.random_range(1..s.k())) % s.k();
                consider(v, c, rng);
            }
        }
    }
    admissible.best.or(fallback.best)
}

/// Minimum-delta tracker with uniform tie-breaking.
#[derive(Default)]
struct Reservoir {
    best: Option<Move>,
    ties: u32,
}

impl Reservoir {
    #[inline]
    fn offer<R: Rng + ?Sized>(&mut self, m: Move, rng: &mut R) {
        match self.best {
            Some(b) if m.delta > b.delta => {}
            Some(b) if m.delta == b.delta => {
                self.ties += 1;
                if rng.random_range(0..self.ties) == 0 {
                    self.best = Some(m);
                }
            }
            _ => {
                self.best = Some(m);
                self.ties = 1;
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct TabuOutcome {
    pub best: Coloring,
    pub iterations: usize,
}

/// A resumable TabuCol run. [`tabucol`] drives it to completion; tests and
/// tracing tools can step it one move at a time.
pub struct TabuSearch<'g> {
    graph: &'g Graph,
    params: TabuParams,
    current: Coloring,
    state: TabuState,
    best_colors: Vec<usize>,
    best_conflicts: usize,
    best_is_current: bool,
    iterations: usize,
}

impl<'g> TabuSearch<'g> {
    pub fn new(graph: &'g Graph, start: Coloring, params: TabuParams) -> Self {
        let f = start.conflict_count();
        Self {
            graph,
            params,
            state: TabuState::new(start.vertex_count(), start.k(), f),
            best_colors: start.colors().to_vec(),
            best_conflicts: f,
            best_is_current: true,
            current: start,
            iterations: 0,
        }
    }

    pub fn current(&self) -> &Coloring {
        &self.current
    }

    pub fn state(&self) -> &TabuState {
        &self.state
    }

    pub fn best_conflicts(&self) -> usize {
        self.best_conflicts
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Zero conflicts, the iteration cap, or a single color (no moves exist).
    pub fn is_finished(&self) -> bool {
        self.best_conflicts == 0 || self.iterations >= self.params.max_iterations || self.current.k() < 2
    }

    /// Applies one move. Returns `None` when the search is finished or no
    /// move exists.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<Move> {
        if self.is_finished() {
            return None;
        }
        let m = select_move(&self.current, &self.state, self.params.neighborhood, rng)?;
        self.current.recolor(self.graph, m.vertex, m.to);
        let f = self.current.conflict_count();
        self.state.record(&m, f, self.params.tenure);
        self.iterations += 1;
        if f < self.best_conflicts {
            self.best_conflicts = f;
            self.best_colors.copy_from_slice(self.current.colors());
            self.best_is_current = true;
        } else {
            self.best_is_current = false;
        }
        Some(m)
    }

    /// Steps until finished or the budget runs out, charging one evaluation
    /// per move.
    pub fn run<R: Rng + ?Sized>(mut self, rng: &mut R, budget: &mut EvalBudget) -> TabuOutcome {
        while !self.is_finished() && budget.try_consume() {
            if self.step(rng).is_none() {
                break;
            }
        }
        self.into_outcome()
    }

    pub fn into_outcome(self) -> TabuOutcome {
        let best = if self.best_is_current {
            self.current
        } else {
            Coloring::from_assignment(self.graph, self.current.k(), self.best_colors)
                .expect("best snapshot shares the current budget")
        };
        TabuOutcome {
            best,
            iterations: self.iterations,
        }
    }
}

/// Runs TabuCol from `start` and returns the best coloring met. Stops at
/// zero conflicts, after `max_iterations` moves, or when `budget` is spent.
pub fn tabucol<R: Rng + ?Sized>(
    g: &Graph,
    start: Coloring,
    params: &TabuParams,
    rng: &mut R,
    budget: &mut EvalBudget,
) -> TabuOutcome {
    TabuSearch::new(g, start, *params).run(rng, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::count_conflicts;
    use crate::graph::generate::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fresh(s: &Coloring) -> TabuState {
        TabuState::new(s.vertex_count(), s.k(), s.conflict_count())
    }

    #[test]
    fn no_improving_move_on_k3_with_two_colors() {
        let g = complete(3);
        let s = Coloring::from_assignment(&g, 2, vec![0, 0, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let m = select_move(&s, &fresh(&s), Neighborhood::AllCritical, &mut rng).unwrap();
            assert!(m.delta >= 0);
        }
    }

    #[test]
    fn path_center_is_best_move() {
        let g = path(3);
        let s = Coloring::from_assignment(&g, 2, vec![0, 0, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = select_move(&s, &fresh(&s), Neighborhood::AllCritical, &mut rng).unwrap();
        assert_eq!((m.vertex, m.to, m.delta), (1, 1, -2));
    }

    #[test]
    fn selected_delta_is_exhaustive_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let g = gnp(15, 0.4, &mut rng);
            let s = Coloring::random(&g, 4, &mut rng).unwrap();
            if s.is_proper() {
                continue;
            }
            // Oracle: apply every candidate on a copy and recount from the edge list.
            let base = count_conflicts(&g, s.colors()) as i64;
            let mut oracle = i64::MAX;
            for v in 0..15 {
                let in_conflict = g.neighbors(v).iter().any(|&u| s.color(u) == s.color(v));
                if !in_conflict {
                    continue;
                }
                for c in (0..4).filter(|&c| c != s.color(v)) {
                    let mut colors = s.colors().to_vec();
                    colors[v] = c;
                    oracle = oracle.min(count_conflicts(&g, &colors) as i64 - base);
                }
            }
            let m = select_move(&s, &fresh(&s), Neighborhood::AllCritical, &mut rng).unwrap();
            assert_eq!(m.delta, oracle);
        }
    }

    #[test]
    fn bipartite_k33_always_solved() {
        let g = complete_bipartite(3, 3);
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = Coloring::random(&g, 2, &mut rng).unwrap();
            let out = tabucol(&g, s, &TabuParams::default(), &mut rng, &mut EvalBudget::unlimited());
            assert_eq!(out.best.conflict_count(), 0, "seed {seed}");
            assert!(out.best.distinct_colors() <= 2);
        }
    }

    #[test]
    fn proper_input_is_untouched() {
        let g = complete(4);
        let s = Coloring::from_assignment(&g, 4, vec![3, 1, 0, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut budget = EvalBudget::unlimited();
        let out = tabucol(&g, s.clone(), &TabuParams::default(), &mut rng, &mut budget);
        assert_eq!(out.best, s);
        assert_eq!(out.iterations, 0);
        assert_eq!(budget.used(), 0);
    }

    #[test]
    fn k4_with_three_colors_ends_at_one_conflict() {
        let g = complete(4);
        let params = TabuParams {
            max_iterations: 2_000,
            ..TabuParams::default()
        };
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = Coloring::random(&g, 3, &mut rng).unwrap();
            let out = tabucol(&g, s, &params, &mut rng, &mut EvalBudget::unlimited());
            assert_eq!(out.best.conflict_count(), 1);
            assert_eq!(out.iterations, 2_000);
        }
    }

    #[test]
    fn budget_caps_iterations() {
        let g = complete(6);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = Coloring::random(&g, 2, &mut rng).unwrap();
        let mut budget = EvalBudget::with_limit(37);
        let out = tabucol(&g, s, &TabuParams::default(), &mut rng, &mut budget);
        assert_eq!(out.iterations, 37);
        assert_eq!(budget.used(), 37);
    }

    #[test]
    fn sampled_neighborhood_still_solves_easy_cases() {
        let g = cycle(10);
        let params = TabuParams {
            neighborhood: Neighborhood::Sampled(8),
            ..TabuParams::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = Coloring::random(&g, 3, &mut rng).unwrap();
        let out = tabucol(&g, s, &params, &mut rng, &mut EvalBudget::unlimited());
        assert!(out.best.is_proper());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = gnp(40, 0.5, &mut rng);
        let s = Coloring::random(&g, 6, &mut rng).unwrap();
        let run = |seed| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let params = TabuParams {
                max_iterations: 5_000,
                ..TabuParams::default()
            };
            tabucol(&g, s.clone(), &params, &mut r, &mut EvalBudget::unlimited())
        };
        let (a, b) = (run(1), run(1));
        assert_eq!(a.best, b.best);
        assert_eq!(a.iterations, b.iterations);
    }
}
