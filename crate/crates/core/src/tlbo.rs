//! Teaching-learning-based optimization over colorings.
//!
//! Both phases recombine colorings with a greedy partition crossover and
//! refine the child with TabuCol. In the teacher phase every learner is
//! crossed with the best member; in the learner phase random pairs are
//! crossed and the child evicts the worst member when it is no worse.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::EvalBudget;
use crate::coloring::{Coloring, ColoringError};
use crate::error::ParamError;
use crate::graph::Graph;
use crate::population::{Population, Progress};
use crate::tabucol::{tabucol, TabuParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TlboParams {
    pub population_size: usize,
    pub generations: usize,
}

impl Default for TlboParams {
    fn default() -> Self {
        Self {
            population_size: 20,
            generations: 1000,
        }
    }
}

impl TlboParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.population_size < 2 {
            return Err(ParamError::new("TLBO needs at least two learners"));
        }
        if self.generations == 0 {
            return Err(ParamError::new("TLBO needs at least one generation"));
        }
        Ok(())
    }
}

/// Greedy partition crossover. Slots `0..k` alternate between the parents
/// (first parent on even slots); each slot takes the parent's largest class
/// among the vertices not yet placed, lowest class index on ties. Vertices
/// left over after `k` slots get random colors.
pub fn partition_crossover<R: Rng + ?Sized>(
    g: &Graph,
    p1: &Coloring,
    p2: &Coloring,
    rng: &mut R,
) -> Result<Coloring, ColoringError> {
    if p1.k() != p2.k() || p1.vertex_count() != p2.vertex_count() || p1.vertex_count() != g.vertex_count() {
        return Err(ColoringError::Incompatible(
            format!("k={} n={}", p1.k(), p1.vertex_count()),
            format!("k={} n={}", p2.k(), p2.vertex_count()),
        ));
    }
    let k = p1.k();
    let n = p1.vertex_count();
    let parents = [p1, p2];
    let classes = [p1.color_classes(), p2.color_classes()];
    let mut remaining: [Vec<usize>; 2] = [
        classes[0].iter().map(Vec::len).collect(),
        classes[1].iter().map(Vec::len).collect(),
    ];
    let mut child = vec![usize::MAX; n];

    for slot in 0..k {
        let side = slot % 2;
        let mut pick = 0;
        for c in 1..k {
            if remaining[side][c] > remaining[side][pick] {
                pick = c;
            }
        }
        if remaining[side][pick] == 0 {
            break;
        }
        for &v in &classes[side][pick] {
            if child[v] == usize::MAX {
                child[v] = slot;
                remaining[0][parents[0].color(v)] -= 1;
                remaining[1][parents[1].color(v)] -= 1;
            }
        }
    }
    for c in child.iter_mut().filter(|c| **c == usize::MAX) {
        *c = rng.random_range(0..k);
    }
    Coloring::from_assignment(g, k, child)
}

#[derive(Debug, Clone)]
pub struct ClassState {
    pub learners: Population,
    pub teacher: Coloring,
    pub generation: usize,
}

impl ClassState {
    pub fn new(learners: Population) -> Self {
        let teacher = learners.best().clone();
        Self {
            learners,
            teacher,
            generation: 0,
        }
    }

    pub fn best(&self) -> &Coloring {
        &self.teacher
    }

    fn reselect_teacher(&mut self) {
        self.teacher = self.learners.best().clone();
    }

    /// Crosses the teacher with every other learner; the refined child
    /// replaces that learner when it is no worse.
    pub fn teacher_phase<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> Progress {
        let teacher_idx = self.learners.best_index();
        let mut progress = Progress::Completed;
        for i in 0..self.learners.len() {
            if i == teacher_idx {
                continue;
            }
            let child = partition_crossover(g, &self.teacher, self.learners.get(i), rng).expect("same graph and k");
            if !budget.try_consume() {
                progress = Progress::Exhausted;
                break;
            }
            let child = tabucol(g, child, tabu, rng, budget).best;
            if child.conflict_count() <= self.learners.get(i).conflict_count() {
                let solved = child.is_proper();
                self.learners.replace(i, child);
                if solved {
                    progress = Progress::Solved;
                    break;
                }
            }
            if budget.is_exhausted() {
                progress = Progress::Exhausted;
                break;
            }
        }
        self.reselect_teacher();
        progress
    }

    /// `population_size` times: cross two distinct random learners and let
    /// the refined child evict the worst member if it is no worse.
    pub fn learner_phase<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> Progress {
        let n = self.learners.len();
        let mut progress = Progress::Completed;
        for _ in 0..n {
            let a = rng.random_range(0..n);
            let mut b = rng.random_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let child =
                partition_crossover(g, self.learners.get(a), self.learners.get(b), rng).expect("same graph and k");
            if !budget.try_consume() {
                progress = Progress::Exhausted;
                break;
            }
            let child = tabucol(g, child, tabu, rng, budget).best;
            let worst = self.learners.worst_index();
            if child.conflict_count() <= self.learners.get(worst).conflict_count() {
                let solved = child.is_proper();
                self.learners.replace(worst, child);
                if solved {
                    progress = Progress::Solved;
                    break;
                }
            }
            if budget.is_exhausted() {
                progress = Progress::Exhausted;
                break;
            }
        }
        self.reselect_teacher();
        progress
    }

    pub fn generation<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> Progress {
        if self.teacher.is_proper() {
            self.generation += 1;
            return Progress::Solved;
        }
        let progress = match self.teacher_phase(g, tabu, rng, budget) {
            Progress::Completed => self.learner_phase(g, tabu, rng, budget),
            other => other,
        };
        if progress != Progress::Exhausted {
            self.generation += 1;
        }
        progress
    }
}
