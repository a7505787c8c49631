//! Fixed-size sets of colorings and the vertex-subset transfer operator that
//! the population searches build on.

use rand::seq::index;
use rand::Rng;

use crate::budget::EvalBudget;
use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::tabucol::{tabucol, TabuParams};

/// Whether a generation ran to the end, stopped at a proper coloring, or was
/// cut short by the evaluation budget or deadline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Progress {
    Completed,
    Solved,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    members: Vec<Coloring>,
}

impl Population {
    pub fn new(members: Vec<Coloring>) -> Self {
        assert!(!members.is_empty(), "population must not be empty");
        Self { members }
    }

    /// Random colorings, each refined by TabuCol. Stops early (with fewer
    /// members) when the budget runs out or a member reaches zero conflicts.
    /// The first member is always created.
    pub fn seeded<R: Rng + ?Sized>(
        g: &Graph,
        k: usize,
        size: usize,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> (Self, Progress) {
        let mut members = Vec::with_capacity(size);
        for i in 0..size {
            if i == 0 {
                budget.consume_forced();
            } else if !budget.try_consume() {
                return (Self::new(members), Progress::Exhausted);
            }
            let s = Coloring::random(g, k, rng).expect("k >= 1");
            let refined = tabucol(g, s, tabu, rng, budget).best;
            let solved = refined.is_proper();
            members.push(refined);
            if solved {
                return (Self::new(members), Progress::Solved);
            }
            if budget.is_exhausted() {
                return (Self::new(members), Progress::Exhausted);
            }
        }
        (Self::new(members), Progress::Completed)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Coloring] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &Coloring {
        &self.members[i]
    }

    pub fn replace(&mut self, i: usize, s: Coloring) {
        self.members[i] = s;
    }

    /// Index of the fewest-conflict member; lowest index on ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate() {
            if m.conflict_count() < self.members[best].conflict_count() {
                best = i;
            }
        }
        best
    }

    /// Index of the most-conflict member; highest index on ties.
    pub fn worst_index(&self) -> usize {
        let mut worst = 0;
        for (i, m) in self.members.iter().enumerate() {
            if m.conflict_count() >= self.members[worst].conflict_count() {
                worst = i;
            }
        }
        worst
    }

    pub fn best(&self) -> &Coloring {
        &self.members[self.best_index()]
    }

    pub fn into_members(self) -> Vec<Coloring> {
        self.members
    }
}

/// Copy of `recipient` in which `count` uniformly chosen distinct vertices
/// take `donor`'s colors. `count` is clamped to the vertex count.
pub fn transfer_subset<R: Rng + ?Sized>(
    g: &Graph,
    recipient: &Coloring,
    donor: &Coloring,
    count: usize,
    rng: &mut R,
) -> Coloring {
    let n = recipient.vertex_count();
    let mut out = recipient.clone();
    for v in index::sample(rng, n, count.min(n)) {
        out.recolor(g, v, donor.color(v));
    }
    out
}

/// `ceil(fraction * n)`, at least 1 and at most `n`.
pub fn subset_size(fraction: f64, n: usize) -> usize {
    ((fraction * n as f64).ceil() as usize).clamp(1, n.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn full_transfer_copies_donor() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = gnp(20, 0.5, &mut rng);
        let a = Coloring::random(&g, 4, &mut rng).unwrap();
        let b = Coloring::random(&g, 4, &mut rng).unwrap();
        let c = transfer_subset(&g, &b, &a, 20, &mut rng);
        assert_eq!(c, a);
        assert!(c.is_consistent(&g));
    }

    #[test]
    fn best_and_worst_indices() {
        let g = complete(3);
        let mk = |c: Vec<usize>| Coloring::from_assignment(&g, 3, c).unwrap();
        let p = Population::new(vec![
            mk(vec![0, 0, 0]),
            mk(vec![0, 1, 2]),
            mk(vec![0, 0, 1]),
            mk(vec![0, 1, 2]),
        ]);
        assert_eq!(p.best_index(), 1);
        assert_eq!(p.worst_index(), 0);
    }

    #[test]
    fn subset_size_clamps() {
        assert_eq!(subset_size(0.1, 125), 13);
        assert_eq!(subset_size(0.0, 10), 1);
        assert_eq!(subset_size(2.0, 10), 10);
    }
}
