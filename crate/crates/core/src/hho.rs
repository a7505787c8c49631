//! Discrete Harris Hawk Optimization over colorings.
//!
//! Every phase is a color transfer from a donor into a hawk over a random
//! vertex subset. The subset size encodes how hard the phase perturbs:
//! exploration > high-perturbation besiege > soft besiege > hard besiege
//! (one vertex) >= minimal attack. Candidates are refined by TabuCol and
//! replace their hawk when they are no worse.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::EvalBudget;
use crate::coloring::Coloring;
use crate::error::ParamError;
use crate::graph::Graph;
use crate::population::{subset_size, transfer_subset, Population, Progress};
use crate::tabucol::{tabucol, TabuParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HhoParams {
    pub population_size: usize,
    pub generations: usize,
    /// Share of vertices moved by the exploration operators and, scaled by
    /// `J / 2`, by soft besiege.
    pub exploration_fraction: f64,
    /// Share of vertices moved by the high-perturbation besiege.
    pub besiege_fraction: f64,
    /// Vertices moved by the minimal attack on a random hawk.
    pub minimal_subset_size: usize,
}

impl Default for HhoParams {
    fn default() -> Self {
        Self {
            population_size: 20,
            generations: 1000,
            exploration_fraction: 0.1,
            besiege_fraction: 0.3,
            minimal_subset_size: 1,
        }
    }
}

impl HhoParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.population_size < 2 {
            return Err(ParamError::new("HHO needs at least two hawks"));
        }
        if self.generations == 0 {
            return Err(ParamError::new("HHO needs at least one generation"));
        }
        for (name, f) in [
            ("exploration_fraction", self.exploration_fraction),
            ("besiege_fraction", self.besiege_fraction),
        ] {
            if !(f > 0.0 && f <= 1.0) {
                return Err(ParamError::new(format!("{name} must lie in (0, 1], got {f}")));
            }
        }
        if self.minimal_subset_size == 0 {
            return Err(ParamError::new("minimal_subset_size must be at least 1"));
        }
        Ok(())
    }
}

/// Escaping energy `E = 2 * e0 * (1 - t / T)`.
pub fn escaping_energy(e0: f64, t: usize, horizon: usize) -> Result<f64, ParamError> {
    if horizon == 0 {
        return Err(ParamError::new("iteration horizon T must be positive"));
    }
    if t > horizon {
        return Err(ParamError::new(format!("iteration {t} beyond horizon {horizon}")));
    }
    Ok(2.0 * e0 * (1.0 - t as f64 / horizon as f64))
}

/// Copy of `h2` with `ceil(fraction * |V|)` random vertices recolored as in `h1`.
pub fn exploration_transfer<R: Rng + ?Sized>(
    g: &Graph,
    h1: &Coloring,
    h2: &Coloring,
    fraction: f64,
    rng: &mut R,
) -> Coloring {
    transfer_subset(g, h2, h1, subset_size(fraction, h2.vertex_count()), rng)
}

/// Exploration guided by the best hawk: `rabbit` donates to `h`.
pub fn exploration_from_best<R: Rng + ?Sized>(
    g: &Graph,
    h: &Coloring,
    rabbit: &Coloring,
    fraction: f64,
    rng: &mut R,
) -> Coloring {
    exploration_transfer(g, rabbit, h, fraction, rng)
}

/// Number of vertices a soft besiege copies for jump strength `jump` in [0, 2).
pub fn soft_besiege_size(jump: f64, exploration_fraction: f64, n: usize) -> usize {
    subset_size(jump / 2.0 * exploration_fraction, n)
}

/// Surprise jump around the prey: copies `ceil(J/2 * fraction * |V|)`
/// (at least one) of the rabbit's colors into `h`.
pub fn soft_besiege<R: Rng + ?Sized>(
    g: &Graph,
    h: &Coloring,
    rabbit: &Coloring,
    jump: f64,
    exploration_fraction: f64,
    rng: &mut R,
) -> Coloring {
    let size = soft_besiege_size(jump, exploration_fraction, h.vertex_count());
    transfer_subset(g, h, rabbit, size, rng)
}

/// Copies exactly one random vertex's color from the rabbit.
pub fn hard_besiege<R: Rng + ?Sized>(g: &Graph, h: &Coloring, rabbit: &Coloring, rng: &mut R) -> Coloring {
    transfer_subset(g, h, rabbit, 1, rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HhoPhase {
    ExploreFromPeer,
    ExploreFromBest,
    SoftBesiege,
    HardBesiege,
    HighPerturbation,
    MinimalAttack,
}

/// Phase selection from escaping energy `e`, perching draw `q` and escape
/// draw `r`.
pub fn choose_phase(e: f64, q: f64, r: f64) -> HhoPhase {
    let energy = e.abs();
    if energy >= 1.0 {
        if q < 0.5 {
            HhoPhase::ExploreFromPeer
        } else {
            HhoPhase::ExploreFromBest
        }
    } else {
        match (r >= 0.5, energy >= 0.5) {
            (true, true) => HhoPhase::SoftBesiege,
            (true, false) => HhoPhase::HardBesiege,
            (false, true) => HhoPhase::HighPerturbation,
            (false, false) => HhoPhase::MinimalAttack,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HhoState {
    pub hawks: Population,
    pub rabbit: Coloring,
    /// Generations completed so far (`t`).
    pub t: usize,
    /// Horizon `T` of the energy schedule.
    pub horizon: usize,
}

impl HhoState {
    pub fn new(hawks: Population, horizon: usize) -> Self {
        let rabbit = hawks.best().clone();
        Self {
            hawks,
            rabbit,
            t: 0,
            horizon,
        }
    }

    pub fn best(&self) -> &Coloring {
        &self.rabbit
    }

    /// One pass over every hawk, then re-selects the rabbit.
    pub fn generation<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        params: &HhoParams,
        tabu: &TabuParams,
        rng: &mut R,
        budget: &mut EvalBudget,
    ) -> Progress {
        if self.rabbit.is_proper() {
            self.t += 1;
            return Progress::Solved;
        }
        let n = self.hawks.len();
        let t = self.t.min(self.horizon);
        let mut progress = Progress::Completed;
        for i in 0..n {
            let e0 = rng.random_range(-1.0..1.0);
            let e = escaping_energy(e0, t, self.horizon).expect("t is clamped to the horizon");
            let q: f64 = rng.random();
            let r: f64 = rng.random();
            let mut target = i;
            let hawk = self.hawks.get(i);
            let candidate = match choose_phase(e, q, r) {
                HhoPhase::ExploreFromPeer => {
                    let peer = random_other(n, i, rng);
                    exploration_transfer(g, self.hawks.get(peer), hawk, params.exploration_fraction, rng)
                }
                HhoPhase::ExploreFromBest => {
                    exploration_from_best(g, hawk, &self.rabbit, params.exploration_fraction, rng)
                }
                HhoPhase::SoftBesiege => {
                    let jump = rng.random_range(0.0..2.0);
                    soft_besiege(g, hawk, &self.rabbit, jump, params.exploration_fraction, rng)
                }
                HhoPhase::HardBesiege => hard_besiege(g, hawk, &self.rabbit, rng),
                HhoPhase::HighPerturbation => {
                    let size = subset_size(params.besiege_fraction, hawk.vertex_count());
                    transfer_subset(g, hawk, &self.rabbit, size, rng)
                }
                HhoPhase::MinimalAttack => {
                    target = rng.random_range(0..n);
                    transfer_subset(g, self.hawks.get(target), &self.rabbit, params.minimal_subset_size, rng)
                }
            };
            if !budget.try_consume() {
                progress = Progress::Exhausted;
                break;
            }
            let refined = tabucol(g, candidate, tabu, rng, budget).best;
            if refined.conflict_count() <= self.hawks.get(target).conflict_count() {
                let solved = refined.is_proper();
                self.hawks.replace(target, refined);
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
        let best = self.hawks.best();
        if best.conflict_count() <= self.rabbit.conflict_count() {
            self.rabbit = best.clone();
        }
        if progress != Progress::Exhausted {
            self.t += 1;
        }
        progress
    }
}

fn random_other<R: Rng + ?Sized>(n: usize, i: usize, rng: &mut R) -> usize {
    if n < 2 {
        return i;
    }
    let j = rng.random_range(0..n - 1);
    if j >= i {
        j + 1
    } else {
        j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::count_conflicts;
    use crate::graph::generate::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn energy_schedule() {
        assert_eq!(escaping_energy(0.5, 0, 1000).unwrap(), 1.0);
        assert_eq!(escaping_energy(0.3, 1000, 1000).unwrap(), 0.0);
        assert_eq!(escaping_energy(-0.7, 7, 7).unwrap(), 0.0);
        assert_eq!(escaping_energy(-1.0, 500, 1000).unwrap(), -1.0);
        assert!(escaping_energy(0.5, 0, 0).is_err());
        let e: Vec<f64> = (0..=10).map(|t| escaping_energy(0.4, t, 10).unwrap()).collect();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn phase_dispatch() {
        assert_eq!(choose_phase(1.2, 0.1, 0.9), HhoPhase::ExploreFromPeer);
        assert_eq!(choose_phase(-1.0, 0.7, 0.1), HhoPhase::ExploreFromBest);
        assert_eq!(choose_phase(0.6, 0.0, 0.5), HhoPhase::SoftBesiege);
        assert_eq!(choose_phase(-0.2, 0.0, 0.9), HhoPhase::HardBesiege);
        assert_eq!(choose_phase(-0.9, 0.0, 0.2), HhoPhase::HighPerturbation);
        assert_eq!(choose_phase(0.1, 0.0, 0.4), HhoPhase::MinimalAttack);
    }

    #[test]
    fn exploration_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = gnp(20, 0.5, &mut rng);
        let a = Coloring::random(&g, 5, &mut rng).unwrap();
        let b = Coloring::random(&g, 5, &mut rng).unwrap();
        assert_eq!(exploration_transfer(&g, &a, &b, 1.0, &mut rng), a);
        assert_eq!(exploration_transfer(&g, &b, &b, 0.3, &mut rng), b);
        assert_eq!(exploration_from_best(&g, &b, &a, 1.0, &mut rng), a);
        for _ in 0..50 {
            let c = exploration_transfer(&g, &a, &b, 0.25, &mut rng);
            assert_eq!(c.conflict_count(), count_conflicts(&g, c.colors()));
            assert!(c.is_consistent(&g));
            assert!(c.hamming(&b) <= 5);
            let d = exploration_from_best(&g, &b, &a, 0.25, &mut rng);
            assert_eq!(d.conflict_count(), count_conflicts(&g, d.colors()));
        }
    }

    #[test]
    fn soft_besiege_sizes() {
        assert_eq!(soft_besiege_size(1e-9, 0.1, 125), 1);
        assert_eq!(soft_besiege_size(0.0, 0.1, 125), 1);
        assert_eq!(soft_besiege_size(2.0, 0.1, 125), subset_size(0.1, 125));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = gnp(30, 0.4, &mut rng);
        let h = Coloring::random(&g, 4, &mut rng).unwrap();
        let rabbit = Coloring::from_assignment(&g, 4, h.colors().iter().map(|c| (c + 1) % 4).collect()).unwrap();
        let out = soft_besiege(&g, &h, &rabbit, 0.0, 0.1, &mut rng);
        assert_eq!(out.hamming(&h), 1);
        let out = soft_besiege(&g, &h, &rabbit, 1.999, 1.0, &mut rng);
        assert_eq!(out.conflict_count(), count_conflicts(&g, out.colors()));
    }

    #[test]
    fn hard_besiege_behaviour() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = gnp(10, 0.5, &mut rng);
        let rabbit = Coloring::random(&g, 3, &mut rng).unwrap();
        assert_eq!(hard_besiege(&g, &rabbit, &rabbit, &mut rng), rabbit);

        let single = empty(1);
        let h = Coloring::from_assignment(&single, 3, vec![0]).unwrap();
        let r = Coloring::from_assignment(&single, 3, vec![2]).unwrap();
        assert_eq!(hard_besiege(&single, &h, &r, &mut rng), r);
    }

    #[test]
    fn hard_besiege_converges_to_rabbit() {
        // Coupon collector: after n ln n * 10 single-vertex copies the chance a
        // given vertex was never drawn is (1 - 1/n)^(10 n ln n) ~ n^-10.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = gnp(10, 0.5, &mut rng);
        let steps = (10.0 * 10.0 * (10f64).ln()).ceil() as usize;
        let trials = 200;
        let mut total = 0;
        for _ in 0..trials {
            let rabbit = Coloring::random(&g, 4, &mut rng).unwrap();
            let mut h = Coloring::random(&g, 4, &mut rng).unwrap();
            for _ in 0..steps {
                h = hard_besiege(&g, &h, &rabbit, &mut rng);
            }
            total += h.hamming(&rabbit);
        }
        assert!((total as f64 / trials as f64) < 1.0);
    }

    fn seeded_state(g: &Graph, k: usize, size: usize, rng: &mut ChaCha8Rng) -> HhoState {
        let tabu = TabuParams::default();
        let members = (0..size)
            .map(|_| {
                let s = Coloring::random(g, k, rng).unwrap();
                tabucol(g, s, &tabu, rng, &mut EvalBudget::with_limit(10)).best
            })
            .collect();
        HhoState::new(Population::new(members), 1000)
    }

    #[test]
    fn proper_population_is_left_alone() {
        let g = complete(4);
        let proper = Coloring::from_assignment(&g, 4, vec![0, 1, 2, 3]).unwrap();
        let mut state = HhoState::new(Population::new(vec![proper.clone(); 5]), 10);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut budget = EvalBudget::unlimited();
        let p = state.generation(&g, &HhoParams::default(), &TabuParams::default(), &mut rng, &mut budget);
        assert_eq!(p, Progress::Solved);
        assert!(state.hawks.members().iter().all(|h| *h == proper));
        assert_eq!(state.t, 1);
        assert_eq!(budget.used(), 0);
    }

    #[test]
    fn rabbit_never_worsens_and_size_is_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = gnp(40, 0.5, &mut rng);
        let mut state = seeded_state(&g, 5, 8, &mut rng);
        let tabu = TabuParams {
            max_iterations: 200,
            ..TabuParams::default()
        };
        let params = HhoParams {
            generations: 30,
            ..HhoParams::default()
        };
        state.horizon = 30;
        let mut last = state.rabbit.conflict_count();
        for _ in 0..30 {
            state.generation(&g, &params, &tabu, &mut rng, &mut EvalBudget::unlimited());
            assert!(state.rabbit.conflict_count() <= last);
            assert_eq!(state.hawks.len(), 8);
            assert!(state
                .hawks
                .members()
                .iter()
                .all(|h| h.k() == 5 && h.colors().iter().all(|&c| c < 5)));
            last = state.rabbit.conflict_count();
            assert_eq!(last, state.hawks.best().conflict_count());
        }
    }

    #[test]
    fn k33_solved_within_five_generations() {
        let g = complete_bipartite(3, 3);
        let params = HhoParams::default();
        let tabu = TabuParams::default();
        let mut solved = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let members = (0..params.population_size)
                .map(|_| Coloring::random(&g, 2, &mut rng).unwrap())
                .collect();
            let mut state = HhoState::new(Population::new(members), params.generations);
            for _ in 0..5 {
                if state.generation(&g, &params, &tabu, &mut rng, &mut EvalBudget::unlimited()) == Progress::Solved {
                    break;
                }
            }
            solved += state.rabbit.is_proper() as usize;
        }
        assert!(solved >= 95, "{solved}/100");
    }

    #[test]
    fn budget_stops_generation() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = complete(8);
        let mut state = seeded_state(&g, 3, 4, &mut rng);
        let mut budget = EvalBudget::with_limit(50);
        let p = state.generation(&g, &HhoParams::default(), &TabuParams::default(), &mut rng, &mut budget);
        assert_eq!(p, Progress::Exhausted);
        assert_eq!(budget.used(), 50);
    }
}
