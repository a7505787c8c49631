//! Fitness-evaluation accounting shared by every search routine on an island.
//!
//! One evaluation is charged whenever a solution's conflict count becomes
//! known: building a coloring from scratch, producing an operator candidate,
//! or applying one TabuCol move.

use std::time::Instant;

#[derive(Debug, Clone)]
pub struct EvalBudget {
    used: u64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl EvalBudget {
    pub fn new(limit: Option<u64>, deadline: Option<Instant>) -> Self {
        Self {
            used: 0,
            limit,
            deadline,
            timed_out: false,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(None, None)
    }

    pub fn with_limit(limit: u64) -> Self {
        Self::new(Some(limit), None)
    }

    /// Charges one evaluation if the budget allows it.
    #[inline]
    pub fn try_consume(&mut self) -> bool {
        if self.is_exhausted() {
            return false;
        }
        self.used += 1;
        // Clock reads are amortized over 128 evaluations.
        if self.used.is_multiple_of(128) {
            self.poll_deadline();
        }
        true
    }

    /// Charges one evaluation regardless of the limit. Used for the first
    /// member of a population so an island always has something to report.
    pub fn consume_forced(&mut self) {
        self.used += 1;
    }

    #[inline]
    pub fn is_exhausted(&self) -> bool {
        self.timed_out || self.limit.is_some_and(|l| self.used >= l)
    }

    /// Re-reads the clock; returns true if the deadline has passed.
    pub fn poll_deadline(&mut self) -> bool {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub fn timed_out(&self) -> bool {
        self.timed_out
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}
