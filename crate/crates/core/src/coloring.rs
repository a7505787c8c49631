//! k-bounded colorings with incremental conflict bookkeeping.
//!
//! A [`Coloring`] keeps, next to the vertex → color assignment, the table
//! `gamma[v][c]` = number of neighbors of `v` holding color `c`, the total
//! number of monochromatic edges `f`, and the set of conflicting vertices.
//! A one-vertex recolor updates all three in O(deg(v)).

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color budget k must be at least 1")]
    ZeroBudget,
    #[error("assignment has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside [0, {k})")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
    #[error("stale move: vertex {vertex} has color {actual}, move expects {expected}")]
    StaleMove {
        vertex: usize,
        expected: usize,
        actual: usize,
    },
    #[error("move target color {to} is invalid for vertex {vertex} (k = {k})")]
    InvalidMove { vertex: usize, to: usize, k: usize },
    #[error("colorings disagree on budget or size ({0} vs {1})")]
    Incompatible(String, String),
    #[error("cannot parse color `{0}`")]
    Parse(String),
}

/// A one-vertex recolor together with its effect on the conflict count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
    pub delta: i64,
}

const NOT_CRITICAL: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Coloring {
    k: usize,
    colors: Vec<usize>,
    conflicts: usize,
    gamma: Vec<u32>,
    critical: Vec<u32>,
    critical_pos: Vec<u32>,
}

impl PartialEq for Coloring {
    /// Two colorings are equal when they assign the same colors under the
    /// same budget; the derived tables follow from that.
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.colors == other.colors
    }
}

impl Eq for Coloring {}

impl Coloring {
    pub fn from_assignment(g: &Graph, k: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::ZeroBudget);
        }
        if colors.len() != g.vertex_count() {
            return Err(ColoringError::LengthMismatch {
                expected: g.vertex_count(),
                got: colors.len(),
            });
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, k });
        }
        Ok(Self::build(g, k, colors))
    }

    /// Uniform random color for every vertex.
    pub fn random<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::ZeroBudget);
        }
        let colors = (0..g.vertex_count()).map(|_| rng.random_range(0..k)).collect();
        Ok(Self::build(g, k, colors))
    }

    fn build(g: &Graph, k: usize, colors: Vec<usize>) -> Self {
        let n = colors.len();
        let mut gamma = vec![0u32; n * k];
        for v in 0..n {
            for &u in g.neighbors(v) {
                gamma[v * k + colors[u]] += 1;
            }
        }
        let mut conflicts2 = 0usize;
        let mut critical = Vec::new();
        let mut critical_pos = vec![NOT_CRITICAL; n];
        for v in 0..n {
            let own = gamma[v * k + colors[v]] as usize;
            conflicts2 += own;
            if own > 0 {
                critical_pos[v] = critical.len() as u32;
                critical.push(v as u32);
            }
        }
        Self {
            k,
            colors,
            conflicts: conflicts2 / 2,
            gamma,
            critical,
            critical_pos,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// f(s): number of monochromatic edges.
    #[inline]
    pub fn conflict_count(&self) -> usize {
        self.conflicts
    }

    /// Number of neighbors of `v` colored `c`.
    #[inline]
    pub fn gamma(&self, v: usize, c: usize) -> usize {
        self.gamma[v * self.k + c] as usize
    }

    pub fn is_proper(&self) -> bool {
        self.conflicts == 0
    }

    /// Vertices that sit on at least one monochromatic edge, in no
    /// particular order.
    #[inline]
    pub fn critical_vertices(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.critical.iter().map(|&v| v as usize)
    }

    pub fn critical_count(&self) -> usize {
        self.critical.len()
    }

    /// Sorted set of conflicting vertices.
    pub fn conflicting_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.critical_vertices().collect();
        out.sort_unstable();
        out
    }

    #[inline]
    pub fn is_critical(&self, v: usize) -> bool {
        self.critical_pos[v] != NOT_CRITICAL
    }

    /// Describes recoloring `v` to `to` without applying it.
    #[inline]
    pub fn plan_move(&self, v: usize, to: usize) -> Move {
        let from = self.colors[v];
        Move {
            vertex: v,
            from,
            to,
            delta: self.gamma(v, to) as i64 - self.gamma(v, from) as i64,
        }
    }

    pub fn apply_move(&mut self, g: &Graph, m: &Move) -> Result<(), ColoringError> {
        let actual = self.colors[m.vertex];
        if actual != m.from {
            return Err(ColoringError::StaleMove {
                vertex: m.vertex,
                expected: m.from,
                actual,
            });
        }
        if m.to >= self.k || m.to == m.from {
            return Err(ColoringError::InvalidMove {
                vertex: m.vertex,
                to: m.to,
                k: self.k,
            });
        }
        self.recolor(g, m.vertex, m.to);
        Ok(())
    }

    /// Sets the color of `v`, updating every derived table. Returns the
    /// change in conflict count. No-op when the color is unchanged.
    pub fn recolor(&mut self, g: &Graph, v: usize, to: usize) -> i64 {
        debug_assert!(to < self.k);
        let k = self.k;
        let from = self.colors[v];
        if from == to {
            return 0;
        }
        let delta = self.gamma[v * k + to] as i64 - self.gamma[v * k + from] as i64;
        self.colors[v] = to;
        self.conflicts = (self.conflicts as i64 + delta) as usize;
        for &u in g.neighbors(v) {
            self.gamma[u * k + from] -= 1;
            self.gamma[u * k + to] += 1;
            let cu = self.colors[u];
            if cu == from && self.gamma[u * k + from] == 0 {
                self.unmark(u);
            } else if cu == to && self.gamma[u * k + to] == 1 {
                self.mark(u);
            }
        }
        if self.gamma[v * k + to] > 0 {
            self.mark(v);
        } else {
            self.unmark(v);
        }
        delta
    }

    #[inline]
    fn mark(&mut self, v: usize) {
        if self.critical_pos[v] == NOT_CRITICAL {
            self.critical_pos[v] = self.critical.len() as u32;
            self.critical.push(v as u32);
        }
    }

    #[inline]
    fn unmark(&mut self, v: usize) {
        let pos = self.critical_pos[v];
        if pos != NOT_CRITICAL {
            let last = self.critical.pop().expect("critical set is non-empty");
            if last as usize != v {
                self.critical[pos as usize] = last;
                self.critical_pos[last as usize] = pos;
            }
            self.critical_pos[v] = NOT_CRITICAL;
        }
    }

    /// Rebuilds from scratch and compares every derived table.
    pub fn is_consistent(&self, g: &Graph) -> bool {
        let fresh = Self::build(g, self.k, self.colors.clone());
        let mut ours: Vec<u32> = self.critical.clone();
        let mut theirs: Vec<u32> = fresh.critical.clone();
        ours.sort_unstable();
        theirs.sort_unstable();
        fresh.conflicts == self.conflicts && fresh.gamma == self.gamma && ours == theirs
    }

    /// Color classes V_0..V_{k-1}, each sorted by vertex id.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    pub fn distinct_colors(&self) -> usize {
        let mut used = vec![false; self.k];
        for &c in &self.colors {
            used[c] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }

    /// Space-separated colors in vertex order.
    pub fn to_line(&self) -> String {
        let mut out = String::with_capacity(self.colors.len() * 3);
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&c.to_string());
        }
        out
    }

    pub fn hamming(&self, other: &Coloring) -> usize {
        self.colors.iter().zip(&other.colors).filter(|(a, b)| a != b).count()
    }
}

/// Parses a whitespace-separated list of 0-based colors.
pub fn parse_color_line(line: &str) -> Result<Vec<usize>, ColoringError> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| ColoringError::Parse(t.to_string())))
        .collect()
}

/// Serialized form: budget, colors and the conflict count.
#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    k: usize,
    conflicts: usize,
    colors: Vec<usize>,
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ColoringRepr {
            k: self.k,
            conflicts: self.conflicts,
            colors: self.colors.clone(),
        }
        .serialize(s)
    }
}

/// Brute-force conflict count over the edge list; independent of the
/// incremental tables.
pub fn count_conflicts(g: &Graph, colors: &[usize]) -> usize {
    g.edges().filter(|&(u, v)| colors[u] == colors[v]).count()
}

/// Monochromatic edges, 0-based, each with `u < v`.
pub fn monochromatic_edges(g: &Graph, colors: &[usize]) -> Vec<(usize, usize)> {
    g.edges().filter(|&(u, v)| colors[u] == colors[v]).collect()
}
