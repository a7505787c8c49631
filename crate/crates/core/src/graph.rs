//! Immutable undirected graphs and the DIMACS `.col` reader.
//!
//! Vertices are 0-based internally. DIMACS input and output stay 1-based.

use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {message}")]
    Structure { line: usize, message: String },
    #[error("line {line}: vertex {vertex} outside [1, {vertex_count}]")]
    VertexRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("missing `p edge <n> <m>` problem line")]
    MissingHeader,
    #[error("density is undefined for {0} vertices")]
    UndefinedDensity(usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) is invalid for a graph on {2} vertices")]
    InvalidEdge(usize, usize, usize),
}

/// Non-fatal findings while reading a DIMACS document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsWarning {
    /// The header's edge count differs from the distinct edges actually read.
    EdgeCountMismatch { declared: usize, distinct: usize },
}

impl std::fmt::Display for DimacsWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::EdgeCountMismatch { declared, distinct } => {
                write!(
                    f,
                    "header declares {declared} edges but {distinct} distinct edges were read"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edge_count: usize,
    adjacency: Vec<Vec<usize>>,
    words_per_row: usize,
    membership: Vec<u64>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Duplicates and reversed
    /// orientations collapse into one edge; self-loops are rejected.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut builder = Builder::new(vertex_count)?;
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count || u == v {
                return Err(GraphError::InvalidEdge(u, v, vertex_count));
            }
            builder.insert(u, v);
        }
        Ok(builder.finish())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbors of `v` in increasing order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// O(1) adjacency test.
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let word = self.membership[u * self.words_per_row + v / 64];
        word >> (v % 64) & 1 == 1
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Edge density `|E| / (|V|(|V|-1)/2)`.
    pub fn density(&self) -> Result<f64, GraphError> {
        let n = self.vertex_count;
        if n < 2 {
            return Err(GraphError::UndefinedDensity(n));
        }
        Ok(self.edge_count as f64 / (n as f64 * (n as f64 - 1.0) / 2.0))
    }

    /// Canonical DIMACS text: header, then each edge once with `u < v`.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edge_count + 1));
        let _ = writeln!(out, "p edge {} {}", self.vertex_count, self.edge_count);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// DSATUR greedy coloring. Picks the uncolored vertex with the highest
    /// saturation, then the highest degree, then the lowest id, and gives it
    /// the smallest color absent from its neighborhood.
    pub fn dsatur(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let palette = self.max_degree() + 1;
        let words = palette.div_ceil(64);
        let mut seen = vec![0u64; n * words];
        let mut saturation = vec![0usize; n];
        let mut colors = vec![usize::MAX; n];

        for _ in 0..n {
            let mut pick = usize::MAX;
            for v in 0..n {
                if colors[v] != usize::MAX {
                    continue;
                }
                if pick == usize::MAX
                    || saturation[v] > saturation[pick]
                    || (saturation[v] == saturation[pick] && self.degree(v) > self.degree(pick))
                {
                    pick = v;
                }
            }
            let row = &seen[pick * words..(pick + 1) * words];
            let color = (0..palette)
                .find(|&c| row[c / 64] >> (c % 64) & 1 == 0)
                .expect("a vertex of degree d sees at most d colors");
            colors[pick] = color;
            for &u in self.neighbors(pick) {
                let slot = &mut seen[u * words + color / 64];
                let bit = 1u64 << (color % 64);
                if *slot & bit == 0 {
                    *slot |= bit;
                    saturation[u] += 1;
                }
            }
        }
        colors
    }

    /// Number of colors used by [`Graph::dsatur`]; a valid starting budget
    /// for the descending-k search. Never exceeds `max_degree + 1`.
    pub fn greedy_upper_bound(&self) -> usize {
        self.dsatur().iter().max().map_or(1, |&c| c + 1)
    }
}

struct Builder {
    vertex_count: usize,
    words_per_row: usize,
    membership: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Builder {
    fn new(vertex_count: usize) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let words_per_row = vertex_count.div_ceil(64);
        Ok(Self {
            vertex_count,
            words_per_row,
            membership: vec![0; vertex_count * words_per_row],
            adjacency: vec![Vec::new(); vertex_count],
            edge_count: 0,
        })
    }

    /// Returns false when the edge was already present.
    fn insert(&mut self, u: usize, v: usize) -> bool {
        let slot = u * self.words_per_row + v / 64;
        let bit = 1u64 << (v % 64);
        if self.membership[slot] & bit != 0 {
            return false;
        }
        self.membership[slot] |= bit;
        self.membership[v * self.words_per_row + u / 64] |= 1u64 << (u % 64);
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.edge_count += 1;
        true
    }

    fn finish(mut self) -> Graph {
        for row in &mut self.adjacency {
            row.sort_unstable();
        }
        Graph {
            vertex_count: self.vertex_count,
            edge_count: self.edge_count,
            adjacency: self.adjacency,
            words_per_row: self.words_per_row,
            membership: self.membership,
        }
    }
}

/// Parses a DIMACS `.col` document. A header/edge-count mismatch is logged
/// as a warning; use [`parse_dimacs_with_warnings`] to inspect it.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let (graph, warnings) = parse_dimacs_with_warnings(text)?;
    for w in &warnings {
        match w {
            DimacsWarning::EdgeCountMismatch { declared, distinct } => {
                log::warn!("header declares {declared} edges but {distinct} distinct edges were read")
            }
        }
    }
    Ok(graph)
}

pub fn parse_dimacs_with_warnings(text: &str) -> Result<(Graph, Vec<DimacsWarning>), GraphError> {
    let mut builder: Option<Builder> = None;
    let mut declared = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if builder.is_some() {
                    return Err(GraphError::Structure {
                        line,
                        message: "second problem line".into(),
                    });
                }
                // `col` appears in some circulating files in place of `edge`.
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(GraphError::Malformed {
                            line,
                            message: format!("expected `p edge`, found format {other:?}"),
                        })
                    }
                }
                let n = number(tokens.next(), line, "vertex count")?;
                declared = number(tokens.next(), line, "edge count")?;
                expect_end(tokens, line)?;
                builder = Some(Builder::new(n).map_err(|_| GraphError::Structure {
                    line,
                    message: "graph must have at least one vertex".into(),
                })?);
            }
            "e" => {
                let Some(b) = builder.as_mut() else {
                    return Err(GraphError::Structure {
                        line,
                        message: "edge line before problem line".into(),
                    });
                };
                let u = number(tokens.next(), line, "edge endpoint")?;
                let v = number(tokens.next(), line, "edge endpoint")?;
                expect_end(tokens, line)?;
                for x in [u, v] {
                    if x == 0 || x > b.vertex_count {
                        return Err(GraphError::VertexRange {
                            line,
                            vertex: x,
                            vertex_count: b.vertex_count,
                        });
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop { line, vertex: u });
                }
                b.insert(u - 1, v - 1);
            }
            other => {
                return Err(GraphError::Malformed {
                    line,
                    message: format!("unknown line type `{other}`"),
                })
            }
        }
    }

    let graph = builder.ok_or(GraphError::MissingHeader)?.finish();
    let mut warnings = Vec::new();
    if graph.edge_count != declared {
        warnings.push(DimacsWarning::EdgeCountMismatch {
            declared,
            distinct: graph.edge_count,
        });
    }
    Ok((graph, warnings))
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let token = token.ok_or_else(|| GraphError::Malformed {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| GraphError::Malformed {
        line,
        message: format!("invalid {what} `{token}`"),
    })
}

fn expect_end<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), GraphError> {
    match tokens.next() {
        None => Ok(()),
        Some(extra) => Err(GraphError::Malformed {
            line,
            message: format!("unexpected trailing token `{extra}`"),
        }),
    }
}

/// Small graph families used by tests, examples and the benchmark harness.
pub mod generate {
    use super::*;

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph edges are valid")
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, []).expect("n >= 1")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("n >= 3")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("bipartite edges are valid")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges are valid")
    }

    /// Erdős–Rényi G(n, p).
    pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).expect("generated edges are valid")
    }

    /// Random bipartite graph: each of the `a·b` cross pairs is an edge with
    /// probability `p`. Sides are `0..a` and `a..a+b`.
    pub fn random_bipartite<R: Rng + ?Sized>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(a + b, edges).expect("generated edges are valid")
    }

    /// A graph with a hidden proper `k`-coloring: vertices are split into `k`
    /// groups round-robin and only cross-group pairs become edges.
    pub fn planted<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if u % k != v % k && rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).expect("generated edges are valid")
    }
}
