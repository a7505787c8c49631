#![allow(dead_code)]

use std::path::PathBuf;

use ensemble_color::Graph;

/// Exact chromatic number by backtracking over vertices in index order.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    (1..=n).find(|&k| colorable(g, k)).expect("n colors always suffice")
}

pub fn colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>, used: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        // New colors are only opened in order, which removes relabelings.
        for c in 0..k.min(used + 1) {
            if (0..v).any(|u| colors[u] == c && g.has_edge(u, v)) {
                continue;
            }
            colors[v] = c;
            if go(g, k, v + 1, colors, used.max(c + 1)) {
                return true;
            }
        }
        false
    }
    go(g, k, 0, &mut vec![0; g.vertex_count()], 0)
}

/// Monochromatic edges, counted over all vertex pairs.
pub fn recount(g: &Graph, colors: &[usize]) -> usize {
    let n = g.vertex_count();
    let mut f = 0;
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] == colors[v] && g.has_edge(u, v) {
                f += 1;
            }
        }
    }
    f
}

/// Neighbors of `v` colored `c`.
pub fn recount_gamma(g: &Graph, colors: &[usize], v: usize, c: usize) -> usize {
    (0..g.vertex_count())
        .filter(|&u| u != v && colors[u] == c && g.has_edge(u, v))
        .count()
}

/// Directory searched for DIMACS instance files: `$ENSEMBLE_COLOR_INSTANCES`
/// or `instances/` at the workspace root.
pub fn instance_dir() -> PathBuf {
    std::env::var_os("ENSEMBLE_COLOR_INSTANCES")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances");
            dir.canonicalize().unwrap_or(dir)
        })
}

pub fn instance_path(name: &str) -> Option<PathBuf> {
    let dir = instance_dir();
    [format!("{name}.col"), name.to_string()]
        .into_iter()
        .map(|f| dir.join(f))
        .find(|p| p.is_file())
}
