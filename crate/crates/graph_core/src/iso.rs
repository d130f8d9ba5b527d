//! Brute-force isomorphism tools for small graphs (census, catalogs).

use crate::graph::{Edge, Graph, Vertex};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_N: usize = 16;

/// Canonical code of a small graph: the adjacency upper triangle, maximised
/// over vertex orders compatible with a degree refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u128,
}

fn code_of(g: &Graph, order: &[Vertex]) -> u128 {
    // order[i] = vertex placed at position i
    let n = order.len();
    let mut code = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            code <<= 1;
            if g.has_edge(order[i], order[j]) {
                code |= 1;
            }
        }
    }
    code
}

/// Vertex classes by (degree, sorted neighbour degrees), in a fixed class order.
fn refine(g: &Graph) -> Vec<Vec<Vertex>> {
    let key = |v: Vertex| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut vs: Vec<Vertex> = (0..g.n()).collect();
    vs.sort_by_key(|&v| key(v));
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    for v in vs {
        match cells.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    cells
}

/// Canonical form and a vertex order realising it.
pub fn canonical_form(g: &Graph) -> (CanonicalForm, Vec<Vertex>) {
    assert!(g.n() <= CANON_MAX_N, "canonical_form supports n <= {CANON_MAX_N}");
    let cells = refine(g);
    let mut best: Option<(u128, Vec<Vertex>)> = None;
    let mut order = Vec::with_capacity(g.n());

    fn rec(g: &Graph, cells: &[Vec<Vertex>], ci: usize, used: &mut Vec<bool>, order: &mut Vec<Vertex>, best: &mut Option<(u128, Vec<Vertex>)>) {
        if ci == cells.len() {
            let c = code_of(g, order);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                *best = Some((c, order.clone()));
            }
            return;
        }
        let cell = &cells[ci];
        let placed = order.len() - cells[..ci].iter().map(Vec::len).sum::<usize>();
        if placed == cell.len() {
            rec(g, cells, ci + 1, used, order, best);
            return;
        }
        for &v in cell {
            if used[v] {
                continue;
            }
            used[v] = true;
            order.push(v);
            rec(g, cells, ci, used, order, best);
            order.pop();
            used[v] = false;
        }
    }

    let mut used = vec![false; g.n()];
    rec(g, &cells, 0, &mut used, &mut order, &mut best);
    let (code, order) = best.unwrap_or((0, vec![]));
    (CanonicalForm { n: g.n(), code }, order)
}

/// The graph relabelled into canonical order.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, order) = canonical_form(g);
    let mut perm = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.relabel(&perm)
}

/// All automorphisms (as maps `v -> perm[v]`) fixing every vertex in `fixed`.
pub fn automorphisms(g: &Graph, fixed: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &f in fixed {
        perm[f] = f;
        used[f] = true;
    }
    for &f in fixed {
        for &h in fixed {
            if g.has_edge(f, h) != g.has_edge(perm[f], perm[h]) {
                return vec![];
            }
        }
    }
    let free: Vec<Vertex> = (0..n).filter(|v| perm[*v] == usize::MAX).collect();
    let mut out = Vec::new();

    fn rec(g: &Graph, free: &[Vertex], i: usize, perm: &mut Vec<Vertex>, used: &mut Vec<bool>, out: &mut Vec<Vec<Vertex>>) {
        if i == free.len() {
            out.push(perm.clone());
            return;
        }
        let v = free[i];
        for w in 0..g.n() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            // consistent with everything mapped so far
            let ok = (0..g.n()).all(|u| perm[u] == usize::MAX || g.has_edge(v, u) == g.has_edge(w, perm[u]));
            if !ok {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            rec(g, free, i + 1, perm, used, out);
            perm[v] = usize::MAX;
            used[w] = false;
        }
    }

    rec(g, &free, 0, &mut perm, &mut used, &mut out);
    out
}

/// True if `g` and `h` are isomorphic.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && canonical_form(g).0 == canonical_form(h).0
}

/// Maps an edge through a vertex permutation.
pub fn map_edge(e: Edge, perm: &[Vertex]) -> Edge {
    e.map(|v| perm[v])
}
