use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, Vertex};

/// A 4-clique, vertices ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct K4Occurrence {
    pub vertices: [Vertex; 4],
}

impl K4Occurrence {
    pub fn new(mut vs: [Vertex; 4]) -> K4Occurrence {
        vs.sort_unstable();
        K4Occurrence { vertices: vs }
    }

    pub fn edges(&self) -> [Edge; 6] {
        let [a, b, c, d] = self.vertices;
        [Edge(a, b), Edge(a, c), Edge(a, d), Edge(b, c), Edge(b, d), Edge(c, d)]
    }

    /// The three ways to split the K4 into two disjoint edges.
    pub fn disjoint_pairs(&self) -> [(Edge, Edge); 3] {
        let [a, b, c, d] = self.vertices;
        [(Edge(a, b), Edge(c, d)), (Edge(a, c), Edge(b, d)), (Edge(a, d), Edge(b, c))]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// Triangles `a < b < c` in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbors(a) {
            if b <= a {
                continue;
            }
            for c in g.common_neighbors(a, b) {
                if c > b {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Every 4-clique exactly once, lexicographic by vertex 4-set.
pub fn enumerate_k4(g: &Graph) -> Vec<K4Occurrence> {
    let mut out = Vec::new();
    for [a, b, c] in triangles(g) {
        for d in g.common_neighbors(a, b) {
            if d > c && g.has_edge(c, d) {
                out.push(K4Occurrence { vertices: [a, b, c, d] });
            }
        }
    }
    out
}

pub fn has_k4(g: &Graph) -> bool {
    for [a, b, c] in triangles(g) {
        for d in g.common_neighbors(a, b) {
            if d > c && g.has_edge(c, d) {
                return true;
            }
        }
    }
    false
}

/// The lexicographically first 5-clique, if any.
pub fn find_k5(g: &Graph) -> Option<[Vertex; 5]> {
    for k in enumerate_k4(g) {
        let [a, b, c, d] = k.vertices;
        for e in g.common_neighbors(a, b) {
            if e > d && g.has_edge(c, e) && g.has_edge(d, e) {
                return Some([a, b, c, d, e]);
            }
        }
    }
    None
}

/// Vertex 4-sets spanning at least one 4-cycle, ascending lexicographically.
pub fn four_cycle_sets(g: &Graph) -> Vec<[Vertex; 4]> {
    let mut out = Vec::new();
    let mut via: Vec<Vec<Vertex>> = vec![Vec::new(); g.n()];
    let mut touched = Vec::new();
    for p in 0..g.n() {
        // p is the smallest vertex; cycle p-x-y-z-p with x,y,z > p
        for &x in g.neighbors(p) {
            if x <= p {
                continue;
            }
            for &y in g.neighbors(x) {
                if y <= p {
                    continue;
                }
                if via[y].is_empty() {
                    touched.push(y);
                }
                via[y].push(x);
            }
        }
        let mut local = Vec::new();
        for &y in &touched {
            let xs = &via[y];
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    let mut s = [p, xs[i], y, xs[j]];
                    s.sort_unstable();
                    local.push(s);
                }
            }
        }
        for &y in &touched {
            via[y].clear();
        }
        touched.clear();
        local.sort_unstable();
        local.dedup();
        out.extend(local);
    }
    out
}

/// The 4-cycles (as vertex sequences starting at the smallest vertex, second
/// vertex smaller than the fourth) on a given 4-set.
pub fn four_cycles_on(g: &Graph, s: [Vertex; 4]) -> Vec<[Vertex; 4]> {
    let [p, q, r, t] = s;
    let mut out = Vec::new();
    for [x, y, z] in [[q, r, t], [q, t, r], [r, q, t]] {
        if g.has_edge(p, x) && g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(z, p) {
            out.push([p, x, y, z]);
        }
    }
    out
}

/// Edges {x,y} such that {a,b,x,y} induces a K4 and `keep(x,y)` holds.
pub fn crossable_edges_by(g: &Graph, e: Edge, mut keep: impl FnMut(Edge) -> bool) -> Vec<Edge> {
    let w = g.common_neighbors(e.0, e.1);
    let mut out = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let f = Edge(w[i], w[j]);
            if g.has_edge(f.0, f.1) && keep(f) {
                out.push(f);
            }
        }
    }
    out
}

/// A K4 designated for a crossing: `crossing.0` and `crossing.1` cross inside
/// the 4-cycle formed by `boundary`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Kite {
    pub id: usize,
    pub vertices: [Vertex; 4],
    pub crossing: (Edge, Edge),
    pub boundary: [Edge; 4],
}

impl Kite {
    /// Kite in which `first` crosses `second`; the two edges must be disjoint.
    pub fn new(id: usize, first: Edge, second: Edge) -> Kite {
        assert!(!first.shares_endpoint(&second), "crossing edges must be disjoint");
        let (a, b, x, y) = (first.0, first.1, second.0, second.1);
        let mut vertices = [a, b, x, y];
        vertices.sort_unstable();
        Kite {
            id,
            vertices,
            crossing: (first, second),
            boundary: [Edge::new(a, x), Edge::new(x, b), Edge::new(b, y), Edge::new(y, a)],
        }
    }

    pub fn k4(&self) -> K4Occurrence {
        K4Occurrence { vertices: self.vertices }
    }

    /// The crossing pair with the smaller edge first.
    pub fn pair_key(&self) -> (Edge, Edge) {
        let (e, f) = self.crossing;
        if e < f {
            (e, f)
        } else {
            (f, e)
        }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}
