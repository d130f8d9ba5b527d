//! Separating gadgets of a partially colored working graph, in the fixed
//! priority order, plus the MC4 classification of K4 subgraphs.

use std::collections::BTreeSet;
use std::fmt;

use bpr_coloring::EdgeColoring;
use bpr_graph::{crossable_edges_by, enumerate_k4, find_k5, four_cycles_on, triangles, Edge, Graph, K4Occurrence, Vertex};
use serde::Serialize;

/// The working graph: `graph` holds only active vertices' edges; `planar`
/// lists edges treated as planar locally (virtual chords) on top of `coloring`.
#[derive(Clone, Copy)]
pub struct View<'a> {
    pub graph: &'a Graph,
    pub active: &'a [bool],
    pub order: usize,
    pub coloring: &'a EdgeColoring,
    pub planar: &'a BTreeSet<Edge>,
}

impl<'a> View<'a> {
    pub fn uncolored(&self, e: Edge) -> bool {
        !self.planar.contains(&e) && self.coloring.is_uncolored(e)
    }

    /// C[a,b]: uncolored edges {x,y} with {a,b,x,y} a K4.
    pub fn crossable(&self, e: Edge) -> Vec<Edge> {
        crossable_edges_by(self.graph, e, |f| self.uncolored(f))
    }

    /// Whether some K4 has a disjoint pair of uncolored edges.
    pub fn has_kite_candidate(&self) -> bool {
        enumerate_k4(self.graph).iter().any(|k| self.uncolored_pairs(k).next().is_some())
    }

    fn uncolored_pairs<'b>(&'b self, k: &K4Occurrence) -> impl Iterator<Item = (Edge, Edge)> + 'b {
        k.disjoint_pairs().into_iter().filter(move |&(e, f)| self.uncolored(e) && self.uncolored(f))
    }
}

/// Reusable BFS state for "does removing X disconnect the working graph".
pub struct Separator {
    mark: Vec<u32>,
    epoch: u32,
    queue: Vec<Vertex>,
    pub queries: usize,
}

impl Separator {
    pub fn new(n: usize) -> Separator {
        Separator { mark: vec![0; n], epoch: 0, queue: Vec::new(), queries: 0 }
    }

    fn next_epoch(&mut self, n: usize) -> u32 {
        if self.mark.len() < n {
            self.mark.resize(n, 0);
        }
        if self.epoch > u32::MAX - 8 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 0;
        }
        self.epoch += 3;
        self.epoch
    }

    /// Components of the working graph minus the given vertices and edges, or
    /// `None` if it stays connected. The BFS stops as soon as every vertex
    /// next to the removed part is reached.
    pub fn split(&mut self, view: &View, rv: &[Vertex], re: &[Edge]) -> Option<Vec<Vec<Vertex>>> {
        self.queries += 1;
        let g = view.graph;
        let base = self.next_epoch(g.n());
        let (removed, boundary, seen) = (base - 2, base - 1, base);
        for &v in rv {
            self.mark[v] = removed;
        }
        let mut pending = 0usize;
        let mut first = None;
        let mut touch = |mark: &mut Vec<u32>, w: Vertex| {
            if mark[w] != removed && mark[w] != boundary {
                mark[w] = boundary;
                pending += 1;
                first.get_or_insert(w);
            }
        };
        for &v in rv {
            for &w in g.neighbors(v) {
                touch(&mut self.mark, w);
            }
        }
        for e in re {
            touch(&mut self.mark, e.0);
            touch(&mut self.mark, e.1);
        }
        let start = first?;
        let cut = |a: Vertex, b: Vertex| re.iter().any(|e| (e.0 == a && e.1 == b) || (e.0 == b && e.1 == a));
        self.queue.clear();
        self.queue.push(start);
        self.mark[start] = seen;
        pending -= 1;
        let mut head = 0;
        while head < self.queue.len() && pending > 0 {
            let v = self.queue[head];
            head += 1;
            for &w in g.neighbors(v) {
                let m = self.mark[w];
                if m == removed || m == seen || cut(v, w) {
                    continue;
                }
                if m == boundary {
                    pending -= 1;
                }
                self.mark[w] = seen;
                self.queue.push(w);
            }
        }
        if pending == 0 {
            return None;
        }
        Some(self.components(view, rv, re))
    }

    fn components(&mut self, view: &View, rv: &[Vertex], re: &[Edge]) -> Vec<Vec<Vertex>> {
        let g = view.graph;
        let base = self.next_epoch(g.n());
        let (removed, seen) = (base - 2, base);
        for &v in rv {
            self.mark[v] = removed;
        }
        let cut = |a: Vertex, b: Vertex| re.iter().any(|e| (e.0 == a && e.1 == b) || (e.0 == b && e.1 == a));
        let mut out = Vec::new();
        for s in 0..g.n() {
            if !view.active[s] || self.mark[s] == removed || self.mark[s] == seen {
                continue;
            }
            let mut comp = vec![s];
            self.mark[s] = seen;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in g.neighbors(v) {
                    if self.mark[w] != removed && self.mark[w] != seen && !cut(v, w) {
                        self.mark[w] = seen;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mc4Class {
    /// Six kites around a K4 whose edges are all crossed from outside.
    KiteCoveredTetrahedron { k4: [Vertex; 4], pairs: Vec<(Edge, Edge)> },
    /// Three kites around a centre of degree 6.
    ScGraph { center: Vertex, k4: [Vertex; 4], pairs: Vec<(Edge, Edge)> },
    /// A single kite; `red` crosses `blue`.
    PlainKite { k4: [Vertex; 4], red: Edge, blue: Edge },
}

/// A detected gadget. In crossing gadgets the anchor edge (the first edge of
/// the cycle) is the one that will be colored red and removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gadget {
    Sep3Cycle { cycle: [Vertex; 3], parts: Vec<Vec<Vertex>> },
    SepEdge { edge: Edge, candidates: Vec<Edge> },
    Sep4Cycle { cycle: [Vertex; 4], parts: Vec<Vec<Vertex>> },
    SepTriple { cycle: [Vertex; 3], crossing: Edge },
    SepQuadruple { cycle: [Vertex; 4], crossing: Edge },
    SepTriangle { cycle: [Vertex; 3], first: Edge, second: Edge },
    K5 { vertices: [Vertex; 5] },
    Mc4(Mc4Class),
}

impl Gadget {
    pub fn name(&self) -> &'static str {
        match self {
            Gadget::Sep3Cycle { .. } => "separating 3-cycle",
            Gadget::SepEdge { .. } => "separating edge",
            Gadget::Sep4Cycle { .. } => "separating 4-cycle",
            Gadget::SepTriple { .. } => "separating triple",
            Gadget::SepQuadruple { .. } => "separating quadruple",
            Gadget::SepTriangle { .. } => "separating triangle",
            Gadget::K5 { .. } => "K5",
            Gadget::Mc4(Mc4Class::KiteCoveredTetrahedron { .. }) => "MC4 kite-covered tetrahedron",
            Gadget::Mc4(Mc4Class::ScGraph { .. }) => "MC4 SC-graph",
            Gadget::Mc4(Mc4Class::PlainKite { .. }) => "MC4 kite",
        }
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gadget::Sep3Cycle { cycle, .. } => write!(f, "{} {cycle:?}", self.name()),
            Gadget::SepEdge { edge, candidates } => write!(f, "{} {edge} ({} candidates)", self.name(), candidates.len()),
            Gadget::Sep4Cycle { cycle, .. } => write!(f, "{} {cycle:?}", self.name()),
            Gadget::SepTriple { cycle, crossing } => write!(f, "{} {cycle:?} x {crossing}", self.name()),
            Gadget::SepQuadruple { cycle, crossing } => write!(f, "{} {cycle:?} x {crossing}", self.name()),
            Gadget::SepTriangle { cycle, first, second } => write!(f, "{} {cycle:?} x {first}, {second}", self.name()),
            Gadget::K5 { vertices } => write!(f, "{} {vertices:?}", self.name()),
            Gadget::Mc4(Mc4Class::KiteCoveredTetrahedron { k4, .. }) | Gadget::Mc4(Mc4Class::ScGraph { k4, .. }) => {
                write!(f, "{} {k4:?}", self.name())
            }
            Gadget::Mc4(Mc4Class::PlainKite { red, blue, .. }) => write!(f, "{} {red} x {blue}", self.name()),
        }
    }
}

/// Calls `f` on the 4-cycles of the graph, grouped by ascending vertex set,
/// each as a sequence starting at its smallest vertex; stops when `f` returns true.
fn for_each_four_cycle(g: &Graph, mut f: impl FnMut([Vertex; 4]) -> bool) -> bool {
    let mut via: Vec<Vec<Vertex>> = vec![Vec::new(); g.n()];
    let mut touched = Vec::new();
    for p in 0..g.n() {
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
        for s in local {
            for c in four_cycles_on(g, s) {
                if f(c) {
                    return true;
                }
            }
        }
    }
    false
}

/// Rotations of a cycle so that each of its edges comes first, ordered by that edge.
fn anchored<const K: usize>(c: [Vertex; K]) -> Vec<[Vertex; K]> {
    let mut out: Vec<[Vertex; K]> = (0..K)
        .flat_map(|i| {
            let fwd: [Vertex; K] = std::array::from_fn(|j| c[(i + j) % K]);
            let bwd: [Vertex; K] = std::array::from_fn(|j| c[(i + 1 + K - j) % K]);
            [fwd, bwd]
        })
        .collect();
    out.sort_by_key(|r| (Edge::new(r[0], r[1]), r.to_vec()));
    out.dedup_by_key(|r| Edge::new(r[0], r[1]));
    out
}

/// The highest-priority gadget, ties broken by the lexicographically smallest
/// anchor. `None` when no K4 has a pair of uncolored disjoint edges.
pub fn next_gadget(view: &View, sep: &mut Separator) -> Option<Gadget> {
    let g = view.graph;
    let tris = triangles(g);
    for t in &tris {
        if let Some(parts) = sep.split(view, t, &[]) {
            return Some(Gadget::Sep3Cycle { cycle: *t, parts });
        }
    }
    for e in g.edges() {
        if !view.uncolored(e) {
            continue;
        }
        let c = view.crossable(e);
        if !c.is_empty() && sep.split(view, &[e.0, e.1], &c).is_some() {
            return Some(Gadget::SepEdge { edge: e, candidates: c });
        }
    }
    let mut found = None;
    for_each_four_cycle(g, |c| {
        if let Some(parts) = sep.split(view, &c, &[]) {
            found = Some(Gadget::Sep4Cycle { cycle: c, parts });
            return true;
        }
        false
    });
    if found.is_some() {
        return found;
    }
    let single = |e: Edge| -> Option<Edge> {
        if !view.uncolored(e) {
            return None;
        }
        let c = view.crossable(e);
        (c.len() == 1).then(|| c[0])
    };
    for t in &tris {
        for [a, b, c] in anchored(*t) {
            if let Some(uv) = single(Edge::new(a, b)) {
                if sep.split(view, &[a, b, c], &[uv]).is_some() {
                    return Some(Gadget::SepTriple { cycle: [a, b, c], crossing: uv });
                }
            }
        }
    }
    for_each_four_cycle(g, |c| {
        for [a, b, x, y] in anchored(c) {
            if let Some(uv) = single(Edge::new(a, b)) {
                if sep.split(view, &[a, b, x, y], &[uv]).is_some() {
                    found = Some(Gadget::SepQuadruple { cycle: [a, b, x, y], crossing: uv });
                    return true;
                }
            }
        }
        false
    });
    if found.is_some() {
        return found;
    }
    for t in &tris {
        // the middle vertex b is shared by the two crossed sides ab and bc
        for [a, b, c] in anchored(*t) {
            let (Some(uv), Some(xy)) = (single(Edge::new(a, b)), single(Edge::new(b, c))) else { continue };
            if uv != xy && sep.split(view, &[a, b, c], &[uv, xy]).is_some() {
                return Some(Gadget::SepTriangle { cycle: [a, b, c], first: uv, second: xy });
            }
        }
    }
    if let Some(vertices) = find_k5(g) {
        return Some(Gadget::K5 { vertices });
    }
    classify_mc4(view).map(Gadget::Mc4)
}

/// MC4: a completely kite-covered tetrahedron if any, else an SC-graph, else
/// the first K4 with an uncolored disjoint pair, as a plain kite.
pub fn classify_mc4(view: &View) -> Option<Mc4Class> {
    let k4s: Vec<K4Occurrence> =
        enumerate_k4(view.graph).into_iter().filter(|k| view.uncolored_pairs(k).next().is_some()).collect();
    for k in &k4s {
        if let Some(pairs) = kite_cover(view, k) {
            return Some(Mc4Class::KiteCoveredTetrahedron { k4: k.vertices, pairs });
        }
    }
    for k in &k4s {
        if let Some((center, pairs)) = sc_pattern(view, k) {
            return Some(Mc4Class::ScGraph { center, k4: k.vertices, pairs });
        }
    }
    let k = k4s.first()?;
    let (red, blue) = view.uncolored_pairs(k).next().expect("filtered above");
    Some(Mc4Class::PlainKite { k4: k.vertices, red, blue })
}

/// For every edge of the K4, an uncolored edge outside the K4 crossing it.
fn kite_cover(view: &View, k: &K4Occurrence) -> Option<Vec<(Edge, Edge)>> {
    let mut pairs = Vec::new();
    for e in k.edges() {
        if !view.uncolored(e) {
            return None;
        }
        let f = view.crossable(e).into_iter().find(|f| !k.contains(f.0) && !k.contains(f.1))?;
        pairs.push((e, f));
    }
    let used: BTreeSet<Edge> = pairs.iter().map(|p| p.1).collect();
    (used.len() == 6).then_some(pairs)
}

/// Centre v of degree 6 in the K4 with three further neighbours o_i, each
/// adjacent to the two K4 vertices other than v and t_i.
fn sc_pattern(view: &View, k: &K4Occurrence) -> Option<(Vertex, Vec<(Edge, Edge)>)> {
    let g = view.graph;
    'centre: for &v in &k.vertices {
        if g.degree(v) != 6 {
            continue;
        }
        let t: Vec<Vertex> = k.vertices.iter().copied().filter(|&x| x != v).collect();
        let outer: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|x| !k.contains(*x)).collect();
        let mut pairs = Vec::new();
        let mut used = BTreeSet::new();
        for i in 0..3 {
            let (tj, tk) = (t[(i + 1) % 3], t[(i + 2) % 3]);
            let Some(&o) = outer.iter().find(|&&o| !used.contains(&o) && g.has_edge(o, tj) && g.has_edge(o, tk)) else {
                continue 'centre;
            };
            used.insert(o);
            let (red, blue) = (Edge::new(v, o), Edge::new(tj, tk));
            if !view.uncolored(red) || !view.uncolored(blue) {
                continue 'centre;
            }
            pairs.push((red, blue));
        }
        return Some((v, pairs));
    }
    None
}
