use std::collections::VecDeque;

use crate::graph::{Edge, Graph, Vertex};

/// Partition of the surviving vertices into connected components, each sorted,
/// components ordered by their smallest vertex.
pub fn connected_components(g: &Graph, removed_vertices: &[Vertex], removed_edges: &[Edge]) -> Vec<Vec<Vertex>> {
    let mut scratch = Reach::new(g.n());
    scratch.components(g, removed_vertices, removed_edges)
}

/// Reusable BFS scratch space for repeated "is G minus X connected" queries.
#[derive(Clone, Debug)]
pub struct Reach {
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<Vertex>,
}

impl Reach {
    pub fn new(n: usize) -> Reach {
        Reach { mark: vec![0; n], epoch: 0, queue: VecDeque::new() }
    }

    fn bump(&mut self, n: usize) {
        if self.mark.len() < n {
            self.mark.resize(n, 0);
        }
        // two epochs per query: removed and visited
        if self.epoch >= u32::MAX - 4 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 0;
        }
        self.epoch += 2;
    }

    /// Number of components of `g - removed_vertices - removed_edges`, stopping early at `limit`.
    pub fn count_components(
        &mut self,
        g: &Graph,
        removed_vertices: &[Vertex],
        removed_edges: &[Edge],
        limit: usize,
    ) -> usize {
        self.bump(g.n());
        let removed = self.epoch - 1;
        let seen = self.epoch;
        for &v in removed_vertices {
            self.mark[v] = removed;
        }
        let mut count = 0;
        for s in 0..g.n() {
            if self.mark[s] == removed || self.mark[s] == seen {
                continue;
            }
            count += 1;
            if count >= limit {
                return count;
            }
            self.flood(g, s, removed_edges, removed, seen, None);
        }
        count
    }

    pub fn is_disconnected(&mut self, g: &Graph, removed_vertices: &[Vertex], removed_edges: &[Edge]) -> bool {
        self.count_components(g, removed_vertices, removed_edges, 2) >= 2
    }

    pub fn components(&mut self, g: &Graph, removed_vertices: &[Vertex], removed_edges: &[Edge]) -> Vec<Vec<Vertex>> {
        self.bump(g.n());
        let removed = self.epoch - 1;
        let seen = self.epoch;
        for &v in removed_vertices {
            self.mark[v] = removed;
        }
        let mut out = Vec::new();
        for s in 0..g.n() {
            if self.mark[s] == removed || self.mark[s] == seen {
                continue;
            }
            let mut comp = Vec::new();
            self.flood(g, s, removed_edges, removed, seen, Some(&mut comp));
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn flood(
        &mut self,
        g: &Graph,
        s: Vertex,
        removed_edges: &[Edge],
        removed: u32,
        seen: u32,
        mut collect: Option<&mut Vec<Vertex>>,
    ) {
        self.mark[s] = seen;
        self.queue.clear();
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            if let Some(c) = collect.as_deref_mut() {
                c.push(v);
            }
            for &w in g.neighbors(v) {
                let mw = self.mark[w];
                if mw == removed || mw == seen {
                    continue;
                }
                if !removed_edges.is_empty() && removed_edges.contains(&Edge::new(v, w)) {
                    continue;
                }
                self.mark[w] = seen;
                self.queue.push_back(w);
            }
        }
    }
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || Reach::new(g.n()).count_components(g, &[], &[], 2) == 1
}

/// Articulation points of `g` ignoring the vertices in `skip`, ascending.
pub fn articulation_points_without(g: &Graph, skip: &[Vertex]) -> Vec<Vertex> {
    let n = g.n();
    let mut gone = vec![false; n];
    for &v in skip {
        gone[v] = true;
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_ap = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if gone[root] || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if gone[w] || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_ap[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_ap[root] = true;
        }
    }
    (0..n).filter(|&v| is_ap[v]).collect()
}

pub fn articulation_points(g: &Graph) -> Vec<Vertex> {
    articulation_points_without(g, &[])
}

/// Vertex sets of the biconnected components (blocks); isolated vertices are omitted.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut estack: Vec<Edge> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    estack.push(Edge::new(v, w));
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    estack.push(Edge::new(v, w));
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let stop = Edge::new(parent, v);
                        let mut verts = Vec::new();
                        while let Some(e) = estack.pop() {
                            verts.push(e.0);
                            verts.push(e.1);
                            if e == stop {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        blocks.push(verts);
                    }
                }
            }
        }
    }
    blocks
}

/// All 2-vertex cuts {u,v} (u < v) of `g`, lexicographically.
pub fn separation_pairs(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for w in articulation_points_without(g, &[u]) {
            if u < w {
                out.push((u, w));
            }
        }
    }
    out
}

/// Unit-capacity vertex-split flow network for local vertex connectivity.
struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<i32>,
    base: Vec<i32>,
}

impl FlowNet {
    fn new(g: &Graph) -> FlowNet {
        let nodes = 2 * g.n();
        let mut f = FlowNet { head: vec![usize::MAX; nodes], to: vec![], next: vec![], cap: vec![], base: vec![] };
        for v in 0..g.n() {
            f.arc(2 * v, 2 * v + 1, 1);
        }
        for e in g.edges() {
            f.arc(2 * e.0 + 1, 2 * e.1, 1);
            f.arc(2 * e.1 + 1, 2 * e.0, 1);
        }
        f.base = f.cap.clone();
        f
    }

    fn arc(&mut self, a: usize, b: usize, c: i32) {
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// Max number of internally vertex-disjoint s-t paths, capped at `limit`.
    fn disjoint_paths(&mut self, s: Vertex, t: Vertex, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base);
        let (src, sink) = (2 * s + 1, 2 * t);
        let nodes = self.head.len();
        let mut flow = 0;
        let mut pred = vec![usize::MAX; nodes];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            let mut q = VecDeque::from([src]);
            pred[src] = usize::MAX - 1;
            while let Some(x) = q.pop_front() {
                if x == sink {
                    break;
                }
                let mut a = self.head[x];
                while a != usize::MAX {
                    let y = self.to[a];
                    if self.cap[a] > 0 && pred[y] == usize::MAX {
                        pred[y] = a;
                        q.push_back(y);
                    }
                    a = self.next[a];
                }
            }
            if pred[sink] == usize::MAX {
                break;
            }
            let mut x = sink;
            while x != src {
                let a = pred[x];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                x = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// True iff `g` has more than `k` vertices and no vertex cut of size below `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    if k == 1 {
        return is_connected(g);
    }
    if k == 2 {
        return is_connected(g) && articulation_points(g).is_empty();
    }
    if g.m() * 2 < n * k || g.adj_min_degree() < k {
        return false;
    }
    let mut net = FlowNet::new(g);
    // a cut of size < k misses one of the first k vertices
    for s in 0..k {
        for t in 0..n {
            if t == s || g.has_edge(s, t) {
                continue;
            }
            if net.disjoint_paths(s, t, k) < k {
                return false;
            }
        }
    }
    true
}

impl Graph {
    fn adj_min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }
}
