//! Left-right planarity test with embedding extraction (Brandes' formulation),
//! written iteratively so deep DFS trees do not exhaust the call stack.

use std::collections::HashMap;

use crate::connectivity::is_k_connected;
use crate::graph::{Edge, Graph, Vertex};
use crate::GraphError;

const NONE: usize = usize::MAX;

/// Cyclic clockwise neighbour order around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub order: Vec<Vec<Vertex>>,
    pos: HashMap<(Vertex, Vertex), usize>,
}

impl Rotation {
    pub fn from_orders(order: Vec<Vec<Vertex>>) -> Rotation {
        let mut pos = HashMap::new();
        for (v, nb) in order.iter().enumerate() {
            for (i, &w) in nb.iter().enumerate() {
                pos.insert((v, w), i);
            }
        }
        Rotation { order, pos }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Neighbour following `w` clockwise around `v`.
    pub fn cw(&self, v: Vertex, w: Vertex) -> Vertex {
        let nb = &self.order[v];
        nb[(self.pos[&(v, w)] + 1) % nb.len()]
    }

    /// Neighbour preceding `w` clockwise around `v`.
    pub fn ccw(&self, v: Vertex, w: Vertex) -> Vertex {
        let nb = &self.order[v];
        nb[(self.pos[&(v, w)] + nb.len() - 1) % nb.len()]
    }

    /// Faces as vertex cycles; each half-edge (v,w) is used once, the face
    /// lying to its right.
    pub fn faces(&self) -> Vec<Vec<Vertex>> {
        let mut used: HashMap<(Vertex, Vertex), bool> = HashMap::new();
        let mut faces = Vec::new();
        for v in 0..self.n() {
            for &w in &self.order[v] {
                if used.contains_key(&(v, w)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (v, w);
                loop {
                    used.insert((a, b), true);
                    face.push(a);
                    let c = self.ccw(b, a);
                    a = b;
                    b = c;
                    if a == v && b == w {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn reversed(&self) -> Rotation {
        Rotation::from_orders(
            self.order
                .iter()
                .map(|nb| nb.iter().rev().copied().collect())
                .collect(),
        )
    }
}

/// Half-edge list under construction: per half-edge its cw and ccw neighbours.
struct HalfEdges {
    link: HashMap<(Vertex, Vertex), (Vertex, Vertex)>,
    leftmost: Vec<usize>,
}

impl HalfEdges {
    fn cw_of(&self, v: Vertex, w: Vertex) -> Vertex {
        self.link[&(v, w)].0
    }

    fn ccw_of(&self, v: Vertex, w: Vertex) -> Vertex {
        self.link[&(v, w)].1
    }

    fn set_cw(&mut self, v: Vertex, w: Vertex, x: Vertex) {
        self.link.get_mut(&(v, w)).unwrap().0 = x;
    }

    fn set_ccw(&mut self, v: Vertex, w: Vertex, x: Vertex) {
        self.link.get_mut(&(v, w)).unwrap().1 = x;
    }

    /// Inserts half-edge (v,w) next to a reference: `cw = Some(r)` puts it
    /// immediately counter-clockwise of r, `ccw = Some(r)` immediately clockwise.
    fn add(&mut self, v: Vertex, w: Vertex, cw: Option<Vertex>, ccw: Option<Vertex>) {
        if self.leftmost[v] == NONE {
            self.link.insert((v, w), (w, w));
            self.leftmost[v] = w;
            return;
        }
        if let Some(r) = cw {
            let r_ccw = self.ccw_of(v, r);
            self.link.insert((v, w), (r, r_ccw));
            self.set_cw(v, r_ccw, w);
            self.set_ccw(v, r, w);
            if r == self.leftmost[v] {
                self.leftmost[v] = w;
            }
        } else if let Some(r) = ccw {
            let r_cw = self.cw_of(v, r);
            self.link.insert((v, w), (r_cw, r));
            self.set_ccw(v, r_cw, w);
            self.set_cw(v, r, w);
        } else {
            unreachable!("reference half-edge required");
        }
    }

    fn add_first(&mut self, v: Vertex, w: Vertex) {
        let lm = self.leftmost[v];
        let r = if lm == NONE { None } else { Some(lm) };
        self.add(v, w, r, None);
    }
}

#[derive(Clone, Copy, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default)]
struct Pair {
    left: Interval,
    right: Interval,
}

impl Pair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    g: &'a Graph,
    height: Vec<usize>,
    eid: HashMap<(Vertex, Vertex), usize>,
    dst: Vec<Vertex>,
    src: Vec<Vertex>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    parent_edge: Vec<usize>,
    out: Vec<Vec<Vertex>>,
    ordered: Vec<Vec<Vertex>>,
    refe: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<usize>,
    pairs: Vec<Pair>,
    stack_bottom: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    roots: Vec<Vertex>,
}

impl<'a> Lr<'a> {
    fn new(g: &'a Graph) -> Lr<'a> {
        let n = g.n();
        Lr {
            g,
            height: vec![NONE; n],
            eid: HashMap::with_capacity(g.m()),
            dst: Vec::new(),
            src: Vec::new(),
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting: Vec::new(),
            parent_edge: vec![NONE; n],
            out: vec![Vec::new(); n],
            ordered: Vec::new(),
            refe: Vec::new(),
            side: Vec::new(),
            stack: Vec::new(),
            pairs: Vec::new(),
            stack_bottom: Vec::new(),
            lowpt_edge: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn orient(&mut self, v: Vertex, w: Vertex) -> usize {
        let id = self.dst.len();
        self.eid.insert((v, w), id);
        self.src.push(v);
        self.dst.push(w);
        self.lowpt.push(0);
        self.lowpt2.push(0);
        self.nesting.push(0);
        self.out[v].push(w);
        id
    }

    fn dfs_orientation(&mut self, root: Vertex) {
        let n = self.g.n();
        let mut ind = vec![0usize; n];
        let mut skip_init: HashMap<usize, bool> = HashMap::new();
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.g.degree(v) {
                let w = self.g.neighbors(v)[ind[v]];
                let existing = self.eid.get(&(v, w)).copied();
                let vw;
                if existing.is_none_or(|id| !skip_init.contains_key(&id)) {
                    if existing.is_some() || self.eid.contains_key(&(w, v)) {
                        ind[v] += 1;
                        continue;
                    }
                    vw = self.orient(v, w);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        dfs.push(v);
                        dfs.push(w);
                        skip_init.insert(vw, true);
                        break;
                    } else {
                        self.lowpt[vw] = self.height[w];
                    }
                } else {
                    vw = existing.unwrap();
                }
                self.nesting[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn top(&self) -> Option<usize> {
        self.stack.last().copied()
    }

    fn conflicting(&self, i: Interval, b: usize) -> bool {
        match i.high {
            Some(h) if !i.empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &Pair) -> usize {
        if p.left.empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn new_pair(&mut self, p: Pair) -> usize {
        self.pairs.push(p);
        self.pairs.len() - 1
    }

    fn dfs_testing(&mut self, root: Vertex) -> bool {
        let n = self.g.n();
        let mut ind = vec![0usize; n];
        let mut skip_init = vec![false; self.dst.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.ordered[v].len() {
                let w = self.ordered[v][ind[v]];
                let ei = self.eid[&(v, w)];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.top();
                    if ei == self.parent_edge[w] {
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    } else {
                        self.lowpt_edge[ei] = ei;
                        let id = self.new_pair(Pair {
                            left: Interval::default(),
                            right: Interval { low: Some(ei), high: Some(ei) },
                        });
                        self.stack.push(id);
                    }
                }
                if self.lowpt[ei] < self.height[v] {
                    if w == self.ordered[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = Pair::default();
        loop {
            let qid = match self.stack.pop() {
                Some(q) => q,
                None => break,
            };
            let mut q = self.pairs[qid];
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            if self.lowpt[q.right.low.unwrap()] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else if let Some(l) = p.right.low {
                    self.refe[l] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refe[q.right.low.unwrap()] = Some(self.lowpt_edge[e]);
            }
            if self.top() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(tid) = self.top() {
            let t = self.pairs[tid];
            if !(self.conflicting(t.left, ei) || self.conflicting(t.right, ei)) {
                break;
            }
            self.stack.pop();
            let mut q = t;
            if self.conflicting(q.right, ei) {
                q.swap();
            }
            if self.conflicting(q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.refe[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else if let Some(l) = p.left.low {
                self.refe[l] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            let id = self.new_pair(p);
            self.stack.push(id);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(tid) = self.top() {
            let t = self.pairs[tid];
            if self.lowest(&t) != self.height[u] {
                break;
            }
            self.stack.pop();
            if let Some(l) = t.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(pid) = self.stack.pop() {
            let mut p = self.pairs[pid];
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refe[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refe[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refe[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.refe[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.pairs[pid] = p;
            self.stack.push(pid);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(tid) = self.top() {
                let t = self.pairs[tid];
                let (hl, hr) = (t.left.high, t.right.high);
                self.refe[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut dfs = vec![e];
        let mut old_ref: HashMap<usize, usize> = HashMap::new();
        while let Some(x) = dfs.pop() {
            if let Some(r) = self.refe[x] {
                dfs.push(x);
                dfs.push(r);
                old_ref.insert(x, r);
                self.refe[x] = None;
            } else if let Some(&r) = old_ref.get(&x) {
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }

    fn run(mut self) -> Option<Rotation> {
        let g = self.g;
        let n = g.n();
        if n > 2 && g.m() > 3 * n - 6 {
            return None;
        }
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }
        let me = self.dst.len();
        self.refe = vec![None; me];
        self.side = vec![1; me];
        self.stack_bottom = vec![None; me];
        self.lowpt_edge = vec![0; me];
        self.ordered = (0..n)
            .map(|v| {
                let mut o = self.out[v].clone();
                o.sort_by_key(|&w| self.nesting[self.eid[&(v, w)]]);
                o
            })
            .collect();
        for r in self.roots.clone() {
            if !self.dfs_testing(r) {
                return None;
            }
        }
        for e in 0..me {
            let s = self.sign(e);
            self.nesting[e] *= s;
        }
        let mut emb = HalfEdges { link: HashMap::with_capacity(2 * me), leftmost: vec![NONE; n] };
        for v in 0..n {
            let mut o = self.out[v].clone();
            o.sort_by_key(|&w| self.nesting[self.eid[&(v, w)]]);
            let mut prev: Option<Vertex> = None;
            for &w in &o {
                emb.add(v, w, None, prev);
                prev = Some(w);
            }
            self.ordered[v] = o;
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        let mut ind = vec![0usize; n];
        for r in self.roots.clone() {
            let mut dfs = vec![r];
            while let Some(v) = dfs.pop() {
                while ind[v] < self.ordered[v].len() {
                    let w = self.ordered[v][ind[v]];
                    ind[v] += 1;
                    let ei = self.eid[&(v, w)];
                    if ei == self.parent_edge[w] {
                        emb.add_first(w, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    } else if self.side[ei] == 1 {
                        emb.add(w, v, None, Some(right_ref[w]));
                    } else {
                        emb.add(w, v, Some(left_ref[w]), None);
                        left_ref[w] = v;
                    }
                }
            }
        }
        let mut order = vec![Vec::new(); n];
        for (v, ord) in order.iter_mut().enumerate() {
            let start = emb.leftmost[v];
            if start == NONE {
                continue;
            }
            let mut cur = start;
            loop {
                ord.push(cur);
                cur = emb.cw_of(v, cur);
                if cur == start {
                    break;
                }
            }
        }
        Some(Rotation::from_orders(order))
    }
}

/// A planar rotation system if `g` is planar.
pub fn planar_embedding(g: &Graph) -> Option<Rotation> {
    Lr::new(g).run()
}

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Planar with exactly 3n - 6 edges.
pub fn is_triangulated_planar(g: &Graph) -> bool {
    g.n() >= 3 && g.m() == 3 * g.n() - 6 && is_planar(g)
}

/// The unique (up to reflection) rotation of a 3-connected planar graph.
pub fn planar_rotation(g: &Graph) -> Result<Rotation, GraphError> {
    if !is_k_connected(g, 3) {
        return Err(GraphError::NotThreeConnected);
    }
    planar_embedding(g).ok_or(GraphError::NotPlanar)
}

/// Checks Euler's formula on the faces of a rotation for a connected graph.
pub fn rotation_is_planar(g: &Graph, rot: &Rotation) -> bool {
    if rot.n() != g.n() {
        return false;
    }
    for v in 0..g.n() {
        let mut a: Vec<Vertex> = rot.order[v].clone();
        a.sort_unstable();
        if a != g.neighbors(v) {
            return false;
        }
    }
    let comps = crate::connectivity::connected_components(g, &[], &[]).len();
    let faces = rot.faces().len();
    // isolated vertices contribute no half-edges and no faces
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
    let f_expected = (g.m() + 2 * (comps - isolated)) as i64 - (g.n() - isolated) as i64;
    faces as i64 == f_expected
}

/// Edges of a face cycle.
pub fn face_edges(face: &[Vertex]) -> Vec<Edge> {
    (0..face.len())
        .map(|i| Edge::new(face[i], face[(i + 1) % face.len()]))
        .collect()
}
