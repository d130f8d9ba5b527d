//! Exhaustive search for a triangulated embedding: decides for every edge
//! whether it is planar or crossed (and by which partner), with propagation
//! and an undo trail. Used to confirm rejections of the gadget loop.

use std::collections::{BTreeSet, HashMap};

use bpr_formula::{Entity, Mode};
use bpr_graph::{crossable_edges_by, is_planar, Edge, Graph, Kite, Vertex};
use bpr_oracle::{normalize, validate_embedding, Constraints, CrossingSet};

const OPEN: u8 = 0;
const PLANAR: u8 = 1;
const CROSSED: u8 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found(CrossingSet),
    Exhausted { nodes: usize },
    Budget { nodes: usize },
}

struct Opt {
    partner: usize,
    boundary: [usize; 4],
    six: [usize; 6],
    verts: [Vertex; 4],
}

enum Change {
    State(usize),
    Kite { verts: [Vertex; 4], six: [usize; 6] },
}

pub(crate) struct Exact<'a> {
    g: &'a Graph,
    mode: Mode,
    edges: Vec<Edge>,
    opts: Vec<Vec<Opt>>,
    /// Edges whose options mention the key edge.
    by_edge: Vec<Vec<usize>>,
    /// Edges whose options use the key vertex.
    by_vertex: Vec<Vec<usize>>,
    banned_v: Vec<bool>,
    banned_pair: Vec<bool>,
    k: usize,
    st: Vec<u8>,
    partner: Vec<usize>,
    vused: Vec<u32>,
    eused: Vec<u32>,
    planar_count: usize,
    pairs: Vec<(usize, usize)>,
    trail: Vec<Change>,
    dirty: Vec<usize>,
    in_dirty: Vec<bool>,
    cons: Constraints,
    pub nodes: usize,
}

impl<'a> Exact<'a> {
    pub fn new(
        g: &'a Graph,
        mode: Mode,
        forced_planar: &BTreeSet<Edge>,
        forbidden: &BTreeSet<Entity>,
    ) -> Exact<'a> {
        let edges = g.edges();
        let m = edges.len();
        let id: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut opts: Vec<Vec<Opt>> = Vec::with_capacity(m);
        let mut by_edge = vec![Vec::new(); m];
        let mut by_vertex = vec![Vec::new(); g.n()];
        for (i, &e) in edges.iter().enumerate() {
            let mut list = Vec::new();
            for f in crossable_edges_by(g, e, |_| true) {
                let kite = Kite::new(0, e, f);
                let boundary = kite.boundary.map(|b| id[&b]);
                let (p, q) = (id[&e], id[&f]);
                let six = [p, q, boundary[0], boundary[1], boundary[2], boundary[3]];
                for &x in &six[1..] {
                    by_edge[x].push(i);
                }
                for &v in &kite.vertices {
                    by_vertex[v].push(i);
                }
                list.push(Opt {
                    partner: q,
                    boundary,
                    six,
                    verts: kite.vertices,
                });
            }
            opts.push(list);
        }
        for l in by_edge.iter_mut().chain(by_vertex.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        let mut banned_v = vec![false; g.n()];
        let mut banned_pair = vec![false; m];
        for ent in forbidden {
            match *ent {
                Entity::Vertex(v) if v < g.n() => banned_v[v] = true,
                Entity::Edge(e) => {
                    if let Some(&i) = id.get(&e) {
                        banned_pair[i] = true;
                    }
                }
                _ => {}
            }
        }
        let k = (m + 6).saturating_sub(3 * g.n());
        let cons = Constraints {
            planar_edges: forced_planar.clone(),
            forbidden_vertices: banned_v
                .iter()
                .enumerate()
                .filter(|p| *p.1)
                .map(|p| p.0)
                .collect(),
            ..Constraints::none()
        };
        let mut x = Exact {
            g,
            mode,
            edges,
            opts,
            by_edge,
            by_vertex,
            banned_v,
            banned_pair,
            k,
            st: vec![OPEN; m],
            partner: vec![usize::MAX; m],
            vused: vec![0; g.n()],
            eused: vec![0; m],
            planar_count: 0,
            pairs: Vec::new(),
            trail: Vec::new(),
            dirty: Vec::new(),
            in_dirty: vec![false; m],
            cons,
            nodes: 0,
        };
        for e in forced_planar {
            if let Some(&i) = id.get(e) {
                x.set(i, PLANAR);
            }
        }
        x
    }

    fn alive(&self, e: usize, o: &Opt) -> bool {
        if self.st[e] != OPEN
            || self.st[o.partner] != OPEN
            || o.boundary.iter().any(|&b| self.st[b] == CROSSED)
        {
            return false;
        }
        if o.verts.iter().any(|&v| self.banned_v[v]) || o.six.iter().any(|&x| self.banned_pair[x]) {
            return false;
        }
        match self.mode {
            Mode::OneP => true,
            Mode::Ic => o.verts.iter().all(|&v| self.vused[v] == 0),
            Mode::Nic => o.six.iter().all(|&x| self.eused[x] == 0),
        }
    }

    fn alive_count(&self, e: usize) -> usize {
        self.opts[e].iter().filter(|o| self.alive(e, o)).count()
    }

    fn mark(&mut self, e: usize) {
        if !self.in_dirty[e] && self.st[e] == OPEN {
            self.in_dirty[e] = true;
            self.dirty.push(e);
        }
    }

    fn set(&mut self, e: usize, s: u8) {
        self.st[e] = s;
        if s == PLANAR {
            self.planar_count += 1;
        }
        self.trail.push(Change::State(e));
        for i in 0..self.by_edge[e].len() {
            let d = self.by_edge[e][i];
            self.mark(d);
        }
    }

    fn cross(&mut self, e: usize, oi: usize) {
        let (f, boundary, six, verts) = {
            let o = &self.opts[e][oi];
            (o.partner, o.boundary, o.six, o.verts)
        };
        self.partner[e] = f;
        self.partner[f] = e;
        self.set(e, CROSSED);
        self.set(f, CROSSED);
        for b in boundary {
            if self.st[b] == OPEN {
                self.set(b, PLANAR);
            }
        }
        for &v in &verts {
            self.vused[v] += 1;
        }
        for &x in &six {
            self.eused[x] += 1;
        }
        self.trail.push(Change::Kite { verts, six });
        self.pairs.push((e, f));
        if self.mode != Mode::OneP {
            for &v in &verts {
                for i in 0..self.by_vertex[v].len() {
                    let d = self.by_vertex[v][i];
                    self.mark(d);
                }
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("nonempty") {
                Change::State(e) => {
                    if self.st[e] == PLANAR {
                        self.planar_count -= 1;
                    }
                    self.st[e] = OPEN;
                    self.partner[e] = usize::MAX;
                }
                Change::Kite { verts, six } => {
                    for v in verts {
                        self.vused[v] -= 1;
                    }
                    for x in six {
                        self.eused[x] -= 1;
                    }
                    self.pairs.pop();
                }
            }
        }
        for e in self.dirty.drain(..) {
            self.in_dirty[e] = false;
        }
    }

    /// Settles edges without options; false on a contradiction.
    fn propagate(&mut self) -> bool {
        let max_planar = self.edges.len() - 2 * self.k;
        while let Some(e) = self.dirty.pop() {
            self.in_dirty[e] = false;
            if self.st[e] != OPEN {
                continue;
            }
            if self.alive_count(e) == 0 {
                self.set(e, PLANAR);
            }
            if self.planar_count > max_planar {
                for d in self.dirty.drain(..) {
                    self.in_dirty[d] = false;
                }
                return false;
            }
        }
        if self.pairs.len() == self.k {
            for e in 0..self.edges.len() {
                if self.st[e] == OPEN {
                    self.set(e, PLANAR);
                }
            }
            self.dirty.clear();
            self.in_dirty.iter_mut().for_each(|d| *d = false);
        }
        self.planar_count <= max_planar
    }

    fn partial_planar(&self) -> bool {
        let n = self.g.n();
        let mut p = Graph::empty(n + self.pairs.len());
        for (i, &e) in self.edges.iter().enumerate() {
            if self.st[i] == PLANAR {
                p.add_edge(e);
            }
        }
        for (j, &(a, b)) in self.pairs.iter().enumerate() {
            let (e, f) = (self.edges[a], self.edges[b]);
            for v in [e.0, e.1, f.0, f.1] {
                p.add_edge(Edge::new(v, n + j));
            }
        }
        is_planar(&p)
    }

    fn leaf(&self) -> Option<CrossingSet> {
        let pairs: CrossingSet = self
            .pairs
            .iter()
            .map(|&(a, b)| (self.edges[a], self.edges[b]))
            .collect();
        let pairs = normalize(&pairs);
        validate_embedding(self.g, &pairs, self.mode, &self.cons)
            .ok()
            .map(|_| pairs)
    }

    /// Open edge with the fewest live options, and its live options.
    fn pick(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, usize)> = None;
        for e in 0..self.edges.len() {
            if self.st[e] != OPEN {
                continue;
            }
            let c = self.alive_count(e);
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, e));
                if c <= 1 {
                    break;
                }
            }
        }
        let (_, e) = best?;
        let mut live: Vec<usize> = (0..self.opts[e].len())
            .filter(|&i| self.alive(e, &self.opts[e][i]))
            .collect();
        // partners with fewer alternatives first
        live.sort_by_key(|&i| self.alive_count(self.opts[e][i].partner));
        Some((e, live))
    }

    pub fn solve(&mut self, budget: usize) -> Outcome {
        if self.g.m() + 6 < 3 * self.g.n() {
            return Outcome::Exhausted { nodes: 0 };
        }
        for e in 0..self.edges.len() {
            self.mark(e);
        }
        if !self.propagate() {
            return Outcome::Exhausted { nodes: self.nodes };
        }
        // frames: (edge, live options, next index, trail mark)
        let mut stack: Vec<(usize, Vec<usize>, usize, usize)> = Vec::new();
        let mut descend = true;
        loop {
            if descend {
                self.nodes += 1;
                if self.nodes > budget {
                    return Outcome::Budget { nodes: self.nodes };
                }
                if self.partial_planar() {
                    match self.pick() {
                        None => {
                            if let Some(p) = self.leaf() {
                                return Outcome::Found(p);
                            }
                        }
                        Some((e, live)) => {
                            stack.push((e, live, 0, self.trail.len()));
                        }
                    }
                }
            }
            // advance the top frame to its next alternative
            let Some(top) = stack.last_mut() else {
                return Outcome::Exhausted { nodes: self.nodes };
            };
            let (e, i, mark) = (top.0, top.2, top.3);
            top.2 += 1;
            let choice = top.1.get(i).copied();
            let planar_branch = i == top.1.len();
            if !planar_branch && choice.is_none() {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let m = parent.3;
                    self.undo(m);
                }
                descend = false;
                continue;
            }
            self.undo(mark);
            match choice {
                Some(oi) => self.cross(e, oi),
                None => self.set(e, PLANAR),
            }
            descend = self.propagate();
        }
    }
}
