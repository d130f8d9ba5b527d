//! Exhaustive reference for small graphs: every triangulated 1-planar (IC,
//! NIC) embedding, described by its set of crossing pairs.
//!
//! A crossing set is valid when its pairs are disjoint edges spanning K4s,
//! no edge is crossed twice, no kite boundary edge is crossed, and the
//! planarization (one new vertex per crossing) is a planar triangulation.
//! This forces exactly `m - 3n + 6` pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use bpr_formula::{absorb_terms, kite_vars, Block, BlockKind, Entity, Mode, Var};
use bpr_graph::{
    automorphisms, is_planar, map_edge, planar_embedding, Edge, Graph, Kite, Rotation, Subgraph, Vertex,
};
use serde::{Serialize, Serializer};

pub type CrossingSet = Vec<(Edge, Edge)>;

/// Largest order accepted by [`census`].
pub const CENSUS_MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("{0} is not an edge of the graph")]
    MissingEdge(Edge),
    #[error("crossing edges {0} and {1} share an endpoint")]
    Adjacent(Edge, Edge),
    #[error("crossing {0} x {1} does not span a K4")]
    NotK4(Edge, Edge),
    #[error("edge {0} is crossed more than once")]
    CrossedTwice(Edge),
    #[error("kite boundary edge {0} is crossed")]
    BoundaryCrossed(Edge),
    #[error("expected {expected} crossings, got {got}")]
    WrongCount { expected: i64, got: usize },
    #[error("planarization is not planar")]
    NotPlanar,
    #[error("kites {0:?} and {1:?} violate the {2} condition")]
    Mode([Vertex; 4], [Vertex; 4], Mode),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("cycle {0:?} is not a face")]
    FaceMissing(Vec<Vertex>),
    #[error("graph has {0} vertices; the census is limited to {CENSUS_MAX_N}")]
    TooLarge(usize),
}

/// Restrictions on admissible embeddings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    /// Edges that must stay uncrossed.
    pub planar_edges: BTreeSet<Edge>,
    /// Vertices no kite may contain.
    pub forbidden_vertices: BTreeSet<Vertex>,
    /// Edges no kite may have on its boundary.
    pub forbidden_edges: BTreeSet<Edge>,
    /// Cycles that must bound a face of the planarization.
    pub faces: Vec<Vec<Vertex>>,
}

impl Constraints {
    pub fn none() -> Constraints {
        Constraints::default()
    }

    /// The cycle's edges stay uncrossed and it bounds a face.
    pub fn outer_face(cycle: &[Vertex]) -> Constraints {
        let mut c = Constraints::default();
        c.add_face(cycle);
        c
    }

    pub fn add_face(&mut self, cycle: &[Vertex]) {
        for i in 0..cycle.len() {
            self.planar_edges.insert(Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]));
        }
        self.faces.push(cycle.to_vec());
    }

    /// Vertices whose labels an automorphism must preserve.
    pub fn pinned_vertices(&self) -> Vec<Vertex> {
        let mut s: BTreeSet<Vertex> = self.planar_edges.iter().flat_map(|e| [e.0, e.1]).collect();
        s.extend(self.faces.iter().flatten());
        s.extend(&self.forbidden_vertices);
        s.extend(self.forbidden_edges.iter().flat_map(|e| [e.0, e.1]));
        s.into_iter().collect()
    }
}

/// A 1-planar embedding: crossing pairs plus the rotation system of the
/// planarization, where crossing `i` is the vertex `n + i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    #[serde(serialize_with = "ser_pairs")]
    pub crossings: CrossingSet,
    pub rotations: BTreeMap<usize, Vec<usize>>,
}

fn ser_pairs<S: Serializer>(pairs: &CrossingSet, s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<[String; 2]> = pairs.iter().map(|(e, f)| [e.to_string(), f.to_string()]).collect();
    v.serialize(s)
}

impl Embedding {
    pub fn kites(&self) -> Vec<Kite> {
        self.crossings.iter().enumerate().map(|(i, &(e, f))| Kite::new(i, e, f)).collect()
    }
}

/// Sorted pairs with the smaller edge first.
pub fn normalize(pairs: &[(Edge, Edge)]) -> CrossingSet {
    let mut out: CrossingSet = pairs.iter().map(|&(e, f)| if e < f { (e, f) } else { (f, e) }).collect();
    out.sort_unstable();
    out
}

/// Planarization: each pair `(a b, x y)` becomes a new vertex joined to a, b, x, y.
pub fn planarize(g: &Graph, pairs: &[(Edge, Edge)]) -> Graph {
    let n = g.n();
    let crossed: BTreeSet<Edge> = pairs.iter().flat_map(|&(e, f)| [e, f]).collect();
    let mut p = Graph::empty(n + pairs.len());
    for e in g.edges() {
        if !crossed.contains(&e) {
            p.add_edge(e);
        }
    }
    for (i, &(e, f)) in pairs.iter().enumerate() {
        for v in [e.0, e.1, f.0, f.1] {
            p.add_edge(Edge::new(v, n + i));
        }
    }
    p
}

fn is_face(rot: &Rotation, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    rot.faces().iter().any(|f| {
        if f.len() != k {
            return false;
        }
        let Some(s) = f.iter().position(|&v| v == cycle[0]) else { return false };
        let fwd = (0..k).all(|i| f[(s + i) % k] == cycle[i]);
        let bwd = (0..k).all(|i| f[(s + k - i) % k] == cycle[i]);
        fwd || bwd
    })
}

fn check_mode(kites: &[Kite], mode: Mode) -> Result<(), EmbedError> {
    for i in 0..kites.len() {
        for j in i + 1..kites.len() {
            let shared = kites[i].vertices.iter().filter(|v| kites[j].contains_vertex(**v)).count();
            let bad = match mode {
                Mode::OneP => false,
                Mode::Ic => shared > 0,
                Mode::Nic => shared > 1,
            };
            if bad {
                return Err(EmbedError::Mode(kites[i].vertices, kites[j].vertices, mode));
            }
        }
    }
    Ok(())
}

/// Checks a crossing set against the definition and returns the embedding.
pub fn validate_embedding(g: &Graph, pairs: &[(Edge, Edge)], mode: Mode, cons: &Constraints) -> Result<Embedding, EmbedError> {
    let expected = g.m() as i64 - 3 * g.n() as i64 + 6;
    if expected != pairs.len() as i64 {
        return Err(EmbedError::WrongCount { expected, got: pairs.len() });
    }
    let mut crossed = BTreeSet::new();
    for &(e, f) in pairs {
        for x in [e, f] {
            if !g.contains(x) {
                return Err(EmbedError::MissingEdge(x));
            }
            if !crossed.insert(x) {
                return Err(EmbedError::CrossedTwice(x));
            }
            if cons.planar_edges.contains(&x) {
                return Err(EmbedError::Constraint(format!("edge {x} must stay uncrossed")));
            }
        }
        if e.shares_endpoint(&f) {
            return Err(EmbedError::Adjacent(e, f));
        }
        if !g.is_clique(&[e.0, e.1, f.0, f.1]) {
            return Err(EmbedError::NotK4(e, f));
        }
    }
    let kites: Vec<Kite> = pairs.iter().enumerate().map(|(i, &(e, f))| Kite::new(i, e, f)).collect();
    for k in &kites {
        if let Some(b) = k.boundary.iter().find(|b| crossed.contains(b)) {
            return Err(EmbedError::BoundaryCrossed(*b));
        }
        if let Some(v) = k.vertices.iter().find(|v| cons.forbidden_vertices.contains(v)) {
            return Err(EmbedError::Constraint(format!("vertex {v} may not lie on a kite")));
        }
        if let Some(b) = k.boundary.iter().find(|b| cons.forbidden_edges.contains(b)) {
            return Err(EmbedError::Constraint(format!("edge {b} may not bound a kite")));
        }
    }
    check_mode(&kites, mode)?;
    let p = planarize(g, pairs);
    let rot = planar_embedding(&p).ok_or(EmbedError::NotPlanar)?;
    for f in &cons.faces {
        if !is_face(&rot, f) {
            return Err(EmbedError::FaceMissing(f.clone()));
        }
    }
    Ok(Embedding {
        crossings: pairs.to_vec(),
        rotations: rot.order.iter().enumerate().map(|(v, o)| (v, o.clone())).collect(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum St {
    Open,
    Planar,
    Crossed,
}

struct Option4 {
    partner: usize,
    boundary: [usize; 4],
    vertices: [Vertex; 4],
}

struct Search<'a> {
    g: &'a Graph,
    mode: Mode,
    cons: &'a Constraints,
    k: usize,
    edges: Vec<Edge>,
    options: Vec<Vec<Option4>>,
    limit: usize,
    out: Vec<CrossingSet>,
    nodes: usize,
}

#[derive(Clone)]
struct State {
    st: Vec<St>,
    pairs: Vec<(usize, usize)>,
    kites: Vec<[Vertex; 4]>,
    boundary_use: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, mode: Mode, cons: &'a Constraints, k: usize, limit: usize) -> Search<'a> {
        let edges = g.edges();
        let id: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let options = edges
            .iter()
            .map(|&e| {
                let mut opts = Vec::new();
                for f in bpr_graph::crossable_edges_by(g, e, |_| true) {
                    let kite = Kite::new(0, e, f);
                    opts.push(Option4 { partner: id[&f], boundary: kite.boundary.map(|b| id[&b]), vertices: kite.vertices });
                }
                opts
            })
            .collect();
        Search { g, mode, cons, k, edges, options, limit, out: Vec::new(), nodes: 0 }
    }

    fn allowed(&self, s: &State, e: usize, o: &Option4) -> bool {
        if s.st[o.partner] != St::Open || o.boundary.iter().any(|&b| s.st[b] == St::Crossed) {
            return false;
        }
        if self.cons.planar_edges.contains(&self.edges[e]) || self.cons.planar_edges.contains(&self.edges[o.partner]) {
            return false;
        }
        if o.vertices.iter().any(|v| self.cons.forbidden_vertices.contains(v))
            || o.boundary.iter().any(|&b| self.cons.forbidden_edges.contains(&self.edges[b]))
        {
            return false;
        }
        match self.mode {
            Mode::OneP => true,
            Mode::Ic => s.kites.iter().all(|k| o.vertices.iter().all(|v| !k.contains(v))),
            Mode::Nic => {
                s.kites.iter().all(|k| o.vertices.iter().filter(|v| k.contains(v)).count() <= 1)
                    && o.boundary.iter().all(|&b| !s.boundary_use[b])
            }
        }
    }

    fn partial_planar(&self, s: &State) -> bool {
        let n = self.g.n();
        let mut p = Graph::empty(n + s.pairs.len());
        for (i, &e) in self.edges.iter().enumerate() {
            if s.st[i] == St::Planar {
                p.add_edge(e);
            }
        }
        for (j, &(a, b)) in s.pairs.iter().enumerate() {
            let (e, f) = (self.edges[a], self.edges[b]);
            for v in [e.0, e.1, f.0, f.1] {
                p.add_edge(Edge::new(v, n + j));
            }
        }
        is_planar(&p)
    }

    fn run(&mut self, mut s: State) {
        if self.out.len() >= self.limit {
            return;
        }
        self.nodes += 1;
        // settle forced edges
        loop {
            if s.pairs.len() == self.k {
                for x in s.st.iter_mut() {
                    if *x == St::Open {
                        *x = St::Planar;
                    }
                }
                break;
            }
            let mut changed = false;
            for e in 0..self.edges.len() {
                if s.st[e] == St::Open && !self.options[e].iter().any(|o| self.allowed(&s, e, o)) {
                    s.st[e] = St::Planar;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let open: Vec<usize> = (0..self.edges.len()).filter(|&e| s.st[e] == St::Open).collect();
        if s.pairs.len() + open.len() / 2 < self.k {
            return;
        }
        if !self.partial_planar(&s) {
            return;
        }
        if open.is_empty() {
            let pairs: CrossingSet = s.pairs.iter().map(|&(a, b)| (self.edges[a], self.edges[b])).collect();
            let pairs = normalize(&pairs);
            if validate_embedding(self.g, &pairs, self.mode, self.cons).is_ok() {
                self.out.push(pairs);
            }
            return;
        }
        let &e = open
            .iter()
            .min_by_key(|&&e| self.options[e].iter().filter(|o| self.allowed(&s, e, o)).count())
            .unwrap();
        let choices: Vec<usize> = (0..self.options[e].len()).filter(|&i| self.allowed(&s, e, &self.options[e][i])).collect();
        for i in choices {
            let o = &self.options[e][i];
            let mut t = s.clone();
            t.st[e] = St::Crossed;
            t.st[o.partner] = St::Crossed;
            for &b in &o.boundary {
                t.st[b] = St::Planar;
                t.boundary_use[b] = true;
            }
            t.pairs.push((e, o.partner));
            t.kites.push(o.vertices);
            self.run(t);
        }
        s.st[e] = St::Planar;
        self.run(s);
    }
}

/// All valid crossing sets (normalized), at most `limit` of them.
pub fn enumerate_embeddings_limited(g: &Graph, mode: Mode, cons: &Constraints, limit: usize) -> Vec<CrossingSet> {
    let k = g.m() as i64 - 3 * g.n() as i64 + 6;
    if g.n() < 3 || k < 0 {
        return vec![];
    }
    let mut st = vec![St::Open; g.m()];
    let edges = g.edges();
    for (i, e) in edges.iter().enumerate() {
        if cons.planar_edges.contains(e) {
            st[i] = St::Planar;
        }
    }
    let mut search = Search::new(g, mode, cons, k as usize, limit);
    let init = State { st, pairs: vec![], kites: vec![], boundary_use: vec![false; g.m()] };
    search.run(init);
    let mut out = search.out;
    out.sort();
    out
}

pub fn enumerate_embeddings(g: &Graph, mode: Mode, cons: &Constraints) -> Vec<CrossingSet> {
    enumerate_embeddings_limited(g, mode, cons, usize::MAX)
}

/// Some valid embedding, if one exists.
pub fn find_embedding(g: &Graph, mode: Mode, cons: &Constraints) -> Option<Embedding> {
    let sets = enumerate_embeddings_limited(g, mode, cons, 1);
    sets.first().map(|p| validate_embedding(g, p, mode, cons).expect("search returns valid sets"))
}

pub fn is_recognized(g: &Graph, mode: Mode) -> bool {
    !enumerate_embeddings_limited(g, mode, &Constraints::none(), 1).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub raw: usize,
    pub classes: usize,
    #[serde(skip)]
    pub embeddings: Vec<CrossingSet>,
    #[serde(skip)]
    pub representatives: Vec<CrossingSet>,
}

/// Counts embeddings and their classes under automorphisms that fix the
/// constrained vertices.
pub fn census(g: &Graph, mode: Mode, cons: &Constraints) -> Result<CensusResult, EmbedError> {
    if g.n() > CENSUS_MAX_N {
        return Err(EmbedError::TooLarge(g.n()));
    }
    let embeddings = enumerate_embeddings(g, mode, cons);
    let auts = automorphisms(g, &cons.pinned_vertices());
    let mut seen: BTreeSet<CrossingSet> = BTreeSet::new();
    let mut representatives = Vec::new();
    for e in &embeddings {
        let canon = auts
            .iter()
            .map(|p| normalize(&e.iter().map(|&(a, b)| (map_edge(a, p), map_edge(b, p))).collect::<Vec<_>>()))
            .min()
            .unwrap_or_else(|| e.clone());
        if seen.insert(canon) {
            representatives.push(e.clone());
        }
    }
    Ok(CensusResult { raw: embeddings.len(), classes: representatives.len(), embeddings, representatives })
}

/// η block of a small remainder graph. Each embedding contributes the set of
/// `interface` entities its kites use; kite ids are assigned per distinct K4
/// vertex set, identical terms are merged and superset terms absorbed.
pub fn small_graph_block(
    sub: &Subgraph,
    mode: Mode,
    cons: &Constraints,
    outer: &[Vertex],
    interface: &BTreeSet<Entity>,
    next_kite: &mut usize,
    origin: impl Into<String>,
) -> Block {
    let embeddings = enumerate_embeddings(&sub.graph, mode, cons);
    let mut ids: BTreeMap<[Vertex; 4], usize> = BTreeMap::new();
    let mut terms: Vec<Vec<Var>> = Vec::new();
    let mut kites: Vec<Vec<Kite>> = Vec::new();
    for emb in embeddings {
        let ks: Vec<Kite> = emb
            .iter()
            .map(|&(e, f)| {
                let (e, f) = (sub.parent_edge(e), sub.parent_edge(f));
                let mut vs = [e.0, e.1, f.0, f.1];
                vs.sort_unstable();
                let id = *ids.entry(vs).or_insert_with(|| {
                    *next_kite += 1;
                    *next_kite - 1
                });
                Kite::new(id, e, f)
            })
            .collect();
        let mut term: Vec<Var> = if mode == Mode::OneP {
            vec![]
        } else {
            ks.iter().flat_map(|k| kite_vars(k, mode)).filter(|v| interface.contains(&v.entity)).collect()
        };
        term.sort_unstable();
        term.dedup();
        if !terms.contains(&term) {
            terms.push(term);
            kites.push(ks);
        }
    }
    let mut block = Block {
        kind: BlockKind::Small { outer: outer.iter().map(|&v| sub.to_parent[v]).collect() },
        terms,
        kites,
        origin: origin.into(),
    };
    absorb_terms(&mut block);
    block
}

/// Interface entities of an outer cycle: its vertices (IC) or edges (NIC).
pub fn outer_entities(outer_parent: &[Vertex], mode: Mode) -> BTreeSet<Entity> {
    match mode {
        Mode::OneP => BTreeSet::new(),
        Mode::Ic => outer_parent.iter().map(|&v| Entity::Vertex(v)).collect(),
        Mode::Nic => (0..outer_parent.len())
            .map(|i| Entity::Edge(Edge::new(outer_parent[i], outer_parent[(i + 1) % outer_parent.len()])))
            .collect(),
    }
}
