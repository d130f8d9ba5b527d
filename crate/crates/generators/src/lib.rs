//! Deterministic and seeded graph families: quadrangulations and their optimal
//! 1-planar completions, kite augmentations of triangulations, K5 stars, the
//! small-graph catalog and named fixtures.

use std::collections::{BTreeMap, BTreeSet};

use bpr_graph::{canonical_form, is_k_connected, planar_rotation, CanonicalForm, Edge, Graph, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("input is not a planar quadrangulation: {0}")]
    NotQuadrangulation(String),
    #[error("invalid slot {0}: {1}")]
    BadSlot(Edge, String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("unknown family {0}")]
    UnknownFamily(String),
}

fn graph(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    let mut g = Graph::empty(n);
    for (a, b) in edges {
        g.add_edge(Edge::new(a, b));
    }
    g
}

/// The cube graph Q3.
pub fn cube() -> Graph {
    pseudo_double_wheel(3).expect("k = 3 is valid")
}

/// Quadrangulation with hubs `2k` (north) and `2k+1` (south) over a rim
/// `0..2k`; north sees the even rim vertices, south the odd ones. k = 3 is Q3.
pub fn pseudo_double_wheel(k: usize) -> Result<Graph, GenError> {
    if k < 3 {
        return Err(GenError::Parameter(format!("pseudo-double-wheel needs k >= 3, got {k}")));
    }
    let r = 2 * k;
    let (north, south) = (r, r + 1);
    let mut e = Vec::new();
    for i in 0..r {
        e.push((i, (i + 1) % r));
        e.push((if i % 2 == 0 { north } else { south }, i));
    }
    Ok(graph(r + 2, e))
}

/// C4 x P_l: layers of 4-cycles, layer `i` on vertices `4i..4i+4`.
pub fn stacked_cubes(l: usize) -> Result<Graph, GenError> {
    if l < 2 {
        return Err(GenError::Parameter(format!("stacked cubes need l >= 2, got {l}")));
    }
    let mut e = Vec::new();
    for i in 0..l {
        for j in 0..4 {
            e.push((4 * i + j, 4 * i + (j + 1) % 4));
            if i + 1 < l {
                e.push((4 * i + j, 4 * (i + 1) + j));
            }
        }
    }
    Ok(graph(4 * l, e))
}

/// Adds both diagonals to every face of a quadrangulation.
pub fn gen_optimal_1planar(q: &Graph) -> Result<Graph, GenError> {
    let rot = planar_rotation(q).map_err(|e| GenError::NotQuadrangulation(e.to_string()))?;
    let faces = rot.faces();
    if q.m() != 2 * q.n() - 4 {
        return Err(GenError::NotQuadrangulation(format!("m = {} but 2n-4 = {}", q.m(), 2 * q.n() - 4)));
    }
    let mut g = q.clone();
    for f in &faces {
        if f.len() != 4 {
            return Err(GenError::NotQuadrangulation(format!("face {f:?} has length {}", f.len())));
        }
        for d in [Edge::new(f[0], f[2]), Edge::new(f[1], f[3])] {
            if !g.add_edge(d) {
                return Err(GenError::NotQuadrangulation(format!("diagonal {d} already present")));
            }
        }
    }
    Ok(g)
}

/// gen_optimal_1planar(Q3): 8 vertices, 24 edges.
pub fn optimal_q3() -> Graph {
    gen_optimal_1planar(&cube()).expect("Q3 is a quadrangulation")
}

/// Bipyramid with hubs over a rim of 2k vertices, with a K5 completed inside
/// every other face at the upper hub. n = 4k+2, m = 13k.
pub fn gen_k5_star(k: usize) -> Result<Graph, GenError> {
    if k < 2 {
        return Err(GenError::Parameter(format!("k5-star needs k >= 2, got {k}")));
    }
    let r = 2 * k;
    let (x, z) = (r, r + 1);
    let n = 4 * k + 2;
    let mut e = Vec::new();
    for i in 0..r {
        e.push((i, (i + 1) % r));
        e.push((x, i));
        e.push((z, i));
    }
    for i in 0..k {
        let (p, q) = (r + 2 + 2 * i, r + 3 + 2 * i);
        let outer = [x, 2 * i, 2 * i + 1];
        e.push((p, q));
        for o in outer {
            e.push((p, o));
            e.push((q, o));
        }
    }
    Ok(graph(n, e))
}

/// A planar triangulation with its faces.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub graph: Graph,
    pub faces: Vec<[Vertex; 3]>,
}

impl Triangulation {
    /// Faces through the edge, as apexes opposite to it.
    pub fn apexes(&self, e: Edge) -> Vec<Vertex> {
        self.faces
            .iter()
            .filter(|f| f.contains(&e.0) && f.contains(&e.1))
            .map(|f| *f.iter().find(|&&v| !e.contains(v)).unwrap())
            .collect()
    }

    pub fn from_graph(g: &Graph) -> Result<Triangulation, GenError> {
        let rot = planar_rotation(g).map_err(|e| GenError::NotQuadrangulation(e.to_string()))?;
        let mut faces = Vec::new();
        for f in rot.faces() {
            if f.len() != 3 {
                return Err(GenError::Parameter("not a triangulation".into()));
            }
            faces.push([f[0], f[1], f[2]]);
        }
        Ok(Triangulation { graph: g.clone(), faces })
    }
}

/// Random planar triangulation on `n >= 4` vertices: vertex insertion into
/// random faces followed by random edge flips.
pub fn random_triangulation(n: usize, rng: &mut impl Rng) -> Triangulation {
    assert!(n >= 4, "random_triangulation needs n >= 4");
    let mut g = graph(n, [(0, 1), (1, 2), (0, 2)]);
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        for u in [a, b, c] {
            g.add_edge(Edge::new(u, v));
        }
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let flips = 4 * n;
    for _ in 0..flips {
        let e = {
            let f = faces[rng.gen_range(0..faces.len())];
            let j = rng.gen_range(0..3);
            Edge::new(f[j], f[(j + 1) % 3])
        };
        let idx: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].contains(&e.0) && faces[i].contains(&e.1)).collect();
        if idx.len() != 2 {
            continue;
        }
        let apex = |f: [Vertex; 3]| *f.iter().find(|&&v| !e.contains(v)).unwrap();
        let (p, q) = (apex(faces[idx[0]]), apex(faces[idx[1]]));
        if g.has_edge(p, q) || g.degree(e.0) <= 3 || g.degree(e.1) <= 3 {
            continue;
        }
        g.remove_edge(e);
        g.add_edge(Edge::new(p, q));
        faces[idx[0]] = [p, q, e.0];
        faces[idx[1]] = [q, p, e.1];
    }
    Triangulation { graph: g, faces }
}

/// Checks a slot set and returns the augmented graph with its crossing pairs
/// `(new edge, slot)`. A slot is a planar edge whose two face apexes become
/// adjacent; slots may not share a face or produce the same new edge.
pub fn augment_kites(t: &Triangulation, slots: &[Edge]) -> Result<(Graph, Vec<(Edge, Edge)>), GenError> {
    let mut g = t.graph.clone();
    let mut used_faces: BTreeSet<[Vertex; 3]> = BTreeSet::new();
    let mut pairs = Vec::new();
    for &s in slots {
        if !t.graph.contains(s) {
            return Err(GenError::BadSlot(s, "not an edge".into()));
        }
        let ap = t.apexes(s);
        if ap.len() != 2 {
            return Err(GenError::BadSlot(s, "needs two faces".into()));
        }
        for f in t.faces.iter().filter(|f| f.contains(&s.0) && f.contains(&s.1)) {
            let mut k = *f;
            k.sort_unstable();
            if !used_faces.insert(k) {
                return Err(GenError::BadSlot(s, "face already used".into()));
            }
        }
        let ne = Edge::new(ap[0], ap[1]);
        if !g.add_edge(ne) {
            return Err(GenError::BadSlot(s, format!("apex edge {ne} exists")));
        }
        pairs.push((ne, s));
    }
    Ok((g, pairs))
}

fn kite_vertices(p: &(Edge, Edge)) -> [Vertex; 4] {
    [p.0 .0, p.0 .1, p.1 .0, p.1 .1]
}

/// Whether a set of crossing pairs obeys the IC (`max_shared = 0`) or NIC
/// (`max_shared = 1`) rule.
pub fn pairs_respect(pairs: &[(Edge, Edge)], max_shared: usize) -> bool {
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let a = kite_vertices(&pairs[i]);
            let b = kite_vertices(&pairs[j]);
            if a.iter().filter(|v| b.contains(v)).count() > max_shared {
                return false;
            }
        }
    }
    true
}

/// Random triangulated 1-planar graph: a random triangulation with random
/// kite slots. `max_shared` limits common vertices between kites (None = 1P).
pub fn random_triangulated_1planar(
    n: usize,
    density: f64,
    max_shared: Option<usize>,
    rng: &mut impl Rng,
) -> (Graph, Vec<(Edge, Edge)>) {
    let t = random_triangulation(n, rng);
    let mut edges = t.graph.edges();
    edges.shuffle(rng);
    let mut slots: Vec<Edge> = Vec::new();
    let mut pairs: Vec<(Edge, Edge)> = Vec::new();
    for e in edges {
        if !rng.gen_bool(density.clamp(0.0, 1.0)) {
            continue;
        }
        slots.push(e);
        match augment_kites(&t, &slots) {
            Ok((_, p)) if max_shared.is_none_or(|k| pairs_respect(&p, k)) => pairs = p,
            _ => {
                slots.pop();
            }
        }
    }
    let (g, _) = augment_kites(&t, &slots).expect("slots were checked");
    (g, pairs)
}

/// All graphs on `n` vertices up to isomorphism, by canonical vertex augmentation.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "all_graphs is limited to n <= 8");
    let mut level: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    let g0 = Graph::empty(1.min(n));
    level.insert(canonical_form(&g0).0, g0);
    for k in 2..=n {
        let mut next: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
        for g in level.values() {
            for mask in 0u32..(1 << (k - 1)) {
                let mut h = Graph::empty(k);
                for e in g.edges() {
                    h.add_edge(e);
                }
                for v in 0..k - 1 {
                    if mask >> v & 1 == 1 {
                        h.add_edge(Edge::new(v, k - 1));
                    }
                }
                let (cf, order) = canonical_form(&h);
                next.entry(cf).or_insert_with(|| canonical_relabel(&h, &order));
            }
        }
        level = next;
    }
    level.into_values().collect()
}

fn canonical_relabel(g: &Graph, order: &[Vertex]) -> Graph {
    let mut perm = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.relabel(&perm)
}

/// 3-connected graphs on `n` vertices up to isomorphism (3, 17, 136 for n = 5, 6, 7).
pub fn three_connected_catalog(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(|g| is_k_connected(g, 3)).collect()
}

/// Random 3-connected graph on `n` vertices with roughly `m` edges.
pub fn random_three_connected(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let all: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Edge(a, b))).collect();
    loop {
        let mut es = all.clone();
        es.shuffle(rng);
        let g = Graph::from_edges(n, es.into_iter().take(m.min(all.len()))).expect("simple edges");
        if is_k_connected(&g, 3) {
            return g;
        }
    }
}

/// Canonical forms of all triangulated 1-planar graphs on `n` vertices,
/// derived from the triangulations in `catalog` by enumerating slot sets.
/// `max_shared` selects IC (0) or NIC (1).
pub fn naive_triangulated_1planar(catalog: &[Graph], max_shared: Option<usize>) -> BTreeSet<CanonicalForm> {
    let mut out = BTreeSet::new();
    for g in catalog {
        if g.n() < 4 || g.m() != 3 * g.n() - 6 {
            continue;
        }
        let Ok(t) = Triangulation::from_graph(g) else { continue };
        let edges = g.edges();
        let mut slots = Vec::new();
        collect_slot_sets(&t, &edges, 0, &mut slots, max_shared, &mut out);
    }
    out
}

fn collect_slot_sets(
    t: &Triangulation,
    edges: &[Edge],
    i: usize,
    slots: &mut Vec<Edge>,
    max_shared: Option<usize>,
    out: &mut BTreeSet<CanonicalForm>,
) {
    let Ok((g, pairs)) = augment_kites(t, slots) else { return };
    if let Some(k) = max_shared {
        if !pairs_respect(&pairs, k) {
            return;
        }
    }
    if i == edges.len() {
        out.insert(canonical_form(&g).0);
        return;
    }
    collect_slot_sets(t, edges, i + 1, slots, max_shared, out);
    slots.push(edges[i]);
    collect_slot_sets(t, edges, i + 1, slots, max_shared, out);
    slots.pop();
}

/// Named fixtures.
pub mod fixtures {
    use super::*;

    /// K_n.
    pub fn complete(n: usize) -> Graph {
        Graph::complete(n)
    }

    /// K5 minus one edge.
    pub fn k5_minus_edge() -> Graph {
        let mut g = Graph::complete(5);
        g.remove_edge(Edge(3, 4));
        g
    }

    /// Octahedron with one kite: 1P, IC and NIC.
    pub fn octahedron_kite() -> Graph {
        let t = octahedron();
        augment_kites(&t, &[Edge(0, 1)]).expect("valid slot").0
    }

    /// Octahedron: 0,1,2,3 equator in order, 4 north, 5 south.
    pub fn octahedron() -> Triangulation {
        let mut e = vec![];
        for i in 0..4 {
            e.push((i, (i + 1) % 4));
            e.push((4, i));
            e.push((5, i));
        }
        Triangulation::from_graph(&graph(6, e)).expect("octahedron is a triangulation")
    }

    /// Hexagonal bipyramid: rim 0..6, north 6, south 7.
    pub fn hex_bipyramid() -> Triangulation {
        let mut e = vec![];
        for i in 0..6 {
            e.push((i, (i + 1) % 6));
            e.push((6, i));
            e.push((7, i));
        }
        Triangulation::from_graph(&graph(8, e)).expect("bipyramid is a triangulation")
    }

    /// Two kites sharing exactly one vertex: NIC but not IC.
    pub fn nic_not_ic() -> Graph {
        augment_kites(&hex_bipyramid(), &[Edge(0, 6), Edge(2, 7)]).expect("valid slots").0
    }

    /// Two kites sharing two vertices: 1P only.
    pub fn one_planar_only() -> Graph {
        augment_kites(&hex_bipyramid(), &[Edge(0, 6), Edge(1, 7)]).expect("valid slots").0
    }

    /// Crossed cube K_{2,2,2,2}: a completely kite-covered tetrahedron.
    pub fn crossed_cube() -> Graph {
        optimal_q3()
    }

    /// Q3 completion with vertex 0 refined: the odd class still spans a
    /// completely kite-covered tetrahedron, and n = 11.
    pub fn kite_covered_tetrahedron() -> Graph {
        let q = refine_degree3(&cube(), 0).expect("cube vertices have degree 3");
        gen_optimal_1planar(&q).expect("refined cube is a quadrangulation")
    }

    /// Completion of the pseudo-double-wheel (k = 4) with rim vertex 1
    /// refined: the refined vertex becomes the centre of an SC-graph. n = 13.
    pub fn sc_graph() -> Graph {
        let q = refine_degree3(&pseudo_double_wheel(4).expect("k = 4"), 1).expect("rim vertex has degree 3");
        gen_optimal_1planar(&q).expect("refined wheel is a quadrangulation")
    }
}

/// Replaces a degree-3 vertex `v` of a quadrangulation, with neighbours a, b,
/// c, by three vertices p_ab, p_bc, p_ca (ids n, n+1, n+2) around `v`.
pub fn refine_degree3(q: &Graph, v: Vertex) -> Result<Graph, GenError> {
    let nb = q.neighbors(v).to_vec();
    if nb.len() != 3 {
        return Err(GenError::Parameter(format!("vertex {v} has degree {}", nb.len())));
    }
    let n = q.n();
    let mut g = Graph::empty(n + 3);
    for e in q.edges() {
        if !e.contains(v) {
            g.add_edge(e);
        }
    }
    for i in 0..3 {
        let p = n + i;
        g.add_edge(Edge::new(p, nb[i]));
        g.add_edge(Edge::new(p, nb[(i + 1) % 3]));
        g.add_edge(Edge::new(p, v));
    }
    Ok(g)
}

/// Families reachable from the command line, `name` or `name:k`.
pub fn family(spec: &str) -> Result<Graph, GenError> {
    let (name, arg) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let k = |default: usize| -> Result<usize, GenError> {
        arg.map_or(Ok(default), |s| s.parse().map_err(|_| GenError::Parameter(format!("bad parameter {s:?}"))))
    };
    match name {
        "optimal-q3" => Ok(optimal_q3()),
        "cube" => Ok(cube()),
        "pdw" => pseudo_double_wheel(k(4)?),
        "optimal-pdw" => gen_optimal_1planar(&pseudo_double_wheel(k(4)?)?),
        "cubes" => stacked_cubes(k(3)?),
        "optimal-cubes" => gen_optimal_1planar(&stacked_cubes(k(3)?)?),
        "k5-star" => gen_k5_star(k(2)?),
        "complete" => Ok(Graph::complete(k(5)?)),
        "k5-minus-edge" => Ok(fixtures::k5_minus_edge()),
        "octahedron-kite" => Ok(fixtures::octahedron_kite()),
        "nic-not-ic" => Ok(fixtures::nic_not_ic()),
        "one-planar-only" => Ok(fixtures::one_planar_only()),
        "kite-covered-tetrahedron" => Ok(fixtures::kite_covered_tetrahedron()),
        "sc-graph" => Ok(fixtures::sc_graph()),
        other => Err(GenError::UnknownFamily(other.to_string())),
    }
}

/// Names accepted by [`family`].
pub const FAMILIES: &[&str] = &[
    "optimal-q3",
    "cube",
    "pdw:K",
    "optimal-pdw:K",
    "cubes:L",
    "optimal-cubes:L",
    "k5-star:K",
    "complete:N",
    "k5-minus-edge",
    "octahedron-kite",
    "nic-not-ic",
    "one-planar-only",
    "kite-covered-tetrahedron",
    "sc-graph",
];
