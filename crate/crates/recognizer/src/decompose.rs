//! Inputs that are not 3-connected: split at cut vertices and separation
//! pairs, recognize every 3-connected piece and enforce exclusivity of the
//! entities the pieces share.

use std::collections::{BTreeMap, BTreeSet};

use bpr_coloring::{Color, EdgeColoring};
use bpr_formula::{BlockKind, Entity, Eta, Mode, Var};
use bpr_graph::{
    articulation_points, connected_components, is_k_connected, planar_embedding, separation_pairs,
    Edge, Graph, Kite, Vertex,
};
use bpr_oracle::{normalize, planarize, Embedding};

use crate::{recognize_with, Event, FailureReason, Options, Recognition, Stop};

/// Largest shared-entity set searched exhaustively per piece.
const EXACT_SHARED_MAX: usize = 10;

/// A piece in global labels.
#[derive(Clone, Debug)]
struct Piece {
    vertices: Vec<Vertex>,
    edges: BTreeSet<Edge>,
    /// Pair edges that are not edges of the input (or belong to another piece).
    virtual_edges: BTreeSet<Edge>,
}

impl Piece {
    fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Local graph plus the local-to-global map.
    fn local(&self) -> (Graph, Vec<Vertex>) {
        let index: BTreeMap<Vertex, Vertex> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let edges = self
            .edges
            .iter()
            .chain(&self.virtual_edges)
            .map(|e| Edge::new(index[&e.0], index[&e.1]));
        (
            Graph::from_edges(self.n(), edges).expect("piece edges are simple"),
            self.vertices.clone(),
        )
    }

    fn sub_piece(&self, part: &[Vertex], extra: &[Vertex]) -> Piece {
        let vs: BTreeSet<Vertex> = part.iter().chain(extra).copied().collect();
        let inside = |e: &&Edge| vs.contains(&e.0) && vs.contains(&e.1);
        Piece {
            vertices: vs.iter().copied().collect(),
            edges: self.edges.iter().filter(inside).copied().collect(),
            virtual_edges: self.virtual_edges.iter().filter(inside).copied().collect(),
        }
    }
}

/// Splits until every piece is 3-connected or has at most three vertices.
fn split(piece: Piece, leaves: &mut Vec<Piece>, trivial: &mut Vec<Piece>) {
    if piece.n() <= 3 {
        trivial.push(piece);
        return;
    }
    let (local, map) = piece.local();
    let comps = connected_components(&local, &[], &[]);
    if comps.len() > 1 {
        for c in comps {
            let part: Vec<Vertex> = c.iter().map(|&v| map[v]).collect();
            split(piece.sub_piece(&part, &[]), leaves, trivial);
        }
        return;
    }
    if let Some(&cut) = articulation_points(&local).first() {
        for c in connected_components(&local, &[cut], &[]) {
            let part: Vec<Vertex> = c.iter().map(|&v| map[v]).collect();
            split(piece.sub_piece(&part, &[map[cut]]), leaves, trivial);
        }
        return;
    }
    if is_k_connected(&local, 3) {
        leaves.push(piece);
        return;
    }
    let Some(&(u, v)) = separation_pairs(&local).first() else {
        leaves.push(piece);
        return;
    };
    let pair = Edge::new(map[u], map[v]);
    let real = piece.edges.contains(&pair);
    for (i, c) in connected_components(&local, &[u, v], &[])
        .into_iter()
        .enumerate()
    {
        let part: Vec<Vertex> = c.iter().map(|&w| map[w]).collect();
        let mut sub = piece.sub_piece(&part, &[pair.0, pair.1]);
        sub.edges.remove(&pair);
        sub.virtual_edges.remove(&pair);
        if real && i == 0 {
            sub.edges.insert(pair);
        } else {
            sub.virtual_edges.insert(pair);
        }
        split(sub, leaves, trivial);
    }
}

/// Entities of `p` that other leaves also contain.
fn shared_entities(leaves: &[Piece], i: usize, mode: Mode) -> BTreeSet<Entity> {
    let p = &leaves[i];
    let others = leaves
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, q)| q);
    match mode {
        Mode::OneP => BTreeSet::new(),
        Mode::Ic => {
            let mine: BTreeSet<Vertex> = p.vertices.iter().copied().collect();
            others
                .flat_map(|q| q.vertices.iter().filter(|v| mine.contains(v)))
                .map(|&v| Entity::Vertex(v))
                .collect()
        }
        Mode::Nic => {
            let mine: BTreeSet<Edge> = p.edges.iter().chain(&p.virtual_edges).copied().collect();
            others
                .flat_map(|q| {
                    q.edges
                        .iter()
                        .chain(&q.virtual_edges)
                        .filter(|e| mine.contains(e))
                        .copied()
                        .collect::<Vec<_>>()
                })
                .map(Entity::Edge)
                .collect()
        }
    }
}

struct Leaf {
    piece: Piece,
    map: Vec<Vertex>,
    graph: Graph,
    shared: Vec<Entity>,
}

impl Leaf {
    fn new(piece: Piece, shared: BTreeSet<Entity>) -> Leaf {
        let (graph, map) = piece.local();
        Leaf {
            piece,
            map,
            graph,
            shared: shared.into_iter().collect(),
        }
    }

    fn to_local(&self, x: Entity) -> Option<Entity> {
        let pos = |v: Vertex| self.map.binary_search(&v).ok();
        match x {
            Entity::Vertex(v) => pos(v).map(Entity::Vertex),
            Entity::Edge(e) => Some(Entity::Edge(Edge::new(pos(e.0)?, pos(e.1)?))),
        }
    }

    fn run(&self, mode: Mode, opts: &Options, blocked: &BTreeSet<Entity>) -> Recognition {
        let local = |e: Edge| {
            Some(Edge::new(
                self.map.binary_search(&e.0).ok()?,
                self.map.binary_search(&e.1).ok()?,
            ))
        };
        let mut forced: BTreeSet<Edge> = opts
            .forced_planar
            .iter()
            .filter_map(|&e| local(e))
            .collect();
        forced.extend(self.piece.virtual_edges.iter().filter_map(|&e| local(e)));
        let forbidden = opts
            .forbidden
            .iter()
            .chain(blocked)
            .filter_map(|&x| self.to_local(x))
            .collect();
        let interface = opts
            .interface
            .iter()
            .chain(&self.shared)
            .filter_map(|&x| self.to_local(x))
            .collect();
        recognize_with(
            &self.graph,
            mode,
            &Options {
                forced_planar: forced,
                forbidden,
                interface,
                skip_edge_bound: opts.skip_edge_bound,
            },
        )
    }

    /// Inclusion-minimal sets of shared entities the piece can be drawn with,
    /// each with its accepting run.
    fn minimal_feasible(&self, mode: Mode, opts: &Options) -> Vec<(BTreeSet<Entity>, Recognition)> {
        let all: BTreeSet<Entity> = self.shared.iter().copied().collect();
        let attempt = |allowed: &BTreeSet<Entity>| {
            let blocked: BTreeSet<Entity> = all.difference(allowed).copied().collect();
            Some(self.run(mode, opts, &blocked)).filter(|r| r.accepted)
        };
        if let Some(r) = attempt(&BTreeSet::new()) {
            return vec![(BTreeSet::new(), r)];
        }
        let k = self.shared.len();
        if k > EXACT_SHARED_MAX {
            let needed: BTreeSet<Entity> = self
                .shared
                .iter()
                .copied()
                .filter(|&x| !self.run(mode, opts, &BTreeSet::from([x])).accepted)
                .collect();
            return match attempt(&needed) {
                Some(r) => vec![(needed, r)],
                None => attempt(&all).map(|r| vec![(all, r)]).unwrap_or_default(),
            };
        }
        let mut masks: Vec<u32> = (1..1u32 << k).collect();
        masks.sort_by_key(|m| m.count_ones());
        let mut found: Vec<(u32, BTreeSet<Entity>, Recognition)> = vec![];
        for m in masks {
            if found.iter().any(|(f, _, _)| f & m == *f) {
                continue;
            }
            let allowed: BTreeSet<Entity> = (0..k)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| self.shared[i])
                .collect();
            if let Some(r) = attempt(&allowed) {
                found.push((m, allowed, r));
            }
        }
        found.into_iter().map(|(_, s, r)| (s, r)).collect()
    }
}

/// Picks one option per piece so that no entity is used by two pieces.
fn assign(
    options: &[Vec<(BTreeSet<Entity>, Recognition)>],
    i: usize,
    used: &mut BTreeSet<Entity>,
    pick: &mut Vec<usize>,
) -> bool {
    if i == options.len() {
        return true;
    }
    for (j, (s, _)) in options[i].iter().enumerate() {
        if s.iter().any(|x| used.contains(x)) {
            continue;
        }
        used.extend(s.iter().copied());
        pick.push(j);
        if assign(options, i + 1, used, pick) {
            return true;
        }
        pick.pop();
        for x in s {
            used.remove(x);
        }
    }
    false
}

fn map_edge(e: Edge, map: &[Vertex]) -> Edge {
    Edge::new(map[e.0], map[e.1])
}

fn map_kite(k: &Kite, map: &[Vertex], offset: usize) -> Kite {
    let mut out = Kite::new(
        k.id + offset,
        map_edge(k.crossing.0, map),
        map_edge(k.crossing.1, map),
    );
    out.id = k.id + offset;
    out
}

fn map_entity(x: Entity, map: &[Vertex]) -> Entity {
    match x {
        Entity::Vertex(v) => Entity::Vertex(map[v]),
        Entity::Edge(e) => Entity::Edge(map_edge(e, map)),
    }
}

fn map_eta(eta: &Eta, map: &[Vertex], offset: usize) -> Eta {
    let mut out = eta.clone();
    for b in &mut out.blocks {
        b.kind = match &b.kind {
            BlockKind::Alpha => BlockKind::Alpha,
            BlockKind::Sigma { a, b } => BlockKind::Sigma {
                a: map[*a],
                b: map[*b],
            },
            BlockKind::Small { outer } => BlockKind::Small {
                outer: outer.iter().map(|&v| map[v]).collect(),
            },
        };
        for t in &mut b.terms {
            for v in t.iter_mut() {
                *v = Var {
                    entity: map_entity(v.entity, map),
                    kite: v.kite + offset,
                };
            }
        }
        for ks in &mut b.kites {
            for k in ks.iter_mut() {
                *k = map_kite(k, map, offset);
            }
        }
    }
    out
}

/// Crossings of the pieces glued into one drawing of `g`.
fn glue(g: &Graph, pairs: &[(Edge, Edge)], mode: Mode) -> Result<Embedding, String> {
    let kites: Vec<Kite> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(e, f))| Kite::new(i, e, f))
        .collect();
    let limit = match mode {
        Mode::OneP => None,
        Mode::Ic => Some(0),
        Mode::Nic => Some(1),
    };
    if let Some(limit) = limit {
        for (i, k) in kites.iter().enumerate() {
            for l in &kites[i + 1..] {
                let common = k.vertices.iter().filter(|v| l.contains_vertex(**v)).count();
                if common > limit {
                    return Err(format!(
                        "kites {} and {} share {common} vertices",
                        k.pair_key().0,
                        l.pair_key().0
                    ));
                }
            }
        }
    }
    let p = planarize(g, pairs);
    let rot = planar_embedding(&p).ok_or_else(|| "glued pieces are not planar".to_string())?;
    Ok(Embedding {
        crossings: normalize(pairs),
        rotations: rot.order.into_iter().enumerate().collect(),
    })
}

pub(crate) fn decompose_and_recognize(g: &Graph, mode: Mode, opts: &Options) -> Recognition {
    let whole = Piece {
        vertices: (0..g.n()).collect(),
        edges: g.edges().into_iter().collect(),
        virtual_edges: BTreeSet::new(),
    };
    let (mut pieces, mut trivial) = (vec![], vec![]);
    split(whole, &mut pieces, &mut trivial);
    log::info!(
        "decomposed into {} 3-connected pieces and {} small pieces",
        pieces.len(),
        trivial.len()
    );
    let shared: Vec<BTreeSet<Entity>> = (0..pieces.len())
        .map(|i| shared_entities(&pieces, i, mode))
        .collect();
    let leaves: Vec<Leaf> = pieces
        .into_iter()
        .zip(shared)
        .map(|(p, s)| Leaf::new(p, s))
        .collect();

    let mut events: Vec<Event> = vec![];
    let mut runs: Vec<Recognition> = vec![];
    for leaf in &leaves {
        let r = leaf.run(mode, opts, &BTreeSet::new());
        if !r.accepted {
            let reason = r.failure.unwrap_or(FailureReason::Connectivity);
            let detail = format!(
                "piece {:?}: {}",
                leaf.map,
                r.detail.clone().unwrap_or_default()
            );
            events.extend(r.events);
            let mut out = Recognition::rejected(mode, Stop::new(reason, detail), events);
            out.components = leaves.len();
            return out;
        }
        events.extend(r.events.iter().cloned());
        runs.push(r);
    }
    if mode != Mode::OneP && leaves.iter().any(|l| !l.shared.is_empty()) {
        let options: Vec<Vec<(BTreeSet<Entity>, Recognition)>> = leaves
            .iter()
            .zip(runs)
            .map(|(l, r)| {
                if l.shared.is_empty() {
                    vec![(BTreeSet::new(), r)]
                } else {
                    l.minimal_feasible(mode, opts)
                }
            })
            .collect();
        let mut pick = vec![];
        if !assign(&options, 0, &mut BTreeSet::new(), &mut pick) {
            let stop = Stop::new(
                FailureReason::Connectivity,
                "shared entities are needed by kites of two pieces",
            );
            let mut out = Recognition::rejected(mode, stop, events);
            out.components = leaves.len();
            return out;
        }
        runs = options
            .into_iter()
            .zip(pick)
            .map(|(mut o, j)| o.swap_remove(j).1)
            .collect();
    }

    let mut coloring = EdgeColoring::new();
    let mut eta = Eta::new();
    let mut pairs = vec![];
    let mut sat = runs
        .iter()
        .any(|r| r.sat.is_some())
        .then(crate::SatSummary::default);
    for (i, (leaf, r)) in leaves.iter().zip(&runs).enumerate() {
        let virt: BTreeSet<Edge> = leaf.piece.virtual_edges.clone();
        for (e, c) in r.coloring.iter() {
            let e = map_edge(e, &leaf.map);
            if !virt.contains(&e) {
                // a real pair edge is colored only by the piece that owns it
                let _ = coloring.extend(e, c);
            }
        }
        eta.append(map_eta(&r.eta, &leaf.map, i << 24));
        pairs.extend(
            r.crossings()
                .iter()
                .map(|&(e, f)| (map_edge(e, &leaf.map), map_edge(f, &leaf.map))),
        );
        if let (Some(total), Some(s)) = (sat.as_mut(), r.sat.as_ref()) {
            total.satisfiable = true;
            total.choices.extend(&s.choices);
            total.branches += s.branches;
            total.repairs += s.repairs;
            if total.fallback.is_none() {
                total.fallback = s.fallback.clone();
            }
        }
    }
    for p in &trivial {
        for &e in &p.edges {
            let _ = coloring.extend(e, Color::Black);
        }
    }
    match glue(g, &pairs, mode) {
        Ok(witness) => Recognition {
            mode,
            accepted: true,
            failure: None,
            detail: None,
            coloring,
            eta,
            sat,
            witness: Some(witness),
            events,
            components: leaves.len(),
        },
        Err(e) => {
            let mut out =
                Recognition::rejected(mode, Stop::new(FailureReason::WitnessInvalid, e), events);
            out.components = leaves.len();
            out
        }
    }
}
