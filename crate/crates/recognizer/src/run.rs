//! The gadget loop on a 3-connected graph: tasks are split at separating
//! cycles, crossing gadgets color and remove edges, and every task ends in
//! final_check.

use std::collections::BTreeSet;

use bpr_coloring::{Color, EdgeColoring};
use bpr_formula::{kite_vars, Block, BlockKind, Entity, Eta, Mode};
use bpr_gadgets::{next_gadget, Gadget, Mc4Class, Separator, View};
use bpr_graph::{induced_subgraph, is_planar, planar_embedding, Edge, Graph, Kite, Vertex};
use bpr_oracle::{
    enumerate_embeddings_limited, outer_entities, small_graph_block, Constraints, CENSUS_MAX_N,
};

use crate::{Event, FailureReason, Stop};

/// A subproblem: the working graph on global ids (inactive vertices are
/// isolated), its locally planar edges and the cycles that must stay faces.
#[derive(Clone, Debug)]
pub(crate) struct Task {
    pub graph: Graph,
    pub active: Vec<bool>,
    pub order: usize,
    pub planar: BTreeSet<Edge>,
    pub faces: Vec<Vec<Vertex>>,
    pub depth: usize,
}

impl Task {
    pub fn whole(g: &Graph, planar: BTreeSet<Edge>) -> Task {
        Task {
            graph: g.clone(),
            active: vec![true; g.n()],
            order: g.n(),
            planar,
            faces: vec![],
            depth: 0,
        }
    }

    fn vertices(&self) -> Vec<Vertex> {
        (0..self.graph.n()).filter(|&v| self.active[v]).collect()
    }

    /// Child on `part` plus the cycle. Edges among cycle vertices other than
    /// the cycle itself are dropped; the caller adds the chords it assigns.
    fn child(&self, part: &[Vertex], cycle: &[Vertex]) -> Task {
        let mut active = vec![false; self.graph.n()];
        for &v in part.iter().chain(cycle) {
            active[v] = true;
        }
        let on_cycle = |v: Vertex| cycle.contains(&v);
        let k = cycle.len();
        let cycle_edges: BTreeSet<Edge> = (0..k)
            .map(|i| Edge::new(cycle[i], cycle[(i + 1) % k]))
            .collect();
        let mut graph = Graph::empty(self.graph.n());
        for e in self.graph.edges() {
            if !active[e.0] || !active[e.1] {
                continue;
            }
            if on_cycle(e.0) && on_cycle(e.1) && !cycle_edges.contains(&e) {
                continue;
            }
            graph.add_edge(e);
        }
        let planar = self
            .planar
            .iter()
            .copied()
            .filter(|e| graph.contains(*e))
            .collect();
        let faces = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|&v| active[v]))
            .cloned()
            .collect();
        Task {
            graph,
            active,
            order: part.len() + cycle.len(),
            planar,
            faces,
            depth: self.depth + 1,
        }
    }
}

/// A separating edge with its candidate crossing edges.
#[derive(Clone, Debug)]
pub(crate) struct SigmaRec {
    pub block: usize,
    pub orange: Edge,
}

/// Largest embedding count of a small remainder that is colored edge by edge.
const SMALL_COLOR_LIMIT: usize = 4096;

/// A small remainder: its block (term kites) in η.
#[derive(Clone, Debug)]
pub(crate) struct SmallRec {
    pub block: usize,
}

pub(crate) struct Run<'g> {
    pub g: &'g Graph,
    pub mode: Mode,
    pub coloring: EdgeColoring,
    pub eta: Eta,
    pub next_kite: usize,
    pub events: Vec<Event>,
    pub definite: Vec<(Edge, Edge)>,
    pub sigmas: Vec<SigmaRec>,
    pub smalls: Vec<SmallRec>,
    /// Entities a kite of this run may not use (decomposition).
    pub forbidden: BTreeSet<Entity>,
    /// Entities shared with other components; kept in small-graph terms.
    pub interface: BTreeSet<Entity>,
    pub separator: Separator,
    pub steps: usize,
}

impl<'g> Run<'g> {
    pub fn new(g: &'g Graph, mode: Mode) -> Run<'g> {
        Run {
            g,
            mode,
            coloring: EdgeColoring::new(),
            eta: Eta::new(),
            next_kite: 0,
            events: vec![],
            definite: vec![],
            sigmas: vec![],
            smalls: vec![],
            forbidden: BTreeSet::new(),
            interface: BTreeSet::new(),
            separator: Separator::new(g.n()),
            steps: 0,
        }
    }

    fn event(&mut self, task: &Task, what: &str, detail: String) {
        log::info!(
            "step {} [n={} depth={}] {what}: {detail}",
            self.steps,
            task.order,
            task.depth
        );
        self.events.push(Event {
            step: self.steps,
            kind: what.to_string(),
            detail,
            order: task.order,
            depth: task.depth,
        });
    }

    fn color(&mut self, task: &Task, e: Edge, c: Color) -> Result<(), Stop> {
        if task.planar.contains(&e) {
            return Ok(());
        }
        log::trace!("color {e} {c}");
        self.coloring
            .extend(e, c)
            .map_err(|err| Stop::new(FailureReason::ColoringConflict, err.to_string()))
    }

    fn kite(&mut self, red: Edge, blue: Edge) -> Kite {
        self.next_kite += 1;
        Kite::new(self.next_kite - 1, red, blue)
    }

    /// Colors a definite crossing pair and its boundary, adds α, removes red.
    fn definite_kite(
        &mut self,
        task: &mut Task,
        red: Edge,
        blue: Edge,
        origin: &str,
    ) -> Result<(), Stop> {
        let k = self.kite(red, blue);
        self.color(task, red, Color::Red)?;
        self.color(task, blue, Color::Blue)?;
        for b in k.boundary {
            self.color(task, b, Color::Black)?;
        }
        self.check_forbidden(&k)?;
        self.eta.push(Block::alpha(k, self.mode, origin));
        self.definite.push((red, blue));
        task.graph.remove_edge(red);
        Ok(())
    }

    fn check_forbidden(&self, k: &Kite) -> Result<(), Stop> {
        if self.forbidden.is_empty() {
            return Ok(());
        }
        if let Some(v) = kite_vars(k, self.mode)
            .iter()
            .find(|v| self.forbidden.contains(&v.entity))
        {
            return Err(Stop::new(
                FailureReason::ModeViolation,
                format!(
                    "kite {:?} needs {} reserved elsewhere",
                    k.vertices, v.entity
                ),
            ));
        }
        Ok(())
    }

    fn mode_stop(&self, what: &str) -> Stop {
        Stop::new(
            FailureReason::ModeViolation,
            format!("{what} is not {}-planar", self.mode.name().to_uppercase()),
        )
    }

    /// Processes the task stack to completion.
    pub fn run(&mut self, root: Task) -> Result<(), Stop> {
        let mut stack = vec![root];
        while let Some(mut task) = stack.pop() {
            loop {
                self.steps += 1;
                let gadget = if task.order > CENSUS_MAX_N {
                    let view = View {
                        graph: &task.graph,
                        active: &task.active,
                        order: task.order,
                        coloring: &self.coloring,
                        planar: &task.planar,
                    };
                    if view.has_kite_candidate() {
                        next_gadget(&view, &mut self.separator)
                    } else {
                        None
                    }
                } else {
                    None
                };
                let Some(gadget) = gadget else {
                    self.final_check(&task)?;
                    break;
                };
                self.event(&task, gadget.name(), gadget.to_string());
                match self.apply(&mut task, gadget)? {
                    Some(children) => {
                        stack.extend(children.into_iter().rev());
                        break;
                    }
                    None => continue,
                }
            }
        }
        Ok(())
    }

    fn apply(&mut self, task: &mut Task, gadget: Gadget) -> Result<Option<Vec<Task>>, Stop> {
        match gadget {
            Gadget::Sep3Cycle { cycle, parts } => {
                if parts.len() > 2 {
                    return Err(Stop::new(
                        FailureReason::Connectivity,
                        format!("3-cycle {cycle:?} leaves {} components", parts.len()),
                    ));
                }
                for i in 0..3 {
                    self.color(task, Edge::new(cycle[i], cycle[(i + 1) % 3]), Color::Black)?;
                }
                let mut out = Vec::new();
                for p in &parts {
                    let mut c = task.child(p, &cycle);
                    c.faces.push(cycle.to_vec());
                    out.push(c);
                }
                Ok(Some(out))
            }
            Gadget::Sep4Cycle { cycle, parts } => {
                if parts.len() > 2 {
                    return Err(Stop::new(
                        FailureReason::Connectivity,
                        format!("4-cycle {cycle:?} leaves {} components", parts.len()),
                    ));
                }
                let [a, b, c, d] = cycle;
                for i in 0..4 {
                    self.color(task, Edge::new(cycle[i], cycle[(i + 1) % 4]), Color::Black)?;
                }
                let (ac, bd) = (Edge::new(a, c), Edge::new(b, d));
                let real = |e: Edge| task.graph.contains(e);
                // side that keeps each existing chord
                let common = |e: Edge, part: &[Vertex]| {
                    task.graph
                        .common_neighbors(e.0, e.1)
                        .iter()
                        .filter(|v| part.binary_search(v).is_ok())
                        .count()
                };
                let owner = |e: Edge, other: Option<usize>| -> usize {
                    match other {
                        Some(o) => 1 - o,
                        None => usize::from(common(e, &parts[1]) > common(e, &parts[0])),
                    }
                };
                let ac_side = real(ac).then(|| owner(ac, None));
                let bd_side = real(bd).then(|| owner(bd, ac_side));
                if let Some(s) = ac_side {
                    self.event(task, "chord", format!("{ac} kept on side {s}"));
                }
                let mut out = Vec::new();
                for (i, p) in parts.iter().enumerate() {
                    let mut child = task.child(p, &cycle);
                    let mut has_ac = false;
                    for (e, side) in [(ac, ac_side), (bd, bd_side)] {
                        if side == Some(i) {
                            child.graph.add_edge(e);
                            if task.planar.contains(&e) {
                                child.planar.insert(e);
                            }
                            has_ac |= e == ac;
                        }
                    }
                    // the virtual chord closes the empty side
                    let chord = if has_ac { bd } else { ac };
                    child.graph.add_edge(chord);
                    child.planar.insert(chord);
                    let (x, y) = (chord.0, chord.1);
                    let others: Vec<Vertex> = cycle
                        .iter()
                        .copied()
                        .filter(|v| !chord.contains(*v))
                        .collect();
                    for o in others {
                        child.faces.push(vec![x, o, y]);
                    }
                    out.push(child);
                }
                Ok(Some(out))
            }
            Gadget::SepEdge { edge, candidates } => {
                self.color(task, edge, Color::Orange)?;
                let mut kites = Vec::new();
                for &xy in &candidates {
                    let k = self.kite(edge, xy);
                    for b in k.boundary {
                        self.color(task, b, Color::Black)?;
                    }
                    self.color(task, xy, Color::Cyan)?;
                    if self.check_forbidden(&k).is_ok() {
                        kites.push(k);
                    }
                }
                if kites.is_empty() {
                    return Err(Stop::new(
                        FailureReason::ModeViolation,
                        format!("no admissible candidate for {edge}"),
                    ));
                }
                let block = Block::sigma(edge.0, edge.1, &kites, self.mode, "separating edge")
                    .expect("nonempty");
                self.sigmas.push(SigmaRec {
                    block: self.eta.blocks.len(),
                    orange: edge,
                });
                self.eta.push(block);
                task.graph.remove_edge(edge);
                Ok(None)
            }
            Gadget::SepTriple {
                cycle: [a, b, c],
                crossing,
            } => {
                for e in [Edge::new(b, c), Edge::new(c, a)] {
                    self.color(task, e, Color::Black)?;
                }
                self.definite_kite(task, Edge::new(a, b), crossing, "separating triple")?;
                Ok(None)
            }
            Gadget::SepQuadruple {
                cycle: [a, b, c, d],
                crossing,
            } => {
                for e in [Edge::new(b, c), Edge::new(c, d), Edge::new(d, a)] {
                    self.color(task, e, Color::Black)?;
                }
                self.definite_kite(task, Edge::new(a, b), crossing, "separating quadruple")?;
                Ok(None)
            }
            Gadget::SepTriangle {
                cycle: [a, b, c],
                first,
                second,
            } => {
                if self.mode == Mode::Ic {
                    return Err(self.mode_stop("a separating triangle"));
                }
                self.color(task, Edge::new(c, a), Color::Black)?;
                self.definite_kite(task, Edge::new(a, b), first, "separating triangle")?;
                self.definite_kite(task, Edge::new(b, c), second, "separating triangle")?;
                Ok(None)
            }
            Gadget::K5 { vertices } => Err(Stop::new(
                FailureReason::K5Branch,
                format!("K5 {vertices:?} without a separating cycle"),
            )),
            Gadget::Mc4(class) => {
                let (pairs, origin) = match class {
                    Mc4Class::KiteCoveredTetrahedron { pairs, .. } => {
                        if self.mode == Mode::Ic {
                            return Err(self.mode_stop("a completely kite-covered tetrahedron"));
                        }
                        (pairs, "MC4 kite-covered tetrahedron")
                    }
                    Mc4Class::ScGraph { pairs, .. } => {
                        if self.mode != Mode::OneP {
                            return Err(self.mode_stop("an SC-graph"));
                        }
                        (pairs, "MC4 SC-graph")
                    }
                    Mc4Class::PlainKite { red, blue, .. } => (vec![(red, blue)], "MC4 kite"),
                };
                for (red, blue) in pairs {
                    self.definite_kite(task, red, blue, origin)?;
                }
                Ok(None)
            }
        }
    }

    fn alpha_kites(&self) -> Vec<Kite> {
        self.eta
            .blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Alpha)
            .flat_map(|b| b.kites.iter().flatten().copied())
            .collect()
    }

    fn final_check(&mut self, task: &Task) -> Result<(), Stop> {
        let verts = task.vertices();
        let sub = induced_subgraph(&task.graph, &verts).expect("task vertices are in range");
        let local = |v: Vertex| sub.local_vertex(v).expect("vertex of the task");
        let planar_local: BTreeSet<Edge> = sub
            .graph
            .edges()
            .into_iter()
            .filter(|&e| {
                let p = sub.parent_edge(e);
                task.planar.contains(&p) || !self.coloring.is_uncolored(p)
            })
            .collect();
        let n = sub.graph.n();
        let triangulated_planar = sub.graph.m() + 6 == 3 * n && is_planar(&sub.graph) && {
            let rot = planar_embedding(&sub.graph).expect("planar");
            let faces: BTreeSet<Vec<Vertex>> = rot
                .faces()
                .into_iter()
                .map(|mut f| {
                    f.sort_unstable();
                    f
                })
                .collect();
            task.faces.iter().all(|f| {
                let mut l: Vec<Vertex> = f.iter().map(|&v| local(v)).collect();
                l.sort_unstable();
                faces.contains(&l)
            })
        };
        if task.order > CENSUS_MAX_N && !triangulated_planar {
            return Err(Stop::new(
                    FailureReason::Mc4Mismatch,
                    format!("{} vertices remain, no kite pattern applies and the rest is not a planar triangulation", task.order),
                ));
        }
        if triangulated_planar {
            self.event(
                task,
                "final-check",
                format!("planar triangulation on {} vertices", task.order),
            );
            for e in sub.graph.edges() {
                self.color(task, sub.parent_edge(e), Color::Black)?;
            }
            return Ok(());
        }
        let mut cons = Constraints {
            planar_edges: planar_local,
            ..Constraints::none()
        };
        for f in &task.faces {
            cons.add_face(&f.iter().map(|&v| local(v)).collect::<Vec<_>>());
        }
        for &(red, blue) in &self.definite {
            if !(task.active[blue.0] && task.active[blue.1] && task.graph.contains(blue)) {
                continue;
            }
            for apex in [red.0, red.1] {
                if task.active[apex] {
                    cons.faces
                        .push(vec![local(apex), local(blue.0), local(blue.1)]);
                }
            }
        }
        let mut forbidden = self.forbidden.clone();
        if self.mode != Mode::OneP {
            for k in self.alpha_kites() {
                forbidden.extend(kite_vars(&k, self.mode).into_iter().map(|v| v.entity));
            }
        }
        for ent in &forbidden {
            match ent {
                Entity::Vertex(v) if task.active[*v] => {
                    cons.forbidden_vertices.insert(local(*v));
                }
                Entity::Edge(e) if task.active[e.0] && task.active[e.1] && sub.graph.n() > 0 => {
                    cons.forbidden_edges
                        .insert(Edge::new(local(e.0), local(e.1)));
                }
                _ => {}
            }
        }
        if self.mode == Mode::OneP {
            let found = enumerate_embeddings_limited(&sub.graph, self.mode, &cons, 1);
            let Some(pairs) = found.first() else {
                return Err(Stop::new(
                    FailureReason::SmallGraphFail,
                    format!(
                        "no embedding of the {}-vertex remainder {:?}",
                        task.order, verts
                    ),
                ));
            };
            self.event(
                task,
                "final-check",
                format!("{}-vertex remainder, {} crossings", task.order, pairs.len()),
            );
            let kites: Vec<Kite> = pairs
                .iter()
                .map(|&(e, f)| self.kite(sub.parent_edge(e), sub.parent_edge(f)))
                .collect();
            self.finish_small(
                task,
                &sub,
                &cons,
                Block {
                    kind: BlockKind::Small {
                        outer: task.faces.first().cloned().unwrap_or_default(),
                    },
                    terms: vec![vec![]],
                    kites: vec![kites],
                    origin: "final-check".into(),
                },
            )
        } else {
            let mut interface: BTreeSet<Entity> = self.interface.clone();
            for f in &task.faces {
                let mut ents = outer_entities(f, self.mode);
                if self.mode == Mode::Nic {
                    ents.retain(|e| !matches!(e, Entity::Edge(x) if task.planar.contains(x)));
                }
                interface.extend(ents);
            }
            for b in &self.eta.blocks {
                if matches!(b.kind, BlockKind::Sigma { .. }) {
                    interface.extend(b.terms.iter().flatten().map(|v| v.entity));
                }
            }
            let outer = task
                .faces
                .first()
                .map(|f| f.iter().map(|&v| local(v)).collect::<Vec<_>>())
                .unwrap_or_default();
            let block = small_graph_block(
                &sub,
                self.mode,
                &cons,
                &outer,
                &interface,
                &mut self.next_kite,
                "final-check",
            );
            if block.terms.is_empty() {
                return Err(Stop::new(
                    FailureReason::SmallGraphFail,
                    format!(
                        "no {} embedding of the {}-vertex remainder {:?}",
                        self.mode.name().to_uppercase(),
                        task.order,
                        verts
                    ),
                ));
            }
            self.event(
                task,
                "final-check",
                format!(
                    "{}-vertex remainder, {} term(s)",
                    task.order,
                    block.terms.len()
                ),
            );
            self.finish_small(task, &sub, &cons, block)
        }
    }

    /// Colors the remainder from all of its embeddings under `cons`: black
    /// if never crossed, red/blue if always crossed by the same partner,
    /// grey otherwise (or when there are too many embeddings to look at).
    fn finish_small(
        &mut self,
        task: &Task,
        sub: &bpr_graph::Subgraph,
        cons: &Constraints,
        block: Block,
    ) -> Result<(), Stop> {
        let all = enumerate_embeddings_limited(&sub.graph, self.mode, cons, SMALL_COLOR_LIMIT + 1);
        let settled = all.len() <= SMALL_COLOR_LIMIT;
        for e in sub.graph.edges() {
            let p = sub.parent_edge(e);
            if !self.coloring.is_uncolored(p) {
                continue;
            }
            let partners: BTreeSet<Option<Edge>> = all
                .iter()
                .map(|pairs| {
                    pairs
                        .iter()
                        .find_map(|&(a, b)| (a == e).then_some(b).or_else(|| (b == e).then_some(a)))
                })
                .collect();
            let c = match partners.iter().collect::<Vec<_>>().as_slice() {
                _ if !settled => Color::Grey,
                [None] => Color::Black,
                [Some(f)] if e < *f => Color::Red,
                [Some(_)] => Color::Blue,
                _ => Color::Grey,
            };
            self.color(task, p, c)?;
        }
        self.smalls.push(SmallRec {
            block: self.eta.blocks.len(),
        });
        self.eta.push(block);
        Ok(())
    }
}
