//! Recognition of triangulated 1-planar, IC-planar and NIC-planar graphs.
//!
//! [`recognize`] runs the gadget loop, collects the certificate formula η,
//! decides its IC/NIC extension and assembles a witness embedding, which is
//! checked against the definition before a graph is accepted.

use std::collections::BTreeSet;
use std::fmt;

use bpr_coloring::EdgeColoring;
use bpr_formula::{Entity, Eta, Mode};
use bpr_graph::{is_k_connected, Edge, Graph};
use bpr_oracle::Embedding;
use serde::{Deserialize, Serialize};

pub mod classify;
mod decompose;
mod exact;
mod run;
mod witness;

pub use classify::{
    check_maximal, check_maximum_optimal, classify, max_edges, maximum_edges, optimal_size,
    Classification, ClassifyError, Optimality, Variant, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    ColoringConflict,
    K5Branch,
    Mc4Mismatch,
    SmallGraphFail,
    SatFail,
    EdgeBound,
    Connectivity,
    ModeViolation,
    WitnessInvalid,
}

impl FailureReason {
    pub fn name(self) -> &'static str {
        match self {
            FailureReason::ColoringConflict => "coloring conflict",
            FailureReason::K5Branch => "K5 branch",
            FailureReason::Mc4Mismatch => "MC4 mismatch",
            FailureReason::SmallGraphFail => "small-graph fail",
            FailureReason::SatFail => "SAT fail",
            FailureReason::EdgeBound => "edge bound",
            FailureReason::Connectivity => "connectivity",
            FailureReason::ModeViolation => "mode violation",
            FailureReason::WitnessInvalid => "witness invalid",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Early exit of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Stop {
    pub reason: FailureReason,
    pub detail: String,
}

impl Stop {
    pub fn new(reason: FailureReason, detail: impl Into<String>) -> Stop {
        Stop {
            reason,
            detail: detail.into(),
        }
    }
}

/// One logged step of the run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub step: usize,
    pub kind: String,
    pub detail: String,
    /// Vertices of the task the step ran on.
    pub order: usize,
    pub depth: usize,
}

/// Summary of the satisfiability check of η⁺.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatSummary {
    pub satisfiable: bool,
    pub choices: Vec<usize>,
    pub fallback: Option<String>,
    pub branches: usize,
    /// Candidate terms dropped because they could not be drawn.
    pub repairs: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Edges that must stay uncrossed.
    pub forced_planar: BTreeSet<Edge>,
    /// Entities no kite may use.
    pub forbidden: BTreeSet<Entity>,
    /// Entities shared with other components.
    pub interface: BTreeSet<Entity>,
    /// Skip the density pre-check, so structural steps decide.
    pub skip_edge_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recognition {
    pub mode: Mode,
    pub accepted: bool,
    pub failure: Option<FailureReason>,
    pub detail: Option<String>,
    pub coloring: EdgeColoring,
    pub eta: Eta,
    pub sat: Option<SatSummary>,
    pub witness: Option<Embedding>,
    pub events: Vec<Event>,
    /// Number of 3-connected pieces (1 when no decomposition happened).
    pub components: usize,
}

impl Recognition {
    pub(crate) fn rejected(mode: Mode, stop: Stop, events: Vec<Event>) -> Recognition {
        log::info!("rejected: {} ({})", stop.reason, stop.detail);
        Recognition {
            mode,
            accepted: false,
            failure: Some(stop.reason),
            detail: Some(stop.detail),
            coloring: EdgeColoring::new(),
            eta: Eta::new(),
            sat: None,
            witness: None,
            events,
            components: 1,
        }
    }

    /// Crossing pairs of the witness.
    pub fn crossings(&self) -> Vec<(Edge, Edge)> {
        self.witness
            .as_ref()
            .map(|w| w.crossings.clone())
            .unwrap_or_default()
    }
}

/// Recognizes `g` in the given mode.
pub fn recognize(g: &Graph, mode: Mode) -> Recognition {
    recognize_with(g, mode, &Options::default())
}

pub fn recognize_with(g: &Graph, mode: Mode, opts: &Options) -> Recognition {
    if !opts.skip_edge_bound && g.n() >= 3 && g.m() > max_edges(mode, g.n()) {
        let stop = Stop::new(
            FailureReason::EdgeBound,
            format!("m = {} exceeds {}", g.m(), max_edges(mode, g.n())),
        );
        return Recognition::rejected(mode, stop, vec![]);
    }
    if g.n() < 4 || !is_k_connected(g, 3) {
        return decompose::decompose_and_recognize(g, mode, opts);
    }
    recognize_three_connected(g, mode, opts)
}

/// The gadget loop followed by SAT and witness assembly; `g` must be 3-connected.
pub(crate) fn recognize_three_connected(g: &Graph, mode: Mode, opts: &Options) -> Recognition {
    let mut run = run::Run::new(g, mode);
    run.forbidden = opts.forbidden.clone();
    run.interface = opts.interface.clone();
    let root = run::Task::whole(g, opts.forced_planar.clone());
    if let Err(stop) = run.run(root) {
        let events = run.events;
        return confirm(g, mode, opts, Recognition::rejected(mode, stop, events));
    }
    match witness::finish(&run, &opts.forbidden) {
        Ok((witness, sat)) => Recognition {
            mode,
            accepted: true,
            failure: None,
            detail: None,
            coloring: run.coloring,
            eta: run.eta,
            sat,
            witness: Some(witness),
            events: run.events,
            components: 1,
        },
        Err((stop, sat)) => {
            let mut r = Recognition::rejected(mode, stop, run.events);
            r.coloring = run.coloring;
            r.eta = run.eta;
            r.sat = sat;
            confirm(g, mode, opts, r)
        }
    }
}

/// Node limit of the exhaustive search behind a gadget-loop rejection.
pub const EXACT_BUDGET: usize = 200_000;

/// Re-checks a rejection of the gadget loop by exhaustive search; an
/// embedding found there overrides it.
fn confirm(g: &Graph, mode: Mode, opts: &Options, mut r: Recognition) -> Recognition {
    let mut x = exact::Exact::new(g, mode, &opts.forced_planar, &opts.forbidden);
    let outcome = x.solve(EXACT_BUDGET);
    let step = r.events.len();
    let mut event = |kind: &str, detail: String| {
        r.events.push(Event {
            step,
            kind: kind.into(),
            detail,
            order: g.n(),
            depth: 0,
        })
    };
    match outcome {
        exact::Outcome::Exhausted { nodes } => {
            event(
                "exact-search",
                format!("no embedding ({nodes} nodes); rejection confirmed"),
            );
            r
        }
        exact::Outcome::Budget { nodes } => {
            event(
                "exact-search",
                format!("stopped after {nodes} nodes; rejection unconfirmed"),
            );
            if let Some(d) = r.detail.as_mut() {
                d.push_str(" (unconfirmed: search budget exhausted)");
            }
            r
        }
        exact::Outcome::Found(pairs) => {
            let loop_failure = r.failure.map(|f| f.to_string()).unwrap_or_default();
            event(
                "exact-search",
                format!(
                    "embedding with {} crossings found; overrides {loop_failure}",
                    pairs.len()
                ),
            );
            let witness = match bpr_oracle::validate_embedding(
                g,
                &pairs,
                mode,
                &bpr_oracle::Constraints::none(),
            ) {
                Ok(w) => w,
                Err(e) => unreachable!("search leaf was validated: {e}"),
            };
            let mut coloring = EdgeColoring::new();
            let mut eta = Eta::new();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let kite = bpr_graph::Kite::new(i, a, b);
                coloring
                    .color_kite(&kite)
                    .expect("kites of an embedding share no crossing edge");
                eta.push(bpr_formula::Block::alpha(kite, mode, "exact-search"));
            }
            for e in g.edges() {
                if coloring.is_uncolored(e) {
                    coloring
                        .extend(e, bpr_coloring::Color::Black)
                        .expect("uncolored");
                }
            }
            let sat = (mode != Mode::OneP).then(|| {
                let out = witness::solve(&eta, mode);
                SatSummary {
                    satisfiable: out.satisfiable,
                    choices: out.choices,
                    fallback: out.fallback,
                    branches: out.branches,
                    repairs: 0,
                }
            });
            Recognition {
                mode,
                accepted: true,
                failure: None,
                detail: None,
                coloring,
                eta,
                sat,
                witness: Some(witness),
                events: r.events,
                components: 1,
            }
        }
    }
}
