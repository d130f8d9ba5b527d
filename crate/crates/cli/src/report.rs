//! The JSON run report.

use std::collections::BTreeMap;

use bpr_coloring::EdgeColoring;
use bpr_formula::{Eta, Formula, Mode};
use bpr_graph::Graph;
use bpr_recognizer::{Classification, Event, FailureReason, Recognition, SatSummary, Verdict};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Verdict,
    Coloring,
    Formula,
    Witness,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Accepted,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub reason: FailureReason,
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub sexpr: String,
    /// η⁺ with the mutual-exclusion clauses (IC and NIC only).
    pub extended_sexpr: Option<String>,
    pub ast: Formula,
    pub blocks: Eta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub crossings: Vec<[String; 2]>,
    pub rotations: BTreeMap<usize, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub triangulated_member: bool,
    pub bound: usize,
    pub maximal: Option<bool>,
    pub planar_maximal: Option<bool>,
    pub maximum: Verdict,
    pub optimal: bool,
}

/// Wall-clock milliseconds per phase.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub recognize_ms: f64,
    pub classify_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub command: String,
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub verdict: Outcome,
    pub failure: Option<Failure>,
    pub timings: Timings,
    pub coloring: Option<EdgeColoring>,
    pub formula: Option<FormulaReport>,
    pub sat: Option<SatSummary>,
    pub witness: Option<WitnessReport>,
    pub classification: Option<ClassReport>,
    pub events: Vec<Event>,
}

impl RunReport {
    pub fn from_recognition(command: &str, g: &Graph, r: &Recognition, emit: Emit, timings: Timings) -> RunReport {
        let want = |e: Emit| emit == Emit::All || emit == e;
        RunReport {
            version: REPORT_VERSION,
            command: command.to_string(),
            mode: r.mode,
            n: g.n(),
            m: g.m(),
            verdict: if r.accepted { Outcome::Accepted } else { Outcome::Rejected },
            failure: r.failure.map(|reason| Failure {
                reason,
                name: reason.name().to_string(),
                detail: r.detail.clone().unwrap_or_default(),
            }),
            timings,
            coloring: want(Emit::Coloring).then(|| r.coloring.clone()),
            formula: want(Emit::Formula).then(|| FormulaReport {
                sexpr: r.eta.formula().to_sexpr(),
                extended_sexpr: (r.mode != Mode::OneP).then(|| r.eta.extended_formula().to_sexpr()),
                ast: r.eta.formula(),
                blocks: r.eta.clone(),
            }),
            sat: want(Emit::Formula).then(|| r.sat.clone()).flatten(),
            witness: want(Emit::Witness).then(|| r.witness.as_ref().map(|w| WitnessReport {
                crossings: w.crossings.iter().map(|(e, f)| [e.to_string(), f.to_string()]).collect(),
                rotations: w.rotations.clone(),
            })).flatten(),
            classification: None,
            events: if emit == Emit::All { r.events.clone() } else { vec![] },
        }
    }

    pub fn with_classification(mut self, c: &Classification) -> RunReport {
        self.classification = Some(ClassReport {
            triangulated_member: c.member,
            bound: c.bound,
            maximal: c.maximal,
            planar_maximal: c.planar_maximal,
            maximum: c.maximum,
            optimal: c.optimal,
        });
        self
    }

    pub fn accepted(&self) -> bool {
        self.verdict == Outcome::Accepted
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match &self.failure {
            None => s.push_str(&format!("{}: accepted (n = {}, m = {})\n", self.mode, self.n, self.m)),
            Some(f) => s.push_str(&format!("{}: rejected, {}: {}\n", self.mode, f.name, f.detail)),
        }
        if let Some(c) = &self.classification {
            let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
            s.push_str(&format!("triangulated-member: {}\n", c.triangulated_member));
            s.push_str(&format!("maximal: {}\n", opt(c.maximal)));
            s.push_str(&format!("planar-maximal: {}\n", opt(c.planar_maximal)));
            s.push_str(&format!("maximum: {}\n", c.maximum));
            s.push_str(&format!("optimal: {} (bound {})\n", c.optimal, c.bound));
        }
        if let Some(c) = &self.coloring {
            for (e, col) in c.iter() {
                s.push_str(&format!("{e} {col}\n"));
            }
        }
        if let Some(f) = &self.formula {
            s.push_str(&format!("eta: {}\n", f.sexpr));
            if let Some(x) = &f.extended_sexpr {
                s.push_str(&format!("eta+: {x}\n"));
            }
        }
        if let Some(w) = &self.witness {
            for [e, f] in &w.crossings {
                s.push_str(&format!("cross {e} {f}\n"));
            }
        }
        s
    }
}
