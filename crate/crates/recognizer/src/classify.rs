//! Density bounds and the maximal / maximum / optimal tests.

use std::collections::BTreeSet;
use std::fmt;

use bpr_formula::Mode;
use bpr_graph::{Edge, Graph};
use serde::{Deserialize, Serialize};

use crate::{recognize, recognize_with, FailureReason, Options};

/// Largest edge count of a graph in the class on `n` vertices.
pub fn max_edges(mode: Mode, n: usize) -> usize {
    if n < 3 {
        return n * n.saturating_sub(1) / 2;
    }
    match mode {
        Mode::OneP => 4 * n - 8,
        Mode::Ic => (13 * n - 24) / 4,
        Mode::Nic => 18 * (n - 2) / 5,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Maximal,
    PlanarMaximal,
}

/// Three-valued answer; `Unknown` when the extremal edge count is open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("graph is not {mode}: {reason}")]
    NotMember { mode: Mode, reason: FailureReason },
}

fn non_edges(g: &Graph) -> impl Iterator<Item = Edge> + '_ {
    (0..g.n()).flat_map(move |a| {
        (a + 1..g.n())
            .filter(move |&b| !g.has_edge(a, b))
            .map(move |b| Edge::new(a, b))
    })
}

/// True iff no non-edge can be added (planar_maximal: added uncrossed).
pub fn check_maximal(g: &Graph, mode: Mode, variant: Variant) -> Result<bool, ClassifyError> {
    let r = recognize(g, mode);
    if !r.accepted {
        return Err(ClassifyError::NotMember {
            mode,
            reason: r.failure.unwrap_or(FailureReason::Connectivity),
        });
    }
    for e in non_edges(g) {
        let mut h = g.clone();
        h.add_edge(e);
        let opts = match variant {
            Variant::Maximal => Options::default(),
            Variant::PlanarMaximal => Options {
                forced_planar: BTreeSet::from([e]),
                ..Options::default()
            },
        };
        if recognize_with(&h, mode, &opts).accepted {
            log::info!("{e} can be added");
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edge count of the densest member on `n` vertices, when known.
pub fn maximum_edges(mode: Mode, n: usize) -> Option<usize> {
    match mode {
        Mode::OneP => match n {
            0..=6 => Some(n * n.saturating_sub(1) / 2),
            7 | 9 => Some(4 * n - 9),
            _ => Some(4 * n - 8),
        },
        Mode::Ic => (n >= 5).then(|| max_edges(mode, n)),
        Mode::Nic => (n >= 12 && matches!(n % 5, 2 | 3)).then(|| max_edges(mode, n)),
    }
}

/// Whether `n` admits a graph meeting the class bound exactly.
pub fn optimal_size(mode: Mode, n: usize) -> bool {
    match mode {
        Mode::OneP => n == 8 || n >= 10,
        Mode::Ic => n >= 8 && n.is_multiple_of(4),
        Mode::Nic => n >= 12 && n % 5 == 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimality {
    pub accepted: bool,
    pub maximum: Verdict,
    pub optimal: bool,
}

pub fn check_maximum_optimal(g: &Graph, mode: Mode) -> Optimality {
    let accepted = recognize(g, mode).accepted;
    optimality(g, mode, accepted)
}

fn optimality(g: &Graph, mode: Mode, accepted: bool) -> Optimality {
    let (n, m) = (g.n(), g.m());
    let maximum = match (accepted, maximum_edges(mode, n)) {
        (false, _) => Verdict::False,
        (true, Some(d)) => (m == d).into(),
        (true, None) => Verdict::Unknown,
    };
    let optimal = accepted && n >= 3 && m == max_edges(mode, n) && optimal_size(mode, n);
    Optimality {
        accepted,
        maximum,
        optimal,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub bound: usize,
    /// Triangulated member of the class.
    pub member: bool,
    pub failure: Option<FailureReason>,
    pub maximal: Option<bool>,
    pub planar_maximal: Option<bool>,
    pub maximum: Verdict,
    pub optimal: bool,
}

/// Full classification; maximality fields are `None` for non-members.
pub fn classify(g: &Graph, mode: Mode) -> Classification {
    let r = recognize(g, mode);
    let opt = optimality(g, mode, r.accepted);
    let probe = |v| {
        r.accepted
            .then(|| check_maximal(g, mode, v).unwrap_or(false))
    };
    Classification {
        mode,
        n: g.n(),
        m: g.m(),
        bound: max_edges(mode, g.n()),
        member: r.accepted,
        failure: r.failure,
        maximal: probe(Variant::Maximal),
        planar_maximal: probe(Variant::PlanarMaximal),
        maximum: opt.maximum,
        optimal: opt.optimal,
    }
}
