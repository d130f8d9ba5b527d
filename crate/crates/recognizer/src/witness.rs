//! Satisfiability of η⁺ and assembly of the witness embedding.

use std::collections::BTreeSet;

use bpr_formula::{
    exact_block_choice, ic_satisfiable, nic_satisfiable, Entity, Eta, Mode, SatOutcome,
};
use bpr_graph::{planar_embedding, Edge, Rotation};
use bpr_oracle::{normalize, planarize, validate_embedding, Constraints, Embedding};

use crate::run::Run;
use crate::{FailureReason, SatSummary, Stop};

type Finish = Result<(Embedding, Option<SatSummary>), (Stop, Option<SatSummary>)>;

pub(crate) fn solve(eta: &Eta, mode: Mode) -> SatOutcome {
    let r = match mode {
        Mode::Ic => ic_satisfiable(eta),
        Mode::Nic => nic_satisfiable(eta),
        Mode::OneP => unreachable!("1P runs need no satisfiability check"),
    };
    r.unwrap_or_else(|err| {
        log::info!("structured solver declined ({err}); exhaustive block choice");
        let choices = exact_block_choice(eta);
        SatOutcome {
            satisfiable: choices.is_some(),
            true_vars: choices
                .as_ref()
                .map(|c| {
                    eta.blocks
                        .iter()
                        .zip(c)
                        .flat_map(|(b, &i)| b.terms[i].iter().copied())
                        .collect()
                })
                .unwrap_or_default(),
            choices: choices.unwrap_or_default(),
            fallback: Some(err.to_string()),
            ..SatOutcome::default()
        }
    })
}

/// Drops every term that uses a forbidden entity.
fn restrict(eta: &mut Eta, forbidden: &BTreeSet<Entity>) {
    if forbidden.is_empty() {
        return;
    }
    for b in &mut eta.blocks {
        let keep: Vec<bool> = b
            .terms
            .iter()
            .map(|t| t.iter().all(|v| !forbidden.contains(&v.entity)))
            .collect();
        let mut i = 0;
        b.terms.retain(|_| {
            i += 1;
            keep[i - 1]
        });
        let mut i = 0;
        b.kites.retain(|_| {
            i += 1;
            keep[i - 1]
        });
    }
}

/// The two face apexes of the planar edge xy in a triangulation.
fn apexes(rot: &Rotation, x: usize, y: usize) -> Option<[usize; 2]> {
    if !rot.order[x].contains(&y) {
        return None;
    }
    Some([rot.cw(x, y), rot.ccw(x, y)])
}

fn drawable(rot: &Rotation, orange: Edge, cyan: Edge) -> bool {
    match apexes(rot, cyan.0, cyan.1) {
        Some([p, q]) => (p == orange.0 && q == orange.1) || (p == orange.1 && q == orange.0),
        None => false,
    }
}

pub(crate) fn finish(run: &Run, forbidden: &BTreeSet<Entity>) -> Finish {
    let mode = run.mode;
    let mut eta = run.eta.clone();
    restrict(&mut eta, forbidden);
    let mut repairs = 0;
    loop {
        let (choices, mut summary) = if mode == Mode::OneP {
            (vec![0; eta.blocks.len()], None)
        } else {
            let out = solve(&eta, mode);
            let summary = SatSummary {
                satisfiable: out.satisfiable,
                choices: out.choices.clone(),
                fallback: out.fallback.clone(),
                branches: out.branches,
                repairs,
            };
            if !out.satisfiable {
                let detail = out
                    .trace
                    .last()
                    .cloned()
                    .unwrap_or_else(|| "η⁺ is unsatisfiable".into());
                return Err((Stop::new(FailureReason::SatFail, detail), Some(summary)));
            }
            (out.choices, Some(summary))
        };
        let fail = |detail: String, s: &Option<SatSummary>| {
            Err((Stop::new(FailureReason::WitnessInvalid, detail), s.clone()))
        };
        let mut pairs: Vec<(Edge, Edge)> = run.definite.clone();
        for rec in &run.smalls {
            pairs.extend(
                eta.blocks[rec.block].kites[choices[rec.block]]
                    .iter()
                    .map(|k| k.crossing),
            );
        }
        let mut g0 = run.g.clone();
        for s in &run.sigmas {
            g0.remove_edge(s.orange);
        }
        let p0 = planarize(&g0, &pairs);
        let Some(rot) = planar_embedding(&p0).filter(|_| p0.m() + 6 == 3 * p0.n()) else {
            return fail(
                "the forced crossings do not leave a planar triangulation".into(),
                &summary,
            );
        };
        let mut retry = false;
        for s in &run.sigmas {
            let block = &eta.blocks[s.block];
            if mode == Mode::OneP {
                match block
                    .kites
                    .iter()
                    .map(|k| k[0].crossing.1)
                    .find(|&c| drawable(&rot, s.orange, c))
                {
                    Some(c) => pairs.push((s.orange, c)),
                    None => {
                        return fail(
                            format!("no candidate of {} can be drawn crossing it", s.orange),
                            &summary,
                        )
                    }
                }
            } else {
                let c = block.kites[choices[s.block]][0].crossing.1;
                if drawable(&rot, s.orange, c) {
                    pairs.push((s.orange, c));
                    continue;
                }
                log::info!(
                    "candidate {c} for {} cannot be drawn; dropping it",
                    s.orange
                );
                let i = choices[s.block];
                let b = &mut eta.blocks[s.block];
                b.terms.remove(i);
                b.kites.remove(i);
                repairs += 1;
                retry = true;
                break;
            }
        }
        if retry {
            continue;
        }
        if let Some(s) = summary.as_mut() {
            s.repairs = repairs;
        }
        let pairs = normalize(&pairs);
        return match validate_embedding(run.g, &pairs, mode, &Constraints::none()) {
            Ok(emb) => Ok((emb, summary)),
            Err(e) => fail(format!("assembled embedding is invalid: {e}"), &summary),
        };
    }
}
