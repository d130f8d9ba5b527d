//! Certificate formulas over kite variables.
//!
//! η is kept as a list of blocks, each a disjunction of conjunctions of
//! positive variables, together with the event that produced it. The IC/NIC
//! extension adds the pairwise exclusions `¬x_κ ∨ ¬x_κ'`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use bpr_graph::{Edge, Kite, Vertex};
use serde::{Deserialize, Serialize};

mod solve;
mod twosat;

pub use solve::{
    brute_force_satisfiable, choices_consistent, exact_block_choice, ic_satisfiable, nic_satisfiable, SatOutcome,
    VIRTUAL_KITE_BASE,
};
pub use twosat::{solve_2sat, TwoSat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "1p")]
    OneP,
    #[serde(rename = "ic")]
    Ic,
    #[serde(rename = "nic")]
    Nic,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::OneP, Mode::Ic, Mode::Nic];

    pub fn name(self) -> &'static str {
        match self {
            Mode::OneP => "1p",
            Mode::Ic => "ic",
            Mode::Nic => "nic",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s.to_ascii_lowercase().as_str() {
            "1p" | "1-planar" => Ok(Mode::OneP),
            "ic" => Ok(Mode::Ic),
            "nic" => Ok(Mode::Nic),
            other => Err(format!("unknown mode {other:?} (expected 1p, ic or nic)")),
        }
    }
}

/// The object a variable talks about: a vertex (IC) or a planar edge (NIC).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Entity {
    Vertex(Vertex),
    Edge(Edge),
}

impl fmt::Display for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entity::Vertex(v) => write!(f, "v{v}"),
            Entity::Edge(e) => write!(f, "e{}-{}", e.0, e.1),
        }
    }
}

/// `x_κ`: entity `x` is used by kite `κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var {
    pub entity: Entity,
    pub kite: usize,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@k{}", self.entity, self.kite)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lit {
    pub var: Var,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: Var) -> Lit {
        Lit { var, positive: true }
    }

    pub fn neg(var: Var) -> Lit {
        Lit { var, positive: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "args", rename_all = "lowercase")]
pub enum Formula {
    True,
    False,
    Lit(Lit),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn and(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::And(parts),
        }
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn eval(&self, truth: &dyn Fn(&Var) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Lit(l) => truth(&l.var) == l.positive,
            Formula::And(xs) => xs.iter().all(|x| x.eval(truth)),
            Formula::Or(xs) => xs.iter().any(|x| x.eval(truth)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Lit(l) => {
                out.insert(l.var);
            }
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            _ => {}
        }
    }

    /// Number of literal occurrences.
    pub fn len(&self) -> usize {
        match self {
            Formula::Lit(_) => 1,
            Formula::And(xs) | Formula::Or(xs) => xs.iter().map(Formula::len).sum(),
            _ => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Clauses if the formula is a conjunction of disjunctions of at most two literals.
    pub fn as_2cnf(&self) -> Option<Vec<Vec<Lit>>> {
        fn clause(f: &Formula) -> Option<Vec<Lit>> {
            match f {
                Formula::Lit(l) => Some(vec![*l]),
                Formula::Or(xs) if xs.len() <= 2 => xs
                    .iter()
                    .map(|x| match x {
                        Formula::Lit(l) => Some(*l),
                        _ => None,
                    })
                    .collect(),
                _ => None,
            }
        }
        match self {
            Formula::True => Some(vec![]),
            Formula::And(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    match x {
                        Formula::True => {}
                        Formula::And(_) => out.extend(x.as_2cnf()?),
                        _ => out.push(clause(x)?),
                    }
                }
                Some(out)
            }
            other => Some(vec![clause(other)?]),
        }
    }

    pub fn to_sexpr(&self) -> String {
        match self {
            Formula::True => "true".into(),
            Formula::False => "false".into(),
            Formula::Lit(l) if l.positive => l.var.to_string(),
            Formula::Lit(l) => format!("(not {})", l.var),
            Formula::And(xs) => format!("(and {})", xs.iter().map(Formula::to_sexpr).collect::<Vec<_>>().join(" ")),
            Formula::Or(xs) => format!("(or {})", xs.iter().map(Formula::to_sexpr).collect::<Vec<_>>().join(" ")),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("sigma needs at least one candidate kite")]
    EmptySigma,
    #[error("formula is not in 2-CNF")]
    NotTwoCnf,
    #[error("entity {0} occurs with {1} kite variables (at most 2 allowed in NIC mode)")]
    TooManyOccurrences(Entity, usize),
    #[error("construction trace does not match the requested mode")]
    TraceMismatch,
}

/// Variables of a kite: its 4 vertices (IC) or its 4 boundary edges (NIC).
pub fn kite_vars(kite: &Kite, mode: Mode) -> Vec<Var> {
    match mode {
        Mode::Nic => kite.boundary.iter().map(|&e| Var { entity: Entity::Edge(e), kite: kite.id }).collect(),
        _ => kite.vertices.iter().map(|&v| Var { entity: Entity::Vertex(v), kite: kite.id }).collect(),
    }
}

/// α(κ): the conjunction of the kite's four variables.
pub fn make_alpha(kite: &Kite, mode: Mode) -> Formula {
    Formula::and(kite_vars(kite, mode).into_iter().map(|v| Formula::Lit(Lit::pos(v))).collect())
}

/// σ(a,b,C[a,b]): disjunction of the candidates' α clauses.
pub fn make_sigma(candidates: &[Kite], mode: Mode) -> Result<Formula, FormulaError> {
    if candidates.is_empty() {
        return Err(FormulaError::EmptySigma);
    }
    Ok(Formula::or(candidates.iter().map(|k| make_alpha(k, mode)).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    /// A kite forced by a separating triple/quadruple/triangle or an MC4 step.
    Alpha,
    /// Candidate kites for a separating edge {a,b}.
    Sigma { a: Vertex, b: Vertex },
    /// Embeddings of a small remainder graph, in terms of its outer-cycle entities.
    Small { outer: Vec<Vertex> },
}

/// One conjunct of η: a disjunction over terms, each a conjunction of positive
/// variables. `kites[i]` lists the kites realising term `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub terms: Vec<Vec<Var>>,
    pub kites: Vec<Vec<Kite>>,
    pub origin: String,
}

impl Block {
    pub fn alpha(kite: Kite, mode: Mode, origin: impl Into<String>) -> Block {
        Block { kind: BlockKind::Alpha, terms: vec![kite_vars(&kite, mode)], kites: vec![vec![kite]], origin: origin.into() }
    }

    pub fn sigma(a: Vertex, b: Vertex, candidates: &[Kite], mode: Mode, origin: impl Into<String>) -> Result<Block, FormulaError> {
        if candidates.is_empty() {
            return Err(FormulaError::EmptySigma);
        }
        Ok(Block {
            kind: BlockKind::Sigma { a, b },
            terms: candidates.iter().map(|k| kite_vars(k, mode)).collect(),
            kites: candidates.iter().map(|k| vec![*k]).collect(),
            origin: origin.into(),
        })
    }

    pub fn formula(&self) -> Formula {
        Formula::or(
            self.terms
                .iter()
                .map(|t| Formula::and(t.iter().map(|&v| Formula::Lit(Lit::pos(v))).collect()))
                .collect(),
        )
    }

    /// Entity sets of the terms.
    pub fn term_entities(&self) -> Vec<BTreeSet<Entity>> {
        self.terms.iter().map(|t| t.iter().map(|v| v.entity).collect()).collect()
    }
}

/// η as a traced conjunction of blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eta {
    pub blocks: Vec<Block>,
}

impl Eta {
    pub fn new() -> Eta {
        Eta::default()
    }

    pub fn push(&mut self, b: Block) {
        self.blocks.push(b);
    }

    pub fn append(&mut self, other: Eta) {
        self.blocks.extend(other.blocks);
    }

    pub fn formula(&self) -> Formula {
        Formula::and(self.blocks.iter().map(Block::formula).collect())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.blocks.iter().flat_map(|b| b.terms.iter().flatten().copied()).collect()
    }

    /// Distinct kite variables per entity.
    pub fn occurrences(&self) -> BTreeMap<Entity, BTreeSet<Var>> {
        let mut occ: BTreeMap<Entity, BTreeSet<Var>> = BTreeMap::new();
        for v in self.vars() {
            occ.entry(v.entity).or_default().insert(v);
        }
        occ
    }

    /// The extension clauses `¬x_κ ∨ ¬x_κ'`, one per unordered pair.
    pub fn extension_clauses(&self) -> Vec<(Var, Var)> {
        extension_pairs(self.occurrences().values())
    }

    /// η⁺ = η ∧ extension clauses.
    pub fn extended_formula(&self) -> Formula {
        let mut parts = vec![self.formula()];
        for (x, y) in self.extension_clauses() {
            parts.push(Formula::Or(vec![Formula::Lit(Lit::neg(x)), Formula::Lit(Lit::neg(y))]));
        }
        Formula::and(parts)
    }

    /// Number of kites referenced anywhere in η.
    pub fn kite_count(&self) -> usize {
        self.vars().iter().map(|v| v.kite).collect::<BTreeSet<_>>().len()
    }
}

pub(crate) fn extension_pairs<'a>(groups: impl Iterator<Item = &'a BTreeSet<Var>>) -> Vec<(Var, Var)> {
    let mut out = Vec::new();
    for g in groups {
        let vs: Vec<Var> = g.iter().copied().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i].kite != vs[j].kite {
                    out.push((vs[i], vs[j]));
                }
            }
        }
    }
    out
}

/// extension(η, mode): the formula η⁺.
pub fn extension(eta: &Eta) -> Formula {
    eta.extended_formula()
}

/// Minimal transversals of a family of sets over a small universe: the clauses
/// of the positive CNF equivalent to "some set is fully selected".
pub fn minimal_transversals(family: &[BTreeSet<Entity>]) -> Vec<Vec<Entity>> {
    let universe: Vec<Entity> = family.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if family.iter().any(|s| s.is_empty()) {
        return vec![];
    }
    assert!(universe.len() <= 20, "transversal universe too large");
    let k = universe.len();
    let sets: Vec<u32> = family
        .iter()
        .map(|s| s.iter().map(|e| 1u32 << universe.iter().position(|u| u == e).unwrap()).sum())
        .collect();
    let mut hitting: Vec<u32> = (0u32..(1 << k)).filter(|&m| sets.iter().all(|&s| s & m != 0)).collect();
    hitting.sort_by_key(|m| (m.count_ones(), *m));
    let mut minimal: Vec<u32> = Vec::new();
    for m in hitting {
        if !minimal.iter().any(|&x| x & m == x) {
            minimal.push(m);
        }
    }
    minimal
        .into_iter()
        .map(|m| (0..k).filter(|i| m >> i & 1 == 1).map(|i| universe[i]).collect())
        .collect()
}

/// Removes terms whose entity set contains another term's entity set.
pub fn absorb_terms(block: &mut Block) {
    let ents = block.term_entities();
    let mut keep = vec![true; ents.len()];
    for i in 0..ents.len() {
        for j in 0..ents.len() {
            if i != j && keep[j] && ents[j].is_subset(&ents[i]) && (ents[j] != ents[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut i = 0;
    block.terms.retain(|_| {
        i += 1;
        keep[i - 1]
    });
    let mut i = 0;
    block.kites.retain(|_| {
        i += 1;
        keep[i - 1]
    });
}
