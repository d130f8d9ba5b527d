//! The `bpr` command line: recognize, classify, census, gen, render.

pub mod input;
pub mod render;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bpr_formula::Mode;
use bpr_graph::{Edge, Graph, Vertex};
use bpr_oracle::{census, Constraints};
use bpr_recognizer::{classify, recognize_with, Options};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use input::{Format, InputError};
use render::Drawing;
use report::{Emit, RunReport, Timings};

pub const EXIT_ACCEPTED: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bpr", version, about = "Recognize triangulated 1-planar, IC-planar and NIC-planar graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Input file; stdin when absent or "-".
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "1p")]
    pub mode: Mode,
    /// Input format; detected from the first line when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership; exit 0 accepted, 1 rejected, 2 input error.
    Recognize {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "verdict")]
        emit: Emit,
        /// Do not reject on the edge-count bound alone.
        #[arg(long)]
        no_edge_bound: bool,
    },
    /// Membership plus maximal, planar-maximal, maximum and optimal.
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Count the embeddings of a graph with at most 8 vertices.
    Census {
        #[command(flatten)]
        graph: GraphArgs,
        /// JSON constraints: planar_edges, outer_face, faces,
        /// forbidden_vertices, forbidden_edges.
        #[arg(long)]
        constraints: Option<PathBuf>,
    },
    /// Write a graph of a named family, e.g. optimal-q3 or optimal-cubes:4.
    Gen {
        family: String,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a graph with its witness as DOT or SVG.
    Render {
        #[command(flatten)]
        graph: GraphArgs,
        /// Existing JSON report to draw instead of recognizing again.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, conflicts_with = "dot")]
        svg: bool,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("bad JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

/// Census constraints as read from a file.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConstraintsFile {
    pub planar_edges: Vec<[Vertex; 2]>,
    pub outer_face: Option<Vec<Vertex>>,
    pub faces: Vec<Vec<Vertex>>,
    pub forbidden_vertices: Vec<Vertex>,
    pub forbidden_edges: Vec<[Vertex; 2]>,
}

impl ConstraintsFile {
    pub fn to_constraints(&self, n: usize) -> Result<Constraints, CliError> {
        let check = |v: Vertex| {
            if v < n {
                Ok(v)
            } else {
                Err(CliError::Usage(format!("constraint vertex {v} out of range for n = {n}")))
            }
        };
        let edge = |[a, b]: [Vertex; 2]| -> Result<Edge, CliError> { Ok(Edge::new(check(a)?, check(b)?)) };
        let mut c = Constraints::none();
        for &e in &self.planar_edges {
            c.planar_edges.insert(edge(e)?);
        }
        for f in self.outer_face.iter().chain(&self.faces) {
            for &v in f {
                check(v)?;
            }
            c.add_face(f);
        }
        for &v in &self.forbidden_vertices {
            c.forbidden_vertices.insert(check(v)?);
        }
        for &e in &self.forbidden_edges {
            c.forbidden_edges.insert(edge(e)?);
        }
        Ok(c)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub version: u32,
    pub command: String,
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    pub count: usize,
    /// Classes up to automorphisms fixing the constrained vertices.
    pub classes: usize,
    pub embeddings: Vec<Vec<[String; 2]>>,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn emit(out: &mut dyn Write, text: &str) {
    // a closed stdout is not an error worth reporting
    let _ = out.write_all(text.as_bytes());
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn write_out(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Write { path: p.display().to_string(), source }),
        None => {
            emit(out, text);
            Ok(())
        }
    }
}

fn load(args: &GraphArgs) -> Result<(Graph, f64), CliError> {
    let t = Instant::now();
    let g = input::read_graph(args.input.as_deref(), args.format)?;
    Ok((g, ms(t)))
}

/// Runs one command; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            emit(err, &format!("error: {e}\n"));
            EXIT_INPUT
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Recognize { graph, emit: what, no_edge_bound } => {
            let (g, parse_ms) = load(&graph)?;
            let t = Instant::now();
            let opts = Options { skip_edge_bound: no_edge_bound, ..Options::default() };
            let r = recognize_with(&g, graph.mode, &opts);
            let timings = Timings { parse_ms, recognize_ms: ms(t), classify_ms: None };
            let report = RunReport::from_recognition("recognize", &g, &r, what, timings);
            emit(out, &if graph.json { to_json(&report) } else { report.to_text() });
            Ok(if r.accepted { EXIT_ACCEPTED } else { EXIT_REJECTED })
        }
        Command::Classify { graph } => {
            let (g, parse_ms) = load(&graph)?;
            let t = Instant::now();
            let r = recognize_with(&g, graph.mode, &Options::default());
            let recognize_ms = ms(t);
            let t = Instant::now();
            let c = classify(&g, graph.mode);
            let timings = Timings { parse_ms, recognize_ms, classify_ms: Some(ms(t)) };
            let report = RunReport::from_recognition("classify", &g, &r, Emit::Verdict, timings).with_classification(&c);
            emit(out, &if graph.json { to_json(&report) } else { report.to_text() });
            Ok(if c.member { EXIT_ACCEPTED } else { EXIT_REJECTED })
        }
        Command::Census { graph, constraints } => {
            let (g, _) = load(&graph)?;
            let cons = match constraints {
                None => Constraints::none(),
                Some(p) => {
                    let text = input::read_source(Some(&p))?;
                    let file: ConstraintsFile = serde_json::from_str(&text)
                        .map_err(|source| CliError::Json { path: p.display().to_string(), source })?;
                    file.to_constraints(g.n())?
                }
            };
            let res = census(&g, graph.mode, &cons).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = CensusReport {
                version: report::REPORT_VERSION,
                command: "census".into(),
                mode: graph.mode,
                n: g.n(),
                m: g.m(),
                count: res.raw,
                classes: res.classes,
                embeddings: res
                    .embeddings
                    .iter()
                    .map(|e| e.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect())
                    .collect(),
            };
            if graph.json {
                emit(out, &to_json(&report));
            } else {
                let mut s = format!("{}: {} embeddings, {} classes\n", graph.mode, report.count, report.classes);
                for (i, e) in report.embeddings.iter().enumerate() {
                    let pairs: Vec<String> = e.iter().map(|[a, b]| format!("{a}x{b}")).collect();
                    s.push_str(&format!("{i}: {}\n", pairs.join(" ")));
                }
                emit(out, &s);
            }
            Ok(if report.count > 0 { EXIT_ACCEPTED } else { EXIT_REJECTED })
        }
        Command::Gen { family, format, out: path } => {
            let g = bpr_generators::family(&family).map_err(|e| CliError::Usage(e.to_string()))?;
            write_out(path.as_deref(), &input::write_graph(&g, format), out)?;
            Ok(EXIT_ACCEPTED)
        }
        Command::Render { graph, report, svg, dot, out: path } => {
            if !svg && !dot {
                return Err(CliError::Usage("pass --svg or --dot".into()));
            }
            let (g, _) = load(&graph)?;
            let rep = match report {
                Some(p) => {
                    let text = input::read_source(Some(&p))?;
                    serde_json::from_str::<RunReport>(&text)
                        .map_err(|source| CliError::Json { path: p.display().to_string(), source })?
                }
                None => {
                    let r = recognize_with(&g, graph.mode, &Options::default());
                    RunReport::from_recognition("recognize", &g, &r, Emit::All, Timings::default())
                }
            };
            let crossings = match &rep.witness {
                Some(w) => w
                    .crossings
                    .iter()
                    .map(|[a, b]| Ok((parse_edge(a)?, parse_edge(b)?)))
                    .collect::<Result<Vec<_>, CliError>>()?,
                None => vec![],
            };
            let accepted = rep.accepted();
            let d = Drawing {
                graph: &g,
                coloring: rep.coloring.as_ref().filter(|_| accepted),
                crossings: if accepted { crossings } else { vec![] },
                rotations: rep.witness.as_ref().filter(|_| accepted).map(|w| &w.rotations),
            };
            let text = if svg { render::to_svg(&d) } else { render::to_dot(&d) };
            write_out(path.as_deref(), &text, out)?;
            Ok(EXIT_ACCEPTED)
        }
    }
}

fn parse_edge(s: &str) -> Result<Edge, CliError> {
    let bad = || CliError::Usage(format!("bad edge {s:?} in report"));
    let (a, b) = s.split_once('-').ok_or_else(bad)?;
    Ok(Edge::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

