//! Reading graphs from files or stdin.

use std::io::Read;
use std::path::Path;

use bpr_graph::io::{parse_edgelist, parse_graph6, to_edgelist, to_graph6};
use bpr_graph::{Graph, GraphError};
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Edgelist,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Invalid(String),
}

/// Contents of `path`, or stdin for `None` and "-".
pub fn read_source(path: Option<&Path>) -> Result<String, InputError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|source| InputError::Io { path: p.display().to_string(), source }),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| InputError::Io { path: "stdin".into(), source })?;
            Ok(s)
        }
    }
}

/// An edge list starts with a line of two integers; anything else is graph6.
pub fn detect(text: &str) -> Format {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.split_whitespace().count() == 2 && l.split_whitespace().all(|t| t.parse::<usize>().is_ok()) => {
            Format::Edgelist
        }
        _ => Format::Graph6,
    }
}

pub fn parse(text: &str, format: Option<Format>) -> Result<Graph, InputError> {
    match format.unwrap_or_else(|| detect(text)) {
        Format::Edgelist => Ok(parse_edgelist(text)?),
        Format::Graph6 => {
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => Ok(parse_graph6(one)?),
                [] => Err(InputError::Invalid("empty input".into())),
                _ => Err(InputError::Invalid(format!("expected one graph6 line, found {}", lines.len()))),
            }
        }
    }
}

pub fn read_graph(path: Option<&Path>, format: Option<Format>) -> Result<Graph, InputError> {
    parse(&read_source(path)?, format)
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g) + "\n",
        Format::Edgelist => to_edgelist(g),
    }
}
