//! graph6 and plain edge-list formats.

use crate::graph::{Edge, Graph};
use crate::GraphError;

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// graph6 encoding without the optional `>>graph6<<` header.
pub fn to_graph6(g: &Graph) -> String {
    let mut s = String::new();
    encode_n(g.n(), &mut s);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..g.n() {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                s.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        acc <<= 6 - bits;
        s.push((acc + 63) as char);
    }
    s
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let t = text.trim();
    let t = t.strip_prefix(">>graph6<<").unwrap_or(t);
    let bytes: Vec<u8> = t.bytes().collect();
    if bytes.is_empty() {
        return Err(GraphError::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse(format!("invalid graph6 byte {b}")));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (val(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(GraphError::Parse("truncated graph6 size".into()));
        }
        (val(bytes[1]) << 12 | val(bytes[2]) << 6 | val(bytes[3]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(GraphError::Parse("truncated graph6 size".into()));
        }
        let mut n = 0;
        for &b in &bytes[2..8] {
            n = n << 6 | val(b);
        }
        (n, &bytes[8..])
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return Err(GraphError::Parse(format!(
            "graph6 body has {} bytes, expected {need}",
            rest.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = val(rest[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(Edge(i, j));
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Edge list: first line "n m", then m lines "u v" (0-based). Blank lines and
/// lines starting with '#' are ignored.
pub fn parse_edgelist(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Parse("missing header line".into()))?;
    let nums = parse_pair(header)?;
    let (n, m) = (nums.0, nums.1);
    let mut pairs = Vec::with_capacity(m);
    for (i, line) in lines.enumerate() {
        if i >= m {
            return Err(GraphError::Parse(format!("more than {m} edge lines")));
        }
        pairs.push(parse_pair(line)?);
    }
    if pairs.len() != m {
        return Err(GraphError::Parse(format!(
            "header announces {m} edges, found {}",
            pairs.len()
        )));
    }
    crate::graph::build_graph(n, &pairs)
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        it.next()
            .ok_or_else(|| GraphError::Parse(format!("expected two integers in {line:?}")))?
            .parse::<usize>()
            .map_err(|e| GraphError::Parse(format!("{line:?}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Parse(format!("trailing data in {line:?}")));
    }
    Ok((a, b))
}

pub fn to_edgelist(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.0, e.1));
    }
    s
}
