//! DOT and SVG export.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt::Write;

use bpr_coloring::{Color, EdgeColoring};
use bpr_graph::{Edge, Graph, Rotation};

/// What to draw: the graph, its coloring and the crossings of a witness with
/// the planarization rotations (crossing `i` is vertex `n + i`).
pub struct Drawing<'a> {
    pub graph: &'a Graph,
    pub coloring: Option<&'a EdgeColoring>,
    pub crossings: Vec<(Edge, Edge)>,
    pub rotations: Option<&'a BTreeMap<usize, Vec<usize>>>,
}

impl Drawing<'_> {
    /// Color of `e`; undetermined edges crossed in the witness are drawn
    /// red (first of the pair) or blue.
    fn color(&self, e: Edge) -> Option<Color> {
        let c = self.coloring.and_then(|c| c.get(e));
        if matches!(c, None | Some(Color::Grey)) {
            for &(a, b) in &self.crossings {
                if a == e {
                    return Some(Color::Red);
                }
                if b == e {
                    return Some(Color::Blue);
                }
            }
        }
        c
    }
}

fn stroke(c: Option<Color>) -> &'static str {
    match c {
        None | Some(Color::Black) => "black",
        Some(Color::Red) => "red",
        Some(Color::Blue) => "blue",
        Some(Color::Orange) => "orange",
        Some(Color::Cyan) => "cyan",
        Some(Color::Grey) => "gray",
    }
}

pub fn to_dot(d: &Drawing) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..d.graph.n() {
        let _ = writeln!(s, "  {v};");
    }
    let crossed: BTreeSet<Edge> = d.crossings.iter().flat_map(|&(e, f)| [e, f]).collect();
    for e in d.graph.edges() {
        let mut attrs = vec![];
        if let Some(c) = d.color(e) {
            attrs.push(format!("color={}", stroke(Some(c))));
        }
        if crossed.contains(&e) {
            attrs.push("style=dashed".to_string());
        }
        if attrs.is_empty() {
            let _ = writeln!(s, "  {} -- {};", e.0, e.1);
        } else {
            let _ = writeln!(s, "  {} -- {} [{}];", e.0, e.1, attrs.join(", "));
        }
    }
    for (e, f) in &d.crossings {
        let _ = writeln!(s, "  // crossing {e} x {f}");
    }
    s.push_str("}\n");
    s
}

/// Barycentric (Tutte) layout of a planar rotation system with its largest
/// face on the unit circle.
fn tutte_layout(rot: &Rotation) -> Vec<(f64, f64)> {
    let n = rot.n();
    let outer = rot.faces().into_iter().max_by_key(|f| f.len()).unwrap_or_default();
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    for (i, &v) in outer.iter().enumerate() {
        let t = 2.0 * PI * i as f64 / outer.len() as f64;
        pos[v] = (t.cos(), t.sin());
        fixed[v] = true;
    }
    for _ in 0..5000 {
        let mut delta: f64 = 0.0;
        for v in 0..n {
            if fixed[v] || rot.order[v].is_empty() {
                continue;
            }
            let k = rot.order[v].len() as f64;
            let (sx, sy) = rot.order[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let p = (sx / k, sy / k);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < 1e-9 {
            break;
        }
    }
    pos
}

fn circle_layout(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n.max(1) as f64;
            (t.cos(), t.sin())
        })
        .collect()
}

pub fn to_svg(d: &Drawing) -> String {
    let g = d.graph;
    let n = g.n();
    let pos = match d.rotations {
        Some(r) if !d.crossings.is_empty() || !r.is_empty() => {
            let total = n + d.crossings.len();
            let order: Vec<Vec<usize>> = (0..total).map(|v| r.get(&v).cloned().unwrap_or_default()).collect();
            tutte_layout(&Rotation::from_orders(order))
        }
        _ => circle_layout(n),
    };
    let size = 600.0;
    let map = |p: (f64, f64)| (size / 2.0 + p.0 * (size / 2.0 - 30.0), size / 2.0 - p.1 * (size / 2.0 - 30.0));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let color = |e: Edge| stroke(d.color(e));
    let mut via: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, &(e, f)) in d.crossings.iter().enumerate() {
        via.insert(e, n + i);
        via.insert(f, n + i);
    }
    for e in g.edges() {
        let (a, b) = (map(pos[e.0]), map(pos[e.1]));
        match via.get(&e) {
            Some(&x) if x < pos.len() => {
                let c = map(pos[x]);
                let _ = writeln!(
                    s,
                    r#"<polyline class="edge" points="{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}" fill="none" stroke="{}" stroke-width="2"/>"#,
                    a.0, a.1, c.0, c.1, b.0, b.1, color(e)
                );
            }
            _ => {
                let _ = writeln!(
                    s,
                    r#"<line class="edge" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{}" stroke-width="2"/>"#,
                    a.0, a.1, b.0, b.1, color(e)
                );
            }
        }
    }
    for i in 0..d.crossings.len() {
        if let Some(&p) = pos.get(n + i) {
            let c = map(p);
            let _ = writeln!(s, r#"<circle class="crossing" cx="{:.1}" cy="{:.1}" r="4" fill="none" stroke="black"/>"#, c.0, c.1);
        }
    }
    for (v, &p) in pos.iter().enumerate().take(n) {
        let c = map(p);
        let _ = writeln!(s, r#"<circle class="vertex" cx="{:.1}" cy="{:.1}" r="9" fill="white" stroke="black"/>"#, c.0, c.1);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle" dominant-baseline="central">{v}</text>"#,
            c.0, c.1
        );
    }
    s.push_str("</svg>\n");
    s
}
