use serde::{Deserialize, Serialize};
use std::fmt;

use crate::GraphError;

pub type Vertex = usize;

/// Undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    /// Canonical edge. Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        assert_ne!(a, b, "edge endpoints must differ");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Edge, GraphError> {
        if a == b {
            Err(GraphError::Loop(a))
        } else {
            Ok(Edge::new(a, b))
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }

    pub fn shares_endpoint(&self, f: &Edge) -> bool {
        self.contains(f.0) || self.contains(f.1)
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

/// Builds a graph, rejecting loops, duplicates and out-of-range ids.
pub fn build_graph(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n);
    for &(a, b) in edges {
        if a >= n {
            return Err(GraphError::OutOfRange(a, n));
        }
        if b >= n {
            return Err(GraphError::OutOfRange(b, n));
        }
        let e = Edge::try_new(a, b)?;
        if !g.add_edge(e) {
            return Err(GraphError::Duplicate(e));
        }
    }
    Ok(g)
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(Edge(a, b));
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph, GraphError> {
        let pairs: Vec<(Vertex, Vertex)> = edges.into_iter().map(|e| (e.0, e.1)).collect();
        build_graph(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// Adds `e`; returns false if it was already present.
    pub fn add_edge(&mut self, e: Edge) -> bool {
        let Edge(a, b) = e;
        match self.adj[a].binary_search(&b) {
            Ok(_) => false,
            Err(i) => {
                self.adj[a].insert(i, b);
                let j = self.adj[b].binary_search(&a).unwrap_err();
                self.adj[b].insert(j, a);
                self.m += 1;
                true
            }
        }
    }

    /// Removes `e`; returns false if it was absent.
    pub fn remove_edge(&mut self, e: Edge) -> bool {
        let Edge(a, b) = e;
        match self.adj[a].binary_search(&b) {
            Err(_) => false,
            Ok(i) => {
                self.adj[a].remove(i);
                let j = self.adj[b].binary_search(&a).unwrap();
                self.adj[b].remove(j);
                self.m -= 1;
                true
            }
        }
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb {
                if a < b {
                    out.push(Edge(a, b));
                }
            }
        }
        out
    }

    /// Sorted common neighbours of `a` and `b`.
    pub fn common_neighbors(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let (x, y) = (&self.adj[a], &self.adj[b]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::empty(self.n());
        for e in self.edges() {
            g.add_edge(e.map(|v| perm[v]));
        }
        g
    }
}

/// An induced (or otherwise derived) subgraph together with the map back to parent ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_parent: Vec<Vertex>,
}

impl Subgraph {
    pub fn parent_edge(&self, e: Edge) -> Edge {
        e.map(|v| self.to_parent[v])
    }

    pub fn local_vertex(&self, parent: Vertex) -> Option<Vertex> {
        self.to_parent.iter().position(|&p| p == parent)
    }
}

/// Subgraph induced by `u`, relabelled densely in ascending parent-id order.
pub fn induced_subgraph(g: &Graph, u: &[Vertex]) -> Result<Subgraph, GraphError> {
    let mut verts: Vec<Vertex> = u.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if let Some(&bad) = verts.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::OutOfRange(bad, g.n()));
    }
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let mut h = Graph::empty(verts.len());
    for (i, &v) in verts.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = local[w];
            if j != usize::MAX && i < j {
                h.add_edge(Edge(i, j));
            }
        }
    }
    Ok(Subgraph { graph: h, to_parent: verts })
}
