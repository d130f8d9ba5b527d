//! Graph representation and the structural primitives shared by the recognizer:
//! connectivity, clique enumeration, crossable edges and planarity.

mod cliques;
mod connectivity;
mod graph;
pub mod io;
mod iso;
mod planarity;

pub use cliques::{
    crossable_edges_by, enumerate_k4, find_k5, four_cycle_sets, four_cycles_on, has_k4, triangles,
    K4Occurrence, Kite,
};
pub use connectivity::{
    articulation_points, articulation_points_without, biconnected_components, connected_components,
    is_connected, is_k_connected, separation_pairs, Reach,
};
pub use iso::{automorphisms, canonical_form, canonical_graph, isomorphic, map_edge, CanonicalForm, CANON_MAX_N};
pub use graph::{build_graph, induced_subgraph, Edge, Graph, Subgraph, Vertex};
pub use planarity::{
    face_edges, is_planar, is_triangulated_planar, planar_embedding, planar_rotation,
    rotation_is_planar, Rotation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}")]
    Duplicate(Edge),
    #[error("vertex {0} out of range for n = {1}")]
    OutOfRange(Vertex, usize),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error("parse error: {0}")]
    Parse(String),
}
