//! Word-representable and comparability graphs: exact recognition with
//! checkable certificates, multi-word-representation numbers, lexicographic
//! products, certified product decompositions and maximum representable sets.

pub mod decomposition;
pub mod document;
pub mod error;
pub mod extremal;
pub mod formats;
pub mod graph;
pub mod lex;
pub mod recognition;

pub use error::{Error, Result};
pub use graph::{
    canonical_hash, graph_union, induced_subgraph, is_dominating_vertex, Graph, GraphDigest, GraphUnion,
    LexStructure, MappedGraph, Orientation, VertexSet,
};
