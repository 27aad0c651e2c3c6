//! Monographs: graphs whose edges are finite sequences of edges.
//!
//! The crate provides the data model (edges, traces, nodes,
//! submonographs), morphisms and their enumeration, finite limits and
//! colimits, partial morphisms with their pushouts, double- and
//! single-pushout rewriting, the bridge between type monographs and
//! monadic signatures, attributed typed monographs, and a text format
//! with DOT/TikZ exporters.

pub mod attributed;
pub mod doc;
pub mod export;
pub mod gen;
pub mod limits;
pub mod model;
pub mod morphism;
pub mod partial;
pub mod rewriting;
pub mod signature;

pub use model::{Classification, EdgeId, ModelError, Monograph, Submonograph, Trace};
pub use morphism::{
    enumerate_morphisms, find_isomorphism, Morphism, MorphismClass, MorphismError, TypedMonograph,
};
