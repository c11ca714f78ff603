//! Computing with stable weighted graphs with labeled legs: the
//! combinatorial types of n-pointed tropical curves.
//!
//! The crate covers validation and queries on half-edge graphs, canonical
//! forms and automorphism groups, weighted edge contraction and 3-regular
//! resolutions, metric curves with exact rational lengths, exhaustive
//! stratum enumeration with its contraction poset, and the dual-graph
//! correspondence with pointed nodal curves.

pub mod canonical;
pub mod contraction;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod io;
pub mod metric;
pub mod nodal;
mod par;

#[cfg(test)]
mod testgraphs;

pub use canonical::{automorphism_group, canonical_form, is_isomorphic, AutGroup, CanonicalForm};
pub use contraction::{contract, contract_edge, covers, leq, resolve_to_trivalent, Cover,
                      ContractionResult};
pub use enumeration::{enumerate_all, enumerate_all_seeded, enumerate_trivalent,
                      enumerate_trivalent_seeded, ht_path, ht_path_in, CoverEdge, StrataNode,
                      StrataPoset, ZigZag};
pub use error::{Error, Result};
pub use graph::{EdgeId, HalfEdge, HalfEdgeId, StabilityReport, VertexId, WeightedGraph};
pub use io::{CurveDescription, GraphDescription};
pub use metric::{face_contract, fiber, is_isometric, separate_legs, separate_legs_with_length,
                 stabilize, ConePoint, Length, TropicalCurve};
pub use nodal::{is_stable_curve, stabilize_curve, stratum_dims, NodalCurveDesc, StratumDims};
pub use par::configure_workers;
