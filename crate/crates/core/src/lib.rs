//! Exact tools for graphs with no induced `K_{2,t}`: detection, closed-form
//! clique and Turán bounds, small Ramsey numbers, certificate-producing
//! clique extraction and exhaustive verification suites.

pub mod bounds;
pub mod constructions;
pub mod detect;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod ramsey;
pub mod verify;
pub mod witness;

pub use detect::{Embedding, InducedK2tCertificate, WitnessCertificate};
pub use error::{Error, Graph6Error, Result};
pub use graph::{DensityStats, Graph, InducedSubgraph, VertexSet};
