//! Filtered simplicial complexes built from weighted graphs.
//!
//! A weighted graph is turned into one of four complexes (cliques, closed
//! neighbourhoods, enclaveless sets, independent sets). The first three
//! carry a filtration induced by the edge weights, whose persistence
//! diagrams and persistent Betti numbers are computed by column reduction
//! over GF(2). Cliques of the graph and of its weighted completion combine
//! into an extended persistent Betti number function on the whole plane.

pub mod complex;
pub mod error;
pub mod filtration;
pub mod graph;
pub mod homology;
pub mod metrics;
pub mod persistence;
pub mod value;

pub use complex::{Simplex, SimplicialComplex};
pub use error::{Error, ParseError, Result};
pub use filtration::{ExtendedPair, FilteredComplex};
pub use graph::WeightedGraph;
pub use persistence::PersistenceDiagram;
pub use value::ExtReal;
