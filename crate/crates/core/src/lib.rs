//! Clustering of edge-colored hypergraphs: relaxations, roundings, and exact
//! methods for the max, min, p-mean, color-fair, and protected-color variants.

pub mod combinatorial;
pub mod conflict;
pub mod error;
pub mod generate;
pub mod hypergraph;
pub mod lp;
pub mod prob;
pub mod relax;
pub mod rounding;

pub use error::{EccError, Result};
pub use hypergraph::{
    triangle_gadget, ColorErrorVector, Coloring, EdgeColoredHypergraph, EdgeSet, Hyperedge,
    ObjectiveValue, Problem,
};
pub use relax::{FractionalSolution, Orientation};
