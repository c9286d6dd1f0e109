//! Directed hypergraphs and their colorings.
//!
//! - [`model`]: hypergraphs, colorings and the text formats for both.
//! - [`properties`]: structural checks with re-checkable witnesses.
//! - [`recolor`]: recoloring algorithms for rainbow, polychromatic and
//!   linear instances.
//! - [`two_one`]: proper 2-coloring of 2->1 hypergraphs with Property S.
//! - [`oracle`]: exhaustive searches used as ground truth.
//! - [`constructions`]: fixed patterns and extremal constructions.

pub mod constructions;
pub mod error;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod recolor;
pub mod two_one;

pub use error::{Error, Result};
pub use model::{Coloring, DirectedHyperedge, DirectedHypergraph, VertexId};
pub use properties::{ViolationKind, ViolationWitness};
pub use two_one::color_2to1_property_s;
