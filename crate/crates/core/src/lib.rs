pub mod error;
pub mod extremal;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod io;
pub mod packing;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
