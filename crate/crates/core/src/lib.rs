//! Adic transformations on the Pascal graph and on finite ordered
//! Bratteli diagrams: orderings, paths and ranks, the successor map,
//! codings by cylinders, basic blocks and their languages, block
//! factorizations, and odometer tests for general diagrams.

pub mod adic;
pub mod bratteli;
pub mod coding;
pub mod error;
pub mod factoring;
pub mod ordering;
pub mod pascal;
pub mod word;

pub use error::{Error, Result};
pub use ordering::{OrderingSpec, OrderingTable, VertexBit};
pub use pascal::{PathPrefix, Step, Vertex};
pub use word::Word;
