pub mod analysis;
pub mod bits;
pub mod codec;
pub mod constraints;
pub mod corpus;
pub mod decimal;
pub mod error;
pub mod huffman;
pub mod mapping;
pub mod pipeline;
pub mod sequence;

pub use error::{Error, Result};
