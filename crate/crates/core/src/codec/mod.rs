//! Randomize, map and verify: the strand encoder, its decoder and the
//! archive formats.

mod archive;
mod block11;
mod encoder;
pub mod io;
mod params;
mod randomizer;
mod whole_stream;

pub use archive::{payload_digest, ArchiveHeader, EncodedArchive, DIGEST_LEN};
pub use block11::{map_block11, unmap_block11, BLOCK_BITS, BLOCK_NT};
pub use encoder::{
    decode, decode_payload, encode, encode_chunk, encode_with_log, ChunkOutcome, RunLog,
    StrandAttempt,
};
pub use params::{CodecParams, Method, MAX_ITERATIONS};
pub use randomizer::Randomizer;
pub use whole_stream::{capacity_bits, map_whole_stream, unmap_whole_stream};
