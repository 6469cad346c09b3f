use sha3::{Digest, Sha3_256};

use crate::bits::{to_bytes, BitStr};
use crate::constraints::{verify, Alpha, ConstraintSet, GcScope, Verdict};
use crate::error::{Error, Result};
use crate::huffman::Codebook;
use crate::sequence::DnaSequence;

use super::params::{CodecParams, Method};

pub const DIGEST_LEN: usize = 16;

/// Everything besides the strands needed to decode an archive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchiveHeader {
    pub method: Method,
    pub m: usize,
    pub alpha: Alpha,
    pub n: usize,
    pub max_iterations: u8,
    pub gc_scope: GcScope,
    pub forbidden: Vec<DnaSequence>,
    /// Source symbol width when Huffman coding was applied.
    pub source_symbol_bits: Option<u32>,
    pub original_bit_length: u64,
    /// Length of the bit string that was randomized and mapped.
    pub payload_bit_length: u64,
    pub codebook: Option<Codebook>,
    /// Truncated SHA3-256 over the payload bits.
    pub digest: Option<[u8; DIGEST_LEN]>,
}

impl ArchiveHeader {
    pub fn constraints(&self) -> Result<ConstraintSet> {
        Ok(ConstraintSet::new(self.m, self.alpha)?
            .with_forbidden(self.forbidden.clone())?
            .with_gc_scope(self.gc_scope))
    }

    pub fn params(&self) -> Result<CodecParams> {
        CodecParams::new(
            self.method,
            self.constraints()?,
            self.n,
            self.max_iterations,
        )
        .map_err(|e| Error::corruption(format!("header parameters: {e}")))
    }
}

pub fn payload_digest(bits: &BitStr) -> [u8; DIGEST_LEN] {
    let mut h = Sha3_256::new();
    h.update((bits.len() as u64).to_le_bytes());
    h.update(to_bytes(bits));
    let full = h.finalize();
    full[..DIGEST_LEN].try_into().unwrap()
}

/// Header plus strands, each a one-nucleotide iteration prefix followed by
/// the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedArchive {
    pub header: ArchiveHeader,
    pub strands: Vec<DnaSequence>,
}

impl EncodedArchive {
    pub fn total_nt(&self) -> usize {
        self.strands.iter().map(DnaSequence::len).sum()
    }

    /// Original bits per synthesized nucleotide, prefixes included.
    pub fn density(&self) -> f64 {
        self.header.original_bit_length as f64 / self.total_nt() as f64
    }

    /// Verdict for every strand whose payload breaks the header's constraints.
    pub fn violations(&self) -> Result<Vec<(usize, Verdict)>> {
        let constraints = self.header.constraints()?;
        let mut bad = Vec::new();
        for (i, s) in self.strands.iter().enumerate() {
            if s.len() < 2 {
                return Err(Error::corruption(format!("strand {i} has no payload")));
            }
            let v = verify(s, 1..s.len(), &constraints)?;
            if !v.is_pass() {
                bad.push((i, v));
            }
        }
        Ok(bad)
    }
}
