//! Optional source coding followed by the strand codec, with run statistics.

use std::fmt;

use crate::analysis::{iteration_histogram, IterationHistogram};
use crate::bits::{from_bytes, to_bytes, BitStr, Bits};
use crate::codec::{decode, encode_with_log, CodecParams, EncodedArchive, Randomizer, RunLog};
use crate::error::{Error, Result};
use crate::huffman::{build_codebook, compress, decompress};
use crate::mapping::MappingTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeOptions {
    pub params: CodecParams,
    /// Huffman source-symbol width; `None` disables source coding.
    pub source_symbol_bits: Option<u32>,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        Self {
            params: CodecParams::default(),
            source_symbol_bits: Some(16),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub original_bits: u64,
    pub compressed_bits: Option<u64>,
    pub strands: usize,
    pub total_nt: usize,
    /// Original bits per nucleotide, prefixes included.
    pub density: f64,
    pub histogram: IterationHistogram,
    pub params: CodecParams,
}

impl RunReport {
    pub fn new(archive: &EncodedArchive, log: &RunLog, params: &CodecParams) -> Self {
        let h = &archive.header;
        Self {
            original_bits: h.original_bit_length,
            compressed_bits: h.codebook.as_ref().map(|_| h.payload_bit_length),
            strands: archive.strands.len(),
            total_nt: archive.total_nt(),
            density: archive.density(),
            histogram: iteration_histogram(log),
            params: params.clone(),
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "method={} m={} alpha={} n={} I={}",
            p.method,
            p.m(),
            p.alpha(),
            p.n,
            p.max_iterations
        )?;
        writeln!(f, "input_bits={}", self.original_bits)?;
        if let Some(c) = self.compressed_bits {
            writeln!(
                f,
                "compressed_bits={c} compression_rate={:.4}",
                self.original_bits as f64 / c as f64
            )?;
        }
        writeln!(f, "strands={} total_nt={}", self.strands, self.total_nt)?;
        writeln!(f, "density={:.4} bits/nt", self.density)?;
        let counts: Vec<String> = self.histogram.counts.iter().map(u64::to_string).collect();
        writeln!(
            f,
            "iterations=[{}] exhausted={} success_rate={:.4}",
            counts.join(","),
            self.histogram.exhausted,
            self.histogram.success_rate()
        )
    }
}

/// Source-codes (if requested) and encodes `data`.
pub fn encode_bits(
    data: &BitStr,
    options: &EncodeOptions,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<(EncodedArchive, RunLog, RunReport)> {
    if data.is_empty() {
        return Err(Error::domain("nothing to encode"));
    }
    let (payload, book) = match options.source_symbol_bits {
        Some(k) => {
            let book = build_codebook(data, k)?;
            (compress(data, &book)?, Some(book))
        }
        None => (data.to_bitvec(), None),
    };
    let (mut archive, log) = encode_with_log(&payload, &options.params, table, rng)?;
    archive.header.original_bit_length = data.len() as u64;
    archive.header.source_symbol_bits = book.as_ref().map(|b| b.k());
    archive.header.codebook = book;
    let report = RunReport::new(&archive, &log, &options.params);
    Ok((archive, log, report))
}

pub fn decode_bits(
    archive: &EncodedArchive,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<Bits> {
    let payload = decode(archive, table, rng)?;
    let h = &archive.header;
    match &h.codebook {
        Some(book) => decompress(&payload, book, h.original_bit_length)
            .map_err(|e| Error::corruption(format!("source decoding: {e}"))),
        None => Ok(payload),
    }
}

pub fn encode_bytes(
    data: &[u8],
    options: &EncodeOptions,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<(EncodedArchive, RunLog, RunReport)> {
    encode_bits(&from_bytes(data), options, table, rng)
}

pub fn decode_bytes(
    archive: &EncodedArchive,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<Vec<u8>> {
    if !archive.header.original_bit_length.is_multiple_of(8) {
        return Err(Error::corruption("archive does not hold whole bytes"));
    }
    Ok(to_bytes(&decode_bits(archive, table, rng)?))
}
