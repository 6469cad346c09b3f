//! Iterative randomize-map-verify encoding and its inverse.

use crate::bits::{BitStr, Bits};
use crate::constraints::verify;
use crate::error::{Error, Result};
use crate::mapping::MappingTable;
use crate::sequence::{DnaSequence, Nucleotide};

use super::archive::{payload_digest, ArchiveHeader, EncodedArchive};
use super::block11::{map_blocks, unmap_blocks};
use super::params::{CodecParams, Method};
use super::randomizer::Randomizer;
use super::whole_stream::{map_digits, unmap_digits};

/// One attempt sequence for one strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrandAttempt {
    pub chunk: usize,
    pub payload_nt: usize,
    /// 1-based iteration at which the strand passed, `None` if all failed.
    pub passed_at: Option<u8>,
}

/// Per-strand iteration record of an encoding run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLog {
    pub max_iterations: u8,
    pub attempts: Vec<StrandAttempt>,
}

impl RunLog {
    /// Number of strands that had to be re-partitioned after exhausting
    /// their iterations.
    pub fn reflows(&self) -> usize {
        self.attempts
            .iter()
            .filter(|a| a.passed_at.is_none())
            .count()
    }
}

/// The compliant strand for a chunk and the attempt index that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkOutcome {
    pub strand: Option<DnaSequence>,
    pub r: u8,
}

fn check_table(params: &CodecParams, table: &MappingTable) -> Result<()> {
    params.validate()?;
    if table.m() != params.m() {
        return Err(Error::Params(format!(
            "table is for m = {}, parameters use m = {}",
            table.m(),
            params.m()
        )));
    }
    Ok(())
}

fn map_payload(
    bits: &BitStr,
    units: usize,
    params: &CodecParams,
    table: &MappingTable,
    out: &mut Vec<Nucleotide>,
) -> Result<()> {
    match params.method {
        Method::Block11 => {
            map_blocks(bits, table, out);
            Ok(())
        }
        Method::WholeStream => map_digits(bits, table, units, out),
    }
}

/// Randomizes `chunk` with `r = 0, 1, ...` until the prefixed strand of
/// `units` mapping units passes verification, at most `max_iterations` times.
pub fn encode_chunk(
    chunk: &BitStr,
    units: usize,
    params: &CodecParams,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<ChunkOutcome> {
    check_table(params, table)?;
    if units == 0 || units > params.full_units() {
        return Err(Error::domain(format!(
            "strand of {units} units outside 1..={}",
            params.full_units()
        )));
    }
    let capacity = params.unit_capacity(units);
    if chunk.len() > capacity {
        return Err(Error::Capacity { symbols: units });
    }
    // pad before randomizing so the padding is randomized too
    let mut source = chunk.to_bitvec();
    source.resize(capacity, false);
    let payload_nt = units * params.unit_nt();
    let mut bases = Vec::with_capacity(payload_nt + 1);
    for r in 0..params.max_iterations {
        let randomized = rng.randomize(&source, u32::from(r));
        bases.clear();
        bases.push(Nucleotide::from_index(r).unwrap());
        map_payload(&randomized, units, params, table, &mut bases)?;
        let strand = DnaSequence::from(std::mem::take(&mut bases));
        if verify(&strand, 1..strand.len(), params.constraints())?.is_pass() {
            return Ok(ChunkOutcome {
                strand: Some(strand),
                r,
            });
        }
        bases = strand.bases().to_vec();
    }
    Ok(ChunkOutcome {
        strand: None,
        r: params.max_iterations,
    })
}

fn smallest_units_for(bits: usize, params: &CodecParams) -> usize {
    (1..=params.full_units())
        .find(|&u| params.unit_capacity(u) >= bits)
        .expect("final chunk fits a full strand")
}

pub fn encode(
    data: &BitStr,
    params: &CodecParams,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<EncodedArchive> {
    encode_with_log(data, params, table, rng).map(|(a, _)| a)
}

/// Splits `data` into per-strand chunks and encodes each independently.
///
/// Full chunks carry `params.chunk_bits()` bits; the final chunk uses the
/// fewest mapping units that hold the remaining bits. With `params.reflow`,
/// a full chunk that exhausts its iterations is retried one unit shorter and
/// a final chunk one unit longer; otherwise exhaustion is an error.
pub fn encode_with_log(
    data: &BitStr,
    params: &CodecParams,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<(EncodedArchive, RunLog)> {
    check_table(params, table)?;
    if data.is_empty() {
        return Err(Error::domain("nothing to encode"));
    }
    let full_units = params.full_units();
    let full_bits = params.chunk_bits();
    let mut log = RunLog {
        max_iterations: params.max_iterations,
        attempts: Vec::new(),
    };
    let mut strands = Vec::with_capacity(data.len() / full_bits + 1);
    let mut pos = 0;
    while pos < data.len() {
        let chunk_index = strands.len();
        let remaining = data.len() - pos;
        let is_final = remaining <= full_bits;
        let mut units = if is_final {
            smallest_units_for(remaining, params)
        } else {
            full_units
        };
        loop {
            let take = remaining.min(params.unit_capacity(units));
            let outcome = encode_chunk(&data[pos..pos + take], units, params, table, rng)?;
            log.attempts.push(StrandAttempt {
                chunk: chunk_index,
                payload_nt: units * params.unit_nt(),
                passed_at: outcome.strand.as_ref().map(|_| outcome.r + 1),
            });
            if let Some(strand) = outcome.strand {
                strands.push(strand);
                pos += take;
                break;
            }
            let exhausted = if is_final {
                units == full_units
            } else {
                units == 1
            };
            if !params.reflow || exhausted {
                return Err(Error::EncodingFailure {
                    chunk: chunk_index,
                    iterations: params.max_iterations,
                });
            }
            if is_final {
                units += 1;
            } else {
                units -= 1;
            }
        }
    }

    let c = params.constraints();
    let header = ArchiveHeader {
        method: params.method,
        m: params.m(),
        alpha: params.alpha(),
        n: params.n,
        max_iterations: params.max_iterations,
        gc_scope: c.gc_scope(),
        forbidden: c.forbidden().to_vec(),
        source_symbol_bits: None,
        original_bit_length: data.len() as u64,
        payload_bit_length: data.len() as u64,
        codebook: None,
        digest: Some(payload_digest(data)),
    };
    Ok((EncodedArchive { header, strands }, log))
}

/// Recovers the payload bit string without checking the digest.
pub fn decode_payload(
    archive: &EncodedArchive,
    table: &MappingTable,
    rng: &Randomizer,
) -> Result<Bits> {
    let params = archive.header.params()?;
    check_table(&params, table)?;
    let total = usize::try_from(archive.header.payload_bit_length)
        .map_err(|_| Error::corruption("payload length overflows"))?;
    let unit_nt = params.unit_nt();
    let mut out = Bits::with_capacity(total);
    let count = archive.strands.len();
    if count == 0 {
        return Err(Error::corruption("archive has no strands"));
    }
    for (i, strand) in archive.strands.iter().enumerate() {
        decode_strand(
            strand,
            i,
            i + 1 == count,
            total,
            unit_nt,
            &params,
            table,
            rng,
            &mut out,
        )
        .map_err(|e| e.with_strand(i))?;
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn decode_strand(
    strand: &DnaSequence,
    index: usize,
    is_last: bool,
    total: usize,
    unit_nt: usize,
    params: &CodecParams,
    table: &MappingTable,
    rng: &Randomizer,
    out: &mut Bits,
) -> Result<()> {
    let bases = strand.bases();
    let payload = bases.get(1..).unwrap_or_default();
    if payload.is_empty() || payload.len() % unit_nt != 0 || payload.len() > params.n {
        return Err(Error::corruption(format!(
            "payload length {} nt is invalid",
            payload.len()
        )));
    }
    let r = bases[0].index();
    if r >= params.max_iterations {
        return Err(Error::corruption(format!(
            "iteration prefix {} exceeds {} iterations",
            bases[0], params.max_iterations
        )));
    }
    let units = payload.len() / unit_nt;
    let capacity = params.unit_capacity(units);
    let left = total - out.len();
    let take = if is_last {
        if left == 0 || left > capacity {
            return Err(Error::corruption(format!(
                "final strand holds {capacity} bits but {left} remain"
            )));
        }
        left
    } else {
        if capacity >= left {
            return Err(Error::corruption(format!(
                "strand {index} completes the payload but more strands follow"
            )));
        }
        capacity
    };
    let mut bits = match params.method {
        Method::Block11 => unmap_blocks(payload, table)?,
        Method::WholeStream => unmap_digits(payload, table, capacity)?,
    };
    rng.apply(&mut bits, u32::from(r));
    out.extend_from_bitslice(&bits[..take]);
    Ok(())
}

/// Decodes the payload and checks it against the header digest.
pub fn decode(archive: &EncodedArchive, table: &MappingTable, rng: &Randomizer) -> Result<Bits> {
    let bits = decode_payload(archive, table, rng)?;
    if let Some(d) = archive.header.digest {
        if payload_digest(&bits) != d {
            return Err(Error::corruption("payload digest mismatch"));
        }
    }
    Ok(bits)
}
