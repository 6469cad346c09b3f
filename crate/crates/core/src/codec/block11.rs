//! 11-bit blocks as two 48-ary digits (six nucleotides).

use crate::bits::{push_u64, to_u64, BitStr, Bits};
use crate::error::{Error, Result};
use crate::mapping::MappingTable;
use crate::sequence::{DnaSequence, Nucleotide};

pub const BLOCK_BITS: usize = 11;
pub const BLOCK_NT: usize = 6;
const BLOCK_LIMIT: u64 = 1 << BLOCK_BITS;

fn check_table(table: &MappingTable) -> Result<()> {
    if table.m() != 3 {
        return Err(Error::domain(format!(
            "11-bit blocks need a 48-ary table, got m = {}",
            table.m()
        )));
    }
    Ok(())
}

/// Appends the six-nucleotide image of an 11-bit value.
pub(crate) fn push_block(out: &mut Vec<Nucleotide>, value: u64, table: &MappingTable) {
    debug_assert!(value < BLOCK_LIMIT);
    out.extend_from_slice(table.tuple((value / 48) as usize));
    out.extend_from_slice(table.tuple((value % 48) as usize));
}

/// Inverse of [`push_block`].
pub(crate) fn read_block(block: &[Nucleotide], table: &MappingTable) -> Result<u64> {
    let hi = u64::from(table.decode_symbol(&block[..3])?);
    let lo = u64::from(table.decode_symbol(&block[3..])?);
    let value = hi * 48 + lo;
    if value >= BLOCK_LIMIT {
        return Err(Error::Range {
            strand: None,
            value,
            limit: BLOCK_LIMIT,
        });
    }
    Ok(value)
}

pub fn map_block11(bits: &BitStr, table: &MappingTable) -> Result<DnaSequence> {
    check_table(table)?;
    if bits.len() != BLOCK_BITS {
        return Err(Error::domain(format!(
            "block of {} bits, expected 11",
            bits.len()
        )));
    }
    let mut out = Vec::with_capacity(BLOCK_NT);
    push_block(&mut out, to_u64(bits), table);
    Ok(out.into())
}

pub fn unmap_block11(seq: &[Nucleotide], table: &MappingTable) -> Result<Bits> {
    check_table(table)?;
    if seq.len() != BLOCK_NT {
        return Err(Error::domain(format!(
            "block of {} nt, expected 6",
            seq.len()
        )));
    }
    let mut out = Bits::with_capacity(BLOCK_BITS);
    push_u64(&mut out, read_block(seq, table)?, BLOCK_BITS);
    Ok(out)
}

/// Maps a whole number of 11-bit blocks.
pub(crate) fn map_blocks(bits: &BitStr, table: &MappingTable, out: &mut Vec<Nucleotide>) {
    debug_assert_eq!(bits.len() % BLOCK_BITS, 0);
    for block in bits.chunks_exact(BLOCK_BITS) {
        push_block(out, to_u64(block), table);
    }
}

pub(crate) fn unmap_blocks(seq: &[Nucleotide], table: &MappingTable) -> Result<Bits> {
    debug_assert_eq!(seq.len() % BLOCK_NT, 0);
    let mut out = Bits::with_capacity(seq.len() / BLOCK_NT * BLOCK_BITS);
    for block in seq.chunks_exact(BLOCK_NT) {
        push_u64(&mut out, read_block(block, table)?, BLOCK_BITS);
    }
    Ok(out)
}
