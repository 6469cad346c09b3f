//! Base conversion of a bit string into a fixed number of M-ary digits.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::bits::{BitStr, Bits};
use crate::error::{Error, Result};
use crate::mapping::MappingTable;
use crate::sequence::{DnaSequence, Nucleotide};

/// Largest `b` with `2^b <= alphabet^symbols`: the number of bits any value of
/// which fits in `symbols` digits.
pub fn capacity_bits(alphabet: usize, symbols: usize) -> usize {
    if symbols == 0 {
        return 0;
    }
    // 2^(bits-1) <= p < 2^bits
    BigUint::from(alphabet).pow(symbols as u32).bits() as usize - 1
}

fn to_biguint(bits: &BitStr) -> BigUint {
    let pad = (8 - bits.len() % 8) % 8;
    let mut aligned = Bits::repeat(false, pad);
    aligned.extend_from_bitslice(bits);
    BigUint::from_bytes_be(aligned.as_raw_slice())
}

pub(crate) fn map_digits(
    bits: &BitStr,
    table: &MappingTable,
    symbols: usize,
    out: &mut Vec<Nucleotide>,
) -> Result<()> {
    let radix = BigUint::from(table.size());
    let mut value = to_biguint(bits);
    let mut digits = vec![0u32; symbols];
    for d in digits.iter_mut().rev() {
        if value.is_zero() {
            break;
        }
        let (q, r) = value.div_rem(&radix);
        *d = r.to_u32().unwrap();
        value = q;
    }
    if !value.is_zero() {
        return Err(Error::Capacity { symbols });
    }
    for d in digits {
        out.extend_from_slice(table.tuple(d as usize));
    }
    Ok(())
}

pub(crate) fn unmap_digits(
    seq: &[Nucleotide],
    table: &MappingTable,
    bit_len: usize,
) -> Result<Bits> {
    if !seq.len().is_multiple_of(table.m()) {
        return Err(Error::corruption(format!(
            "payload of {} nt is not a whole number of {}-nt symbols",
            seq.len(),
            table.m()
        )));
    }
    let radix = table.size() as u32;
    let mut value = BigUint::zero();
    for t in seq.chunks_exact(table.m()) {
        value = value * radix + table.decode_symbol(t)?;
    }
    if value.bits() as usize > bit_len {
        return Err(Error::corruption(format!(
            "decoded value needs {} bits, expected at most {bit_len}",
            value.bits()
        )));
    }
    let bytes = value.to_bytes_be();
    let raw = Bits::from_vec(bytes);
    let mut out = Bits::repeat(false, bit_len);
    let significant = value.bits() as usize;
    if significant > 0 {
        let src = &raw[raw.len() - significant..];
        out[bit_len - significant..].copy_from_bitslice(src);
    }
    Ok(out)
}

/// Interprets `bits` as an unsigned integer and writes it as exactly `symbols`
/// base-M digits, most significant first.
pub fn map_whole_stream(
    bits: &BitStr,
    table: &MappingTable,
    symbols: usize,
) -> Result<DnaSequence> {
    if symbols == 0 {
        return Err(Error::domain("symbol count must be positive"));
    }
    let mut out = Vec::with_capacity(symbols * table.m());
    map_digits(bits, table, symbols, &mut out)?;
    Ok(out.into())
}

/// Inverse of [`map_whole_stream`], returning exactly `bit_len` bits.
pub fn unmap_whole_stream(
    seq: &[Nucleotide],
    table: &MappingTable,
    bit_len: usize,
) -> Result<Bits> {
    unmap_digits(seq, table, bit_len)
}
