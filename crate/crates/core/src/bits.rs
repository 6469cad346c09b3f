//! Bit-string helpers. Bits are most-significant-first within each byte.

use bitvec::prelude::*;

pub type Bits = BitVec<u8, Msb0>;
pub type BitStr = BitSlice<u8, Msb0>;

pub fn from_bytes(bytes: &[u8]) -> Bits {
    Bits::from_slice(bytes)
}

/// Packs bits into bytes, zero-filling the tail of the last byte.
pub fn to_bytes(bits: &BitStr) -> Vec<u8> {
    let mut v: Bits = bits.to_bitvec();
    v.set_uninitialized(false);
    v.into_vec()
}

/// Unsigned value of up to 64 bits, most significant first.
pub fn to_u64(bits: &BitStr) -> u64 {
    debug_assert!(bits.len() <= 64);
    bits.iter().fold(0u64, |acc, b| (acc << 1) | u64::from(*b))
}

/// Appends the low `width` bits of `value`, most significant first.
pub fn push_u64(out: &mut Bits, value: u64, width: usize) {
    for i in (0..width).rev() {
        out.push((value >> i) & 1 == 1);
    }
}

pub fn hamming(a: &BitStr, b: &BitStr) -> usize {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).filter(|(x, y)| **x != **y).count()
}
