use sha3::{Digest, Sha3_512};

use crate::bits::{BitStr, Bits};

/// Keystream source for the randomization step: `h(r)` is SHA3-512 of `r`
/// written as eight ASCII decimal digits, repeated to cover the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Randomizer;

impl Randomizer {
    pub const OUTPUT_BITS: usize = 512;

    pub fn sha3_512() -> Self {
        Randomizer
    }

    pub fn name(&self) -> &'static str {
        "SHA3-512"
    }

    pub fn keystream(&self, r: u32) -> [u8; 64] {
        let digest = Sha3_512::digest(format!("{r:08}").as_bytes());
        digest.into()
    }

    /// XORs `bits` with `h(r)` in place.
    pub fn apply(&self, bits: &mut BitStr, r: u32) {
        let key = self.keystream(r);
        for (chunk, k) in bits.chunks_mut(8).zip(key.iter().cycle()) {
            for (i, mut bit) in chunk.iter_mut().enumerate() {
                let kb = (k >> (7 - i)) & 1 == 1;
                *bit ^= kb;
            }
        }
    }

    pub fn randomize(&self, bits: &BitStr, r: u32) -> Bits {
        let mut out = bits.to_bitvec();
        self.apply(&mut out, r);
        out
    }
}
