use crate::error::{Error, Result};

/// 48-symbol Gray ordering: consecutive entries differ in one bit of their
/// 6-bit form.
pub const GRAY_48: [u8; 48] = [
    0, 1, 3, 2, 6, 7, 5, 4, 12, 13, 15, 14, 10, 11, 9, 25, 27, 26, 30, 31, 29, 28, 20, 21, 23, 22,
    18, 19, 17, 16, 24, 8, 40, 42, 43, 41, 45, 47, 46, 44, 36, 37, 39, 38, 34, 35, 33, 32,
];

/// An ordering of the symbols `0..len` in which neighbours differ in one bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraySequence {
    codes: Vec<u32>,
}

impl GraySequence {
    pub fn new(codes: Vec<u32>) -> Result<Self> {
        let n = codes.len();
        let mut seen = vec![false; n];
        for &c in &codes {
            let slot = seen
                .get_mut(c as usize)
                .ok_or_else(|| Error::domain(format!("gray code {c} out of range 0..{n}")))?;
            if *slot {
                return Err(Error::domain(format!("gray code {c} repeated")));
            }
            *slot = true;
        }
        if let Some(w) = codes.windows(2).find(|w| (w[0] ^ w[1]).count_ones() != 1) {
            return Err(Error::domain(format!(
                "gray codes {} and {} differ in more than one bit",
                w[0], w[1]
            )));
        }
        Ok(Self { codes })
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

pub fn gray_sequence_48() -> GraySequence {
    GraySequence::new(GRAY_48.iter().map(|&c| c as u32).collect())
        .expect("embedded Gray order is valid")
}
