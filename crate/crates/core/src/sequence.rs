//! Nucleotides and DNA strands.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// One DNA base with its quaternary value A=0, C=1, G=2, T=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Nucleotide {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    #[inline]
    pub fn from_index(v: u8) -> Option<Self> {
        match v {
            0 => Some(Nucleotide::A),
            1 => Some(Nucleotide::C),
            2 => Some(Nucleotide::G),
            3 => Some(Nucleotide::T),
            _ => None,
        }
    }

    #[inline]
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(Nucleotide::A),
            'C' => Some(Nucleotide::C),
            'G' => Some(Nucleotide::G),
            'T' => Some(Nucleotide::T),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    #[inline]
    pub fn is_gc(self) -> bool {
        matches!(self, Nucleotide::C | Nucleotide::G)
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// An ordered strand of nucleotides.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DnaSequence {
    bases: Vec<Nucleotide>,
}

impl DnaSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bases: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Nucleotide] {
        &self.bases
    }

    pub fn push(&mut self, n: Nucleotide) {
        self.bases.push(n);
    }

    pub fn extend_from_slice(&mut self, bases: &[Nucleotide]) {
        self.bases.extend_from_slice(bases);
    }

    pub fn concat(&self, other: &DnaSequence) -> DnaSequence {
        let mut bases = Vec::with_capacity(self.len() + other.len());
        bases.extend_from_slice(&self.bases);
        bases.extend_from_slice(&other.bases);
        DnaSequence { bases }
    }

    pub fn gc_count(&self) -> usize {
        gc_count(&self.bases)
    }

    /// Fraction of G/C bases. Errors on an empty sequence.
    pub fn gc_ratio(&self) -> Result<Ratio<u64>> {
        gc_ratio(&self.bases)
    }

    pub fn max_run_length(&self) -> usize {
        max_run_length(&self.bases)
    }

    pub fn contains_pattern(&self, pattern: &DnaSequence) -> Result<bool> {
        contains_pattern(&self.bases, &pattern.bases)
    }
}

impl From<Vec<Nucleotide>> for DnaSequence {
    fn from(bases: Vec<Nucleotide>) -> Self {
        Self { bases }
    }
}

impl From<&[Nucleotide]> for DnaSequence {
    fn from(bases: &[Nucleotide]) -> Self {
        Self {
            bases: bases.to_vec(),
        }
    }
}

impl FromIterator<Nucleotide> for DnaSequence {
    fn from_iter<I: IntoIterator<Item = Nucleotide>>(iter: I) -> Self {
        Self {
            bases: iter.into_iter().collect(),
        }
    }
}

impl AsRef<[Nucleotide]> for DnaSequence {
    fn as_ref(&self) -> &[Nucleotide] {
        &self.bases
    }
}

impl FromStr for DnaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                Nucleotide::from_char(c).ok_or_else(|| {
                    Error::Parse(format!("invalid nucleotide {c:?} at position {i}"))
                })
            })
            .collect()
    }
}

impl fmt::Display for DnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bases.iter().map(|b| b.to_char()).collect();
        f.write_str(&s)
    }
}

pub fn gc_count(bases: &[Nucleotide]) -> usize {
    bases.iter().filter(|b| b.is_gc()).count()
}

pub fn gc_ratio(bases: &[Nucleotide]) -> Result<Ratio<u64>> {
    if bases.is_empty() {
        return Err(Error::domain("GC ratio of an empty sequence"));
    }
    Ok(Ratio::new(gc_count(bases) as u64, bases.len() as u64))
}

pub fn max_run_length(bases: &[Nucleotide]) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for &b in bases {
        if Some(b) == prev {
            run += 1;
        } else {
            run = 1;
            prev = Some(b);
        }
        best = best.max(run);
    }
    best
}

pub fn contains_pattern(bases: &[Nucleotide], pattern: &[Nucleotide]) -> Result<bool> {
    if pattern.is_empty() {
        return Err(Error::domain("empty search pattern"));
    }
    Ok(bases.windows(pattern.len()).any(|w| w == pattern))
}
