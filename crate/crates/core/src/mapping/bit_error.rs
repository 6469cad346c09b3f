//! Expected bit damage from a single-base substitution.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::substitution::SubstitutionMatrix;
use super::table::MappingTable;
use crate::sequence::Nucleotide;

#[derive(Debug, Clone, PartialEq)]
pub struct PairBitError {
    pub from: Nucleotide,
    pub to: Nucleotide,
    pub probability: f64,
    /// Substitutions of this pair that land on another table tuple.
    pub events: u64,
    pub total_bits: u64,
}

impl PairBitError {
    /// Mean bit error over this pair's events, `None` if it has none.
    pub fn mean(&self) -> Option<Ratio<u64>> {
        (self.events > 0).then(|| Ratio::new(self.total_bits, self.events))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BitErrorReport {
    /// Pairs in descending substitution probability.
    pub per_pair: Vec<PairBitError>,
    pub overall: f64,
}

impl BitErrorReport {
    pub fn pair(&self, from: Nucleotide, to: Nucleotide) -> Option<&PairBitError> {
        self.per_pair.iter().find(|p| p.from == from && p.to == to)
    }
}

/// Enumerates every (tuple, position, substitution) that turns a table tuple
/// into another table tuple, scoring it by the Hamming distance between the
/// two symbols. The overall figure weights each pair's mean by its
/// probability, renormalised over pairs that have at least one event.
pub fn average_bit_error(table: &MappingTable, subs: &SubstitutionMatrix) -> BitErrorReport {
    let mut per_pair: Vec<PairBitError> = subs
        .pairs()
        .into_iter()
        .map(|(from, to, probability)| PairBitError {
            from,
            to,
            probability,
            events: 0,
            total_bits: 0,
        })
        .collect();
    let slot = |from: Nucleotide, to: Nucleotide| {
        per_pair
            .iter()
            .position(|p| p.from == from && p.to == to)
            .unwrap()
    };
    let slots: Vec<Vec<usize>> = Nucleotide::ALL
        .iter()
        .map(|&f| {
            Nucleotide::ALL
                .iter()
                .map(|&t| if f == t { usize::MAX } else { slot(f, t) })
                .collect()
        })
        .collect();

    let mut scratch = vec![Nucleotide::A; table.m()];
    for (sym, tuple) in table.iter() {
        for pos in 0..tuple.len() {
            let from = tuple[pos];
            for to in Nucleotide::ALL {
                if to == from {
                    continue;
                }
                scratch.copy_from_slice(tuple);
                scratch[pos] = to;
                if let Ok(other) = table.decode_symbol(&scratch) {
                    let p = &mut per_pair[slots[from.index() as usize][to.index() as usize]];
                    p.events += 1;
                    p.total_bits += u64::from((sym ^ other).count_ones());
                }
            }
        }
    }

    let (weighted, weight) = per_pair
        .iter()
        .filter_map(|p| p.mean().map(|m| (p.probability, m.to_f64().unwrap())))
        .fold((0.0, 0.0), |(acc, w), (p, m)| (acc + p * m, w + p));
    let overall = if weight > 0.0 { weighted / weight } else { 0.0 };
    BitErrorReport { per_pair, overall }
}

/// Mean Hamming distance between two distinct symbols drawn uniformly from
/// `0..alphabet`, i.e. the expected damage under an unstructured table.
pub fn random_table_average_bit_error(alphabet: u32) -> Ratio<u64> {
    assert!(alphabet >= 2, "need at least two symbols");
    let mut total = 0u64;
    for a in 0..alphabet {
        for b in 0..alphabet {
            if a != b {
                total += u64::from((a ^ b).count_ones());
            }
        }
    }
    let pairs = u64::from(alphabet) * u64::from(alphabet - 1);
    Ratio::new(total, pairs)
}
