//! Greedy ordering of the 48 valid triples by substitution likelihood.
//!
//! Starting from a seed triple, the chain repeatedly moves to the unvisited
//! triple that the current one most likely turns into under a single base
//! substitution. When no unvisited triple is one substitution away, the
//! candidates two substitutions away are scored by the product of the two
//! substitution probabilities. Ties go to the lexicographically smallest
//! triple.

use std::cmp::Ordering;

use super::gray::gray_sequence_48;
use super::substitution::SubstitutionMatrix;
use super::table::{enumerate_valid_tuples, MappingTable};
use crate::error::{Error, Result};
use crate::sequence::{DnaSequence, Nucleotide};

pub fn greedy_tuple_chain(
    subs: &SubstitutionMatrix,
    start: &[Nucleotide],
) -> Result<Vec<Vec<Nucleotide>>> {
    let candidates = enumerate_valid_tuples(3, 2)?;
    if !candidates.iter().any(|t| t == start) {
        return Err(Error::domain(format!(
            "start {} is not a valid triple",
            DnaSequence::from(start)
        )));
    }
    let mut visited = vec![false; candidates.len()];
    let mut chain = Vec::with_capacity(candidates.len());
    let mut current = candidates.iter().position(|t| t == start).unwrap();
    visited[current] = true;
    chain.push(candidates[current].clone());

    while chain.len() < candidates.len() {
        let from = &candidates[current];
        let next = best_neighbour(subs, from, &candidates, &visited, 1)
            .or_else(|| best_neighbour(subs, from, &candidates, &visited, 2))
            .or_else(|| best_neighbour(subs, from, &candidates, &visited, 3))
            .expect("an unvisited triple remains");
        visited[next] = true;
        chain.push(candidates[next].clone());
        current = next;
    }
    Ok(chain)
}

/// Highest-scoring unvisited candidate exactly `distance` substitutions away.
/// Candidates are in lexicographic order, so keeping the first maximum breaks
/// ties toward the smallest triple.
fn best_neighbour(
    subs: &SubstitutionMatrix,
    from: &[Nucleotide],
    candidates: &[Vec<Nucleotide>],
    visited: &[bool],
    distance: usize,
) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (idx, cand) in candidates.iter().enumerate() {
        if visited[idx] {
            continue;
        }
        let diffs: Vec<(Nucleotide, Nucleotide)> = from
            .iter()
            .zip(cand)
            .filter(|(a, b)| a != b)
            .map(|(&a, &b)| (a, b))
            .collect();
        if diffs.len() != distance {
            continue;
        }
        let score: f64 = diffs.iter().map(|&(a, b)| subs.prob(a, b)).product();
        let better = match best {
            None => true,
            Some((_, s)) => score.total_cmp(&s) == Ordering::Greater,
        };
        if better {
            best = Some((idx, score));
        }
    }
    best.map(|(idx, _)| idx)
}

/// Greedy chain from `AAC` with the i-th triple assigned the i-th Gray symbol.
pub fn build_greedy_table(subs: &SubstitutionMatrix) -> Result<MappingTable> {
    let start = [Nucleotide::A, Nucleotide::A, Nucleotide::C];
    let chain = greedy_tuple_chain(subs, &start)?;
    let gray = gray_sequence_48();
    let mut tuples = vec![Vec::new(); 48];
    for (t, &sym) in chain.into_iter().zip(gray.codes()) {
        tuples[sym as usize] = t;
    }
    MappingTable::new(3, tuples)
}

/// One symbol whose triple differs between two tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDifference {
    pub symbol: u32,
    pub expected: DnaSequence,
    pub actual: DnaSequence,
}

pub fn diff_tables(expected: &MappingTable, actual: &MappingTable) -> Vec<TableDifference> {
    expected
        .iter()
        .zip(actual.iter())
        .filter(|((_, a), (_, b))| a != b)
        .map(|((s, a), (_, b))| TableDifference {
            symbol: s,
            expected: DnaSequence::from(a),
            actual: DnaSequence::from(b),
        })
        .collect()
}
