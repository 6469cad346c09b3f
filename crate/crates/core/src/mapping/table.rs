use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sequence::{max_run_length, DnaSequence, Nucleotide};

/// Largest run-length parameter for which tables are materialised.
pub const MAX_M: usize = 10;

const NO_SYMBOL: u32 = u32::MAX;

/// The canonical 48-ary table for m = 3, listed in greedy-chain order with
/// each tuple's symbol.
const CANONICAL_48: [(&str, u8); 48] = [
    ("AAC", 0),
    ("AAT", 1),
    ("GAT", 3),
    ("TAT", 2),
    ("TGT", 6),
    ("CGT", 7),
    ("AGT", 5),
    ("AGC", 4),
    ("ATC", 12),
    ("ATA", 13),
    ("GTA", 15),
    ("GCA", 14),
    ("ACA", 10),
    ("ACG", 11),
    ("ACT", 9),
    ("GCT", 25),
    ("TCT", 27),
    ("CCT", 26),
    ("CCA", 30),
    ("CCG", 31),
    ("CAG", 29),
    ("CAT", 28),
    ("CAC", 20),
    ("TAC", 21),
    ("TGC", 23),
    ("TTC", 22),
    ("TTA", 18),
    ("TCA", 19),
    ("TCG", 17),
    ("TAG", 16),
    ("AAG", 24),
    ("GAG", 8),
    ("GTG", 40),
    ("ATG", 42),
    ("TTG", 43),
    ("CTG", 41),
    ("CTA", 45),
    ("CGA", 47),
    ("AGA", 46),
    ("GGA", 44),
    ("TGA", 36),
    ("CGC", 37),
    ("CTC", 39),
    ("GTC", 38),
    ("GAC", 34),
    ("GGC", 35),
    ("GGT", 33),
    ("GCG", 32),
];

/// Alphabet size `3 * 4^(m-1)` for run-length limit `m`.
pub fn alphabet_size(m: usize) -> usize {
    3 * 4usize.pow(m as u32 - 1)
}

/// All tuples of length `m` whose `i`-th and `(i+1)`-th entries (1-based)
/// differ, in lexicographic order.
pub fn enumerate_valid_tuples(m: usize, i: usize) -> Result<Vec<Vec<Nucleotide>>> {
    if m > MAX_M {
        return Err(Error::domain(format!(
            "m = {m} exceeds supported maximum {MAX_M}"
        )));
    }
    if i == 0 || i >= m {
        return Err(Error::domain(format!(
            "constraint index {i} out of range 1..{m} for m = {m}"
        )));
    }
    let total = 4usize.pow(m as u32);
    let mut out = Vec::with_capacity(alphabet_size(m));
    for code in 0..total {
        let t = index_to_tuple(code, m);
        if t[i - 1] != t[i] {
            out.push(t);
        }
    }
    Ok(out)
}

fn index_to_tuple(mut code: usize, m: usize) -> Vec<Nucleotide> {
    let mut t = vec![Nucleotide::A; m];
    for slot in t.iter_mut().rev() {
        *slot = Nucleotide::from_index((code & 3) as u8).unwrap();
        code >>= 2;
    }
    t
}

#[inline]
fn tuple_index(t: &[Nucleotide]) -> usize {
    t.iter().fold(0, |acc, n| (acc << 2) | n.index() as usize)
}

/// Bijection between symbols `0..M` and nucleotide tuples of length `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    m: usize,
    /// Tuple of symbol `s` at `forward[s*m..(s+1)*m]`.
    forward: Vec<Nucleotide>,
    reverse: Vec<u32>,
}

impl MappingTable {
    /// Builds a table from `tuples[s]` = image of symbol `s`. Every tuple must
    /// have distinct last two entries, so concatenations respect run length `m`.
    pub fn new(m: usize, tuples: Vec<Vec<Nucleotide>>) -> Result<Self> {
        let table = Self::with_any_tuples(m, tuples)?;
        if let Some(s) = (0..table.size()).find(|&s| {
            let t = table.tuple(s);
            t[m - 2] == t[m - 1]
        }) {
            return Err(Error::domain(format!(
                "tuple {} for symbol {s} repeats its last base",
                DnaSequence::from(table.tuple(s))
            )));
        }
        Ok(table)
    }

    /// Like [`MappingTable::new`] but only checks that the tuples form a
    /// bijection of the right size.
    pub fn with_any_tuples(m: usize, tuples: Vec<Vec<Nucleotide>>) -> Result<Self> {
        if !(2..=MAX_M).contains(&m) {
            return Err(Error::domain(format!(
                "m = {m} outside supported range 2..={MAX_M}"
            )));
        }
        let size = alphabet_size(m);
        if tuples.len() != size {
            return Err(Error::domain(format!(
                "table for m = {m} needs {size} tuples, got {}",
                tuples.len()
            )));
        }
        let mut forward = Vec::with_capacity(size * m);
        let mut reverse = vec![NO_SYMBOL; 4usize.pow(m as u32)];
        for (s, t) in tuples.iter().enumerate() {
            if t.len() != m {
                return Err(Error::domain(format!(
                    "tuple for symbol {s} has length {}",
                    t.len()
                )));
            }
            let slot = &mut reverse[tuple_index(t)];
            if *slot != NO_SYMBOL {
                return Err(Error::domain(format!(
                    "tuple {} assigned to symbols {} and {s}",
                    DnaSequence::from(t.as_slice()),
                    *slot
                )));
            }
            *slot = s as u32;
            forward.extend_from_slice(t);
        }
        Ok(Self {
            m,
            forward,
            reverse,
        })
    }

    /// The 48-ary table for m = 3 used by the codec.
    pub fn canonical() -> Self {
        let mut tuples = vec![Vec::new(); 48];
        for (dna, sym) in CANONICAL_48 {
            tuples[sym as usize] = dna
                .chars()
                .map(|c| Nucleotide::from_char(c).unwrap())
                .collect();
        }
        Self::new(3, tuples).expect("canonical table is valid")
    }

    /// Canonical tuples in greedy-chain order.
    pub fn canonical_chain() -> Vec<Vec<Nucleotide>> {
        CANONICAL_48
            .iter()
            .map(|(dna, _)| {
                dna.chars()
                    .map(|c| Nucleotide::from_char(c).unwrap())
                    .collect()
            })
            .collect()
    }

    /// Lexicographic assignment over the valid tuples; used for `m != 3`.
    pub fn identity(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain(format!("no valid tuple set for m = {m}")));
        }
        Self::new(m, enumerate_valid_tuples(m, m - 1)?)
    }

    /// The canonical table for m = 3, the lexicographic one otherwise.
    pub fn for_m(m: usize) -> Result<Self> {
        if m == 3 {
            Ok(Self::canonical())
        } else {
            Self::identity(m)
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of symbols M.
    pub fn size(&self) -> usize {
        self.forward.len() / self.m
    }

    /// Bits needed to write any symbol in binary.
    pub fn symbol_bits(&self) -> u32 {
        usize::BITS - (self.size() - 1).leading_zeros()
    }

    #[inline]
    pub fn tuple(&self, symbol: usize) -> &[Nucleotide] {
        &self.forward[symbol * self.m..(symbol + 1) * self.m]
    }

    pub fn encode_symbol(&self, symbol: u32) -> Result<&[Nucleotide]> {
        let s = symbol as usize;
        if s >= self.size() {
            return Err(Error::domain(format!(
                "symbol {symbol} out of range 0..{}",
                self.size()
            )));
        }
        Ok(self.tuple(s))
    }

    pub fn decode_symbol(&self, tuple: &[Nucleotide]) -> Result<u32> {
        if tuple.len() != self.m {
            return Err(Error::domain(format!(
                "tuple length {} does not match m = {}",
                tuple.len(),
                self.m
            )));
        }
        match self.reverse[tuple_index(tuple)] {
            NO_SYMBOL => Err(Error::InvalidTuple {
                strand: None,
                tuple: DnaSequence::from(tuple).to_string(),
            }),
            s => Ok(s),
        }
    }

    /// Whether `tuple` is an image of some symbol.
    pub fn contains(&self, tuple: &[Nucleotide]) -> bool {
        tuple.len() == self.m && self.reverse[tuple_index(tuple)] != NO_SYMBOL
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[Nucleotide])> + '_ {
        self.forward
            .chunks(self.m)
            .enumerate()
            .map(|(s, t)| (s as u32, t))
    }

    /// Whether every `symbol ‖ symbol` concatenation stays within run length `m`.
    pub fn concatenations_within_run_limit(&self) -> bool {
        let mut buf = Vec::with_capacity(2 * self.m);
        self.iter().all(|(_, u)| {
            self.iter().all(|(_, v)| {
                buf.clear();
                buf.extend_from_slice(u);
                buf.extend_from_slice(v);
                max_run_length(&buf) <= self.m
            })
        })
    }

    /// `symbol,tuple` lines ordered by symbol.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.size() * (self.m + 4));
        for (s, t) in self.iter() {
            let _ = writeln!(out, "{s},{}", DnaSequence::from(t));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<Nucleotide>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            let (sym, dna) = line
                .split_once(',')
                .ok_or_else(|| err("expected symbol,tuple"))?;
            let sym: usize = sym.trim().parse().map_err(|_| err("bad symbol"))?;
            let dna: DnaSequence = dna.trim().parse().map_err(|_| err("bad tuple"))?;
            rows.push((sym, dna.bases().to_vec()));
        }
        let m = rows
            .first()
            .map(|r| r.1.len())
            .ok_or_else(|| Error::Parse("empty table".into()))?;
        let mut tuples = vec![Vec::new(); rows.len()];
        for (sym, t) in rows {
            let slot = tuples
                .get_mut(sym)
                .ok_or_else(|| Error::Parse(format!("symbol {sym} out of range")))?;
            if !slot.is_empty() {
                return Err(Error::Parse(format!("symbol {sym} listed twice")));
            }
            *slot = t;
        }
        Self::new(m, tuples)
    }
}

/// Whether a one-base prefix followed by any table tuple stays within run
/// length `m`.
pub fn run_prefix_safety_check(table: &MappingTable, m: usize) -> bool {
    let mut buf = Vec::with_capacity(table.m() + 1);
    Nucleotide::ALL.iter().all(|&p| {
        table.iter().all(|(_, t)| {
            buf.clear();
            buf.push(p);
            buf.extend_from_slice(t);
            max_run_length(&buf) <= m
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Nucleotide::*;

    fn tuple(s: &str) -> Vec<Nucleotide> {
        s.chars()
            .map(|c| Nucleotide::from_char(c).unwrap())
            .collect()
    }

    #[test]
    fn lemma_example_set() {
        let x2 = enumerate_valid_tuples(3, 2).unwrap();
        assert_eq!(x2.len(), 48);
        assert_eq!(x2[0], vec![A, A, C]);
        assert_eq!(*x2.last().unwrap(), vec![T, T, G]);
        assert!(!x2.contains(&vec![A, A, A]));
        assert!(x2.contains(&tuple("AAC")) && x2.contains(&tuple("TTG")));
    }

    #[test]
    fn pairs_for_m2() {
        let x1 = enumerate_valid_tuples(2, 1).unwrap();
        let brute: Vec<Vec<Nucleotide>> = Nucleotide::ALL
            .iter()
            .flat_map(|&a| Nucleotide::ALL.iter().map(move |&b| vec![a, b]))
            .filter(|t| t[0] != t[1])
            .collect();
        assert_eq!(x1, brute);
        assert_eq!(x1.len(), 12);
    }

    #[test]
    fn cardinality_for_each_m_and_i() {
        for m in 2..=6 {
            for i in 1..m {
                assert_eq!(
                    enumerate_valid_tuples(m, i).unwrap().len(),
                    alphabet_size(m)
                );
            }
        }
    }

    #[test]
    fn invalid_constraint_index() {
        assert!(enumerate_valid_tuples(1, 1).is_err());
        assert!(enumerate_valid_tuples(3, 0).is_err());
        assert!(enumerate_valid_tuples(3, 3).is_err());
        assert!(MappingTable::identity(1).is_err());
    }

    #[test]
    fn canonical_lookups() {
        let t = MappingTable::canonical();
        assert_eq!(t.encode_symbol(0).unwrap(), tuple("AAC").as_slice());
        assert_eq!(t.encode_symbol(47).unwrap(), tuple("CGA").as_slice());
        assert_eq!(t.encode_symbol(42).unwrap(), tuple("ATG").as_slice());
        assert_eq!(t.encode_symbol(5).unwrap(), tuple("AGT").as_slice());
        assert_eq!(t.encode_symbol(31).unwrap(), tuple("CCG").as_slice());
        assert_eq!(t.decode_symbol(&tuple("AAC")).unwrap(), 0);
        assert_eq!(t.decode_symbol(&tuple("GCG")).unwrap(), 32);
        assert!(matches!(
            t.decode_symbol(&tuple("AAA")),
            Err(Error::InvalidTuple { .. })
        ));
        assert!(t.encode_symbol(48).is_err());
        assert_eq!(t.symbol_bits(), 6);
    }

    #[test]
    fn canonical_is_bijective() {
        let t = MappingTable::canonical();
        for s in 0..48 {
            assert_eq!(t.decode_symbol(t.encode_symbol(s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn canonical_base_balance() {
        let t = MappingTable::canonical();
        let mut counts = [0usize; 4];
        for (_, tup) in t.iter() {
            for b in tup {
                counts[b.index() as usize] += 1;
            }
        }
        assert_eq!(counts, [36; 4]);
    }

    #[test]
    fn canonical_concatenations() {
        assert!(MappingTable::canonical().concatenations_within_run_limit());
        for m in [2, 4] {
            assert!(MappingTable::identity(m)
                .unwrap()
                .concatenations_within_run_limit());
        }
    }

    #[test]
    fn prefix_safety() {
        assert!(run_prefix_safety_check(&MappingTable::canonical(), 3));
        assert!(run_prefix_safety_check(
            &MappingTable::identity(2).unwrap(),
            2
        ));

        let mut tuples = MappingTable::canonical_chain();
        tuples[0] = tuple("AAA");
        assert!(MappingTable::new(3, tuples.clone()).is_err());
        let degenerate = MappingTable::with_any_tuples(3, tuples).unwrap();
        assert!(!run_prefix_safety_check(&degenerate, 3));
    }

    #[test]
    fn text_round_trip() {
        let t = MappingTable::canonical();
        let text = t.to_text();
        assert!(text.starts_with("0,AAC\n"));
        assert!(text.lines().any(|l| l == "32,GCG"));
        assert_eq!(MappingTable::parse(&text).unwrap(), t);
        assert!(MappingTable::parse("0,AAC\n0,AAT\n").is_err());
    }
}
