use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sequence::Nucleotide;

/// Measured single-base substitution probabilities, in percent, as
/// `(from, to, percent)`.
const MEASURED_PERCENT: [(Nucleotide, Nucleotide, f64); 12] = {
    use Nucleotide::*;
    [
        (G, A, 14.133),
        (G, T, 13.773),
        (C, A, 8.894),
        (C, T, 7.842),
        (T, C, 7.142),
        (A, G, 7.067),
        (T, A, 7.050),
        (A, T, 7.046),
        (T, G, 6.948),
        (G, C, 6.889),
        (A, C, 6.826),
        (C, G, 6.387),
    ]
};

const SUM_TOLERANCE: f64 = 1e-3;

/// Distribution over the twelve ordered base-to-base substitution events.
#[derive(Debug, Clone, PartialEq)]
pub struct SubstitutionMatrix {
    prob: [[f64; 4]; 4],
}

impl SubstitutionMatrix {
    /// Builds a matrix from `(from, to, probability)` triples covering every
    /// off-diagonal pair exactly once.
    pub fn from_entries(entries: &[(Nucleotide, Nucleotide, f64)]) -> Result<Self> {
        let mut prob = [[f64::NAN; 4]; 4];
        for &(from, to, p) in entries {
            if from == to {
                return Err(Error::domain(format!("diagonal entry {from}->{to}")));
            }
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::domain(format!(
                    "probability {p} for {from}->{to} not in (0, 1)"
                )));
            }
            let cell = &mut prob[from.index() as usize][to.index() as usize];
            if !cell.is_nan() {
                return Err(Error::domain(format!("duplicate entry {from}->{to}")));
            }
            *cell = p;
        }
        let mut sum = 0.0;
        for from in Nucleotide::ALL {
            for to in Nucleotide::ALL {
                let p = &mut prob[from.index() as usize][to.index() as usize];
                if from == to {
                    *p = 0.0;
                } else if p.is_nan() {
                    return Err(Error::domain(format!("missing entry {from}->{to}")));
                } else {
                    sum += *p;
                }
            }
        }
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::domain(format!(
                "substitution probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { prob })
    }

    /// The measured matrix shipped with the codec.
    pub fn measured() -> Self {
        let entries: Vec<_> = MEASURED_PERCENT
            .iter()
            .map(|&(f, t, pct)| (f, t, pct / 100.0))
            .collect();
        Self::from_entries(&entries).expect("embedded substitution matrix is valid")
    }

    #[inline]
    pub fn prob(&self, from: Nucleotide, to: Nucleotide) -> f64 {
        self.prob[from.index() as usize][to.index() as usize]
    }

    /// Off-diagonal pairs in descending probability order.
    pub fn pairs(&self) -> Vec<(Nucleotide, Nucleotide, f64)> {
        let mut v: Vec<_> = Nucleotide::ALL
            .iter()
            .flat_map(|&f| Nucleotide::ALL.iter().map(move |&t| (f, t)))
            .filter(|(f, t)| f != t)
            .map(|(f, t)| (f, t, self.prob(f, t)))
            .collect();
        v.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
        v
    }

    /// Parses a delimited `from,to,probability` text, one pair per line.
    /// Blank lines, `#` comments and a `from,to,...` header are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty()
                || line.starts_with('#')
                || line.to_ascii_lowercase().starts_with("from")
            {
                continue;
            }
            let fields: Vec<&str> = line.split([',', '\t']).map(str::trim).collect();
            let err = || Error::Parse(format!("line {}: expected from,to,probability", lineno + 1));
            if fields.len() != 3 {
                return Err(err());
            }
            let base = |s: &str| {
                let mut c = s.chars();
                match (c.next().and_then(Nucleotide::from_char), c.next()) {
                    (Some(n), None) => Ok(n),
                    _ => Err(err()),
                }
            };
            let p: f64 = fields[2].parse().map_err(|_| err())?;
            entries.push((base(fields[0])?, base(fields[1])?, p));
        }
        Self::from_entries(&entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("from,to,probability\n");
        for (f, t, p) in self.pairs() {
            let _ = writeln!(out, "{f},{t},{p}");
        }
        out
    }
}

impl Default for SubstitutionMatrix {
    fn default() -> Self {
        Self::measured()
    }
}
