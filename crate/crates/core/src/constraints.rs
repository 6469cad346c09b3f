//! Strand constraints and the verification predicate.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::decimal::{format_ratio, parse_decimal};
use crate::error::{Error, Result};
use crate::sequence::{contains_pattern, gc_count, max_run_length, DnaSequence};

/// Half-width of the GC window `0.5 ± alpha`, held as an exact ratio in `[0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha(Ratio<u64>);

impl Alpha {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::domain("alpha denominator is zero"));
        }
        let r = Ratio::new(numer, denom);
        if r > Ratio::new(1, 2) {
            return Err(Error::domain(format!("alpha {numer}/{denom} exceeds 0.5")));
        }
        Ok(Alpha(r))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.0.numer()), BigInt::from(*self.0.denom()))
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// True when `gc` of `len` bases lies in `[0.5 - alpha, 0.5 + alpha]`.
    pub fn admits(&self, gc: usize, len: usize) -> bool {
        let (a, d) = (*self.0.numer() as u128, *self.0.denom() as u128);
        let (gc, len) = (gc as u128, len as u128);
        // (1/2 - a/d) * len <= gc <= (1/2 + a/d) * len, scaled by 2d
        (d - 2 * a) * len <= 2 * d * gc && 2 * d * gc <= (d + 2 * a) * len
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = parse_decimal(s)?;
        if r < BigRational::zero() {
            return Err(Error::domain(format!("alpha {s} is negative")));
        }
        let (n, d) = (r.numer().to_u64(), r.denom().to_u64());
        match (n, d) {
            (Some(n), Some(d)) => Alpha::new(n, d),
            _ => Err(Error::domain(format!("alpha {s} has too much precision"))),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.to_big()))
    }
}

/// Which part of a strand the GC window applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GcScope {
    /// The payload only, excluding the iteration prefix.
    #[default]
    PayloadOnly,
    FullStrand,
}

impl GcScope {
    pub fn as_str(&self) -> &'static str {
        match self {
            GcScope::PayloadOnly => "payload",
            GcScope::FullStrand => "full",
        }
    }
}

impl FromStr for GcScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "payload" | "payload_only" => Ok(GcScope::PayloadOnly),
            "full" | "full_strand" => Ok(GcScope::FullStrand),
            _ => Err(Error::Parse(format!("unknown GC scope {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintSet {
    max_run: usize,
    alpha: Alpha,
    forbidden: Vec<DnaSequence>,
    gc_scope: GcScope,
}

impl ConstraintSet {
    pub fn new(max_run: usize, alpha: Alpha) -> Result<Self> {
        if max_run == 0 {
            return Err(Error::domain("maximum run length must be at least 1"));
        }
        Ok(Self {
            max_run,
            alpha,
            forbidden: Vec::new(),
            gc_scope: GcScope::default(),
        })
    }

    pub fn with_forbidden(mut self, patterns: Vec<DnaSequence>) -> Result<Self> {
        if patterns.iter().any(|p| p.is_empty()) {
            return Err(Error::domain("forbidden patterns must be non-empty"));
        }
        self.forbidden = patterns;
        Ok(self)
    }

    pub fn with_gc_scope(mut self, scope: GcScope) -> Self {
        self.gc_scope = scope;
        self
    }

    pub fn max_run(&self) -> usize {
        self.max_run
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn forbidden(&self) -> &[DnaSequence] {
        &self.forbidden
    }

    pub fn gc_scope(&self) -> GcScope {
        self.gc_scope
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    RunLength {
        max_run: usize,
        limit: usize,
    },
    GcRatio {
        gc: usize,
        len: usize,
    },
    ForbiddenPattern {
        pattern: DnaSequence,
        position: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RunLength { max_run, limit } => {
                write!(f, "run_length {max_run} exceeds {limit}")
            }
            Violation::GcRatio { gc, len } => {
                write!(f, "gc_ratio {:.4} ({gc}/{len})", *gc as f64 / *len as f64)
            }
            Violation::ForbiddenPattern { pattern, position } => {
                write!(f, "forbidden pattern {pattern} at {position}")
            }
        }
    }
}

/// Outcome of [`verify`]; empty means every constraint held.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a strand against `constraints`. Run length and forbidden patterns
/// are checked over the whole strand; the GC window over the region chosen by
/// the constraint's [`GcScope`]. All violations are reported.
pub fn verify(
    strand: &DnaSequence,
    payload: Range<usize>,
    constraints: &ConstraintSet,
) -> Result<Verdict> {
    let bases = strand.bases();
    if payload.start > payload.end || payload.end > bases.len() {
        return Err(Error::domain(format!(
            "payload range {payload:?} outside strand of length {}",
            bases.len()
        )));
    }
    let region = match constraints.gc_scope {
        GcScope::PayloadOnly => &bases[payload],
        GcScope::FullStrand => bases,
    };
    if region.is_empty() {
        return Err(Error::domain("GC region is empty"));
    }

    let mut violations = Vec::new();
    let run = max_run_length(bases);
    if run > constraints.max_run {
        violations.push(Violation::RunLength {
            max_run: run,
            limit: constraints.max_run,
        });
    }
    let gc = gc_count(region);
    if !constraints.alpha.admits(gc, region.len()) {
        violations.push(Violation::GcRatio {
            gc,
            len: region.len(),
        });
    }
    for pattern in &constraints.forbidden {
        if contains_pattern(bases, pattern.bases())? {
            let position = bases
                .windows(pattern.len())
                .position(|w| w == pattern.bases())
                .unwrap_or_default();
            violations.push(Violation::ForbiddenPattern {
                pattern: pattern.clone(),
                position,
            });
        }
    }
    Ok(Verdict { violations })
}
