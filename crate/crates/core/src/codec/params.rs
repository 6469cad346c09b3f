use std::fmt;
use std::str::FromStr;

use crate::constraints::{Alpha, ConstraintSet};
use crate::error::{Error, Result};
use crate::mapping::alphabet_size;

use super::block11::{BLOCK_BITS, BLOCK_NT};
use super::whole_stream::capacity_bits;

/// Highest iteration count whose attempt index fits in one prefix nucleotide.
pub const MAX_ITERATIONS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    /// Each strand payload is one base-M number.
    WholeStream,
    /// 11-bit blocks, each mapped to two 48-ary symbols.
    #[default]
    Block11,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::WholeStream => "whole_stream",
            Method::Block11 => "block11",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "whole_stream" | "whole-stream" => Ok(Method::WholeStream),
            "block11" => Ok(Method::Block11),
            _ => Err(Error::Parse(format!("unknown mapping method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodecParams {
    pub method: Method,
    /// Payload length of a full strand, in nt, excluding the prefix.
    pub n: usize,
    pub max_iterations: u8,
    /// When a strand exhausts its iterations, retry it one mapping unit
    /// shorter (or, for the final strand, longer) instead of failing.
    pub reflow: bool,
    constraints: ConstraintSet,
}

impl CodecParams {
    pub fn new(
        method: Method,
        constraints: ConstraintSet,
        n: usize,
        max_iterations: u8,
    ) -> Result<Self> {
        let p = Self {
            method,
            n,
            max_iterations,
            reflow: true,
            constraints,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn block11(alpha: Alpha, n: usize) -> Result<Self> {
        Self::new(
            Method::Block11,
            ConstraintSet::new(3, alpha)?,
            n,
            MAX_ITERATIONS,
        )
    }

    pub fn whole_stream(m: usize, alpha: Alpha, n: usize) -> Result<Self> {
        Self::new(
            Method::WholeStream,
            ConstraintSet::new(m, alpha)?,
            n,
            MAX_ITERATIONS,
        )
    }

    pub fn with_reflow(mut self, reflow: bool) -> Self {
        self.reflow = reflow;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m();
        let bad = |msg: String| Err(Error::Params(msg));
        if !(1..=MAX_ITERATIONS).contains(&self.max_iterations) {
            return bad(format!(
                "iteration count {} outside 1..={MAX_ITERATIONS}",
                self.max_iterations
            ));
        }
        if !(2..=crate::mapping::MAX_M).contains(&m) {
            return bad(format!("run-length limit m = {m} unsupported"));
        }
        match self.method {
            Method::Block11 => {
                if m != 3 {
                    return bad(format!("block11 requires m = 3, got {m}"));
                }
                if self.n == 0 || !self.n.is_multiple_of(BLOCK_NT) {
                    return bad(format!("block11 requires n divisible by 6, got {}", self.n));
                }
            }
            Method::WholeStream => {
                if self.n == 0 || !self.n.is_multiple_of(m) {
                    return bad(format!(
                        "whole_stream requires n divisible by m = {m}, got {}",
                        self.n
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.constraints.max_run()
    }

    pub fn alpha(&self) -> Alpha {
        self.constraints.alpha()
    }

    pub fn constraints(&self) -> &ConstraintSet {
        &self.constraints
    }

    /// Nucleotides per mapping unit: a 6-nt block or one m-nt symbol.
    pub fn unit_nt(&self) -> usize {
        match self.method {
            Method::Block11 => BLOCK_NT,
            Method::WholeStream => self.m(),
        }
    }

    pub fn full_units(&self) -> usize {
        self.n / self.unit_nt()
    }

    /// Payload bits carried by a strand of `units` mapping units.
    pub fn unit_capacity(&self, units: usize) -> usize {
        match self.method {
            Method::Block11 => units * BLOCK_BITS,
            Method::WholeStream => capacity_bits(alphabet_size(self.m()), units),
        }
    }

    pub fn chunk_bits(&self) -> usize {
        self.unit_capacity(self.full_units())
    }
}

impl Default for CodecParams {
    fn default() -> Self {
        Self::block11(Alpha::new(1, 20).unwrap(), 198).unwrap()
    }
}
