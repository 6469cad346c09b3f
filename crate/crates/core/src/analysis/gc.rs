//! Exact GC-count distributions of block-mapped payloads and the minimum
//! balance window that meets a failure budget.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::codec::{BLOCK_BITS, BLOCK_NT};
use crate::error::{Error, Result};
use crate::mapping::MappingTable;

/// GC histogram of the 6-nt images of all 2048 block values, together with
/// the histograms of every proper prefix of those images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolGcDistribution {
    /// `counts[l]`: block values whose image holds exactly `l` G/C bases.
    pub counts: [u64; BLOCK_NT + 1],
    /// `prefix_counts[r - 1][l]`: the same count over the first `r` bases only.
    pub prefix_counts: Vec<Vec<u64>>,
    pub total: u64,
}

impl SymbolGcDistribution {
    pub fn p(&self, l: usize) -> Ratio<u64> {
        Ratio::new(self.counts[l], self.total)
    }
}

pub fn symbol_gc_distribution(table: &MappingTable) -> Result<SymbolGcDistribution> {
    if table.m() != 3 {
        return Err(Error::domain("block distribution needs the 48-ary table"));
    }
    let total = 1u64 << BLOCK_BITS;
    let mut counts = [0u64; BLOCK_NT + 1];
    let mut prefix_counts: Vec<Vec<u64>> = (1..BLOCK_NT).map(|r| vec![0; r + 1]).collect();
    for v in 0..total {
        let image: Vec<_> = [v / 48, v % 48]
            .iter()
            .flat_map(|&s| table.tuple(s as usize).iter().copied())
            .collect();
        let mut gc = 0;
        for (i, b) in image.iter().enumerate() {
            if i > 0 {
                prefix_counts[i - 1][gc] += 1;
            }
            gc += usize::from(b.is_gc());
        }
        counts[gc] += 1;
    }
    Ok(SymbolGcDistribution {
        counts,
        prefix_counts,
        total,
    })
}

/// Distribution of the G/C count over an `n`-nt payload of independent
/// blocks, held as integer numerators over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcCountDistribution {
    pub n: usize,
    pub numerators: Vec<BigUint>,
    pub denominator: BigUint,
}

impl GcCountDistribution {
    pub fn a(&self, j: usize) -> BigRational {
        let num = self.numerators.get(j).cloned().unwrap_or_default();
        BigRational::new(num.into(), self.denominator.clone().into())
    }

    /// Exact probability that the count lies in `lo..=hi`.
    pub fn mass(&self, lo: usize, hi: usize) -> BigRational {
        let hi = hi.min(self.n);
        let num: BigUint = if lo > hi {
            BigUint::zero()
        } else {
            self.numerators[lo..=hi].iter().sum()
        };
        BigRational::new(num.into(), self.denominator.clone().into())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..=self.n).map(|j| big_to_f64(&self.a(j))).collect()
    }
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn convolve(a: &[BigUint], b: &[u64]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `(p_0 + p_1 x + ... + p_6 x^6)^(n / 6)`. When `n` is not
/// a multiple of 6 the remaining `n mod 6` bases are modelled by the GC
/// distribution of the first `n mod 6` bases of a block image.
pub fn gc_count_distribution(p: &SymbolGcDistribution, n: usize) -> Result<GcCountDistribution> {
    if n == 0 {
        return Err(Error::domain("payload length must be positive"));
    }
    let mut acc = vec![BigUint::one()];
    for _ in 0..n / BLOCK_NT {
        acc = convolve(&acc, &p.counts);
    }
    let rest = n % BLOCK_NT;
    let blocks = n / BLOCK_NT + usize::from(rest > 0);
    if rest > 0 {
        acc = convolve(&acc, &p.prefix_counts[rest - 1]);
    }
    debug_assert_eq!(acc.len(), n + 1);
    Ok(GcCountDistribution {
        n,
        numerators: acc,
        denominator: BigUint::from(p.total).pow(blocks as u32),
    })
}

fn check_alpha(alpha: &BigRational) -> Result<()> {
    let half = BigRational::new(1.into(), 2.into());
    if alpha < &BigRational::zero() || alpha > &half {
        return Err(Error::domain(format!("alpha {alpha} outside [0, 1/2]")));
    }
    Ok(())
}

/// Integer G/C counts admitted by `[(1/2 - alpha) n, (1/2 + alpha) n]`.
pub fn balance_window(alpha: &BigRational, n: usize) -> Result<(usize, usize)> {
    check_alpha(alpha)?;
    let half = BigRational::new(1.into(), 2.into());
    let n_big = BigRational::from_integer(n.into());
    let lo = ((&half - alpha) * &n_big).ceil().to_integer();
    let hi = ((&half + alpha) * &n_big).floor().to_integer();
    let conv = |x: BigInt| usize::try_from(x).expect("window lies within 0..=n");
    Ok((conv(lo), conv(hi)))
}

/// Probability that the G/C ratio of the payload lies within 1/2 ± alpha.
pub fn balance_probability(a: &GcCountDistribution, alpha: &BigRational) -> Result<BigRational> {
    let (lo, hi) = balance_window(alpha, a.n)?;
    Ok(a.mass(lo, hi))
}

/// Probability that at least one of `iterations` independent attempts is
/// balanced.
pub fn success_probability(p_bal: f64, iterations: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_bal) {
        return Err(Error::domain(format!("probability {p_bal} outside [0, 1]")));
    }
    if iterations == 0 {
        return Err(Error::domain("iteration count must be positive"));
    }
    Ok(1.0 - (1.0 - p_bal).powi(iterations as i32))
}

/// Exact form of [`success_probability`].
pub fn success_probability_exact(p_bal: &BigRational, iterations: u32) -> BigRational {
    BigRational::one() - num_traits::pow(BigRational::one() - p_bal, iterations as usize)
}

pub fn default_grid_step() -> BigRational {
    BigRational::new(1.into(), 1000.into())
}

/// Smallest `alpha = k * step` for which all `iterations` attempts fail with
/// probability at most `epsilon`, i.e. `(1 - p(alpha, n))^I <= epsilon`.
pub fn min_alpha(
    p: &SymbolGcDistribution,
    n: usize,
    iterations: u32,
    epsilon: &BigRational,
    step: &BigRational,
) -> Result<BigRational> {
    if epsilon <= &BigRational::zero() || epsilon >= &BigRational::one() {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0, 1)")));
    }
    if step <= &BigRational::zero() {
        return Err(Error::domain("grid step must be positive"));
    }
    if iterations == 0 {
        return Err(Error::domain("iteration count must be positive"));
    }
    let a = gc_count_distribution(p, n)?;
    let half = BigRational::new(1.into(), 2.into());
    let max_k = (&half / step).floor().to_integer();
    let meets = |k: &BigInt| -> Result<bool> {
        let alpha = step * BigRational::from_integer(k.clone());
        let fail = BigRational::one() - balance_probability(&a, &alpha)?;
        Ok(num_traits::pow(fail, iterations as usize) <= *epsilon)
    };
    if !meets(&max_k)? {
        return Err(Error::domain(format!(
            "no alpha up to 1/2 meets epsilon {epsilon} for n = {n}, I = {iterations}"
        )));
    }
    // the balance probability is non-decreasing in alpha
    let (mut lo, mut hi) = (BigInt::zero(), max_k);
    if meets(&lo)? {
        return Ok(BigRational::zero());
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        if meets(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(step * BigRational::from_integer(hi))
}
