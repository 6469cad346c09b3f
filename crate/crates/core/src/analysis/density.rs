use crate::error::{Error, Result};

/// Channel capacity of the DNA storage channel in bits/nt, as measured
/// externally; used as the denominator of coding efficiency.
pub const CHANNEL_CAPACITY: f64 = 1.9824;

/// Bits per nucleotide of the M-ary mapping with run-length limit `m`:
/// `log2(3 * 4^(m-1)) / m`.
pub fn info_density(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("run-length limit must be at least 1"));
    }
    Ok((3f64.log2() + 2.0 * (m - 1) as f64) / m as f64)
}

pub fn coding_efficiency(m: usize, capacity: f64) -> Result<f64> {
    if capacity.is_nan() || capacity <= 0.0 {
        return Err(Error::domain(format!(
            "capacity {capacity} must be positive"
        )));
    }
    Ok(info_density(m)? / capacity)
}
