use crate::codec::RunLog;

/// Strands that first passed at each iteration, plus strands whose attempts
/// were all exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationHistogram {
    pub counts: Vec<u64>,
    pub exhausted: u64,
}

impl IterationHistogram {
    pub fn attempts(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.exhausted
    }

    /// Fraction of strand attempts that passed within the iteration budget;
    /// 1 for an empty log.
    pub fn success_rate(&self) -> f64 {
        match self.attempts() {
            0 => 1.0,
            total => (total - self.exhausted) as f64 / total as f64,
        }
    }

    pub fn first_iteration_rate(&self) -> f64 {
        match self.attempts() {
            0 => 0.0,
            total => self.counts.first().copied().unwrap_or(0) as f64 / total as f64,
        }
    }
}

pub fn iteration_histogram(log: &RunLog) -> IterationHistogram {
    let mut h = IterationHistogram {
        counts: vec![0; log.max_iterations as usize],
        exhausted: 0,
    };
    for a in &log.attempts {
        match a.passed_at {
            Some(i) => h.counts[i as usize - 1] += 1,
            None => h.exhausted += 1,
        }
    }
    h
}
