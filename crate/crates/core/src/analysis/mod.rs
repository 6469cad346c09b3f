//! Closed-form density and balance analysis.

mod density;
mod gc;
mod iterations;
mod report;

pub use density::{coding_efficiency, info_density, CHANNEL_CAPACITY};
pub use gc::{
    balance_probability, balance_window, big_to_f64, default_grid_step, gc_count_distribution,
    min_alpha, success_probability, success_probability_exact, symbol_gc_distribution,
    GcCountDistribution, SymbolGcDistribution,
};
pub use iterations::{iteration_histogram, IterationHistogram};
pub use report::Report;
