//! M-ary symbol to nucleotide-tuple mapping.

mod bit_error;
mod gray;
mod greedy;
mod substitution;
mod table;

pub use bit_error::{
    average_bit_error, random_table_average_bit_error, BitErrorReport, PairBitError,
};
pub use gray::{gray_sequence_48, GraySequence, GRAY_48};
pub use greedy::{build_greedy_table, diff_tables, greedy_tuple_chain, TableDifference};
pub use substitution::SubstitutionMatrix;
pub use table::{
    alphabet_size, enumerate_valid_tuples, run_prefix_safety_check, MappingTable, MAX_M,
};
