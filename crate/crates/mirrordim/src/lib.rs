//! Exact combinatorics of mirror sequences and the geometry they drive.
//!
//! This crate computes, with exact arithmetic wherever a finite answer
//! exists:
//!
//! * block frequencies in Thue–Morse-type mirror sequences, as exact
//!   rationals ([`frequency`]);
//! * the critical bases of unique-expansion theory over `{0, ..., M}` —
//!   the generalized golden ratio, the ladder converging to the
//!   Komornik–Loreti constant, and the critical base of symmetric signed
//!   alphabets ([`bases`]);
//! * quasi-greedy expansions and a complete-when-possible uniqueness test
//!   for eventually periodic expansions over signed alphabets
//!   ([`expansions`]);
//! * Hausdorff dimensions of intersections of two Cantor sets
//!   `Gamma_{q,m1} ∩ (Gamma_{q,m2} + t)`, as exact log-linear values, plus
//!   the classification of the full dimension set and the constructive
//!   self-similar families ([`dimension`]).
//!
//! Counting over long prefixes and the exhaustive period surveys are
//! data-parallel under the default `parallel` feature; disabling it gives
//! a bit-identical sequential build.

pub mod bases;
pub mod dimension;
pub mod error;
pub mod expansions;
pub mod frequency;
pub mod mirror;
pub mod real;
pub mod words;

pub use bases::{
    base_of_word, critical_base, generalized_golden_ratio, komornik_loreti_base, ladder,
    locate_base, omega_word, Base, BaseKind, BaseLocation,
};
pub use dimension::{
    branch_count, dimension_estimate, dimension_of_periodic, dimension_set, is_self_similar,
    mirror_block_dimension, periodic_with_zero_density, self_similar_family, DimensionRegime,
    DimensionSetDescription, DimensionSetOptions, LogLinearValue, SelfSimilarity,
};
pub use error::{Error, Result};
pub use expansions::{
    ep_value, is_unique_expansion, quasi_greedy_prefix, shift_alphabet, UniquenessTester,
    UniquenessVerdict,
};
pub use frequency::{block_density, empirical_block_density, symbol_fractions, DensityResult};
pub use mirror::{kl_signed_prefix, lambda_prefix, thue_morse_prefix, MirrorSeed};
pub use real::{PrecisionReal, Real};
pub use words::{
    count_boundary, count_occurrences, lex_compare_ep, EventuallyPeriodicSeq, Word,
};
