//! Exact block densities in mirror sequences.
//!
//! The density of a finite block in a mirror sequence is an exact rational
//! `(P - N) / (6 * 4^n * l)`, where `N` and `P` count occurrences of the
//! block and its reflection in two nested prefixes. No floating point is
//! used anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mirror::MirrorSeed;
use crate::words::{count_or_zero, Word};

/// Exact density of a block, together with the counts that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityResult {
    pub value: BigRational,
    /// The doubling level the formula was evaluated at.
    pub n_used: u32,
    /// Occurrences of the block and its reflection in the level-`n` prefix.
    pub n_count: u64,
    /// Occurrences of the block and its reflection in the level-`n+1` prefix.
    pub p_count: u64,
}

/// Density of `block` in the mirror sequence of `seed`, evaluated at the
/// minimal level `n` with `4^n * l >= |block| - 1`.
pub fn block_density(block: &Word, seed: &MirrorSeed) -> Result<DensityResult> {
    block_density_at(block, seed, minimal_level(block, seed))
}

/// The smallest admissible doubling level for this block.
pub fn minimal_level(block: &Word, seed: &MirrorSeed) -> u32 {
    let need = block.len().saturating_sub(1) as u64;
    let l = seed.seed_len() as u64;
    let mut n = 0u32;
    while (l << (2 * n)) < need {
        n += 1;
    }
    n
}

/// Density evaluated at an explicit level `n`; the result is the same for
/// every admissible `n`.
pub fn block_density_at(block: &Word, seed: &MirrorSeed, n: u32) -> Result<DensityResult> {
    if block.is_empty() {
        return Err(Error::EmptyWord);
    }
    if block.max_digit() != seed.max_digit() {
        return Err(Error::InvalidParameter(
            "block and seed must share the same ceiling".into(),
        ));
    }
    if n < minimal_level(block, seed) {
        return Err(Error::InvalidParameter(format!(
            "level {n} is below the minimal admissible level"
        )));
    }
    let l = seed.seed_len() as u64;
    let small_len = l
        .checked_shl(2 * n)
        .ok_or(Error::BudgetExceeded {
            requested: u64::MAX,
            budget: crate::mirror::DEFAULT_PREFIX_BUDGET,
        })?;
    let big_len = small_len * 4;
    let big = seed.prefix(big_len)?;
    let small = &big.digits()[..small_len as usize];

    let refl = block.reflect();
    let n_count =
        count_or_zero(block.digits(), small) + count_or_zero(refl.digits(), small);
    let p_count =
        count_or_zero(block.digits(), big.digits()) + count_or_zero(refl.digits(), big.digits());

    let denom = BigInt::from(6u64) * BigInt::from(small_len);
    let value = BigRational::new(
        BigInt::from(p_count) - BigInt::from(n_count),
        denom,
    );
    debug_assert!(value >= BigRational::zero() && value <= BigRational::one());
    Ok(DensityResult {
        value,
        n_used: n,
        n_count,
        p_count,
    })
}

/// Finite-prefix occurrence frequency: `count(block, prefix of len) / len`.
pub fn empirical_block_density(block: &Word, seed: &MirrorSeed, len: u64) -> Result<BigRational> {
    if block.is_empty() {
        return Err(Error::EmptyWord);
    }
    if len < block.len() as u64 {
        return Err(Error::PatternTooLong {
            pattern: block.len(),
            text: len as usize,
        });
    }
    let prefix = seed.prefix(len)?;
    let count = count_or_zero(block.digits(), prefix.digits());
    Ok(BigRational::new(BigInt::from(count), BigInt::from(len)))
}

/// Density of the digit `value` in the difference sequence
/// `(tau_i - tau_{i-1})` of a mirror sequence, obtained by summing the
/// densities of the length-2 blocks `(a, b)` with `b - a = value`.
pub fn difference_digit_density(value: i32, seed: &MirrorSeed) -> Result<BigRational> {
    let m = seed.max_digit() as i32;
    if value.abs() > m {
        return Err(Error::DigitOutOfAlphabet {
            digit: value as i64,
            low: -(m as i64),
            high: m as i64,
        });
    }
    let mut total = BigRational::zero();
    for a in 0..=seed.max_digit() {
        let b = a as i32 + value;
        if (0..=m).contains(&b) {
            let block = Word::new(vec![a, b as u8], seed.max_digit())?;
            total += block_density(&block, seed)?.value;
        }
    }
    Ok(total)
}

/// Fractions of the three letters `center-1`, `center`, `center+1` in a
/// signed digit string.
pub fn symbol_fractions(
    digits: &[i32],
    center: i32,
) -> Result<(BigRational, BigRational, BigRational)> {
    if digits.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut counts = [0u64; 3];
    for &d in digits {
        let off = d - center;
        if !(-1..=1).contains(&off) {
            return Err(Error::DigitOutOfAlphabet {
                digit: d as i64,
                low: (center - 1) as i64,
                high: (center + 1) as i64,
            });
        }
        counts[(off + 1) as usize] += 1;
    }
    let n = BigInt::from(digits.len());
    let frac = |c: u64| BigRational::new(BigInt::from(c), n.clone());
    Ok((frac(counts[0]), frac(counts[1]), frac(counts[2])))
}
