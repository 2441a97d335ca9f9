//! Generation of mirror sequences and the derived signed digit sequences.
//!
//! A mirror sequence extends a seed word by repeatedly appending the
//! reflection of the current prefix; the classical Thue–Morse sequence is
//! the `seed = "0", M = 1` case. Prefixes are materialized eagerly up to a
//! budget; overrunning it is an error, never a silent truncation.

use crate::error::{Error, Result};
use crate::words::Word;

/// Default cap on materialized prefix length (digits).
pub const DEFAULT_PREFIX_BUDGET: u64 = 1 << 26;

/// Seed of a mirror sequence: a nonempty word over `{0, ..., M}` with `M >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorSeed {
    seed: Word,
}

impl MirrorSeed {
    pub fn new(seed: Word) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::EmptyWord);
        }
        if seed.max_digit() == 0 {
            return Err(Error::InvalidParameter(
                "mirror sequences need a ceiling M >= 1".into(),
            ));
        }
        Ok(MirrorSeed { seed })
    }

    /// The classical Thue–Morse seed: `"0"` with `M = 1`.
    pub fn thue_morse() -> Self {
        MirrorSeed {
            seed: Word::new(vec![0], 1).unwrap(),
        }
    }

    pub fn seed(&self) -> &Word {
        &self.seed
    }

    pub fn seed_len(&self) -> usize {
        self.seed.len()
    }

    pub fn max_digit(&self) -> u8 {
        self.seed.max_digit()
    }

    /// First `len` digits of the mirror sequence, built by doubling
    /// `w -> w · reflect(w)` and truncating.
    pub fn prefix(&self, len: u64) -> Result<Word> {
        self.prefix_with_budget(len, DEFAULT_PREFIX_BUDGET)
    }

    pub fn prefix_with_budget(&self, len: u64, budget: u64) -> Result<Word> {
        if len == 0 {
            return Err(Error::InvalidParameter("prefix length must be >= 1".into()));
        }
        if len > budget {
            return Err(Error::BudgetExceeded {
                requested: len,
                budget,
            });
        }
        let len = len as usize;
        let m = self.max_digit();
        let mut digits = self.seed.digits().to_vec();
        while digits.len() < len {
            let current = digits.len();
            digits.reserve(current);
            for i in 0..current {
                digits.push(m - digits[i]);
            }
        }
        digits.truncate(len);
        Word::new(digits, m)
    }
}

/// First `len` digits of the classical Thue–Morse sequence (`tau_0 ..`).
pub fn thue_morse_prefix(len: u64) -> Result<Word> {
    MirrorSeed::thue_morse().prefix(len)
}

/// The centered difference sequence of the Thue–Morse sequence:
/// `center + tau_i - tau_{i-1}` for `i = 1 ..= len`, with digits in
/// `{center-1, center, center+1}`.
pub fn lambda_prefix(center: i32, len: u64) -> Result<Vec<i32>> {
    let tau = thue_morse_prefix(len + 1)?;
    let tau = tau.digits();
    Ok((1..=len as usize)
        .map(|i| center + tau[i] as i32 - tau[i - 1] as i32)
        .collect())
}

/// Digits of the unique expansion of the smallest-uniqueness base for the
/// signed alphabet `{-m2, ..., m1}`: a two-letter Thue–Morse shift when
/// `m1 + m2` is odd, the centered difference sequence when it is even.
/// Indices run `1 ..= len`.
pub fn kl_signed_prefix(m1: u32, m2: u32, len: u64) -> Result<Vec<i32>> {
    if m2 < 1 || m1 < m2 {
        return Err(Error::InvalidParameter(format!(
            "need m1 >= m2 >= 1, got ({m1}, {m2})"
        )));
    }
    let tau = thue_morse_prefix(len + 1)?;
    let tau = tau.digits();
    let sum = m1 + m2;
    if sum % 2 == 1 {
        let base = (m1 as i32 - m2 as i32 - 1) / 2;
        Ok((1..=len as usize).map(|i| base + tau[i] as i32).collect())
    } else {
        let center = (m1 as i32 - m2 as i32) / 2;
        Ok((1..=len as usize)
            .map(|i| center + tau[i] as i32 - tau[i - 1] as i32)
            .collect())
    }
}
