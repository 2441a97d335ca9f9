//! Finite-word primitives: reflection, bumping, overlapping occurrence
//! counting, and eventually periodic sequences with exact lexicographic
//! comparison.
//!
//! Words are immutable values over the alphabet `{0, ..., M}`; the ceiling
//! `M` travels with every word so that reflection is total. Occurrences are
//! always counted with overlap.

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum text length before occurrence counting is split across threads.
#[cfg(feature = "parallel")]
const PAR_COUNT_THRESHOLD: usize = 1 << 16;

/// A finite word over the alphabet `{0, ..., max_digit}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    digits: Vec<u8>,
    max_digit: u8,
}

impl Word {
    /// Builds a word, validating every digit against the ceiling.
    pub fn new(digits: Vec<u8>, max_digit: u8) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d > max_digit) {
            return Err(Error::DigitOutOfRange {
                digit: d as i64,
                max_digit: max_digit as i64,
            });
        }
        Ok(Word { digits, max_digit })
    }

    /// Parses a word from single-character digits, e.g. `"0110"`.
    pub fn parse(s: &str, max_digit: u8) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::InvalidParameter(format!("bad digit character {c:?}")))?;
            digits.push(d as u8);
        }
        Word::new(digits, max_digit)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn max_digit(&self) -> u8 {
        self.max_digit
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digitwise reflection `d -> M - d`. An involution.
    pub fn reflect(&self) -> Word {
        Word {
            digits: self.digits.iter().map(|&d| self.max_digit - d).collect(),
            max_digit: self.max_digit,
        }
    }

    /// Returns the concatenation `self · other` (same ceiling required).
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.max_digit != other.max_digit {
            return Err(Error::InvalidParameter(
                "cannot concatenate words with different ceilings".into(),
            ));
        }
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Ok(Word {
            digits,
            max_digit: self.max_digit,
        })
    }

    /// Adds `+1` or `-1` to the last digit, leaving the rest unchanged.
    pub fn bump(&self, direction: BumpDirection) -> Result<Word> {
        let last = *self.digits.last().ok_or(Error::EmptyWord)?;
        let new_last = match direction {
            BumpDirection::Up => {
                if last >= self.max_digit {
                    return Err(Error::BadBump {
                        reason: format!("last digit {last} is already the ceiling"),
                    });
                }
                last + 1
            }
            BumpDirection::Down => {
                if last == 0 {
                    return Err(Error::BadBump {
                        reason: "last digit is already 0".into(),
                    });
                }
                last - 1
            }
        };
        let mut digits = self.digits.clone();
        *digits.last_mut().unwrap() = new_last;
        Ok(Word {
            digits,
            max_digit: self.max_digit,
        })
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &d in &self.digits {
            if d < 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpDirection {
    Up,
    Down,
}

/// Counts overlapping occurrences of `pattern` in `text`.
///
/// Start positions may overlap: `"11"` occurs twice in `"111"`.
pub fn count_occurrences(pattern: &[u8], text: &[u8]) -> Result<u64> {
    if pattern.is_empty() {
        return Err(Error::EmptyWord);
    }
    if pattern.len() > text.len() {
        return Err(Error::PatternTooLong {
            pattern: pattern.len(),
            text: text.len(),
        });
    }
    Ok(count_dispatch(pattern, text))
}

/// Like [`count_occurrences`] but returns `0` when the pattern does not fit.
pub(crate) fn count_or_zero(pattern: &[u8], text: &[u8]) -> u64 {
    if pattern.is_empty() || pattern.len() > text.len() {
        0
    } else {
        count_dispatch(pattern, text)
    }
}

fn count_dispatch(pattern: &[u8], text: &[u8]) -> u64 {
    #[cfg(feature = "parallel")]
    {
        if text.len() >= PAR_COUNT_THRESHOLD {
            return par_count_occurrences_raw(pattern, text);
        }
    }
    count_occurrences_seq(pattern, text)
}

/// Sequential counting over all valid start positions.
pub fn count_occurrences_seq(pattern: &[u8], text: &[u8]) -> u64 {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len()).filter(|w| *w == pattern).count() as u64
}

/// Data-parallel counting; result is identical to [`count_occurrences_seq`].
///
/// Start positions are chunked and each chunk is counted independently, so
/// the sum does not depend on scheduling.
#[cfg(feature = "parallel")]
pub fn par_count_occurrences(pattern: &[u8], text: &[u8]) -> Result<u64> {
    if pattern.is_empty() {
        return Err(Error::EmptyWord);
    }
    if pattern.len() > text.len() {
        return Err(Error::PatternTooLong {
            pattern: pattern.len(),
            text: text.len(),
        });
    }
    Ok(par_count_occurrences_raw(pattern, text))
}

#[cfg(feature = "parallel")]
fn par_count_occurrences_raw(pattern: &[u8], text: &[u8]) -> u64 {
    let starts = text.len() - pattern.len() + 1;
    let chunk = 1 << 14;
    (0..starts)
        .into_par_iter()
        .step_by(chunk)
        .map(|lo| {
            let hi = (lo + chunk).min(starts);
            // Each window needs pattern.len() digits beyond its start.
            let slice = &text[lo..hi + pattern.len() - 1];
            count_occurrences_seq(pattern, slice)
        })
        .sum()
}

/// Counts occurrences of `pattern` in `left · right` that straddle the
/// junction: first letter inside `left`, last letter inside `right`.
///
/// For `pattern.len() < 2` no window can straddle, so the count is `0`.
pub fn count_boundary(pattern: &[u8], left: &[u8], right: &[u8]) -> Result<u64> {
    if pattern.is_empty() {
        return Err(Error::EmptyWord);
    }
    if pattern.len() < 2 {
        return Ok(0);
    }
    let k = pattern.len() - 1;
    // Only the last k letters of `left` and first k of `right` can take part.
    let ltail = &left[left.len().saturating_sub(k)..];
    let rhead = &right[..k.min(right.len())];
    let mut window = Vec::with_capacity(ltail.len() + rhead.len());
    window.extend_from_slice(ltail);
    window.extend_from_slice(rhead);

    let mut count = 0u64;
    for start in 0..window.len().saturating_sub(k) {
        // Straddles iff it starts in the left part and ends in the right part.
        if start + pattern.len() > ltail.len() && window[start..].starts_with(pattern) {
            count += 1;
        }
    }
    Ok(count)
}

/// An eventually periodic sequence `preperiod · period^∞` over a signed
/// alphabet `{low, ..., high}`.
///
/// Two values represent the same infinite sequence iff their canonical
/// forms (minimal period, then minimal preperiod) are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSeq {
    preperiod: Vec<i32>,
    period: Vec<i32>,
    low: i32,
    high: i32,
}

impl EventuallyPeriodicSeq {
    pub fn new(preperiod: Vec<i32>, period: Vec<i32>, low: i32, high: i32) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameter("period must be nonempty".into()));
        }
        if low > high {
            return Err(Error::InvalidParameter(format!(
                "empty alphabet {low}..={high}"
            )));
        }
        for &d in preperiod.iter().chain(period.iter()) {
            if d < low || d > high {
                return Err(Error::DigitOutOfAlphabet {
                    digit: d as i64,
                    low: low as i64,
                    high: high as i64,
                });
            }
        }
        Ok(EventuallyPeriodicSeq {
            preperiod,
            period,
            low,
            high,
        })
    }

    /// Purely periodic sequence `period^∞`.
    pub fn periodic(period: Vec<i32>, low: i32, high: i32) -> Result<Self> {
        Self::new(Vec::new(), period, low, high)
    }

    /// The constant sequence `digit^∞`.
    pub fn constant(digit: i32, low: i32, high: i32) -> Result<Self> {
        Self::periodic(vec![digit], low, high)
    }

    pub fn preperiod(&self) -> &[i32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[i32] {
        &self.period
    }

    pub fn bounds(&self) -> (i32, i32) {
        (self.low, self.high)
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> i32 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Infinite iterator over the digits.
    pub fn iter(&self) -> impl Iterator<Item = i32> + '_ {
        self.preperiod
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    /// Drops the first `n` digits.
    pub fn tail(&self, n: usize) -> EventuallyPeriodicSeq {
        if n <= self.preperiod.len() {
            EventuallyPeriodicSeq {
                preperiod: self.preperiod[n..].to_vec(),
                period: self.period.clone(),
                low: self.low,
                high: self.high,
            }
        } else {
            let k = (n - self.preperiod.len()) % self.period.len();
            let mut period = self.period[k..].to_vec();
            period.extend_from_slice(&self.period[..k]);
            EventuallyPeriodicSeq {
                preperiod: Vec::new(),
                period,
                low: self.low,
                high: self.high,
            }
        }
    }

    /// Applies `f` to every digit, with new alphabet bounds.
    pub fn map_digits(&self, low: i32, high: i32, f: impl Fn(i32) -> i32) -> Result<Self> {
        EventuallyPeriodicSeq::new(
            self.preperiod.iter().map(|&d| f(d)).collect(),
            self.period.iter().map(|&d| f(d)).collect(),
            low,
            high,
        )
    }

    /// Canonical form: minimal period, then minimal preperiod.
    ///
    /// The period is shrunk to the shortest divisor-length block that
    /// generates it; the preperiod is then shortened while its last digit
    /// agrees with the period's last digit (rotating the period along).
    pub fn canonical(&self) -> EventuallyPeriodicSeq {
        let mut period = self.period.clone();
        // Minimal generating block has divisor length.
        'outer: for d in 1..=period.len() {
            if period.len() % d != 0 {
                continue;
            }
            for i in d..period.len() {
                if period[i] != period[i % d] {
                    continue 'outer;
                }
            }
            period.truncate(d);
            break;
        }
        let mut preperiod = self.preperiod.clone();
        while let Some(&last) = preperiod.last() {
            if last == *period.last().unwrap() {
                preperiod.pop();
                period.rotate_right(1);
            } else {
                break;
            }
        }
        EventuallyPeriodicSeq {
            preperiod,
            period,
            low: self.low,
            high: self.high,
        }
    }

    /// Exact equality of the represented infinite sequences.
    pub fn same_sequence(&self, other: &EventuallyPeriodicSeq) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.preperiod == b.preperiod && a.period == b.period
    }
}

impl std::fmt::Display for EventuallyPeriodicSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |ds: &[i32]| {
            ds.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.preperiod.is_empty() {
            write!(f, "({})^inf", join(&self.period))
        } else {
            write!(f, "{} ({})^inf", join(&self.preperiod), join(&self.period))
        }
    }
}

/// Exact lexicographic comparison of two eventually periodic sequences.
///
/// If the sequences differ, the first difference occurs within
/// `max(preperiods) + lcm(periods)` digits; agreeing on that whole prefix
/// forces equality, so the scan below is a complete decision procedure.
pub fn lex_compare_ep(
    a: &EventuallyPeriodicSeq,
    b: &EventuallyPeriodicSeq,
) -> std::cmp::Ordering {
    let pre = a.preperiod.len().max(b.preperiod.len());
    let lcm = num_integer::lcm(a.period.len(), b.period.len());
    let horizon = pre + lcm;
    for i in 0..horizon {
        match a.digit(i).cmp(&b.digit(i)) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}
