//! Critical bases for unique expansions over `{0, ..., M}`: the generalized
//! golden ratio, the ladder of algebraic bases below the Komornik–Loreti
//! constant, the Komornik–Loreti constant itself, and the critical base
//! separating interval-rich from gapped dimension sets.
//!
//! Closed forms are kept exact (rational or quadratic). Everything else is
//! bisection over exact rationals, so every bracket is certified: the sign
//! tests clear denominators and compare big integers, never floats.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mirror::thue_morse_prefix;
use crate::real::{parse_rational, Interval, PrecisionReal, Real};
use crate::words::{BumpDirection, Word};

/// Default output tolerance (radius bound) for bisected bases.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Ladder depth bound used by [`locate_base`].
pub const LADDER_BUDGET: u32 = 24;

/// A base `q > 1`, represented exactly when a closed form exists and by a
/// certified bracket otherwise. The optional kind records by-construction
/// identity (e.g. "this *is* the Komornik–Loreti base"), which is the only
/// way equality with a transcendental base can be asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct Base {
    repr: BaseRepr,
    kind: Option<BaseKind>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseRepr {
    Exact(Real),
    Bracket(Interval),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    /// `q_1` for the given ceiling.
    Golden { max_digit: u8 },
    /// `q_k` for the given ceiling.
    Ladder { max_digit: u8, k: u32 },
    /// `q_KL` for the given ceiling.
    KomornikLoreti { max_digit: u8 },
    /// `q_c` for the symmetric alphabet with half-width `m`.
    Critical { m: u32 },
}

impl Base {
    pub fn from_real(r: Real) -> Base {
        Base {
            repr: BaseRepr::Exact(r),
            kind: None,
        }
    }

    pub fn from_rational(r: BigRational) -> Base {
        Base::from_real(Real::Rat(r))
    }

    /// Parses `"2.5"`, `"5/2"`, etc. as an exact base.
    pub fn parse(s: &str) -> Result<Base> {
        Ok(Base::from_rational(parse_rational(s)?))
    }

    pub fn from_f64(q: f64) -> Result<Base> {
        Ok(Base::from_real(Real::from_f64(q)?))
    }

    /// Wraps a certified enclosure as a base.
    pub fn from_interval(iv: Interval) -> Result<Base> {
        if iv.lo > iv.hi {
            return Err(Error::InvalidParameter("empty interval".into()));
        }
        Ok(Base::bracket(iv, None))
    }

    fn bracket(iv: Interval, kind: Option<BaseKind>) -> Base {
        Base {
            repr: BaseRepr::Bracket(iv),
            kind,
        }
    }

    pub fn repr(&self) -> &BaseRepr {
        &self.repr
    }

    pub fn kind(&self) -> Option<BaseKind> {
        self.kind
    }

    pub fn exact(&self) -> Option<&Real> {
        match &self.repr {
            BaseRepr::Exact(r) => Some(r),
            BaseRepr::Bracket(_) => None,
        }
    }

    pub fn enclosure(&self, bits: u32) -> Interval {
        match &self.repr {
            BaseRepr::Exact(r) => r.enclosure(bits),
            BaseRepr::Bracket(iv) => iv.clone(),
        }
    }

    pub fn to_precision(&self) -> PrecisionReal {
        self.enclosure(80).to_precision()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_precision().value
    }

    /// Exact comparison against a rational; `None` when the bracket straddles it.
    pub fn try_cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        match &self.repr {
            BaseRepr::Exact(x) => Some(x.cmp_rational(r)),
            BaseRepr::Bracket(iv) => {
                if &iv.hi < r {
                    Some(Ordering::Less)
                } else if &iv.lo > r {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
        }
    }

    pub fn try_cmp_int(&self, n: i64) -> Option<Ordering> {
        self.try_cmp_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Comparison with certified margins; `None` when enclosures overlap
    /// and at least one side is inexact.
    pub fn try_cmp(&self, other: &Base) -> Option<Ordering> {
        if let (BaseRepr::Exact(a), BaseRepr::Exact(b)) = (&self.repr, &other.repr) {
            return Some(a.cmp_exact(b));
        }
        let a = self.enclosure(96);
        let b = other.enclosure(96);
        if a.is_below(&b) {
            Some(Ordering::Less)
        } else if b.is_below(&a) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Base {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            BaseRepr::Exact(r) => write!(f, "{r}"),
            BaseRepr::Bracket(_) => write!(f, "{}", self.to_precision()),
        }
    }
}

/// The smallest base in which 1 has a unique doubly infinite expansion over
/// `{0, ..., M}`: `(m + sqrt(m^2 + 4m)) / 2` for `M = 2m - 1`, and `m + 1`
/// for `M = 2m`.
pub fn generalized_golden_ratio(max_digit: u8) -> Result<Base> {
    if max_digit == 0 {
        return Err(Error::InvalidParameter("ceiling must be >= 1".into()));
    }
    let m = (max_digit as u64 + 1) / 2;
    let real = if max_digit % 2 == 1 {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Real::quadratic(
            half.clone() * BigRational::from_integer(BigInt::from(m)),
            half,
            m * m + 4 * m,
        )
    } else {
        Real::from_int(m as i64 + 1)
    };
    Ok(Base {
        repr: BaseRepr::Exact(real),
        kind: Some(BaseKind::Golden { max_digit }),
    })
}

/// The critical base `q_c = (m + 2 + sqrt(m(m+4))) / 2` for the alphabet
/// `{0, ..., 2m}`; the positive root of `q^2 - (m+2)q + 1 = 0`.
pub fn critical_base(m: u32) -> Result<Base> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let real = Real::quadratic(
        half.clone() * BigRational::from_integer(BigInt::from(m as u64 + 2)),
        half,
        m as u64 * (m as u64 + 4),
    );
    Ok(Base {
        repr: BaseRepr::Exact(real),
        kind: Some(BaseKind::Critical { m }),
    })
}

/// The `k`-th ladder word over `{0, ..., M}`.
///
/// `k = 0` is the seed word: `[m]` for `M = 2m - 1` and `[m + 1]` for
/// `M = 2m` (the even-ceiling seed is not pinned down by the usual
/// recursion; this is the minimal choice whose decrement gives the
/// period block `[m]`). For `k >= 1` the words follow
/// `w_1` = `"mm"` (odd) / `"m+1"` (even), `w_{k+1} = (w_k \bar{w_k})^+`.
pub fn omega_word(max_digit: u8, k: u32) -> Result<Word> {
    if max_digit == 0 {
        return Err(Error::InvalidParameter("ceiling must be >= 1".into()));
    }
    let m = ((max_digit as u64 + 1) / 2) as u8;
    if k == 0 {
        let seed = if max_digit % 2 == 1 { m } else { m + 1 };
        return Word::new(vec![seed], max_digit);
    }
    let mut w = if max_digit % 2 == 1 {
        Word::new(vec![m, m], max_digit)?
    } else {
        Word::new(vec![m + 1], max_digit)?
    };
    for _ in 1..k {
        w = w.concat(&w.reflect())?.bump(BumpDirection::Up)?;
    }
    Ok(w)
}

/// Compares `sum_i digits[i] * q^-(i+1)` with 1 at the rational
/// `q = num/den`, exactly, by clearing denominators.
fn cmp_power_sum_one(digits: &[u8], num: &BigInt, den: &BigInt) -> Ordering {
    let n = digits.len();
    let mut upow = Vec::with_capacity(n + 1);
    upow.push(BigInt::one());
    for i in 1..=n {
        upow.push(&upow[i - 1] * num);
    }
    let mut sum = BigInt::zero();
    let mut vpow = BigInt::one();
    for (i, &d) in digits.iter().enumerate() {
        vpow *= den;
        if d != 0 {
            sum += BigInt::from(d) * &vpow * &upow[n - i - 1];
        }
    }
    sum.cmp(&upow[n])
}

/// Like [`cmp_power_sum_one`], but also compares the sum plus the geometric
/// tail bound `M * q^-n / (q - 1)` with 1. Returns `(plain, with_tail)`.
fn cmp_power_sum_one_with_tail(
    digits: &[u8],
    num: &BigInt,
    den: &BigInt,
    max_digit: u8,
) -> (Ordering, Ordering) {
    let n = digits.len();
    let mut upow = Vec::with_capacity(n + 1);
    upow.push(BigInt::one());
    for i in 1..=n {
        upow.push(&upow[i - 1] * num);
    }
    let mut sum = BigInt::zero();
    let mut vpow = BigInt::one();
    for (i, &d) in digits.iter().enumerate() {
        vpow *= den;
        if d != 0 {
            sum += BigInt::from(d) * &vpow * &upow[n - i - 1];
        }
    }
    let plain = sum.cmp(&upow[n]);
    // tail = M v^{n+1} / (u^n (u - v)); compare A(u-v) + M v^{n+1} with u^n (u-v)
    let excess = num - den;
    debug_assert!(excess.is_positive());
    let lhs = &sum * &excess + BigInt::from(max_digit) * &vpow * den;
    let rhs = &upow[n] * &excess;
    (plain, lhs.cmp(&rhs))
}

fn tolerance_to_rational(tol: f64) -> Result<BigRational> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("bad tolerance {tol}")));
    }
    BigRational::from_float(tol).ok_or(Error::ToleranceUnattainable(tol))
}

/// The unique `q` in `(1, M+1]` with `sum_i w_i q^-(i+1) = 1`, found by
/// bisection on the strictly decreasing left-hand side. Returns an exact
/// rational if the bisection lands on the root, otherwise a bracket of
/// radius at most `tol`.
pub fn base_of_word(word: &Word, tol: f64) -> Result<Base> {
    let digits = word.digits();
    if digits.is_empty() {
        return Err(Error::EmptyWord);
    }
    let max_digit = word.max_digit();
    if digits[0] == 0 || *digits.last().unwrap() == 0 {
        return Err(Error::InvalidParameter(
            "word must start and end with a nonzero digit".into(),
        ));
    }
    let digit_sum: u64 = digits.iter().map(|&d| d as u64).sum();
    if digit_sum <= 1 {
        // sum(q) = 1/q < 1 on all of (1, M+1]
        return Err(Error::NoRoot {
            upper: max_digit as u32 + 1,
        });
    }
    let tol = tolerance_to_rational(tol)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(max_digit as u64 + 1));
    debug_assert_eq!(
        cmp_power_sum_one(digits, hi.numer(), hi.denom()),
        Ordering::Less
    );
    while (&hi - &lo) > &tol * &two {
        let mid = (&lo + &hi) / &two;
        match cmp_power_sum_one(digits, mid.numer(), mid.denom()) {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => {
                return Ok(Base::from_rational(mid));
            }
        }
    }
    Ok(Base::bracket(Interval { lo, hi }, None))
}

/// Digits of the unique expansion of 1 in the Komornik–Loreti base for
/// `{0, ..., M}`: `m - 1 + tau_i` when `M = 2m - 1`, `m + tau_i - tau_{i-1}`
/// when `M = 2m`, for `i >= 1`.
pub fn kl_expansion_digits(max_digit: u8, len: u64) -> Result<Vec<u8>> {
    if max_digit == 0 {
        return Err(Error::InvalidParameter("ceiling must be >= 1".into()));
    }
    let tau = thue_morse_prefix(len + 1)?;
    let tau = tau.digits();
    let m = (max_digit as i32 + 1) / 2;
    let digits = (1..=len as usize)
        .map(|i| {
            let p = if max_digit % 2 == 1 {
                m - 1 + tau[i] as i32
            } else {
                m + tau[i] as i32 - tau[i - 1] as i32
            };
            p as u8
        })
        .collect();
    Ok(digits)
}

/// The Komornik–Loreti base for `{0, ..., M}`: the root of
/// `sum_i p_i q^-i = 1`, bisected on a truncation whose geometric tail
/// bound is folded into the certification.
pub fn komornik_loreti_base(max_digit: u8, tol: f64) -> Result<Base> {
    let tol = tolerance_to_rational(tol)?;
    let two = BigRational::from_integer(BigInt::from(2));

    // Truncation length: tail at q >= 3/2 is M (2/3)^T / (1/2); make it
    // comfortably smaller than the requested radius.
    let mut tlen = 64u64;
    let target = &tol / BigRational::from_integer(BigInt::from(16));
    loop {
        let tail = BigRational::from_integer(BigInt::from(max_digit as u64 * 2))
            * BigRational::new(BigInt::from(2), BigInt::from(3)).pow(tlen as i32);
        if tail < target {
            break;
        }
        tlen *= 2;
        if tlen > 1 << 22 {
            return Err(Error::ToleranceUnattainable(0.0));
        }
    }

    let mut digits = kl_expansion_digits(max_digit, tlen)?;
    let mut lo = BigRational::new(BigInt::from(3), BigInt::from(2));
    let mut hi = BigRational::from_integer(BigInt::from(max_digit as u64 + 1));
    loop {
        let mut dead_zone = false;
        while (&hi - &lo) > &tol * &two {
            let mid = (&lo + &hi) / &two;
            let (plain, with_tail) =
                cmp_power_sum_one_with_tail(&digits, mid.numer(), mid.denom(), max_digit);
            if plain != Ordering::Less {
                // truncated sum >= 1, so the full sum is too: root is above
                lo = mid;
            } else if with_tail == Ordering::Less {
                // even with the tail bound the sum stays < 1: root is below
                hi = mid;
            } else {
                dead_zone = true;
                break;
            }
        }
        if !dead_zone {
            break;
        }
        // The bracket hit the truncation's uncertainty band: double it.
        tlen *= 2;
        if tlen > 1 << 22 {
            return Err(Error::ToleranceUnattainable(0.0));
        }
        digits = kl_expansion_digits(max_digit, tlen)?;
    }
    Ok(Base::bracket(
        Interval { lo, hi },
        Some(BaseKind::KomornikLoreti { max_digit }),
    ))
}

/// Certifies `base_of_word(word) > q` for a rational `q > 1` by one exact
/// sign evaluation: the digit sum at `q` exceeds 1 iff the root is above.
///
/// Ladder gaps shrink double-exponentially, far below any fixed bracket
/// radius, so ordering adjacent rungs needs this exact test rather than a
/// bracket comparison.
pub fn word_base_exceeds(word: &Word, q: &BigRational) -> bool {
    cmp_power_sum_one(word.digits(), q.numer(), q.denom()) == Ordering::Greater
}

/// Certifies the Komornik–Loreti base of `{0, ..., M}` against a rational:
/// `Some(true)` means `q_KL > q`, `Some(false)` means `q_KL < q`, `None`
/// means the truncation could not separate them within the term budget.
pub fn kl_base_exceeds(max_digit: u8, q: &BigRational) -> Result<Option<bool>> {
    let mut terms = 256u64;
    while terms <= 1 << 20 {
        let digits = kl_expansion_digits(max_digit, terms)?;
        let (plain, with_tail) =
            cmp_power_sum_one_with_tail(&digits, q.numer(), q.denom(), max_digit);
        // the full series dominates its truncation, and the digits are not
        // eventually zero, so a truncated sum >= 1 puts the root above q
        if plain != Ordering::Less {
            return Ok(Some(true));
        }
        if with_tail == Ordering::Less {
            return Ok(Some(false));
        }
        terms *= 2;
    }
    Ok(None)
}

/// Certifies the strict chain `q_1 < q_2 < ... < q_{k_max} < q_KL` exactly.
///
/// The gaps shrink double-exponentially, far below any bracket radius, so
/// numeric comparison cannot do this. Instead: the map from a base to the
/// quasi-greedy expansion of 1 is strictly increasing, the expansion at
/// `q_k` is the decremented ladder word repeated, and the expansion at
/// `q_KL` is the Thue–Morse-derived digit stream. Base order is therefore
/// equivalent to lexicographic word order, decided exactly.
pub fn certify_ladder_order(max_digit: u8, k_max: u32) -> Result<()> {
    let horizon = 4096usize;
    let kl = kl_expansion_digits(max_digit, horizon as u64)?;
    let mut prev: Option<Vec<u8>> = None;
    for k in 1..=k_max {
        let word = omega_word(max_digit, k)?.bump(BumpDirection::Down)?;
        let cur = word.digits().to_vec();
        if let Some(p) = &prev {
            if !periodic_lex_less(p, &cur) {
                return Err(Error::Undecidable(format!(
                    "rungs {} and {k} are not certified increasing for M={max_digit}",
                    k - 1
                )));
            }
        }
        if !periodic_below_stream(&cur, &kl) {
            return Err(Error::Undecidable(format!(
                "rung {k} is not certified below the Komornik-Loreti base for M={max_digit}"
            )));
        }
        prev = Some(cur);
    }
    Ok(())
}

/// `(a)^inf < (b)^inf` lexicographically, decided within `2 lcm <= 2|a||b|`
/// digits (equal periodic sequences compare false).
fn periodic_lex_less(a: &[u8], b: &[u8]) -> bool {
    let horizon = 2 * a.len().max(b.len()) * (a.len().min(b.len()));
    for i in 0..horizon {
        let (x, y) = (a[i % a.len()], b[i % b.len()]);
        if x != y {
            return x < y;
        }
    }
    false
}

/// `(a)^inf < stream` lexicographically within the stream's length.
fn periodic_below_stream(a: &[u8], stream: &[u8]) -> bool {
    for (i, &y) in stream.iter().enumerate() {
        let x = a[i % a.len()];
        if x != y {
            return x < y;
        }
    }
    false
}

/// The increasing ladder `q_1, ..., q_k` for `{0, ..., M}` (bases of the
/// ladder words), converging to the Komornik–Loreti base.
pub fn ladder(max_digit: u8, k_max: u32, tol: f64) -> Result<Vec<Base>> {
    (1..=k_max)
        .map(|k| {
            let mut base = base_of_word(&omega_word(max_digit, k)?, tol)?;
            base.kind = Some(BaseKind::Ladder { max_digit, k });
            Ok(base)
        })
        .collect()
}

/// Classification of a base against the ladder and the Komornik–Loreti base.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseLocation {
    /// `q <= q_1`.
    AtOrBelowGolden { golden: Base },
    /// `q_k < q <= q_{k+1}`.
    Between { k: u32, lower: Base, upper: Base },
    /// `q = q_KL`, asserted by construction.
    AtKomornikLoreti,
    /// `q > q_KL`.
    AboveKomornikLoreti { kl: Base },
}

/// Locates `q` relative to `q_1 < q_2 < ... < q_KL` for `{0, ..., M}`.
///
/// Equality with a bisected base can never be certified numerically, so a
/// `q` whose enclosure overlaps one of the ladder brackets (or the
/// Komornik–Loreti bracket) is reported as undecidable unless its kind tag
/// asserts the identity by construction.
pub fn locate_base(q: &Base, max_digit: u8, tol: f64) -> Result<BaseLocation> {
    match q.kind() {
        Some(BaseKind::KomornikLoreti { max_digit: m }) if m == max_digit => {
            return Ok(BaseLocation::AtKomornikLoreti)
        }
        Some(BaseKind::Golden { max_digit: m }) if m == max_digit => {
            return Ok(BaseLocation::AtOrBelowGolden {
                golden: generalized_golden_ratio(max_digit)?,
            })
        }
        Some(BaseKind::Ladder { max_digit: m, k }) if m == max_digit => {
            // q = q_k exactly: below-or-at the first rung, else between k-1 and k.
            return if k <= 1 {
                Ok(BaseLocation::AtOrBelowGolden {
                    golden: generalized_golden_ratio(max_digit)?,
                })
            } else {
                let rungs = ladder(max_digit, k, tol)?;
                Ok(BaseLocation::Between {
                    k: k - 1,
                    lower: rungs[k as usize - 2].clone(),
                    upper: rungs[k as usize - 1].clone(),
                })
            };
        }
        _ => {}
    }

    if q.try_cmp_int(1) != Some(Ordering::Greater) {
        return Err(Error::InvalidParameter("base must exceed 1".into()));
    }

    let golden = generalized_golden_ratio(max_digit)?;
    match q.try_cmp(&golden) {
        Some(Ordering::Less) | Some(Ordering::Equal) => {
            return Ok(BaseLocation::AtOrBelowGolden { golden })
        }
        Some(Ordering::Greater) => {}
        None => {
            return Err(Error::Undecidable(
                "q is within tolerance of the golden base".into(),
            ))
        }
    }

    let kl = komornik_loreti_base(max_digit, tol)?;
    match q.try_cmp(&kl) {
        Some(Ordering::Greater) => return Ok(BaseLocation::AboveKomornikLoreti { kl }),
        Some(Ordering::Less) => {}
        _ => {
            return Err(Error::Undecidable(
                "q is within tolerance of the Komornik-Loreti base".into(),
            ))
        }
    }

    let mut lower = golden;
    for k in 1..=LADDER_BUDGET {
        let mut upper = base_of_word(&omega_word(max_digit, k + 1)?, tol)?;
        upper.kind = Some(BaseKind::Ladder {
            max_digit,
            k: k + 1,
        });
        match q.try_cmp(&upper) {
            Some(Ordering::Less) | Some(Ordering::Equal) => {
                return Ok(BaseLocation::Between { k, lower, upper })
            }
            Some(Ordering::Greater) => lower = upper,
            None => {
                return Err(Error::Undecidable(format!(
                    "q is within tolerance of ladder base {}",
                    k + 1
                )))
            }
        }
    }
    Err(Error::Undecidable(
        "ladder budget exhausted; q is too close to the Komornik-Loreti base".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn golden_ratio_closed_forms() {
        let phi = generalized_golden_ratio(1).unwrap();
        assert!((phi.to_f64() - 1.618033988749895).abs() < 1e-12);
        assert_eq!(
            generalized_golden_ratio(2).unwrap().exact().unwrap(),
            &Real::from_int(2)
        );
        assert_eq!(
            generalized_golden_ratio(4).unwrap().exact().unwrap(),
            &Real::from_int(3)
        );
    }

    #[test]
    fn omega_words() {
        let w = |m, k| omega_word(m, k).unwrap().to_string();
        assert_eq!(w(1, 1), "11");
        assert_eq!(w(1, 2), "1101");
        assert_eq!(w(2, 2), "21");
        assert_eq!(w(1, 0), "1");
        assert_eq!(w(2, 0), "2");
        assert_eq!(w(3, 1), "22");
        assert_eq!(w(2, 3), "2102");
        // lengths double, last digit stays nonzero
        for m in 1..=4u8 {
            let len1 = omega_word(m, 1).unwrap().len();
            for k in 1..=8u32 {
                let wk = omega_word(m, k).unwrap();
                assert_eq!(wk.len(), len1 << (k - 1));
                assert!(*wk.digits().last().unwrap() > 0);
            }
        }
    }

    #[test]
    fn base_of_single_digit_word_is_exact() {
        let b = base_of_word(&Word::parse("2", 2).unwrap(), 1e-12).unwrap();
        assert_eq!(b.exact().unwrap(), &Real::from_int(2));
    }

    #[test]
    fn base_of_word_brackets_quadratic_root() {
        // "21" over {0,1,2}: 2/q + 1/q^2 = 1 has root 1 + sqrt(2)
        let b = base_of_word(&Word::parse("21", 2).unwrap(), 1e-12).unwrap();
        let silver = Real::quadratic(rat(1, 1), rat(1, 1), 2);
        let iv = b.enclosure(0);
        assert_eq!(silver.cmp_rational(&iv.lo), Ordering::Greater);
        assert_eq!(silver.cmp_rational(&iv.hi), Ordering::Less);
        assert!((b.to_f64() - 2.414213562373095).abs() < 1e-11);
    }

    #[test]
    fn base_of_word_quartic() {
        let b = base_of_word(&Word::parse("1101", 1).unwrap(), 1e-12).unwrap();
        let q = b.to_f64();
        // root of q^4 = q^3 + q^2 + 1
        assert!((q.powi(4) - (q.powi(3) + q.powi(2) + 1.0)).abs() < 1e-10);
        assert!((q - 1.7549).abs() < 1e-4);
        assert!(b.to_precision().radius <= 1.1e-12);
    }

    #[test]
    fn base_of_word_rejects_trivial_words() {
        assert!(matches!(
            base_of_word(&Word::parse("1", 3).unwrap(), 1e-12),
            Err(Error::NoRoot { .. })
        ));
        assert!(base_of_word(&Word::parse("01", 1).unwrap(), 1e-12).is_err());
    }

    #[test]
    fn golden_matches_first_ladder_base() {
        for m in 1..=6u8 {
            let closed = generalized_golden_ratio(m).unwrap();
            let rung = base_of_word(&omega_word(m, 1).unwrap(), 1e-12).unwrap();
            let diff = (closed.to_f64() - rung.to_f64()).abs();
            assert!(diff < 1e-10, "M={m}: gap {diff}");
        }
    }

    #[test]
    fn kl_base_for_binary_alphabet() {
        let kl = komornik_loreti_base(1, 1e-12).unwrap();
        let iv = kl.enclosure(0);
        assert!(iv.lo > rat(1_787_231, 1_000_000));
        assert!(iv.hi < rat(1_787_233, 1_000_000));
        assert!(kl.to_precision().radius <= 1.1e-12);
    }

    #[test]
    fn kl_base_sits_between_golden_and_integer_ceiling() {
        for m in 1..=6u8 {
            let kl = komornik_loreti_base(m, 1e-10).unwrap();
            let golden = generalized_golden_ratio(m).unwrap();
            assert_eq!(kl.try_cmp(&golden), Some(Ordering::Greater), "M={m}");
            assert_eq!(kl.try_cmp_int(m as i64 + 1), Some(Ordering::Less), "M={m}");
        }
    }

    #[test]
    fn kl_bounds_for_asymmetric_alphabets() {
        // For m1 > m2 the KL base of {0,...,m1+m2} lies in (m2+1, m1+1).
        for m1 in 2..=4u8 {
            for m2 in 1..m1 {
                let kl = komornik_loreti_base(m1 + m2, 1e-10).unwrap();
                assert_eq!(kl.try_cmp_int(m2 as i64 + 1), Some(Ordering::Greater));
                assert_eq!(kl.try_cmp_int(m1 as i64 + 1), Some(Ordering::Less));
            }
        }
    }

    #[test]
    fn critical_base_closed_form_and_identity() {
        let qc = critical_base(1).unwrap();
        assert!((qc.to_f64() - 2.618033988749895).abs() < 1e-12);
        let qc2 = critical_base(2).unwrap();
        assert!((qc2.to_f64() - 3.732050807568877).abs() < 1e-12);
        for m in 1..=10u32 {
            let q = critical_base(m).unwrap();
            let qr = q.exact().unwrap();
            // q^2 - (m+2) q + 1 = 0, exactly
            let check = qr
                .mul(qr)
                .unwrap()
                .sub(&qr.mul(&Real::from_int(m as i64 + 2)).unwrap())
                .unwrap()
                .add(&Real::one())
                .unwrap();
            assert!(check.is_zero(), "m={m}");
            // q_c > m + 1
            assert_eq!(qr.cmp_int(m as i64 + 1), Ordering::Greater);
        }
    }

    #[test]
    fn ladder_is_strictly_increasing_below_kl() {
        // High rungs sit closer together than any fixed bracket radius, so
        // the order is certified by exact sign tests at refined witnesses.
        for m in 1..=4u8 {
            certify_ladder_order(m, 8).unwrap();
        }
        // at the default tolerance the low rungs are separated outright
        let rungs = ladder(1, 5, 1e-12).unwrap();
        for k in 1..rungs.len() {
            assert_eq!(rungs[k - 1].try_cmp(&rungs[k]), Some(Ordering::Less));
        }
    }

    #[test]
    fn locate_examples() {
        let below = locate_base(&Base::parse("1.5").unwrap(), 1, 1e-12).unwrap();
        assert!(matches!(below, BaseLocation::AtOrBelowGolden { .. }));

        let above = locate_base(&Base::parse("3").unwrap(), 1, 1e-12).unwrap();
        assert!(matches!(above, BaseLocation::AboveKomornikLoreti { .. }));

        match locate_base(&Base::parse("2.5").unwrap(), 2, 1e-12).unwrap() {
            BaseLocation::Between { k, lower, upper } => {
                assert_eq!(k, 2);
                assert!(lower.to_f64() < 2.5 && 2.5 <= upper.to_f64());
            }
            other => panic!("expected between(2), got {other:?}"),
        }

        // boundary by construction tag
        let kl = komornik_loreti_base(2, 1e-12).unwrap();
        assert_eq!(
            locate_base(&kl, 2, 1e-12).unwrap(),
            BaseLocation::AtKomornikLoreti
        );

        // q exactly on a rung, asserted by tag
        let rungs = ladder(2, 3, 1e-12).unwrap();
        match locate_base(&rungs[2], 2, 1e-12).unwrap() {
            BaseLocation::Between { k, .. } => assert_eq!(k, 2),
            other => panic!("expected between(2), got {other:?}"),
        }
    }

    #[test]
    fn locate_reports_undecidable_near_rung() {
        // take the midpoint of the q_2 bracket for M=2 and fatten tolerance
        let rung = base_of_word(&omega_word(2, 2).unwrap(), 1e-6).unwrap();
        let mid = Base::from_rational(rung.enclosure(0).midpoint());
        match locate_base(&mid, 2, 1e-6) {
            Err(e) => assert!(e.is_undecided()),
            Ok(loc) => panic!("expected undecidable, got {loc:?}"),
        }
    }
}
