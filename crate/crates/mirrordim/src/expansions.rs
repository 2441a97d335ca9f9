//! Quasi-greedy digit generation and the uniqueness test for expansions.
//!
//! The digit engine runs in exact arithmetic whenever the base is exact
//! (rational or quadratic): each digit choice is an exact sign test, and a
//! repeated remainder state certifies that the expansion is eventually
//! periodic, which makes comparisons against it complete decision
//! procedures. For bracketed bases the engine runs in interval arithmetic
//! and stops with an honest error as soon as a digit is not determined by
//! the enclosure.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bases::{Base, BaseRepr};
use crate::error::{Error, Result};
use crate::real::{Interval, PrecisionReal, Real};
use crate::words::{lex_compare_ep, EventuallyPeriodicSeq, Word};

/// Extra reference digits examined beyond the tail-derived budget.
const BUDGET_BASE: usize = 256;
const BUDGET_PER_DIGIT: usize = 10;

#[derive(Debug, Clone)]
enum Scalar {
    Exact(Real),
    Iv(Interval),
}

#[derive(Debug, Clone)]
enum QScalar {
    Exact(Real),
    Iv(Interval),
}

impl Scalar {
    fn mul_base(&self, q: &QScalar) -> Result<Scalar> {
        match (self, q) {
            (Scalar::Exact(z), QScalar::Exact(q)) => Ok(Scalar::Exact(z.mul(q)?)),
            (Scalar::Exact(z), QScalar::Iv(q)) => {
                Ok(Scalar::Iv(mul_pos_base(&z.enclosure(128), q)))
            }
            (Scalar::Iv(z), QScalar::Exact(q)) => Ok(Scalar::Iv(mul_pos_base(z, &q.enclosure(128)))),
            (Scalar::Iv(z), QScalar::Iv(q)) => Ok(Scalar::Iv(mul_pos_base(z, q))),
        }
    }

    fn sub_int(&self, n: i64) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.sub_int(n)),
            Scalar::Iv(iv) => Scalar::Iv(iv.sub_int(n)),
        }
    }
}

/// `z * q` where `q > 1`; `z` may have a lower bound of either sign.
fn mul_pos_base(z: &Interval, q: &Interval) -> Interval {
    let lo = if z.lo.is_negative() {
        &z.lo * &q.hi
    } else {
        &z.lo * &q.lo
    };
    let hi = if z.hi.is_negative() {
        &z.hi * &q.lo
    } else {
        &z.hi * &q.hi
    };
    Interval { lo, hi }
}

/// Largest integer strictly below `r`.
fn strict_floor(r: &BigRational) -> BigInt {
    if r.is_integer() {
        r.to_integer() - 1
    } else {
        r.floor().to_integer()
    }
}

/// Largest digit `c <= max` with `c < w`, or an error if that is not
/// determined (interval too wide) or no digit fits (`w <= 0`).
fn decide_digit(w: &Scalar, max: u8, position: usize) -> Result<u8> {
    match w {
        Scalar::Exact(w) => {
            for c in (0..=max as i64).rev() {
                if w.cmp_int(c) == Ordering::Greater {
                    return Ok(c as u8);
                }
            }
            Err(Error::InvalidParameter(
                "remainder not positive; value has no expansion here".into(),
            ))
        }
        Scalar::Iv(iv) => {
            let lo = strict_floor(&iv.lo).min(BigInt::from(max));
            let hi = strict_floor(&iv.hi).min(BigInt::from(max));
            if lo != hi {
                return Err(Error::UndecidableDigit { position });
            }
            if lo.is_negative() {
                return Err(Error::InvalidParameter(
                    "remainder not positive; value has no expansion here".into(),
                ));
            }
            Ok(u32::try_from(lo).unwrap() as u8)
        }
    }
}

/// Lazily extended quasi-greedy expansion of a value `x` in base `q` over
/// `{0, ..., M}`: each digit is the largest choice keeping the partial sum
/// strictly below `x`.
///
/// Digits are appended once and never change. On the exact path the
/// remainder state is memoized; a repeat proves the expansion eventually
/// periodic and the proven cycle is kept for complete comparisons.
pub struct QuasiGreedyExpansion {
    max_digit: u8,
    q: QScalar,
    digits: Vec<u8>,
    state: EngineState,
}

enum EngineState {
    Running {
        z: Scalar,
        seen: HashMap<Real, usize>,
    },
    /// Proven: digits repeat with `digits[pre..pre+per]` from index `pre`.
    Cyclic { pre: usize, per: usize },
    /// A digit could not be decided at the base's precision.
    Stuck(Error),
}

impl QuasiGreedyExpansion {
    /// Starts the expansion of `x` in base `q`; requires `0 < x <= M/(q-1)`.
    pub fn new(x: Real, q: &Base, max_digit: u8) -> Result<Self> {
        if max_digit == 0 {
            return Err(Error::InvalidParameter("ceiling must be >= 1".into()));
        }
        if x.sign() != Ordering::Greater {
            return Err(Error::InvalidParameter("x must be positive".into()));
        }
        let q_scalar = match q.repr() {
            BaseRepr::Exact(r) => {
                if r.cmp_int(1) != Ordering::Greater {
                    return Err(Error::InvalidParameter("base must exceed 1".into()));
                }
                // x (q - 1) <= M keeps the remainder representable
                let spread = x.mul(&r.sub_int(1))?;
                if spread.cmp_int(max_digit as i64) == Ordering::Greater {
                    return Err(Error::InvalidParameter(
                        "x exceeds the largest representable value M/(q-1)".into(),
                    ));
                }
                QScalar::Exact(r.clone())
            }
            BaseRepr::Bracket(iv) => {
                if iv.lo <= BigRational::one() {
                    return Err(Error::Undecidable(
                        "bracketed base is not certified to exceed 1".into(),
                    ));
                }
                let xiv = x.enclosure(128);
                let m = BigRational::from_integer(BigInt::from(max_digit));
                let upper_spread = &xiv.hi * (&iv.hi - BigRational::one());
                let lower_spread = &xiv.lo * (&iv.lo - BigRational::one());
                if lower_spread > m {
                    return Err(Error::InvalidParameter(
                        "x exceeds the largest representable value M/(q-1)".into(),
                    ));
                }
                if upper_spread > m {
                    return Err(Error::Undecidable(
                        "x is within tolerance of the largest representable value".into(),
                    ));
                }
                QScalar::Iv(iv.clone())
            }
        };
        let z = match (&q_scalar, x) {
            (QScalar::Exact(_), x) => Scalar::Exact(x),
            (QScalar::Iv(_), x) => Scalar::Iv(x.enclosure(128)),
        };
        Ok(QuasiGreedyExpansion {
            max_digit,
            q: q_scalar,
            digits: Vec::new(),
            state: EngineState::Running {
                z,
                seen: HashMap::new(),
            },
        })
    }

    pub fn max_digit(&self) -> u8 {
        self.max_digit
    }

    /// The proven `(preperiod, period)` lengths, if a cycle was found.
    pub fn proven_cycle(&self) -> Option<(usize, usize)> {
        match self.state {
            EngineState::Cyclic { pre, per } => Some((pre, per)),
            _ => None,
        }
    }

    /// The expansion as an eventually periodic sequence, if proven cyclic.
    pub fn as_eventually_periodic(&self) -> Option<EventuallyPeriodicSeq> {
        let (pre, per) = self.proven_cycle()?;
        EventuallyPeriodicSeq::new(
            self.digits[..pre].iter().map(|&d| d as i32).collect(),
            self.digits[pre..pre + per].iter().map(|&d| d as i32).collect(),
            0,
            self.max_digit as i32,
        )
        .ok()
    }

    fn step(&mut self) -> Result<()> {
        let position = self.digits.len();
        match &mut self.state {
            EngineState::Cyclic { .. } => Ok(()),
            EngineState::Stuck(e) => Err(e.clone()),
            EngineState::Running { z, seen } => {
                if let Scalar::Exact(zr) = z {
                    if let Some(&first) = seen.get(zr) {
                        self.state = EngineState::Cyclic {
                            pre: first,
                            per: position - first,
                        };
                        return Ok(());
                    }
                    seen.insert(zr.clone(), position);
                }
                let w = match z.mul_base(&self.q) {
                    Ok(w) => w,
                    Err(e) => {
                        self.state = EngineState::Stuck(e.clone());
                        return Err(e);
                    }
                };
                match decide_digit(&w, self.max_digit, position) {
                    Ok(d) => {
                        *z = w.sub_int(d as i64);
                        self.digits.push(d);
                        Ok(())
                    }
                    Err(e) => {
                        self.state = EngineState::Stuck(e.clone());
                        Err(e)
                    }
                }
            }
        }
    }

    /// Digit at 0-based index `i` (the paper-style digit `a_{i+1}`).
    pub fn digit(&mut self, i: usize) -> Result<u8> {
        loop {
            if let EngineState::Cyclic { pre, per } = self.state {
                return Ok(if i < self.digits.len() {
                    self.digits[i]
                } else {
                    self.digits[pre + (i - pre) % per]
                });
            }
            if i < self.digits.len() {
                return Ok(self.digits[i]);
            }
            self.step()?;
        }
    }

    /// First `len` digits as a word.
    pub fn prefix(&mut self, len: usize) -> Result<Word> {
        let mut digits = Vec::with_capacity(len);
        for i in 0..len {
            digits.push(self.digit(i)?);
        }
        Word::new(digits, self.max_digit)
    }
}

/// First `len` quasi-greedy digits of `x` in base `q` over `{0, ..., M}`.
pub fn quasi_greedy_prefix(x: &Real, q: &Base, max_digit: u8, len: usize) -> Result<Word> {
    QuasiGreedyExpansion::new(x.clone(), q, max_digit)?.prefix(len)
}

/// The quasi-greedy expansion of 1 in base `q` over `{0, ..., M}`.
pub fn unit_expansion(q: &Base, max_digit: u8) -> Result<QuasiGreedyExpansion> {
    QuasiGreedyExpansion::new(Real::one(), q, max_digit)
}

/// First `len` digits of the signed reference expansion over
/// `{-m, ..., m}`: the quasi-greedy expansion of `(q - (m+1))/(q - 1)`,
/// obtained as the unit expansion over `{0, ..., 2m}` shifted down by `m`.
pub fn signed_reference_prefix(q: &Base, m: u32, len: usize) -> Result<Vec<i32>> {
    let mut alpha = unit_expansion(q, (2 * m) as u8)?;
    (0..len)
        .map(|i| Ok(alpha.digit(i)? as i32 - m as i32))
        .collect()
}

/// Exact value of an eventually periodic expansion in an exact base.
pub fn ep_value(s: &EventuallyPeriodicSeq, q: &Real) -> Result<Real> {
    if q.cmp_int(1) != Ordering::Greater {
        return Err(Error::InvalidParameter("base must exceed 1".into()));
    }
    let qinv = Real::one().div(q)?;
    // preperiod: sum pre[i] q^-(i+1)
    let mut acc = Real::zero();
    let mut power = Real::one();
    for &d in s.preperiod() {
        power = power.mul(&qinv)?;
        acc = acc.add(&power.mul(&Real::from_int(d as i64))?)?;
    }
    // period: q^-p * (sum per[j] q^-(j+1)) / (1 - q^-r)
    let scale = power;
    let mut per_sum = Real::zero();
    let mut per_power = Real::one();
    for &d in s.period() {
        per_power = per_power.mul(&qinv)?;
        per_sum = per_sum.add(&per_power.mul(&Real::from_int(d as i64))?)?;
    }
    let denom = Real::one().sub(&per_power)?;
    acc.add(&scale.mul(&per_sum.div(&denom)?)?)
}

/// Value of an eventually periodic expansion with the base's uncertainty
/// propagated through a Lipschitz bound.
pub fn ep_value_precision(s: &EventuallyPeriodicSeq, q: &Base) -> Result<PrecisionReal> {
    match q.repr() {
        BaseRepr::Exact(r) => Ok(ep_value(s, r)?.to_precision()),
        BaseRepr::Bracket(iv) => {
            let mid = Real::Rat(iv.midpoint());
            let center = ep_value(s, &mid)?.to_precision();
            // |d/dq sum c_i q^-i| <= C / (q-1)^2 with C = max |digit|
            let (lo_b, hi_b) = s.bounds();
            let c = BigRational::from_integer(BigInt::from(lo_b.abs().max(hi_b.abs())));
            let gap = &iv.lo - BigRational::one();
            if !gap.is_positive() {
                return Err(Error::Undecidable(
                    "bracketed base is not certified to exceed 1".into(),
                ));
            }
            let half_width = iv.width() / BigRational::from_integer(BigInt::from(2));
            let lip = (c / (&gap * &gap) * half_width).to_precision_radius();
            Ok(PrecisionReal::new(center.value, center.radius + lip))
        }
    }
}

trait RadiusExt {
    fn to_precision_radius(&self) -> f64;
}

impl RadiusExt for BigRational {
    fn to_precision_radius(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().map(|x| x * (1.0 + 1e-9)).unwrap_or(f64::INFINITY)
    }
}

/// Digitwise addition of `offset`, shifting the alphabet bounds along.
pub fn shift_alphabet(s: &EventuallyPeriodicSeq, offset: i32) -> EventuallyPeriodicSeq {
    let (lo, hi) = s.bounds();
    s.map_digits(lo + offset, hi + offset, |d| d + offset)
        .expect("shifted digits stay within shifted bounds")
}

/// Digitwise addition of `offset` into a caller-declared target alphabet.
pub fn shift_alphabet_to(
    s: &EventuallyPeriodicSeq,
    offset: i32,
    low: i32,
    high: i32,
) -> Result<EventuallyPeriodicSeq> {
    s.map_digits(low, high, |d| d + offset)
}

/// Outcome of the uniqueness test.
#[derive(Debug, Clone, PartialEq)]
pub enum UniquenessVerdict {
    Unique,
    NotUnique(UniquenessWitness),
    /// The digit budget ran out (or the base is too imprecise) before every
    /// comparison was decided.
    Undecided { digits_examined: usize },
}

impl UniquenessVerdict {
    pub fn is_unique(&self) -> bool {
        matches!(self, UniquenessVerdict::Unique)
    }
}

/// A concrete violation of the lexicographic uniqueness conditions,
/// re-checkable by comparing the named tail against the reference expansion.
///
/// Digits are reported in the signed alphabet of the input: the compared
/// tail is `s.tail(tail_start)` (its digitwise reflection when `reflected`)
/// and the reference is the signed reference expansion
/// ([`signed_reference_prefix`] in the symmetric case).
#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessWitness {
    /// The violating tail starts after this many leading digits.
    pub tail_start: usize,
    /// Whether the reflected condition family was violated.
    pub reflected: bool,
    pub relation: WitnessRelation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WitnessRelation {
    /// The tail equals the reference expansion forever (proven cycle).
    EqualsReference,
    /// The tail exceeds the reference at this 0-based offset.
    ExceedsReferenceAt {
        index: usize,
        tail_digit: i32,
        reference_digit: i32,
    },
}

enum ReferenceMode {
    /// `q > M + 1`: branches are separated, every expansion is unique.
    Separated,
    /// Compare against the unit expansion over `{0, ..., M}`.
    Reference(QuasiGreedyExpansion),
    /// `q` cannot be placed relative to `M + 1` at its precision.
    Boundary,
}

/// Reusable uniqueness tester for expansions over `{-m2, ..., m1}` in a
/// fixed base; the reference expansion cache is shared across calls.
pub struct UniquenessTester {
    m1: u32,
    m2: u32,
    mode: ReferenceMode,
}

impl UniquenessTester {
    pub fn new(m1: u32, m2: u32, q: &Base) -> Result<Self> {
        if m2 < 1 || m1 < m2 {
            return Err(Error::InvalidParameter(format!(
                "need m1 >= m2 >= 1, got ({m1}, {m2})"
            )));
        }
        if q.try_cmp_int(1) != Some(Ordering::Greater) {
            return Err(Error::InvalidParameter("base must exceed 1".into()));
        }
        let max_digit = (m1 + m2) as u8;
        let mode = match q.try_cmp_int(max_digit as i64 + 1) {
            Some(Ordering::Greater) => ReferenceMode::Separated,
            Some(_) => ReferenceMode::Reference(unit_expansion(q, max_digit)?),
            None => ReferenceMode::Boundary,
        };
        Ok(UniquenessTester { m1, m2, mode })
    }

    /// Decides whether `s` (digits in `{-m2, ..., m1}`) is the unique
    /// expansion of its value in the tester's base.
    pub fn verdict(&mut self, s: &EventuallyPeriodicSeq) -> Result<UniquenessVerdict> {
        let m1 = self.m1 as i32;
        let m2 = self.m2 as i32;
        let max_digit = (m1 + m2) as i32;
        let horizon = s.preperiod().len() + s.period().len();
        for i in 0..horizon {
            let d = s.digit(i);
            if d < -m2 || d > m1 {
                return Err(Error::DigitOutOfAlphabet {
                    digit: d as i64,
                    low: -m2 as i64,
                    high: m1 as i64,
                });
            }
        }

        let alpha = match &mut self.mode {
            ReferenceMode::Separated => return Ok(UniquenessVerdict::Unique),
            ReferenceMode::Boundary => {
                return Ok(UniquenessVerdict::Undecided { digits_examined: 0 })
            }
            ReferenceMode::Reference(alpha) => alpha,
        };

        // Shift to {0, ..., M} and canonicalize so the tail set is minimal.
        let shifted = shift_alphabet(s, m2).canonical();
        let pre = shifted.preperiod().len();
        let per = shifted.period().len();
        let n_tails = pre + per;
        let budget = BUDGET_PER_DIGIT * n_tails + BUDGET_BASE;

        let first_not = |value: i32| -> Option<usize> {
            (0..n_tails).find(|&i| shifted.digit(i) != value)
        };
        let first_non_max = first_not(max_digit);
        let first_non_min = first_not(0);

        let applicable = |first: Option<usize>, n: usize| -> bool {
            match first {
                None => false,
                Some(k) => {
                    if n < pre {
                        k < n
                    } else {
                        true
                    }
                }
            }
        };

        let mut undecided: Option<usize> = None;
        for n in 0..n_tails {
            for reflected in [false, true] {
                let first = if reflected { first_non_min } else { first_non_max };
                if !applicable(first, n) {
                    continue;
                }
                let tail = shifted.tail(n);
                let tail = if reflected {
                    tail.map_digits(0, max_digit, |d| max_digit - d)?
                } else {
                    tail
                };
                match compare_tail_to_reference(&tail, alpha, budget)? {
                    TailOrder::Below => {}
                    TailOrder::EqualForever => {
                        return Ok(UniquenessVerdict::NotUnique(UniquenessWitness {
                            tail_start: n,
                            reflected,
                            relation: WitnessRelation::EqualsReference,
                        }))
                    }
                    TailOrder::AboveAt {
                        index,
                        tail_digit,
                        reference_digit,
                    } => {
                        // shift back to the caller's signed alphabet
                        return Ok(UniquenessVerdict::NotUnique(UniquenessWitness {
                            tail_start: n,
                            reflected,
                            relation: WitnessRelation::ExceedsReferenceAt {
                                index,
                                tail_digit: tail_digit - m2,
                                reference_digit: reference_digit - m2,
                            },
                        }))
                    }
                    TailOrder::Unknown { examined } => {
                        undecided = Some(undecided.unwrap_or(0).max(examined));
                    }
                }
            }
        }
        if let Some(digits_examined) = undecided {
            return Ok(UniquenessVerdict::Undecided { digits_examined });
        }
        Ok(UniquenessVerdict::Unique)
    }
}

enum TailOrder {
    Below,
    EqualForever,
    AboveAt {
        index: usize,
        tail_digit: i32,
        reference_digit: i32,
    },
    Unknown {
        examined: usize,
    },
}

/// Strict comparison of a tail against the reference expansion. Complete
/// when the reference has a proven cycle; budgeted digit scan otherwise.
fn compare_tail_to_reference(
    tail: &EventuallyPeriodicSeq,
    alpha: &mut QuasiGreedyExpansion,
    budget: usize,
) -> Result<TailOrder> {
    if let Some(alpha_ep) = alpha.as_eventually_periodic() {
        return Ok(match lex_compare_ep(tail, &alpha_ep) {
            Ordering::Less => TailOrder::Below,
            Ordering::Equal => TailOrder::EqualForever,
            Ordering::Greater => {
                // recover the first differing position for the witness
                let mut index = 0;
                loop {
                    let td = tail.digit(index);
                    let ad = alpha_ep.digit(index);
                    if td != ad {
                        break TailOrder::AboveAt {
                            index,
                            tail_digit: td,
                            reference_digit: ad,
                        };
                    }
                    index += 1;
                }
            }
        });
    }
    for i in 0..budget {
        let ad = match alpha.digit(i) {
            Ok(d) => d as i32,
            Err(e) if e.is_undecided() => return Ok(TailOrder::Unknown { examined: i }),
            Err(e) => return Err(e),
        };
        // A step may have just proven the cycle; switch to the complete path.
        if alpha.proven_cycle().is_some() {
            return compare_tail_to_reference(tail, alpha, budget);
        }
        let td = tail.digit(i);
        match td.cmp(&ad) {
            Ordering::Less => return Ok(TailOrder::Below),
            Ordering::Greater => {
                return Ok(TailOrder::AboveAt {
                    index: i,
                    tail_digit: td,
                    reference_digit: ad,
                })
            }
            Ordering::Equal => {}
        }
    }
    Ok(TailOrder::Unknown { examined: budget })
}

/// One-shot uniqueness test; see [`UniquenessTester`].
pub fn is_unique_expansion(
    s: &EventuallyPeriodicSeq,
    q: &Base,
    m1: u32,
    m2: u32,
) -> Result<UniquenessVerdict> {
    UniquenessTester::new(m1, m2, q)?.verdict(s)
}
