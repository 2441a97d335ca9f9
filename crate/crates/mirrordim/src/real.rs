//! Exact scalar arithmetic for the bases and expansions machinery.
//!
//! Three representations cover everything the library computes with:
//!
//! * [`Real`] — an exact number, either rational or quadratic
//!   (`a + b*sqrt(d)` with rational `a, b`). Every closed-form base in this
//!   domain is of one of these shapes, and any `f64` input is an exact
//!   dyadic rational, so digit decisions on user-supplied bases never need
//!   rounding.
//! * [`Interval`] — a certified rational enclosure, produced by bisection.
//! * [`PrecisionReal`] — the output carrier: an `f64` with an explicit
//!   error radius.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact real number: rational, or `a + b*sqrt(d)` with `d` square-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Real {
    Rat(BigRational),
    Quad {
        a: BigRational,
        b: BigRational,
        d: u64,
    },
}

impl Real {
    pub fn zero() -> Real {
        Real::Rat(BigRational::zero())
    }

    pub fn one() -> Real {
        Real::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Real {
        Real::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Real {
        Real::Rat(r)
    }

    /// `a + b*sqrt(d)`, normalizing square factors out of `d`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Real {
        if b.is_zero() || d == 0 {
            return Real::Rat(a);
        }
        let (square, free) = split_square(d);
        if free == 1 {
            return Real::Rat(a + b * BigRational::from_integer(BigInt::from(square)));
        }
        Real::Quad {
            a,
            b: b * BigRational::from_integer(BigInt::from(square)),
            d: free,
        }
    }

    /// Exact conversion: every finite `f64` is a dyadic rational.
    pub fn from_f64(x: f64) -> Result<Real> {
        BigRational::from_float(x)
            .map(Real::Rat)
            .ok_or_else(|| Error::InvalidParameter(format!("{x} is not finite")))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Real::Rat(r) => Some(r),
            Real::Quad { .. } => None,
        }
    }

    fn parts(&self) -> (BigRational, BigRational, u64) {
        match self {
            Real::Rat(r) => (r.clone(), BigRational::zero(), 0),
            Real::Quad { a, b, d } => (a.clone(), b.clone(), *d),
        }
    }

    fn combine(a: BigRational, b: BigRational, d: u64) -> Real {
        if b.is_zero() {
            Real::Rat(a)
        } else {
            Real::Quad { a, b, d }
        }
    }

    /// The common field discriminant, or an error for mixed irrationals.
    fn joint_d(&self, other: &Real) -> Result<u64> {
        match (self, other) {
            (Real::Rat(_), Real::Rat(_)) => Ok(0),
            (Real::Quad { d, .. }, Real::Rat(_)) | (Real::Rat(_), Real::Quad { d, .. }) => Ok(*d),
            (Real::Quad { d: d1, .. }, Real::Quad { d: d2, .. }) => {
                if d1 == d2 {
                    Ok(*d1)
                } else {
                    Err(Error::MixedFields(*d1, *d2))
                }
            }
        }
    }

    pub fn add(&self, other: &Real) -> Result<Real> {
        let d = self.joint_d(other)?;
        let (a1, b1, _) = self.parts();
        let (a2, b2, _) = other.parts();
        Ok(Real::combine(a1 + a2, b1 + b2, d))
    }

    pub fn sub(&self, other: &Real) -> Result<Real> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(-r),
            Real::Quad { a, b, d } => Real::Quad {
                a: -a,
                b: -b,
                d: *d,
            },
        }
    }

    pub fn mul(&self, other: &Real) -> Result<Real> {
        let d = self.joint_d(other)?;
        let (a1, b1, _) = self.parts();
        let (a2, b2, _) = other.parts();
        let dd = BigRational::from_integer(BigInt::from(d));
        Ok(Real::combine(
            &a1 * &a2 + &b1 * &b2 * dd,
            &a1 * &b2 + &b1 * &a2,
            d,
        ))
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        if other.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        match other {
            Real::Rat(r) => {
                let (a, b, d) = self.parts();
                Ok(Real::combine(a / r, b / r, d))
            }
            Real::Quad { a, b, d } => {
                let _ = self.joint_d(other)?;
                // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
                let dd = BigRational::from_integer(BigInt::from(*d));
                let norm = a * a - b * b * dd;
                let inv = Real::combine(a / &norm, -(b / &norm), *d);
                self.mul(&inv)
            }
        }
    }

    pub fn sub_int(&self, n: i64) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(r - BigRational::from_integer(BigInt::from(n))),
            Real::Quad { a, b, d } => Real::Quad {
                a: a - BigRational::from_integer(BigInt::from(n)),
                b: b.clone(),
                d: *d,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Real::Rat(r) if r.is_zero())
    }

    /// Exact sign.
    pub fn sign(&self) -> Ordering {
        match self {
            Real::Rat(r) => r.cmp(&BigRational::zero()),
            Real::Quad { a, b, d } => {
                debug_assert!(!b.is_zero());
                let dd = BigRational::from_integer(BigInt::from(*d));
                match (a.is_negative(), b.is_positive()) {
                    (false, true) => Ordering::Greater,
                    (true, false) => Ordering::Less,
                    (false, false) => {
                        // a >= 0, b < 0: positive iff a^2 > b^2 d
                        (a * a).cmp(&(b * b * dd))
                    }
                    (true, true) => {
                        // a < 0, b > 0: positive iff b^2 d > a^2
                        (b * b * dd).cmp(&(a * a))
                    }
                }
            }
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.sub(&Real::Rat(r.clone())).unwrap().sign()
    }

    pub fn cmp_int(&self, n: i64) -> Ordering {
        self.sub_int(n).sign()
    }

    /// Exact comparison, valid across different quadratic fields.
    ///
    /// After normalization, values in distinct fields are never equal, so
    /// refining enclosures always separates unequal values.
    pub fn cmp_exact(&self, other: &Real) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if let Ok(diff) = self.sub(other) {
            return diff.sign();
        }
        let mut bits = 64;
        loop {
            let a = self.enclosure(bits);
            let b = other.enclosure(bits);
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            bits *= 2;
            assert!(bits <= 1 << 16, "enclosure refinement failed to separate");
        }
    }

    /// Certified rational enclosure with roughly `bits` fractional bits.
    pub fn enclosure(&self, bits: u32) -> Interval {
        match self {
            Real::Rat(r) => Interval {
                lo: r.clone(),
                hi: r.clone(),
            },
            Real::Quad { a, b, d } => {
                let (slo, shi) = sqrt_enclosure(*d, bits);
                let (lo, hi) = if b.is_positive() {
                    (a + b * slo, a + b * shi)
                } else {
                    (a + b * shi, a + b * slo)
                };
                Interval { lo, hi }
            }
        }
    }

    pub fn to_precision(&self) -> PrecisionReal {
        PrecisionReal::from_interval(&self.enclosure(80))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_precision().value
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Real::Rat(r) => write!(f, "{r}"),
            Real::Quad { a, b, d } => write!(f, "{a} + {b}*sqrt({d})"),
        }
    }
}

/// Splits `d = s^2 * f` with `f` square-free; returns `(s, f)`.
fn split_square(d: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = d;
    let mut p = 2u64;
    while p * p <= free {
        while free % (p * p) == 0 {
            free /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, free)
}

/// Rational enclosure of `sqrt(d)` of width `2^-bits`.
fn sqrt_enclosure(d: u64, bits: u32) -> (BigRational, BigRational) {
    let scaled = BigInt::from(d) << (2 * bits);
    let root = scaled.sqrt(); // floor square root
    let denom = BigInt::one() << bits;
    (
        BigRational::new(root.clone(), denom.clone()),
        BigRational::new(root + 1, denom),
    )
}

/// A certified enclosure `[lo, hi]` of a real number.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(r: BigRational) -> Interval {
        Interval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    /// Product of two enclosures of positive numbers.
    pub fn mul_positive(&self, other: &Interval) -> Interval {
        debug_assert!(self.lo.is_positive() && other.lo.is_positive());
        Interval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn sub_int(&self, n: i64) -> Interval {
        let n = BigRational::from_integer(BigInt::from(n));
        Interval {
            lo: &self.lo - &n,
            hi: &self.hi - &n,
        }
    }

    /// Entirely below / above comparisons against another enclosure.
    pub fn is_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn to_precision(&self) -> PrecisionReal {
        PrecisionReal::from_interval(self)
    }
}

/// A floating-point value with an explicit error radius: the represented
/// quantity lies in `[value - radius, value + radius]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionReal {
    pub value: f64,
    pub radius: f64,
}

impl PrecisionReal {
    pub fn exact(value: f64) -> PrecisionReal {
        PrecisionReal {
            value,
            radius: 0.0,
        }
    }

    pub fn new(value: f64, radius: f64) -> PrecisionReal {
        PrecisionReal { value, radius }
    }

    pub fn from_interval(iv: &Interval) -> PrecisionReal {
        let value = iv.midpoint().to_f64().unwrap_or(f64::NAN);
        let half = (iv.width() / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::INFINITY);
        // Inflate for the rational -> f64 roundings on midpoint and width.
        let slop = value.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE;
        PrecisionReal {
            value,
            radius: half * (1.0 + 4.0 * f64::EPSILON) + slop,
        }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.radius
    }

    pub fn upper(&self) -> f64 {
        self.value + self.radius
    }

    /// Comparison with a margin: `None` when the enclosures overlap.
    pub fn try_cmp(&self, other: &PrecisionReal) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if other.upper() < self.lower() {
            Some(Ordering::Greater)
        } else if self.radius == 0.0 && other.radius == 0.0 && self.value == other.value {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl std::fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ± {:.3e}", self.value, self.radius)
    }
}

/// Parses `"5/2"`, `"2.5"`, `"-3"`, or `"1e-12"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse {s:?} as a rational"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::new(n, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(n * ten.pow((-scale) as u32))
    };
    Ok(value)
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a big integer as -1/0/+1.
pub fn bigint_signum(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Floor of log2 of a positive rational, used for budget heuristics.
pub fn rational_log2_floor(r: &BigRational) -> i64 {
    debug_assert!(r.is_positive());
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    // within 1 of the true value, good enough for sizing loops
    n - d
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
