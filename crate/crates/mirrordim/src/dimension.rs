//! Hausdorff dimensions of `Gamma_{q,m1} ∩ (Gamma_{q,m2} + t)` for `t` with
//! a unique expansion: branch counts, exact dimension values, the
//! dimension-set classifier, and the constructive sequence families.
//!
//! Dimensions of eventually periodic inputs are exact [`LogLinearValue`]s
//! (rational combinations of logarithms over `log q`); floats appear only
//! at presentation time. Dimensions of non-periodic digit streams are
//! estimated with an explicit horizon, never asserted.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bases::{critical_base, locate_base, Base, BaseLocation};
use crate::error::{Error, Result};
use crate::expansions::{UniquenessTester, UniquenessVerdict};
use crate::mirror::lambda_prefix;
use crate::real::PrecisionReal;
use crate::words::EventuallyPeriodicSeq;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of digits simultaneously admissible in both Cantor sets when the
/// translation digit is `t_j`; equals `|{0..m1} ∩ ({0..m2} + t_j)|`.
pub fn branch_count(t_j: i32, m1: u32, m2: u32) -> Result<u32> {
    if m2 < 1 || m1 < m2 {
        return Err(Error::InvalidParameter(format!(
            "need m1 >= m2 >= 1, got ({m1}, {m2})"
        )));
    }
    let (m1i, m2i) = (m1 as i32, m2 as i32);
    if t_j < -m2i || t_j > m1i {
        return Err(Error::DigitOutOfAlphabet {
            digit: t_j as i64,
            low: -m2i as i64,
            high: m1i as i64,
        });
    }
    Ok(if t_j < 0 {
        (m2i + 1 + t_j) as u32
    } else if t_j <= m1i - m2i {
        m2 + 1
    } else {
        (m1i + 1 - t_j) as u32
    })
}

/// An exact value `(sum_a c_a log a + c_q log q) / log q`, canonicalized by
/// factoring every `a` into primes. Equality is decidable and
/// `q`-independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogLinearValue {
    /// prime -> coefficient, zero coefficients dropped
    coeffs: BTreeMap<u64, BigRational>,
    q_coeff: BigRational,
}

impl LogLinearValue {
    pub fn zero() -> Self {
        LogLinearValue {
            coeffs: BTreeMap::new(),
            q_coeff: BigRational::zero(),
        }
    }

    /// The constant 1 (that is, `log q / log q`).
    pub fn one() -> Self {
        LogLinearValue {
            coeffs: BTreeMap::new(),
            q_coeff: BigRational::one(),
        }
    }

    /// `coeff * log(a) / log q`.
    pub fn from_log(a: u64, coeff: BigRational) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParameter("log argument must be >= 1".into()));
        }
        let mut value = LogLinearValue::zero();
        if coeff.is_zero() || a == 1 {
            return Ok(value);
        }
        let mut rest = a;
        let mut p = 2u64;
        while p * p <= rest {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                value.push(p, &coeff * BigRational::from_integer(BigInt::from(e)));
            }
            p += 1;
        }
        if rest > 1 {
            value.push(rest, coeff);
        }
        Ok(value)
    }

    fn push(&mut self, prime: u64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(prime).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&prime);
        }
    }

    pub fn add(&self, other: &LogLinearValue) -> LogLinearValue {
        let mut out = self.clone();
        for (&p, c) in &other.coeffs {
            out.push(p, c.clone());
        }
        out.q_coeff += &other.q_coeff;
        out
    }

    pub fn scale(&self, factor: &BigRational) -> LogLinearValue {
        if factor.is_zero() {
            return LogLinearValue::zero();
        }
        LogLinearValue {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&p, c)| (p, c * factor))
                .collect(),
            q_coeff: &self.q_coeff * factor,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.q_coeff.is_zero()
    }

    /// Numerator terms `(prime, coefficient)` plus the `log q` coefficient.
    pub fn terms(&self) -> (Vec<(u64, BigRational)>, BigRational) {
        (
            self.coeffs.iter().map(|(&p, c)| (p, c.clone())).collect(),
            self.q_coeff.clone(),
        )
    }

    /// Evaluates at a concrete base.
    pub fn eval(&self, q: &Base) -> PrecisionReal {
        let iv = q.enclosure(80);
        let ln_lo = iv.lo.to_f64().unwrap_or(f64::NAN).ln();
        let ln_hi = iv.hi.to_f64().unwrap_or(f64::NAN).ln();
        let mut num = 0.0;
        for (&p, c) in &self.coeffs {
            num += c.to_f64().unwrap_or(f64::NAN) * (p as f64).ln();
        }
        let qc = self.q_coeff.to_f64().unwrap_or(f64::NAN);
        // log q enclosure -> value enclosure (numerator sign decides the order)
        let (a, b) = (num / ln_hi + qc, num / ln_lo + qc);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mid = 0.5 * (lo + hi);
        PrecisionReal::new(
            mid,
            0.5 * (hi - lo) + mid.abs() * 8.0 * f64::EPSILON + 1e-300,
        )
    }
}

impl std::fmt::Display for LogLinearValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&p, c) in &self.coeffs {
            if c.is_one() {
                parts.push(format!("log({p})"));
            } else {
                parts.push(format!("({c})*log({p})"));
            }
        }
        if !self.q_coeff.is_zero() {
            if self.q_coeff.is_one() {
                parts.push("log(q)".into());
            } else {
                parts.push(format!("({})*log(q)", self.q_coeff));
            }
        }
        write!(f, "[{}]/log(q)", parts.join(" + "))
    }
}

/// `log(a) / log q`.
pub fn log_ratio(a: u64) -> Result<LogLinearValue> {
    LogLinearValue::from_log(a, BigRational::one())
}

/// `sum_{i=1}^{j} (-1/2)^i`, exactly.
pub fn alternating_half_sum(j: u32) -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    for _ in 0..j {
        term *= &minus_half;
        sum += &term;
    }
    sum
}

/// The closed-form dimension attained when the shifted expansion eventually
/// repeats the `j`-th doubled difference block:
/// `log m / log q - (log((m+1)/m) / log q) * sum_{i=1}^{j} (-1/2)^i`,
/// i.e. coefficients `c_m = 1 + sigma_j`, `c_{m+1} = -sigma_j`.
pub fn mirror_block_dimension(m: u32, j: u32) -> Result<LogLinearValue> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    let sigma = alternating_half_sum(j);
    let cm = LogLinearValue::from_log(m as u64, BigRational::one() + &sigma)?;
    let cm1 = LogLinearValue::from_log(m as u64 + 1, -sigma)?;
    Ok(cm.add(&cm1))
}

/// The difference block `u_n = lambda_1 ... lambda_{2^n}` over `{-1,0,1}`.
pub fn difference_block(n: u32) -> Result<Vec<i32>> {
    lambda_prefix(0, 1u64 << n)
}

/// `u_n` followed by its negation; its zero-digit fraction is exactly
/// `-sum_{i=1}^{n} (-1/2)^i`.
pub fn difference_block_pair(n: u32) -> Result<Vec<i32>> {
    let mut block = difference_block(n)?;
    let negated: Vec<i32> = block.iter().map(|d| -d).collect();
    block.extend(negated);
    Ok(block)
}

/// Exact dimension of the intersection for an eventually periodic unique
/// expansion: the mean of `log n_j` over one period, divided by `log q`.
/// The preperiod cannot move a Cesàro mean, so it does not contribute.
///
/// Requires `q - 1 > m1` and a unique expansion; both are checked.
pub fn dimension_of_periodic(
    s: &EventuallyPeriodicSeq,
    q: &Base,
    m1: u32,
    m2: u32,
) -> Result<LogLinearValue> {
    let mut tester = UniquenessTester::new(m1, m2, q)?;
    dimension_of_periodic_with(s, q, m1, m2, &mut tester)
}

/// [`dimension_of_periodic`] with a caller-provided tester, so the
/// reference-expansion cache is shared across a family of inputs.
pub fn dimension_of_periodic_with(
    s: &EventuallyPeriodicSeq,
    q: &Base,
    m1: u32,
    m2: u32,
    tester: &mut UniquenessTester,
) -> Result<LogLinearValue> {
    match q.try_cmp_int(m1 as i64 + 1) {
        Some(Ordering::Greater) => {}
        Some(_) => {
            return Err(Error::HypothesisViolated(format!(
                "need q - 1 > m1, got q <= {}",
                m1 + 1
            )))
        }
        None => {
            return Err(Error::Undecidable(
                "q is within tolerance of m1 + 1".into(),
            ))
        }
    }
    match tester.verdict(s)? {
        UniquenessVerdict::Unique => {}
        UniquenessVerdict::NotUnique(w) => {
            return Err(Error::NotUnique {
                tail_start: w.tail_start,
            })
        }
        UniquenessVerdict::Undecided { .. } => return Err(Error::UniquenessUndecided),
    }
    let canonical = s.canonical();
    let period = canonical.period();
    let len = BigRational::from_integer(BigInt::from(period.len()));
    let mut value = LogLinearValue::zero();
    for &t in period {
        let n = branch_count(t, m1, m2)?;
        value = value.add(&LogLinearValue::from_log(
            n as u64,
            BigRational::one() / &len,
        )?);
    }
    Ok(value)
}

/// Trace of the running dimension exponents `s_k` along a digit stream,
/// with the infimum over the tail window `[K/2, K]` as the estimate.
#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub trace: Vec<f64>,
    pub estimate: PrecisionReal,
    pub horizon: usize,
    pub window_start: usize,
}

/// Streaming estimate of `liminf (sum log n_j) / (k log q)` over the first
/// `horizon` digits. This is an estimate with an explicit horizon, not an
/// asserted limit.
pub fn dimension_estimate(
    stream: impl IntoIterator<Item = i32>,
    q: &Base,
    m1: u32,
    m2: u32,
    horizon: usize,
) -> Result<DimensionEstimate> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be >= 1".into()));
    }
    match q.try_cmp_int(m1 as i64 + 1) {
        Some(Ordering::Greater) => {}
        _ => {
            return Err(Error::HypothesisViolated(format!(
                "need q - 1 > m1, got q <= {}",
                m1 + 1
            )))
        }
    }
    let iv = q.enclosure(80);
    let ln_lo = iv.lo.to_f64().unwrap_or(f64::NAN).ln();
    let ln_hi = iv.hi.to_f64().unwrap_or(f64::NAN).ln();
    let ln_mid = 0.5 * (ln_lo + ln_hi);
    // precompute log of each possible branch count
    let max_n = (m2 + 1) as usize;
    let ln_table: Vec<f64> = (0..=max_n).map(|n| (n.max(1) as f64).ln()).collect();

    let mut trace = Vec::with_capacity(horizon);
    let mut acc = 0.0f64;
    let mut count = 0usize;
    for t in stream {
        let n = branch_count(t, m1, m2)?;
        acc += ln_table[n as usize];
        count += 1;
        trace.push(acc / (count as f64 * ln_mid));
        if count == horizon {
            break;
        }
    }
    if count < horizon {
        return Err(Error::InvalidParameter(format!(
            "stream ended after {count} digits, horizon is {horizon}"
        )));
    }
    let window_start = horizon / 2;
    let inf = trace[window_start..]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    // uncertainty from the base enclosure plus float accumulation slop
    let rel = ((ln_hi - ln_lo) / ln_mid).abs();
    let radius = inf.abs() * (rel + 1e-12) + 1e-300;
    Ok(DimensionEstimate {
        trace,
        estimate: PrecisionReal::new(inf, radius),
        horizon,
        window_start,
    })
}

/// Which regime of the dimension-set classification applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionRegime {
    /// `q - 1 <= m2`: both sets are intervals; the set is `{0, 1}`.
    OverlappingIntervals,
    /// `m2 < q - 1 <= m1`: the set is `{0, log(m2+1)/log q}`.
    SmallCantorFactor,
    /// `m2 < m1 < q - 1`: the set contains `log(m2+1)/log q`.
    AsymmetricSeparated,
    /// Symmetric alphabet with `q_k < q <= q_{k+1}`: finite explicit list.
    SymmetricLadder { k: u32 },
    /// Symmetric alphabet at the Komornik–Loreti base: explicit list plus
    /// an infinite family.
    SymmetricAtKomornikLoreti,
    /// Symmetric alphabet above the Komornik–Loreti base: contains an
    /// interval.
    SymmetricAboveKomornikLoreti,
}

/// Description of the dimension set: listed members, an optional infinite
/// family (truncated for display), contained intervals, and whether the
/// listing is exact or a containment statement.
#[derive(Debug, Clone)]
pub struct DimensionSetDescription {
    pub regime: DimensionRegime,
    pub values: Vec<LogLinearValue>,
    /// Family members listed explicitly (the family is infinite at the
    /// Komornik–Loreti base).
    pub family_infinite: bool,
    pub intervals: Vec<(LogLinearValue, LogLinearValue)>,
    /// Exact set when true; "contains at least these" when false.
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct DimensionSetOptions {
    /// How many members of an infinite family to list.
    pub family_limit: u32,
    pub tolerance: f64,
    /// Block size for the interval endpoints above the Komornik–Loreti
    /// base; picked empirically when absent.
    pub block_size: Option<u32>,
}

impl Default for DimensionSetOptions {
    fn default() -> Self {
        DimensionSetOptions {
            family_limit: 8,
            tolerance: crate::bases::DEFAULT_TOLERANCE,
            block_size: None,
        }
    }
}

fn push_unique(values: &mut Vec<LogLinearValue>, v: LogLinearValue) {
    if !values.contains(&v) {
        values.push(v);
    }
}

/// Classifies the dimension set of `Gamma_{q,m1} ∩ (Gamma_{q,m2} + t)` over
/// all `t` with unique expansions.
pub fn dimension_set(
    m1: u32,
    m2: u32,
    q: &Base,
    opts: &DimensionSetOptions,
) -> Result<DimensionSetDescription> {
    if m2 < 1 || m1 < m2 {
        return Err(Error::InvalidParameter(format!(
            "need m1 >= m2 >= 1, got ({m1}, {m2})"
        )));
    }
    if q.try_cmp_int(1) != Some(Ordering::Greater) {
        return Err(Error::InvalidParameter("base must exceed 1".into()));
    }

    let cmp_or_undecided = |n: i64| -> Result<Ordering> {
        q.try_cmp_int(n)
            .ok_or_else(|| Error::Undecidable(format!("q is within tolerance of {n}")))
    };

    // q - 1 <= m2: both factors are intervals.
    if cmp_or_undecided(m2 as i64 + 1)? != Ordering::Greater {
        return Ok(DimensionSetDescription {
            regime: DimensionRegime::OverlappingIntervals,
            values: vec![LogLinearValue::zero(), LogLinearValue::one()],
            family_infinite: false,
            intervals: Vec::new(),
            exact: true,
        });
    }

    // m2 < q - 1 <= m1: one Cantor factor, one interval.
    if cmp_or_undecided(m1 as i64 + 1)? != Ordering::Greater {
        return Ok(DimensionSetDescription {
            regime: DimensionRegime::SmallCantorFactor,
            values: vec![LogLinearValue::zero(), log_ratio(m2 as u64 + 1)?],
            family_infinite: false,
            intervals: Vec::new(),
            exact: true,
        });
    }

    if m1 > m2 {
        return Ok(DimensionSetDescription {
            regime: DimensionRegime::AsymmetricSeparated,
            values: vec![log_ratio(m2 as u64 + 1)?],
            family_infinite: false,
            intervals: Vec::new(),
            exact: false,
        });
    }

    // symmetric alphabet, q > m + 1
    let m = m1;
    let max_digit = (2 * m) as u8;
    match locate_base(q, max_digit, opts.tolerance)? {
        BaseLocation::AtOrBelowGolden { .. } => {
            // q <= q_1 = m + 1 is already covered above; keep the regime total
            Ok(DimensionSetDescription {
                regime: DimensionRegime::OverlappingIntervals,
                values: vec![LogLinearValue::zero(), LogLinearValue::one()],
                family_infinite: false,
                intervals: Vec::new(),
                exact: true,
            })
        }
        BaseLocation::Between { k, .. } => {
            let mut values = vec![LogLinearValue::zero(), log_ratio(m as u64 + 1)?];
            // members attained by the doubled difference blocks that are
            // unique strictly below q: indices 0 ..= k-2
            if k >= 2 {
                for j in 0..=k - 2 {
                    push_unique(&mut values, mirror_block_dimension(m, j)?);
                }
            }
            Ok(DimensionSetDescription {
                regime: DimensionRegime::SymmetricLadder { k },
                values,
                family_infinite: false,
                intervals: Vec::new(),
                exact: true,
            })
        }
        BaseLocation::AtKomornikLoreti => {
            let mut values = vec![LogLinearValue::zero(), log_ratio(m as u64 + 1)?];
            // log[m^2 (m+1)] / (3 log q)
            let third = BigRational::new(BigInt::one(), BigInt::from(3));
            let kl_value = LogLinearValue::from_log(m as u64, &third + &third)?
                .add(&LogLinearValue::from_log(m as u64 + 1, third)?);
            push_unique(&mut values, kl_value);
            for j in 1..=opts.family_limit {
                push_unique(&mut values, mirror_block_dimension(m, j)?);
            }
            Ok(DimensionSetDescription {
                regime: DimensionRegime::SymmetricAtKomornikLoreti,
                values,
                family_infinite: true,
                intervals: Vec::new(),
                exact: true,
            })
        }
        BaseLocation::AboveKomornikLoreti { .. } => {
            let mut intervals = Vec::new();
            let n = match opts.block_size {
                Some(n) => n,
                None => default_block_size(m, m, q)?,
            };
            let blocks = interpolation_blocks(m, m, n)?;
            let endpoint = |d2: &BigRational| -> Result<LogLinearValue> {
                Ok(LogLinearValue::from_log(m as u64 + 1, d2.clone())?
                    .add(&LogLinearValue::from_log(
                        m as u64,
                        BigRational::one() - d2,
                    )?))
            };
            intervals.push((endpoint(&blocks.d2_w1)?, endpoint(&blocks.d2_w2)?));
            // above the critical base the whole band [c1, c2] is covered
            let qc = critical_base(m)?;
            if q.try_cmp(&qc) == Some(Ordering::Greater) || q.try_cmp(&qc) == Some(Ordering::Equal)
            {
                intervals.push((log_ratio(m as u64)?, log_ratio(m as u64 + 1)?));
            }
            Ok(DimensionSetDescription {
                regime: DimensionRegime::SymmetricAboveKomornikLoreti,
                values: Vec::new(),
                family_infinite: false,
                intervals,
                exact: false,
            })
        }
    }
}

/// Periodic sequence over `{-1, 0, 1}` whose zero-digit density is exactly
/// `density`: the shortest block `(1,-1)^a 0^b` with `b / (2a + b)` equal
/// to it.
pub fn periodic_with_zero_density(density: &BigRational) -> Result<EventuallyPeriodicSeq> {
    if density.is_negative() || density > &BigRational::one() {
        return Err(Error::InvalidParameter(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let p = density.numer().to_u64().unwrap_or(u64::MAX);
    let r = density.denom().to_u64().unwrap_or(u64::MAX);
    if r == u64::MAX || p == u64::MAX {
        return Err(Error::InvalidParameter("density is too complex".into()));
    }
    let (a, b) = if p == 0 {
        (1u64, 0u64)
    } else if p == r {
        (0u64, 1u64)
    } else {
        let g = crate::real::gcd_u64(2 * p, r - p);
        ((r - p) / g, 2 * p / g)
    };
    let mut period = Vec::with_capacity((2 * a + b) as usize);
    for _ in 0..a {
        period.extend_from_slice(&[1, -1]);
    }
    period.extend(std::iter::repeat(0).take(b as usize));
    EventuallyPeriodicSeq::periodic(period, -1, 1)
}

/// The two interpolation block words over the signed alphabet centered at
/// `mu = (m1 - m2)/2` (requires `m1 + m2` even), with their exact
/// center-digit fractions.
#[derive(Debug, Clone)]
pub struct InterpolationBlocks {
    pub block_size: u32,
    /// `a_n`: center digit followed by `2^n - 1` difference digits.
    pub a: Vec<i32>,
    /// `b_n`: like `a_n` but starting one lower.
    pub b: Vec<i32>,
    /// `w1 = b \bar{a} \bar{b} a`, length `4 * 2^n`.
    pub w1: Vec<i32>,
    /// `w2 = \bar{a} a`, length `2 * 2^n`.
    pub w2: Vec<i32>,
    pub d2_w1: BigRational,
    pub d2_w2: BigRational,
}

/// Builds the interpolation blocks for level `n >= 1`.
pub fn interpolation_blocks(m1: u32, m2: u32, n: u32) -> Result<InterpolationBlocks> {
    if m2 < 1 || m1 < m2 {
        return Err(Error::InvalidParameter(format!(
            "need m1 >= m2 >= 1, got ({m1}, {m2})"
        )));
    }
    if (m1 + m2) % 2 != 0 {
        return Err(Error::InvalidParameter(
            "interpolation blocks need an even alphabet span".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("block size must be >= 1".into()));
    }
    let mu = (m1 as i32 - m2 as i32) / 2;
    let lam = lambda_prefix(mu, (1u64 << n) - 1)?;
    let mut a = vec![mu];
    a.extend_from_slice(&lam);
    let mut b = vec![mu - 1];
    b.extend_from_slice(&lam);
    let refl = |w: &[i32]| -> Vec<i32> { w.iter().map(|&d| 2 * mu - d).collect() };
    let mut w1 = b.clone();
    w1.extend(refl(&a));
    w1.extend(refl(&b));
    w1.extend(a.iter().copied());
    let mut w2 = refl(&a);
    w2.extend(a.iter().copied());
    let frac = |w: &[i32]| -> BigRational {
        let count = w.iter().filter(|&&d| d == mu).count();
        BigRational::new(BigInt::from(count), BigInt::from(w.len()))
    };
    Ok(InterpolationBlocks {
        block_size: n,
        d2_w1: frac(&w1),
        d2_w2: frac(&w2),
        a,
        b,
        w1,
        w2,
    })
}

/// Labels for the four-letter block subshift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubshiftBlock {
    A,
    B,
    ARefl,
    BRefl,
}

/// The adjacency relation of the block subshift: which block may follow
/// which.
pub fn subshift_allows(from: SubshiftBlock, to: SubshiftBlock) -> bool {
    use SubshiftBlock::*;
    matches!(
        (from, to),
        (A, B) | (A, ARefl) | (B, ARefl) | (ARefl, A) | (ARefl, BRefl) | (BRefl, A)
    )
}

/// Smallest block size whose interpolation blocks generate verifiably
/// unique periodic expansions at `q` (checked empirically on `w1`, `w2`,
/// and `w1 w2`).
pub fn default_block_size(m1: u32, m2: u32, q: &Base) -> Result<u32> {
    let mut tester = UniquenessTester::new(m1, m2, q)?;
    let (lo, hi) = (-(m2 as i32), m1 as i32);
    for n in 1..=12 {
        let blocks = interpolation_blocks(m1, m2, n)?;
        let mut all_unique = true;
        let mut w1w2 = blocks.w1.clone();
        w1w2.extend_from_slice(&blocks.w2);
        for word in [&blocks.w1, &blocks.w2, &w1w2] {
            let s = EventuallyPeriodicSeq::periodic(word.clone(), lo, hi)?;
            match tester.verdict(&s)? {
                UniquenessVerdict::Unique => {}
                _ => {
                    all_unique = false;
                    break;
                }
            }
        }
        if all_unique {
            return Ok(n);
        }
    }
    Err(Error::Undecidable(
        "no admissible block size found up to 12".into(),
    ))
}

/// Self-similarity verdict for the intersection attached to a unique
/// eventually periodic expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfSimilarity {
    /// A factorization `I J^inf` with `|I| = |J| = block_len` and `I <= J`.
    Yes { block_len: usize },
    /// Provably impossible: the first letters disagree the wrong way for
    /// every admissible block length.
    No,
    /// No factorization found among the first 64 admissible lengths.
    NotFoundWithinBudget,
}

/// Number of candidate block lengths tried by [`is_self_similar`].
const SELF_SIMILAR_BUDGET: usize = 64;

/// Decides whether the intersection for `s` (a unique expansion over
/// `{-m, ..., m}`, in base `q > m + 1`) is a self-similar set, by searching
/// for a factorization `(m - |t_i|) = I J^inf` with `I <= J`.
pub fn is_self_similar(
    s: &EventuallyPeriodicSeq,
    m: u32,
    q: &Base,
) -> Result<SelfSimilarity> {
    let mut tester = UniquenessTester::new(m, m, q)?;
    is_self_similar_with(s, m, q, &mut tester)
}

pub fn is_self_similar_with(
    s: &EventuallyPeriodicSeq,
    m: u32,
    q: &Base,
    tester: &mut UniquenessTester,
) -> Result<SelfSimilarity> {
    match q.try_cmp_int(m as i64 + 1) {
        Some(Ordering::Greater) => {}
        _ => {
            return Err(Error::HypothesisViolated(format!(
                "need q > m + 1 = {}",
                m + 1
            )))
        }
    }
    match tester.verdict(s)? {
        UniquenessVerdict::Unique => {}
        UniquenessVerdict::NotUnique(w) => {
            return Err(Error::NotUnique {
                tail_start: w.tail_start,
            })
        }
        UniquenessVerdict::Undecided { .. } => return Err(Error::UniquenessUndecided),
    }

    let folded = s
        .canonical()
        .map_digits(0, m as i32, |d| m as i32 - d.abs())?
        .canonical();
    let pre = folded.preperiod().len();
    let per = folded.period().len();
    // admissible block lengths: multiples of the period, at least the preperiod
    let first = per * pre.div_ceil(per).max(1);

    // constant first letter of J across all candidates
    let j_first = folded.digit(first);
    let i_first = folded.digit(0);
    if i_first > j_first {
        return Ok(SelfSimilarity::No);
    }

    for t in 0..SELF_SIMILAR_BUDGET {
        let len = first + t * per;
        let i_block: Vec<i32> = (0..len).map(|i| folded.digit(i)).collect();
        let j_block: Vec<i32> = (len..2 * len).map(|i| folded.digit(i)).collect();
        if i_block <= j_block {
            return Ok(SelfSimilarity::Yes { block_len: len });
        }
    }
    Ok(SelfSimilarity::NotFoundWithinBudget)
}

/// Periodic zero-density sequences hitting the dimension mesh
/// `{0, 1/mesh, ..., 1}` between `c_1 = log m / log q` and
/// `c_2 = log(m+1) / log q`; every member is verified unique and
/// self-similar. Requires `q >= q_c`.
pub fn self_similar_family(
    m: u32,
    q: &Base,
    mesh: u32,
) -> Result<Vec<(EventuallyPeriodicSeq, LogLinearValue)>> {
    if mesh == 0 {
        return Err(Error::InvalidParameter("mesh must be >= 1".into()));
    }
    let qc = critical_base(m)?;
    match q.try_cmp(&qc) {
        Some(Ordering::Greater) | Some(Ordering::Equal) => {}
        Some(Ordering::Less) => {
            return Err(Error::HypothesisViolated(
                "family needs q >= q_c".into(),
            ))
        }
        None => {
            return Err(Error::Undecidable(
                "q is within tolerance of the critical base".into(),
            ))
        }
    }
    let mut tester = UniquenessTester::new(m, m, q)?;
    let mut out = Vec::with_capacity(mesh as usize + 1);
    for i in 0..=mesh {
        let density = BigRational::new(BigInt::from(i), BigInt::from(mesh));
        let s = periodic_with_zero_density(&density)?;
        let dim = dimension_of_periodic_with(&s, q, m, m, &mut tester)?;
        match is_self_similar_with(&s, m, q, &mut tester)? {
            SelfSimilarity::Yes { .. } => {}
            other => {
                return Err(Error::Undecidable(format!(
                    "family member at density {density} is not verifiably self-similar: {other:?}"
                )))
            }
        }
        out.push((s, dim));
    }
    Ok(out)
}

/// A unique periodic expansion found by the exhaustive survey, with its
/// exact dimension.
#[derive(Debug, Clone)]
pub struct SurveyEntry {
    pub period: Vec<i32>,
    pub dimension: LogLinearValue,
}

/// Exhaustively enumerates all periodic sequences over `{-m2, ..., m1}`
/// with period length at most `max_len`, keeping those that are unique
/// expansions, with their exact dimensions. Requires `q - 1 > m1`.
///
/// Results are in enumeration order regardless of the parallel feature.
pub fn periodic_survey(
    m1: u32,
    m2: u32,
    q: &Base,
    max_len: u32,
) -> Result<Vec<SurveyEntry>> {
    let candidates = survey_candidates(m1, m2, max_len);
    #[cfg(feature = "parallel")]
    {
        let chunks: Vec<Result<Vec<SurveyEntry>>> = candidates
            .par_chunks(256)
            .map_init(
                || UniquenessTester::new(m1, m2, q),
                |tester, chunk| {
                    let tester = match tester {
                        Ok(t) => t,
                        Err(e) => return Err(e.clone()),
                    };
                    survey_chunk(chunk, q, m1, m2, tester)
                },
            )
            .collect();
        let mut out = Vec::new();
        for c in chunks {
            out.extend(c?);
        }
        Ok(out)
    }
    #[cfg(not(feature = "parallel"))]
    {
        periodic_survey_seq_from(&candidates, q, m1, m2)
    }
}

/// Sequential twin of [`periodic_survey`]; always available, identical
/// results.
pub fn periodic_survey_seq(
    m1: u32,
    m2: u32,
    q: &Base,
    max_len: u32,
) -> Result<Vec<SurveyEntry>> {
    let candidates = survey_candidates(m1, m2, max_len);
    periodic_survey_seq_from(&candidates, q, m1, m2)
}

fn periodic_survey_seq_from(
    candidates: &[Vec<i32>],
    q: &Base,
    m1: u32,
    m2: u32,
) -> Result<Vec<SurveyEntry>> {
    let mut tester = UniquenessTester::new(m1, m2, q)?;
    survey_chunk(candidates, q, m1, m2, &mut tester)
}

fn survey_chunk(
    chunk: &[Vec<i32>],
    q: &Base,
    m1: u32,
    m2: u32,
    tester: &mut UniquenessTester,
) -> Result<Vec<SurveyEntry>> {
    let (lo, hi) = (-(m2 as i32), m1 as i32);
    let mut out = Vec::new();
    for period in chunk {
        let s = EventuallyPeriodicSeq::periodic(period.clone(), lo, hi)?;
        match tester.verdict(&s)? {
            UniquenessVerdict::Unique => {
                let dim = dimension_of_periodic_with(&s, q, m1, m2, tester)?;
                out.push(SurveyEntry {
                    period: period.clone(),
                    dimension: dim,
                });
            }
            UniquenessVerdict::NotUnique(_) => {}
            UniquenessVerdict::Undecided { .. } => return Err(Error::UniquenessUndecided),
        }
    }
    Ok(out)
}

fn survey_candidates(m1: u32, m2: u32, max_len: u32) -> Vec<Vec<i32>> {
    let alphabet: Vec<i32> = (-(m2 as i32)..=m1 as i32).collect();
    let mut out = Vec::new();
    for len in 1..=max_len as usize {
        let mut indices = vec![0usize; len];
        loop {
            out.push(indices.iter().map(|&i| alphabet[i]).collect());
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < alphabet.len() {
                    break;
                }
                indices[pos] = 0;
            }
            if indices.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    out
}
