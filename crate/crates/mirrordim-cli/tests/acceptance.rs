//! Acceptance suite: each test is one exit criterion, run at its stated
//! tolerance, printing one pass line on success (the harness prints the
//! fail line otherwise). The whole suite is budgeted to run far inside
//! three minutes.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use mirrordim::bases::{
    base_of_word, certify_ladder_order, critical_base, generalized_golden_ratio,
    komornik_loreti_base, omega_word, Base,
};
use mirrordim::dimension::{
    alternating_half_sum, difference_block_pair, dimension_estimate, dimension_of_periodic,
    is_self_similar, mirror_block_dimension, periodic_survey, periodic_with_zero_density,
    self_similar_family, LogLinearValue, SelfSimilarity,
};
use mirrordim::expansions::{ep_value, signed_reference_prefix, UniquenessTester};
use mirrordim::frequency::{block_density, block_density_at, symbol_fractions};
use mirrordim::mirror::{kl_signed_prefix, lambda_prefix, MirrorSeed};
use mirrordim::real::Real;
use mirrordim::words::{count_boundary, count_occurrences_seq, EventuallyPeriodicSeq, Word};
use mirrordim::UniquenessVerdict;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Deterministic splitmix64 stream; no external RNG needed.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn run_cli(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_mirrordim"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "cli failed: {args:?}");
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn criterion_01_frequency_golden_table() {
    let start = Instant::now();
    // The 1/12 entry corrects the printed table's arithmetic slip for
    // 00101: its reflection 11010 occurs at position 1 of the 16-digit
    // prefix, so P = 2, not 1 (re-derived below by direct enumeration).
    let expect = [
        ("0", "1/2"),
        ("01", "1/3"),
        ("00", "1/6"),
        ("000", "0"),
        ("001", "1/6"),
        ("010", "1/6"),
        ("011", "1/6"),
        ("00101", "1/12"),
    ];
    for (block, density) in expect {
        let doc = run_cli(&["freq", "--max-digit", "1", "--seed", "0", "--block", block]);
        assert_eq!(
            doc["payload"]["density"].as_str().unwrap(),
            density,
            "density of {block}"
        );
    }
    // independent recount over the paper-style prefixes for 00101
    let tm16 = MirrorSeed::thue_morse().prefix(16).unwrap();
    let tm4 = &tm16.digits()[..4];
    let n = count_occurrences_seq(&[0, 0, 1, 0, 1], tm4)
        + count_occurrences_seq(&[1, 1, 0, 1, 0], tm4);
    let p = count_occurrences_seq(&[0, 0, 1, 0, 1], tm16.digits())
        + count_occurrences_seq(&[1, 1, 0, 1, 0], tm16.digits());
    assert_eq!((n, p), (0, 2));

    // the difference-sequence digits all have density 1/3
    for digit in ["-1", "0", "1"] {
        let doc = run_cli(&[
            "freq",
            "--max-digit",
            "1",
            "--seed",
            "0",
            "--diff-digit",
            digit,
        ]);
        assert_eq!(doc["payload"]["density"].as_str().unwrap(), "1/3");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: frequency golden table reproduced exactly \
         (d(00101)=1/12 after recount; printed 1/24 fails its own counts) in {elapsed:?}"
    );
}

#[test]
fn criterion_02_level_stability_and_reflection() {
    let start = Instant::now();
    let mut rng = Rng(0x5eed_0002);
    for case in 0..200 {
        let max_digit = rng.below(3) as u8 + 1;
        let seed_len = rng.below(3) as usize + 1;
        let block_len = rng.below(6) as usize + 1;
        let mut seed_digits = Vec::with_capacity(seed_len);
        for _ in 0..seed_len {
            seed_digits.push(rng.below(max_digit as u64 + 1) as u8);
        }
        let mut block_digits = Vec::with_capacity(block_len);
        for _ in 0..block_len {
            block_digits.push(rng.below(max_digit as u64 + 1) as u8);
        }
        let seed = MirrorSeed::new(Word::new(seed_digits, max_digit).unwrap()).unwrap();
        let block = Word::new(block_digits, max_digit).unwrap();
        let base = block_density(&block, &seed).unwrap();
        for extra in 1..=2 {
            let again = block_density_at(&block, &seed, base.n_used + extra).unwrap();
            assert_eq!(again.value, base.value, "case {case}: level instability");
        }
        let refl = block_density(&block.reflect(), &seed).unwrap();
        assert_eq!(refl.value, base.value, "case {case}: reflection asymmetry");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("ACCEPTANCE 2 PASS: 200 random cases level-stable and reflection-symmetric in {elapsed:?}");
}

#[test]
fn criterion_03_counting_identity_suite() {
    let start = Instant::now();
    let mut rng = Rng(0x5eed_0003);
    for case in 0..1000 {
        let max_digit = rng.below(3) as u8 + 1;
        let dlen = rng.below(6) as usize + 1;
        let elen = dlen.max(rng.below(64) as usize + 1);
        let zlen = dlen.max(rng.below(64) as usize + 1);
        let rand_word = |rng: &mut Rng, len: usize| -> Vec<u8> {
            (0..len).map(|_| rng.below(max_digit as u64 + 1) as u8).collect()
        };
        let delta = rand_word(&mut rng, dlen);
        let eps = rand_word(&mut rng, elen);
        let zeta = rand_word(&mut rng, zlen);
        let refl = |w: &[u8]| -> Vec<u8> { w.iter().map(|&d| max_digit - d).collect() };

        // reflection symmetry
        assert_eq!(
            count_occurrences_seq(&refl(&delta), &eps),
            count_occurrences_seq(&delta, &refl(&eps)),
            "case {case}"
        );
        // additivity across the junction
        let mut cat = eps.clone();
        cat.extend_from_slice(&zeta);
        let boundary = count_boundary(&delta, &eps, &zeta).unwrap();
        assert_eq!(
            count_occurrences_seq(&delta, &cat),
            count_occurrences_seq(&delta, &eps)
                + count_occurrences_seq(&delta, &zeta)
                + boundary,
            "case {case}"
        );
        // boundary bound
        assert!(boundary <= dlen as u64 - 1, "case {case}");
        // count difference bound on eps · refl(eps)
        let mut pal = eps.clone();
        pal.extend_from_slice(&refl(&eps));
        let a = count_occurrences_seq(&refl(&delta), &pal) as i64;
        let b = count_occurrences_seq(&delta, &pal) as i64;
        assert!(
            (a - b).unsigned_abs() <= dlen as u64 - 1,
            "case {case}"
        );
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 3 PASS: 1000 random triples satisfy all four counting identities in {elapsed:?}");
}

#[test]
fn criterion_04_critical_bases() {
    let start = Instant::now();
    // closed forms match the first ladder rung within 1e-10
    for max_digit in 1..=6u8 {
        let closed = generalized_golden_ratio(max_digit).unwrap();
        let rung = base_of_word(&omega_word(max_digit, 1).unwrap(), 1e-12).unwrap();
        let gap = (closed.to_f64() - rung.to_f64()).abs();
        assert!(gap < 1e-10, "M={max_digit}: golden gap {gap}");
    }
    // strict ladder below the Komornik-Loreti base, certified exactly
    for max_digit in 1..=4u8 {
        certify_ladder_order(max_digit, 8).unwrap();
    }
    // the binary-alphabet Komornik-Loreti base, certified bracket
    let kl1 = komornik_loreti_base(1, 1e-12).unwrap();
    let iv = kl1.enclosure(0);
    assert!(iv.lo > rat(1_787_231, 1_000_000) && iv.hi < rat(1_787_233, 1_000_000));
    assert!(kl1.to_precision().radius <= 1.01e-12);
    // KL bounds for asymmetric alphabets
    for m1 in 2..=4u8 {
        for m2 in 1..m1 {
            let kl = komornik_loreti_base(m1 + m2, 1e-10).unwrap();
            assert_eq!(
                kl.try_cmp_int(m2 as i64 + 1),
                Some(Ordering::Greater),
                "m1={m1} m2={m2}"
            );
            assert_eq!(
                kl.try_cmp_int(m1 as i64 + 1),
                Some(Ordering::Less),
                "m1={m1} m2={m2}"
            );
        }
    }
    // q_c(1) = (3 + sqrt 5)/2 exactly, and to 1e-12 in floats
    let qc = critical_base(1).unwrap();
    let expect = Real::quadratic(rat(3, 2), rat(1, 2), 5);
    assert_eq!(qc.exact().unwrap(), &expect);
    assert!((qc.to_f64() - 2.618033988749895).abs() < 1e-12);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("ACCEPTANCE 4 PASS: golden/ladder/KL/critical base properties certified in {elapsed:?}");
}

#[test]
fn criterion_05_difference_zero_fractions() {
    let start = Instant::now();
    for n in 1..=12u32 {
        let prefix = lambda_prefix(0, 1u64 << n).unwrap();
        let (_, d2, _) = symbol_fractions(&prefix, 0).unwrap();
        assert_eq!(d2, -alternating_half_sum(n), "n={n}");
    }
    println!(
        "ACCEPTANCE 5 PASS: center-digit fraction of the difference prefix equals the \
         alternating sum exactly for n <= 12 in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_06_closed_form_equivalence() {
    let start = Instant::now();
    // the doubled difference block, as the periodic part of the shifted
    // expansion, realizes the closed-form dimension — exact equality of
    // log-linear values, independent of q
    for m in 1..=3u32 {
        let q = Base::parse(&(2 * m + 1).to_string()).unwrap();
        for j in 1..=5u32 {
            let block = difference_block_pair(j).unwrap();
            let s = EventuallyPeriodicSeq::periodic(block, -(m as i32), m as i32).unwrap();
            let dim = dimension_of_periodic(&s, &q, m, m).unwrap();
            let formula = mirror_block_dimension(m, j).unwrap();
            assert_eq!(dim, formula, "m={m} j={j}");
        }
    }
    println!(
        "ACCEPTANCE 6 PASS: block dimensions equal the closed form as exact values \
         (m <= 3, j <= 5) in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_07_streaming_convergence_at_kl() {
    let start = Instant::now();
    let kl = komornik_loreti_base(2, 1e-12).unwrap();
    let target = LogLinearValue::from_log(2, rat(1, 3)).unwrap().eval(&kl).value;
    let mut errors = Vec::new();
    for exp in [6u32, 7, 8] {
        let horizon = 1usize << (2 * exp);
        let stream = kl_signed_prefix(1, 1, horizon as u64).unwrap();
        let est = dimension_estimate(stream, &kl, 1, 1, horizon).unwrap();
        errors.push((est.estimate.value - target).abs());
    }
    assert!(
        errors[0] >= errors[1] && errors[1] >= errors[2],
        "no monotone improvement: {errors:?}"
    );
    assert!(errors[2] < 1e-3, "error at 4^8: {}", errors[2]);
    println!(
        "ACCEPTANCE 7 PASS: streaming exponent within {:.2e} of the closed form at 4^8, \
         improving monotonically over 4^6..4^8, in {:?}",
        errors[2],
        start.elapsed()
    );
}

#[test]
fn criterion_08_interpolation_and_self_similarity() {
    let start = Instant::now();
    for (m, q_str) in [(1u32, "3"), (2, "4")] {
        let q = Base::parse(q_str).unwrap();
        for (num, den) in [(0i64, 1i64), (1, 4), (1, 3), (1, 2), (1, 1)] {
            let density = rat(num, den);
            let s = periodic_with_zero_density(&density).unwrap();
            let verdict = mirrordim::is_unique_expansion(&s, &q, m, m).unwrap();
            assert!(verdict.is_unique(), "m={m} density {num}/{den}");
            let sim = is_self_similar(&s, m, &q).unwrap();
            assert!(
                matches!(sim, SelfSimilarity::Yes { .. }),
                "m={m} density {num}/{den}: {sim:?}"
            );
            let dim = dimension_of_periodic(&s, &q, m, m).unwrap();
            let expect = LogLinearValue::from_log(m as u64 + 1, density.clone())
                .unwrap()
                .add(
                    &LogLinearValue::from_log(m as u64, BigRational::one() - &density).unwrap(),
                );
            assert_eq!(dim, expect, "m={m} density {num}/{den}");
        }
        // mesh 20 covers the dimension band with gaps of at most 5%
        let family = self_similar_family(m, &q, 20).unwrap();
        assert_eq!(family.len(), 21);
        let dims: Vec<f64> = family.iter().map(|(_, d)| d.eval(&q).value).collect();
        let c1 = LogLinearValue::from_log(m as u64, BigRational::one())
            .unwrap()
            .eval(&q)
            .value;
        let c2 = LogLinearValue::from_log(m as u64 + 1, BigRational::one())
            .unwrap()
            .eval(&q)
            .value;
        let band = c2 - c1;
        for pair in dims.windows(2) {
            let gap = (pair[1] - pair[0]).abs();
            assert!(gap <= 0.05 * band + 1e-12, "gap {gap} vs band {band}");
        }
        assert!((dims[0] - c1).abs() < 1e-12 && (dims[20] - c2).abs() < 1e-12);
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 8 PASS: zero-density family interpolates the band exactly with mesh-20 coverage in {elapsed:?}");
}

#[test]
fn criterion_09_dimension_gap_below_critical() {
    let start = Instant::now();
    let q = Base::parse("2.5").unwrap();
    // read k from the signed reference expansion: 1 0^k (negative)
    let reference = signed_reference_prefix(&q, 1, 64).unwrap();
    assert_eq!(reference[0], 1);
    let k = reference[1..]
        .iter()
        .position(|&d| d < 0)
        .expect("reference turns negative");
    assert!(reference[1..=k].iter().all(|&d| d == 0));
    // delta = (c2 - c1) / (k + 1) with c1 = 0 for m = 1: the zero-digit
    // fraction of any unique period must avoid (1 - 1/(k+1)... , 1), i.e.
    // the open interval (k/(k+1), 1) in fraction space
    let threshold = rat(k as i64, k as i64 + 1);
    let one = BigRational::one();
    let entries = periodic_survey(1, 1, &q, 8).unwrap();
    assert!(!entries.is_empty());
    let mut checked = 0usize;
    for entry in &entries {
        // coefficient of log 2 in the dimension is the zero fraction
        let (terms, q_coeff) = entry.dimension.terms();
        assert!(q_coeff.is_zero());
        let frac = terms
            .iter()
            .find(|(p, _)| *p == 2)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero);
        assert!(
            !(frac > threshold && frac < one),
            "period {:?} lands in the forbidden dimension gap",
            entry.period
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 9 PASS: {checked} unique periods (length <= 8) all avoid the \
         dimension gap below the critical base (k = {k}) in {elapsed:?}"
    );
}

/// Branch-and-bound search for an alternative expansion agreeing with the
/// value to the given depth, in exact rational arithmetic.
fn oracle_finds_alternative(
    s: &EventuallyPeriodicSeq,
    q: &BigRational,
    m: i64,
    depth: usize,
) -> bool {
    let value = match ep_value(s, &Real::Rat(q.clone())).unwrap() {
        Real::Rat(r) => r,
        _ => unreachable!("rational base gives rational value"),
    };
    let bound = BigRational::from_integer(BigInt::from(m)) / (q - BigRational::one());
    // states: scaled remainder after n digits, and whether we deviated
    let mut frontier: BTreeSet<(BigRational, bool)> = BTreeSet::new();
    frontier.insert((value, false));
    for step in 0..depth {
        let expected = s.digit(step) as i64;
        let mut next = BTreeSet::new();
        for (z, deviated) in &frontier {
            let zq = z * q;
            for d in -m..=m {
                let z2 = &zq - BigRational::from_integer(BigInt::from(d));
                if z2.abs() <= bound {
                    next.insert((z2, *deviated || d != expected));
                }
            }
        }
        frontier = next;
        assert!(frontier.len() < 100_000, "oracle frontier blow-up");
    }
    frontier.iter().any(|(_, deviated)| *deviated)
}

#[test]
fn criterion_10_uniqueness_oracle_agreement() {
    let start = Instant::now();
    let mut rng = Rng(0x5eed_000a);
    let mut cases = Vec::new();
    while cases.len() < 100 {
        let len = rng.below(8) as usize + 1;
        let period: Vec<i32> = (0..len).map(|_| rng.below(3) as i32 - 1).collect();
        cases.push(period);
    }
    for q_str in ["2.7", "3.1"] {
        let q = Base::parse(q_str).unwrap();
        let q_rat = match q.exact().unwrap() {
            Real::Rat(r) => r.clone(),
            _ => unreachable!(),
        };
        let mut tester = UniquenessTester::new(1, 1, &q).unwrap();
        for period in &cases {
            let s = EventuallyPeriodicSeq::periodic(period.clone(), -1, 1).unwrap();
            let verdict = tester.verdict(&s).unwrap();
            let oracle_alternative = oracle_finds_alternative(&s, &q_rat, 1, 40);
            match verdict {
                UniquenessVerdict::Unique => {
                    assert!(
                        !oracle_alternative,
                        "q={q_str}: {period:?} claimed unique, oracle found an alternative"
                    );
                }
                UniquenessVerdict::NotUnique(_) => {
                    assert!(
                        oracle_alternative,
                        "q={q_str}: {period:?} claimed not unique, oracle found none"
                    );
                }
                UniquenessVerdict::Undecided { .. } => {
                    panic!("q={q_str}: {period:?} unexpectedly undecided")
                }
            }
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 10 PASS: uniqueness verdicts agree with the branch-and-bound oracle on 100 periods at q = 2.7 and 3.1 in {elapsed:?}");
}
