//! Invariants that tie the modules together: monotonicity of quasi-greedy
//! expansions in the base, the uniqueness of the constructive families,
//! the period-block structure below the Komornik–Loreti base, and the
//! consistency of bisection output with expansion evaluation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use mirrordim::bases::{base_of_word, critical_base, komornik_loreti_base, omega_word, Base};
use mirrordim::dimension::difference_block_pair;
use mirrordim::expansions::{
    ep_value_precision, quasi_greedy_prefix, UniquenessTester, UniquenessVerdict,
};
use mirrordim::frequency::{block_density, empirical_block_density};
use mirrordim::mirror::MirrorSeed;
use mirrordim::real::Real;
use mirrordim::words::{EventuallyPeriodicSeq, Word};
use mirrordim::bases::kl_expansion_digits;

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

#[test]
fn unit_expansion_grows_with_the_base() {
    let mut rng = Rng(0xc0fe_0701);
    for max_digit in [1u8, 2, 4] {
        for _ in 0..40 {
            // two distinct rational bases in (1, M+1]
            let span = max_digit as u64 * 1000;
            let a = 1001 + rng.below(span - 2);
            let b = 1001 + rng.below(span - 2);
            if a == b {
                continue;
            }
            let (lo, hi) = (a.min(b), a.max(b));
            let q_lo = Base::from_rational(BigRational::new(
                BigInt::from(lo),
                BigInt::from(1000u64),
            ));
            let q_hi = Base::from_rational(BigRational::new(
                BigInt::from(hi),
                BigInt::from(1000u64),
            ));
            let p_lo = quasi_greedy_prefix(&Real::one(), &q_lo, max_digit, 48).unwrap();
            let p_hi = quasi_greedy_prefix(&Real::one(), &q_hi, max_digit, 48).unwrap();
            assert!(
                p_lo.digits() <= p_hi.digits(),
                "M={max_digit}: expansion shrank from q={lo}/1000 to q={hi}/1000"
            );
        }
    }
}

#[test]
fn partial_sums_stay_strictly_below_with_representable_tail() {
    // the greedy rule: partial sums < 1, and the geometric tail can always
    // close the gap (checked in exact rationals)
    let mut rng = Rng(0xc0fe_0702);
    for _ in 0..25 {
        let max_digit = rng.below(3) as u8 + 1;
        let q_num = 1001 + rng.below(max_digit as u64 * 1000 - 2);
        let q = BigRational::new(BigInt::from(q_num), BigInt::from(1000u64));
        let base = Base::from_rational(q.clone());
        let prefix = quasi_greedy_prefix(&Real::one(), &base, max_digit, 24).unwrap();
        let mut partial = BigRational::new(BigInt::from(0), BigInt::one());
        let mut power = BigRational::one();
        for (i, &d) in prefix.digits().iter().enumerate() {
            power /= &q;
            partial += BigRational::from_integer(BigInt::from(d)) * &power;
            assert!(partial < BigRational::one(), "partial sum reached 1 at digit {i}");
            // remaining deficit must be coverable by the maximal tail
            let tail_max = BigRational::from_integer(BigInt::from(max_digit)) * &power
                / (&q - BigRational::one());
            assert!(
                &BigRational::one() - &partial <= tail_max,
                "digit {i} left an unreachable deficit"
            );
        }
    }
}

#[test]
fn alternating_block_family_is_unique_at_and_above_critical() {
    let mut rng = Rng(0xc0fe_0703);
    for m in [1u32, 2] {
        let qc = critical_base(m).unwrap();
        let above = Base::from_real(
            qc.exact()
                .unwrap()
                .add(&Real::Rat(BigRational::new(
                    BigInt::from(1),
                    BigInt::from(10),
                )))
                .unwrap(),
        );
        for q in [&qc, &above] {
            let mut tester = UniquenessTester::new(m, m, q).unwrap();
            for _ in 0..20 {
                // periodic closure of (1 -1)^{n1} 0^{n2} ... (1 -1)^{n5} 0^{n6}
                let mut period = Vec::new();
                for i in 0..6 {
                    let reps = rng.below(3) as usize + 1;
                    if i % 2 == 0 {
                        for _ in 0..reps {
                            period.extend_from_slice(&[1, -1]);
                        }
                    } else {
                        period.extend(std::iter::repeat(0).take(reps));
                    }
                }
                let s =
                    EventuallyPeriodicSeq::periodic(period.clone(), -(m as i32), m as i32)
                        .unwrap();
                let verdict = tester.verdict(&s).unwrap();
                assert!(
                    verdict.is_unique(),
                    "m={m}: block {period:?} not unique: {verdict:?}"
                );
            }
        }
    }
}

#[test]
fn period_blocks_switch_on_at_the_right_rung() {
    // Over {-1, 0, 1}: the doubled difference block u_j ū_j becomes a
    // unique periodic expansion exactly when q passes the rung q_{j+2},
    // and (1 + u_j ū_j) is the corresponding doubled ladder word.
    for j in 0..=2u32 {
        let block = difference_block_pair(j).unwrap();
        let shifted: Vec<u8> = block.iter().map(|&d| (d + 1) as u8).collect();
        let word = omega_word(2, j + 1).unwrap();
        let doubled = word.concat(&word.reflect()).unwrap();
        assert_eq!(shifted, doubled.digits(), "j={j}");
    }

    // q = 2.45 lies between rungs 2 and 3; q = 2.53 between rungs 3 and 4
    for (q_str, k) in [("2.45", 2u32), ("2.53", 3)] {
        let q = Base::parse(q_str).unwrap();
        let mut tester = UniquenessTester::new(1, 1, &q).unwrap();
        for j in 0..=3u32 {
            let s = EventuallyPeriodicSeq::periodic(
                difference_block_pair(j).unwrap(),
                -1,
                1,
            )
            .unwrap();
            let verdict = tester.verdict(&s).unwrap();
            let expect_unique = j + 2 <= k;
            match (expect_unique, &verdict) {
                (true, UniquenessVerdict::Unique) => {}
                (false, UniquenessVerdict::NotUnique(_)) => {}
                _ => panic!("q={q_str} j={j}: expected unique={expect_unique}, got {verdict:?}"),
            }
        }
    }
}

#[test]
fn empirical_density_converges_through_doubling_scales() {
    let seed = MirrorSeed::new(Word::parse("01", 1).unwrap()).unwrap();
    for block in ["0", "011", "0110"] {
        let w = Word::parse(block, 1).unwrap();
        let exact = block_density(&w, &seed).unwrap().value;
        let mut last_gap: Option<f64> = None;
        for exp in [2u32, 4, 6, 8] {
            let len = (4u64.pow(exp)) * seed.seed_len() as u64;
            let emp = empirical_block_density(&w, &seed, len).unwrap();
            let gap = (emp - &exact).abs().to_f64().unwrap();
            if let Some(prev) = last_gap {
                assert!(
                    gap <= prev + 1e-12,
                    "{block}: gap grew from {prev} to {gap} at scale {exp}"
                );
            }
            last_gap = Some(gap);
        }
        assert!(last_gap.unwrap() < 2.0 * (w.len() as f64) / 256.0);
    }
}

#[test]
fn ladder_words_evaluate_to_one_at_their_bisected_base() {
    // base_of_word output is consistent with expansion evaluation: the
    // finite expansion (word, then zeros) evaluates to 1 within the
    // propagated radius
    for max_digit in [1u8, 2, 3] {
        for k in 1..=4u32 {
            let word = omega_word(max_digit, k).unwrap();
            let base = base_of_word(&word, 1e-12).unwrap();
            let s = EventuallyPeriodicSeq::new(
                word.digits().iter().map(|&d| d as i32).collect(),
                vec![0],
                0,
                max_digit as i32,
            )
            .unwrap();
            let v = ep_value_precision(&s, &base).unwrap();
            assert!(
                (v.value - 1.0).abs() <= v.radius + 1e-13,
                "M={max_digit} k={k}: value {} radius {}",
                v.value,
                v.radius
            );
        }
    }
}

#[test]
fn kl_digit_stream_is_self_dominated() {
    // every shift of the Komornik-Loreti digit stream is lexicographically
    // dominated by the stream itself (the quasi-greedy admissibility shape)
    for max_digit in 1..=4u8 {
        let digits = kl_expansion_digits(max_digit, 4096).unwrap();
        for shift in 1..64usize {
            let mut decided = false;
            for i in 0..digits.len() - shift {
                match digits[shift + i].cmp(&digits[i]) {
                    Ordering::Less => {
                        decided = true;
                        break;
                    }
                    Ordering::Greater => {
                        panic!("M={max_digit}: shift {shift} dominates the stream")
                    }
                    Ordering::Equal => {}
                }
            }
            assert!(decided, "M={max_digit}: shift {shift} undecided over 4096 digits");
        }
    }
}

#[test]
fn komornik_loreti_bracket_agrees_with_stream_evaluation() {
    // evaluating the digit stream as an expansion at the bracket midpoint
    // lands within the bracket-propagated radius of 1
    for max_digit in 1..=3u8 {
        let kl = komornik_loreti_base(max_digit, 1e-12).unwrap();
        let digits = kl_expansion_digits(max_digit, 256).unwrap();
        let mid = Real::Rat(kl.enclosure(0).midpoint());
        let mut value = Real::Rat(BigRational::new(BigInt::from(0), BigInt::one()));
        let mut power = Real::one();
        let inv = Real::one().div(&mid).unwrap();
        for &d in &digits {
            power = power.mul(&inv).unwrap();
            value = value
                .add(&power.mul(&Real::from_int(d as i64)).unwrap())
                .unwrap();
        }
        let v = value.to_f64();
        // truncation + bracket radius comfortably bound the residual
        assert!((v - 1.0).abs() < 1e-9, "M={max_digit}: residual {}", v - 1.0);
    }
}
