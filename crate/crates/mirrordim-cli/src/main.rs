//! Command-line surface: exact block frequencies, critical bases,
//! uniqueness tests, dimensions, classification, and the constructive
//! families, with machine-readable output.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use mirrordim::bases::{
    critical_base, generalized_golden_ratio, komornik_loreti_base, ladder,
    locate_base, omega_word, Base, BaseLocation,
};
use mirrordim::dimension::{
    default_block_size, dimension_estimate, dimension_of_periodic, dimension_set,
    interpolation_blocks, is_self_similar, self_similar_family, periodic_with_zero_density,
    DimensionRegime, DimensionSetOptions, SelfSimilarity,
};
use mirrordim::error::Error;
use mirrordim::expansions::{
    is_unique_expansion, UniquenessVerdict, WitnessRelation,
};
use mirrordim::frequency::{
    block_density_at, difference_digit_density, empirical_block_density,
    minimal_level,
};
use mirrordim::mirror::{kl_signed_prefix, lambda_prefix, MirrorSeed};
use mirrordim::real::{format_rational, parse_rational};
use mirrordim::words::{EventuallyPeriodicSeq, Word};

use output::{
    envelope, error_envelope, log_linear_json, precision_json, rational_json, render,
    signed_digits_string, Format,
};

#[derive(Parser)]
#[command(
    name = "mirrordim",
    version,
    about = "Exact frequencies in mirror sequences, critical bases, and Cantor intersection dimensions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Radius bound for computed bases (default 1e-12, or MIRRORDIM_TOLERANCE).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Cap on materialized sequence prefixes, in digits.
    #[arg(long, global = true, default_value_t = 1u64 << 26)]
    budget_digits: u64,
    /// Horizon for streaming estimates (default 4^8).
    #[arg(long, global = true)]
    horizon: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact density of a block in a mirror sequence, with an empirical
    /// finite-prefix cross-check.
    Freq(FreqArgs),
    /// Prefixes of mirror sequences and their derived signed sequences.
    Prefix(PrefixArgs),
    /// Critical bases: the golden base, the ladder, the Komornik-Loreti
    /// base, the critical base, and classification of a given q.
    Bases(BasesArgs),
    /// Uniqueness test for an eventually periodic expansion.
    Unique(UniqueArgs),
    /// Exact dimension of a periodic expansion, or a streaming estimate.
    Dim(DimArgs),
    /// Classification of the full dimension set for given (m1, m2, q).
    Classify(ClassifyArgs),
    /// Constructive families: zero-density periods, the self-similar mesh,
    /// and the interpolation blocks.
    Family(FamilyArgs),
    /// Reproduce the frequency golden table (deterministic output).
    Examples,
}

#[derive(Args)]
struct FreqArgs {
    /// Alphabet ceiling M of the mirror sequence.
    #[arg(long, default_value_t = 1)]
    max_digit: u8,
    /// Seed word of the mirror sequence.
    #[arg(long, default_value = "0")]
    seed: String,
    /// Block to measure, as a digit string.
    #[arg(long, conflicts_with = "diff_digit")]
    block: Option<String>,
    /// Measure a digit of the difference sequence instead of a block.
    #[arg(long, allow_hyphen_values = true)]
    diff_digit: Option<i32>,
    /// Evaluate the formula at this doubling level instead of the minimum.
    #[arg(long)]
    level: Option<u32>,
    /// Prefix length for the empirical cross-check.
    #[arg(long)]
    empirical_length: Option<u64>,
}

#[derive(Args)]
struct PrefixArgs {
    /// Number of digits to emit.
    #[arg(long)]
    length: u64,
    /// Alphabet ceiling M of the mirror sequence.
    #[arg(long, default_value_t = 1)]
    max_digit: u8,
    /// Seed word of the mirror sequence.
    #[arg(long, default_value = "0")]
    seed: String,
    /// Emit the centered difference sequence with this center instead.
    #[arg(long, conflicts_with_all = ["m1", "m2"], allow_hyphen_values = true)]
    lambda_center: Option<i32>,
    /// Emit the signed Komornik-Loreti digit sequence for {-m2, ..., m1}.
    #[arg(long, requires = "m2")]
    m1: Option<u32>,
    #[arg(long, requires = "m1")]
    m2: Option<u32>,
}

#[derive(Args)]
struct BasesArgs {
    /// Alphabet ceiling M.
    #[arg(long)]
    max_digit: u8,
    /// Ladder depth to compute.
    #[arg(long, default_value_t = 4)]
    k: u32,
    /// Also locate this base against the ladder.
    #[arg(long)]
    locate: Option<String>,
}

#[derive(Args)]
struct UniqueArgs {
    /// Symmetric alphabet half-width (sets m1 = m2 = m).
    #[arg(long, conflicts_with_all = ["m1", "m2"])]
    m: Option<u32>,
    #[arg(long, requires = "m2")]
    m1: Option<u32>,
    #[arg(long, requires = "m1")]
    m2: Option<u32>,
    /// The base: a number ("2.5", "5/2") or kl | golden | qc | ladder:K.
    #[arg(long)]
    q: String,
    /// Period digits, comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    period: String,
    /// Preperiod digits, comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    preperiod: Option<String>,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long, conflicts_with_all = ["m1", "m2"])]
    m: Option<u32>,
    #[arg(long, requires = "m2")]
    m1: Option<u32>,
    #[arg(long, requires = "m1")]
    m2: Option<u32>,
    #[arg(long)]
    q: String,
    /// Period digits for the exact dimension of a periodic expansion.
    #[arg(long, allow_hyphen_values = true)]
    period: Option<String>,
    #[arg(long, requires = "period", allow_hyphen_values = true)]
    preperiod: Option<String>,
    /// Stream kind for the running estimate: "kl" or "lambda".
    #[arg(long, conflicts_with = "period")]
    stream: Option<String>,
    /// Include the full exponent trace in the payload (plottable CSV).
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with_all = ["m1", "m2"])]
    m: Option<u32>,
    #[arg(long, requires = "m2")]
    m1: Option<u32>,
    #[arg(long, requires = "m1")]
    m2: Option<u32>,
    #[arg(long)]
    q: String,
    /// How many members of an infinite family to list.
    #[arg(long, default_value_t = 8)]
    family_limit: u32,
    /// Block size for interval endpoints above the Komornik-Loreti base.
    #[arg(long)]
    block_size: Option<u32>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Symmetric alphabet half-width.
    #[arg(long)]
    m: u32,
    #[arg(long)]
    q: String,
    /// Emit the self-similar family on the density mesh {0, 1/mesh, ..., 1}.
    #[arg(long)]
    mesh: Option<u32>,
    /// Emit the single zero-density period for this rational density.
    #[arg(long, conflicts_with = "mesh")]
    density: Option<String>,
    /// Emit the interpolation block words instead.
    #[arg(long, conflicts_with_all = ["mesh", "density"])]
    blocks: bool,
    /// Block size for --blocks; picked empirically when absent.
    #[arg(long)]
    block_size: Option<u32>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let tolerance = cli.tolerance.unwrap_or_else(default_tolerance);
    let command_name = command_name(&cli.command);
    match run(&cli, tolerance) {
        Ok((payload, provenance, undecided)) => {
            let doc = envelope(command_name, payload, provenance, tolerance);
            println!("{}", render(&doc, format));
            if undecided {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let kind = if e.is_undecided() { "undecided" } else { "domain" };
            let doc = error_envelope(command_name, kind, &e.to_string());
            println!("{}", render(&doc, format));
            eprintln!("error: {e}");
            ExitCode::from(if e.is_undecided() { 2 } else { 1 })
        }
    }
}

fn default_tolerance() -> f64 {
    std::env::var("MIRRORDIM_TOLERANCE")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(mirrordim::bases::DEFAULT_TOLERANCE)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Freq(_) => "freq",
        Command::Prefix(_) => "prefix",
        Command::Bases(_) => "bases",
        Command::Unique(_) => "unique",
        Command::Dim(_) => "dim",
        Command::Classify(_) => "classify",
        Command::Family(_) => "family",
        Command::Examples => "examples",
    }
}

type CmdResult = Result<(Value, Value, bool), Error>;

fn run(cli: &Cli, tolerance: f64) -> CmdResult {
    match &cli.command {
        Command::Freq(args) => run_freq(args, cli.budget_digits),
        Command::Prefix(args) => run_prefix(args, cli.budget_digits),
        Command::Bases(args) => run_bases(args, tolerance),
        Command::Unique(args) => run_unique(args, tolerance),
        Command::Dim(args) => run_dim(args, tolerance, cli.budget_digits, cli.horizon.unwrap_or(1 << 16)),
        Command::Classify(args) => run_classify(args, tolerance),
        Command::Family(args) => run_family(args, tolerance),
        Command::Examples => run_examples(),
    }
}

fn alphabet_pair(m: Option<u32>, m1: Option<u32>, m2: Option<u32>) -> Result<(u32, u32), Error> {
    match (m, m1, m2) {
        (Some(m), None, None) => Ok((m, m)),
        (None, Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::InvalidParameter(
            "give either --m or both --m1 and --m2".into(),
        )),
    }
}

/// Resolves a base spec: a number, or one of the named constructions for
/// the alphabet `{0, ..., M}`.
fn resolve_base(spec: &str, max_digit: u8, tolerance: f64) -> Result<Base, Error> {
    match spec {
        "kl" => komornik_loreti_base(max_digit, tolerance),
        "golden" | "q1" => generalized_golden_ratio(max_digit),
        "qc" | "critical" => {
            if max_digit % 2 != 0 {
                return Err(Error::InvalidParameter(
                    "the critical base needs a symmetric (even) alphabet".into(),
                ));
            }
            critical_base(max_digit as u32 / 2)
        }
        _ => {
            if let Some(k) = spec.strip_prefix("ladder:") {
                let k: u32 = k
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad ladder index {k:?}")))?;
                if k == 0 {
                    return Err(Error::InvalidParameter("ladder index starts at 1".into()));
                }
                Ok(ladder(max_digit, k, tolerance)?.pop().unwrap())
            } else {
                Base::parse(spec)
            }
        }
    }
}

fn parse_signed_list(s: &str) -> Result<Vec<i32>, Error> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i32>()
                .map_err(|_| Error::InvalidParameter(format!("bad digit {part:?}")))
        })
        .collect()
}

fn parse_ep(
    preperiod: &Option<String>,
    period: &str,
    low: i32,
    high: i32,
) -> Result<EventuallyPeriodicSeq, Error> {
    let pre = match preperiod {
        Some(s) => parse_signed_list(s)?,
        None => Vec::new(),
    };
    let per = parse_signed_list(period)?;
    EventuallyPeriodicSeq::new(pre, per, low, high)
}

fn run_freq(args: &FreqArgs, budget: u64) -> CmdResult {
    let seed_word = Word::parse(&args.seed, args.max_digit)?;
    let seed = MirrorSeed::new(seed_word)?;

    if let Some(v) = args.diff_digit {
        let density = difference_digit_density(v, &seed)?;
        let payload = json!({
            "max_digit": args.max_digit,
            "seed": args.seed,
            "difference_digit": v,
            "density": rational_json(&density),
        });
        let provenance = json!({ "density": "mirror-frequency-formula (summed over matching 2-blocks)" });
        return Ok((payload, provenance, false));
    }

    let block_str = args.block.as_ref().ok_or_else(|| {
        Error::InvalidParameter("give --block or --diff-digit".into())
    })?;
    let block = Word::parse(block_str, args.max_digit)?;
    let level = args.level.unwrap_or_else(|| minimal_level(&block, &seed));
    let needed = (seed.seed_len() as u64) << (2 * level + 2);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            requested: needed,
            budget,
        });
    }
    let result = block_density_at(&block, &seed, level)?;

    let emp_len = args
        .empirical_length
        .unwrap_or((seed.seed_len() as u64 * 4096).max(block.len() as u64));
    if emp_len > budget {
        return Err(Error::BudgetExceeded {
            requested: emp_len,
            budget,
        });
    }
    let empirical = empirical_block_density(&block, &seed, emp_len)?;

    let payload = json!({
        "max_digit": args.max_digit,
        "seed": args.seed,
        "block": block_str,
        "density": rational_json(&result.value),
        "level": result.n_used,
        "count_small": result.n_count,
        "count_large": result.p_count,
        "empirical": {
            "length": emp_len,
            "value": rational_json(&empirical),
            "float": empirical.to_f64(),
        },
    });
    let provenance = json!({
        "density": "mirror-frequency-formula",
        "empirical": "prefix-count",
    });
    Ok((payload, provenance, false))
}

fn run_prefix(args: &PrefixArgs, budget: u64) -> CmdResult {
    if args.length == 0 {
        return Err(Error::InvalidParameter("length must be >= 1".into()));
    }
    if args.length > budget {
        return Err(Error::BudgetExceeded {
            requested: args.length,
            budget,
        });
    }
    if let Some(center) = args.lambda_center {
        let digits = lambda_prefix(center, args.length)?;
        let payload = json!({
            "kind": "lambda",
            "center": center,
            "length": args.length,
            "digits": signed_digits_string(&digits),
        });
        return Ok((payload, json!({ "digits": "difference-sequence" }), false));
    }
    if let (Some(m1), Some(m2)) = (args.m1, args.m2) {
        let digits = kl_signed_prefix(m1, m2, args.length)?;
        let payload = json!({
            "kind": "kl-signed",
            "m1": m1,
            "m2": m2,
            "length": args.length,
            "digits": signed_digits_string(&digits),
        });
        return Ok((payload, json!({ "digits": "kl-expansion" }), false));
    }
    let seed = MirrorSeed::new(Word::parse(&args.seed, args.max_digit)?)?;
    let prefix = seed.prefix_with_budget(args.length, budget)?;
    let digits: Vec<i32> = prefix.digits().iter().map(|&d| d as i32).collect();
    let payload = json!({
        "kind": "mirror",
        "max_digit": args.max_digit,
        "seed": args.seed,
        "length": args.length,
        "digits": signed_digits_string(&digits),
    });
    Ok((payload, json!({ "digits": "mirror-doubling" }), false))
}

fn run_bases(args: &BasesArgs, tolerance: f64) -> CmdResult {
    let golden = generalized_golden_ratio(args.max_digit)?;
    let rungs = ladder(args.max_digit, args.k, tolerance)?;
    let kl = komornik_loreti_base(args.max_digit, tolerance)?;

    let mut payload = Map::new();
    payload.insert("max_digit".into(), json!(args.max_digit));
    payload.insert("golden".into(), precision_json(&golden.to_precision()));
    let ladder_json: Vec<Value> = rungs
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "k": i + 1,
                "word": omega_word(args.max_digit, i as u32 + 1).unwrap().to_string(),
                "base": precision_json(&b.to_precision()),
            })
        })
        .collect();
    payload.insert("ladder".into(), Value::Array(ladder_json));
    payload.insert("komornik_loreti".into(), precision_json(&kl.to_precision()));
    if args.max_digit % 2 == 0 {
        let qc = critical_base(args.max_digit as u32 / 2)?;
        payload.insert("critical".into(), precision_json(&qc.to_precision()));
    }

    let mut undecided = false;
    if let Some(spec) = &args.locate {
        let q = resolve_base(spec, args.max_digit, tolerance)?;
        let location = locate_base(&q, args.max_digit, tolerance)?;
        let loc_json = match location {
            BaseLocation::AtOrBelowGolden { .. } => json!({ "case": "at_or_below_golden" }),
            BaseLocation::Between { k, lower, upper } => json!({
                "case": "between",
                "k": k,
                "lower": precision_json(&lower.to_precision()),
                "upper": precision_json(&upper.to_precision()),
            }),
            BaseLocation::AtKomornikLoreti => json!({ "case": "at_komornik_loreti" }),
            BaseLocation::AboveKomornikLoreti { kl } => json!({
                "case": "above_komornik_loreti",
                "komornik_loreti": precision_json(&kl.to_precision()),
            }),
        };
        payload.insert("location".into(), loc_json);
        let _ = undecided;
    }

    let provenance = json!({
        "golden": "closed-form",
        "ladder": "certified-bisection",
        "komornik_loreti": "certified-bisection (truncation bound folded into radius)",
        "critical": "closed-form",
        "location": "ladder-classification",
    });
    undecided = false;
    Ok((Value::Object(payload), provenance, undecided))
}

fn run_unique(args: &UniqueArgs, tolerance: f64) -> CmdResult {
    let (m1, m2) = alphabet_pair(args.m, args.m1, args.m2)?;
    let max_digit = (m1 + m2) as u8;
    let q = resolve_base(&args.q, max_digit, tolerance)?;
    let s = parse_ep(&args.preperiod, &args.period, -(m2 as i32), m1 as i32)?;
    let verdict = is_unique_expansion(&s, &q, m1, m2)?;

    let (verdict_json, undecided) = match &verdict {
        UniquenessVerdict::Unique => (json!({ "verdict": "unique" }), false),
        UniquenessVerdict::NotUnique(w) => {
            let relation = match &w.relation {
                WitnessRelation::EqualsReference => json!({ "kind": "equals_reference" }),
                WitnessRelation::ExceedsReferenceAt {
                    index,
                    tail_digit,
                    reference_digit,
                } => json!({
                    "kind": "exceeds_reference",
                    "index": index,
                    "tail_digit": tail_digit,
                    "reference_digit": reference_digit,
                }),
            };
            (
                json!({
                    "verdict": "not_unique",
                    "witness": {
                        "tail_start": w.tail_start,
                        "reflected": w.reflected,
                        "relation": relation,
                    },
                }),
                false,
            )
        }
        UniquenessVerdict::Undecided { digits_examined } => (
            json!({ "verdict": "undecided", "digits_examined": digits_examined }),
            true,
        ),
    };
    let payload = json!({
        "m1": m1,
        "m2": m2,
        "q": args.q,
        "preperiod": args.preperiod.clone().unwrap_or_default(),
        "period": args.period,
        "result": verdict_json,
    });
    Ok((
        payload,
        json!({ "result": "lexicographic-uniqueness-test" }),
        undecided,
    ))
}

fn run_dim(args: &DimArgs, tolerance: f64, budget: u64, horizon: usize) -> CmdResult {
    let (m1, m2) = alphabet_pair(args.m, args.m1, args.m2)?;
    let max_digit = (m1 + m2) as u8;
    let q = resolve_base(&args.q, max_digit, tolerance)?;

    if let Some(period) = &args.period {
        let s = parse_ep(&args.preperiod, period, -(m2 as i32), m1 as i32)?;
        let dim = dimension_of_periodic(&s, &q, m1, m2)?;
        let payload = json!({
            "m1": m1,
            "m2": m2,
            "q": args.q,
            "period": period,
            "preperiod": args.preperiod.clone().unwrap_or_default(),
            "dimension": log_linear_json(&dim, Some(&q)),
        });
        return Ok((
            payload,
            json!({ "dimension": "branch-count-period-mean" }),
            false,
        ));
    }

    let stream_kind = args.stream.as_deref().unwrap_or("kl");
    if horizon as u64 > budget {
        return Err(Error::BudgetExceeded {
            requested: horizon as u64,
            budget,
        });
    }
    let stream: Vec<i32> = match stream_kind {
        "kl" => kl_signed_prefix(m1, m2, horizon as u64)?,
        "lambda" => {
            if (m1 + m2) % 2 != 0 {
                return Err(Error::InvalidParameter(
                    "the lambda stream needs an even alphabet span".into(),
                ));
            }
            lambda_prefix((m1 as i32 - m2 as i32) / 2, horizon as u64)?
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown stream kind {other:?} (use kl or lambda)"
            )))
        }
    };
    let est = dimension_estimate(stream, &q, m1, m2, horizon)?;
    // sampled by default; --trace switches to the full plottable series
    let samples: Vec<Value> = if args.trace {
        est.trace
            .iter()
            .enumerate()
            .map(|(k, s)| json!({ "k": k + 1, "s_k": s }))
            .collect()
    } else {
        (0..=16)
            .map(|i| {
                let k = ((est.trace.len() - 1) * i) / 16;
                json!({ "k": k + 1, "s_k": est.trace[k] })
            })
            .collect()
    };
    let payload = json!({
        "m1": m1,
        "m2": m2,
        "q": args.q,
        "stream": stream_kind,
        "horizon": est.horizon,
        "window_start": est.window_start + 1,
        "estimate": precision_json(&est.estimate),
        "trace": samples,
    });
    Ok((
        payload,
        json!({ "estimate": "streaming-exponent-trace (tail-window infimum)" }),
        false,
    ))
}

fn regime_name(regime: DimensionRegime) -> Value {
    match regime {
        DimensionRegime::OverlappingIntervals => json!({ "case": "overlapping_intervals" }),
        DimensionRegime::SmallCantorFactor => json!({ "case": "small_cantor_factor" }),
        DimensionRegime::AsymmetricSeparated => json!({ "case": "asymmetric_separated" }),
        DimensionRegime::SymmetricLadder { k } => json!({ "case": "ladder", "k": k }),
        DimensionRegime::SymmetricAtKomornikLoreti => json!({ "case": "at_komornik_loreti" }),
        DimensionRegime::SymmetricAboveKomornikLoreti => {
            json!({ "case": "above_komornik_loreti" })
        }
    }
}

fn run_classify(args: &ClassifyArgs, tolerance: f64) -> CmdResult {
    let (m1, m2) = alphabet_pair(args.m, args.m1, args.m2)?;
    let max_digit = (m1 + m2) as u8;
    let q = resolve_base(&args.q, max_digit, tolerance)?;
    let opts = DimensionSetOptions {
        family_limit: args.family_limit,
        tolerance,
        block_size: args.block_size,
    };
    let desc = dimension_set(m1, m2, &q, &opts)?;
    let values: Vec<Value> = desc
        .values
        .iter()
        .map(|v| log_linear_json(v, Some(&q)))
        .collect();
    let intervals: Vec<Value> = desc
        .intervals
        .iter()
        .map(|(lo, hi)| {
            json!({
                "lower": log_linear_json(lo, Some(&q)),
                "upper": log_linear_json(hi, Some(&q)),
            })
        })
        .collect();
    let payload = json!({
        "m1": m1,
        "m2": m2,
        "q": args.q,
        "regime": regime_name(desc.regime),
        "exact": desc.exact,
        "family_infinite": desc.family_infinite,
        "values": values,
        "intervals": intervals,
    });
    Ok((
        payload,
        json!({ "regime": "ladder-classification", "values": "closed-form" }),
        false,
    ))
}

fn run_family(args: &FamilyArgs, tolerance: f64) -> CmdResult {
    let max_digit = (2 * args.m) as u8;
    let q = resolve_base(&args.q, max_digit, tolerance)?;

    if args.blocks {
        let n = match args.block_size {
            Some(n) => n,
            None => default_block_size(args.m, args.m, &q)?,
        };
        let blocks = interpolation_blocks(args.m, args.m, n)?;
        let payload = json!({
            "m": args.m,
            "q": args.q,
            "block_size": blocks.block_size,
            "a": signed_digits_string(&blocks.a),
            "b": signed_digits_string(&blocks.b),
            "w1": signed_digits_string(&blocks.w1),
            "w2": signed_digits_string(&blocks.w2),
            "d2_w1": rational_json(&blocks.d2_w1),
            "d2_w2": rational_json(&blocks.d2_w2),
        });
        return Ok((payload, json!({ "blocks": "subshift-blocks" }), false));
    }

    if let Some(density) = &args.density {
        let density = parse_rational(density)?;
        let s = periodic_with_zero_density(&density)?;
        let verdict = is_unique_expansion(&s, &q, args.m, args.m)?;
        if !verdict.is_unique() {
            return Err(Error::Undecidable(
                "zero-density period is not verifiably unique at this base".into(),
            ));
        }
        let self_sim = is_self_similar(&s, args.m, &q)?;
        let dim = dimension_of_periodic(&s, &q, args.m, args.m)?;
        let payload = json!({
            "m": args.m,
            "q": args.q,
            "density": format_rational(&density),
            "period": signed_digits_string(s.period()),
            "self_similar": matches!(self_sim, SelfSimilarity::Yes { .. }),
            "dimension": log_linear_json(&dim, Some(&q)),
        });
        return Ok((
            payload,
            json!({ "period": "zero-density-block", "dimension": "branch-count-period-mean" }),
            false,
        ));
    }

    let mesh = args.mesh.ok_or_else(|| {
        Error::InvalidParameter("give one of --mesh, --density, --blocks".into())
    })?;
    let family = self_similar_family(args.m, &q, mesh)?;
    let members: Vec<Value> = family
        .iter()
        .enumerate()
        .map(|(i, (s, dim))| {
            json!({
                "density": format!("{i}/{mesh}"),
                "period": signed_digits_string(s.period()),
                "dimension": log_linear_json(dim, Some(&q)),
            })
        })
        .collect();
    let payload = json!({
        "m": args.m,
        "q": args.q,
        "mesh": mesh,
        "members": members,
    });
    Ok((
        payload,
        json!({ "members": "zero-density-block (verified unique and self-similar)" }),
        false,
    ))
}

fn run_examples() -> CmdResult {
    let seed = MirrorSeed::thue_morse();
    let blocks = ["0", "01", "00", "000", "001", "010", "011", "00101"];
    let mut table = Vec::new();
    for b in blocks {
        let word = Word::parse(b, 1)?;
        // single digits at level 0, longer blocks at level 1 (the
        // densities are level-independent; the counts are not)
        let level = if word.len() == 1 { 0 } else { 1 };
        let r = block_density_at(&word, &seed, level)?;
        table.push(json!({
            "block": b,
            "level": r.n_used,
            "count_small": r.n_count,
            "count_large": r.p_count,
            "density": rational_json(&r.value),
        }));
    }
    let mut diff_table = Vec::new();
    for v in [-1, 0, 1] {
        let d = difference_digit_density(v, &seed)?;
        diff_table.push(json!({
            "digit": v,
            "density": rational_json(&d),
        }));
    }
    // the two-block computation behind the difference digits
    let two_block = block_density_at(&Word::parse("10", 1)?, &seed, 1)?;
    let payload = json!({
        "sequence": "0110100110010110...",
        "block_densities": table,
        "difference_digit_densities": diff_table,
        "two_block_counts": {
            "block": "10",
            "count_small": two_block.n_count,
            "count_large": two_block.p_count,
            "density": rational_json(&two_block.value),
        },
    });
    Ok((
        payload,
        json!({ "block_densities": "mirror-frequency-formula" }),
        false,
    ))
}
