//! Verification suites behind `weylalt verify`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{format_word, json_int, Check, Context};
use crate::combinatorics::{fibonacci, nonconsecutive_subsets, verify_alternating_identity};
use crate::error::Result;
use crate::kostant::{partition_q_bruteforce, PartitionFunction, SignedQPolynomial};
use crate::lattice::{self, from_simple_root_coords, Rational, RationalVector};
use crate::multiplicity::{
    length_parameters_b, predicted_alternation_set_b, predicted_count_by_length_b, predicted_pq_b,
};
use crate::rootsystem::{self, LieType, RootSystem};
use crate::weyl;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// |𝒜(ϖ1, 0)| in B_r and |𝒜(α̃, 0)| in A_r against Fibonacci numbers.
    Fibonacci,
    /// m_q(ϖ1, 0) = q^r and m(ϖ1, 0) = 1 in B_r.
    Qmult,
    /// 𝒜(ϖ1, 0) in B_r element by element against the nonconsecutive-subset
    /// description.
    #[value(name = "charB", alias = "char-b")]
    CharB,
    /// 𝒜(ϖ1, μ) for dominant μ ≠ 0 in a box, and the weights of L(ϖ1).
    NonzeroMu,
    /// Sum of the simple roots in the fundamental basis, for every type.
    Dominance,
    /// Alternating binomial identities and nonconsecutive-subset counts.
    Identities,
    /// Memoized partition function against the brute-force search.
    Oracle,
    /// Every suite above.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fibonacci => "fibonacci",
            Suite::Qmult => "qmult",
            Suite::CharB => "charB",
            Suite::NonzeroMu => "nonzero-mu",
            Suite::Dominance => "dominance",
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }

    fn default_max_rank(self) -> usize {
        match self {
            Suite::Fibonacci => 7,
            Suite::Qmult | Suite::CharB => 6,
            Suite::NonzeroMu => 5,
            Suite::Dominance => 8,
            Suite::Identities => 20,
            Suite::Oracle | Suite::All => 0,
        }
    }
}

/// Options shared by the suites.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_rank: Option<usize>,
    pub bound: Rational,
    pub samples: usize,
    pub seed: u64,
}

pub(super) fn run(suite: Suite, opts: &VerifyOptions, ctx: &Context, checks: &mut Vec<Check>) -> Result<Value> {
    let max = opts.max_rank.unwrap_or(suite.default_max_rank());
    match suite {
        Suite::Fibonacci => fibonacci_suite(max, ctx, checks),
        Suite::Qmult => qmult_suite(max, ctx, checks),
        Suite::CharB => char_b_suite(max, ctx, checks),
        Suite::NonzeroMu => nonzero_mu_suite(max, &opts.bound, ctx, checks),
        Suite::Dominance => dominance_suite(max, checks),
        Suite::Identities => identities_suite(max, checks),
        Suite::Oracle => oracle_suite(opts.samples, opts.seed, checks),
        Suite::All => {
            let mut out = serde_json::Map::new();
            for s in [
                Suite::Fibonacci,
                Suite::Qmult,
                Suite::CharB,
                Suite::NonzeroMu,
                Suite::Dominance,
                Suite::Identities,
                Suite::Oracle,
            ] {
                out.insert(s.name().to_string(), run(s, opts, ctx, checks)?);
            }
            Ok(Value::Object(out))
        }
    }
}

fn b(r: usize) -> Result<RootSystem> {
    RootSystem::build(LieType::B, r)
}

fn fibonacci_suite(max: usize, ctx: &Context, checks: &mut Vec<Check>) -> Result<Value> {
    let mut b_rows = Vec::new();
    let mut a_rows = Vec::new();
    for r in 2..=max {
        let rs = b(r)?;
        let set = ctx.with_engine(&rs, |e| e.alternation_set(rs.fundamental_weight(1), &rs.zero()))?;
        let expected = fibonacci(r + 1)?;
        checks.push(Check::new(
            format!("B{r} |A(w1,0)| = F_{}", r + 1),
            &expected,
            set.len(),
        ));
        b_rows.push(json!({"rank": r, "cardinality": set.len()}));
    }
    for r in 2..=max {
        let rs = RootSystem::build(LieType::A, r)?;
        let set = ctx.with_engine(&rs, |e| e.alternation_set(rs.highest_root(), &rs.zero()))?;
        let expected = fibonacci(r)?;
        checks.push(Check::new(
            format!("A{r} |A(highest-root,0)| = F_{r}"),
            &expected,
            set.len(),
        ));
        a_rows.push(json!({"rank": r, "cardinality": set.len()}));
    }
    Ok(json!({"B": b_rows, "A": a_rows}))
}

fn qmult_suite(max: usize, ctx: &Context, checks: &mut Vec<Check>) -> Result<Value> {
    let mut rows = Vec::new();
    for r in 2..=max {
        let rs = b(r)?;
        let set = ctx.with_engine(&rs, |e| e.alternation_set(rs.fundamental_weight(1), &rs.zero()))?;
        let mq = set.q_multiplicity();
        checks.push(Check::new(
            format!("B{r} m_q(w1,0) = q^{r}"),
            SignedQPolynomial::q_pow(r),
            &mq,
        ));
        checks.push(Check::new(format!("B{r} m(w1,0) = 1"), 1, set.multiplicity()));
        rows.push(json!({
            "rank": r,
            "q_multiplicity": mq.coeffs().iter().map(json_int).collect::<Vec<_>>(),
            "multiplicity": json_int(&set.multiplicity()),
        }));
    }
    Ok(Value::Array(rows))
}

fn words_string(words: &[Vec<usize>]) -> String {
    let parts: Vec<String> = words.iter().map(|w| format_word(w)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn char_b_suite(max: usize, ctx: &Context, checks: &mut Vec<Check>) -> Result<Value> {
    let mut rows = Vec::new();
    for r in 2..=max {
        let rs = b(r)?;
        let set = ctx.with_engine(&rs, |e| e.alternation_set(rs.fundamental_weight(1), &rs.zero()))?;

        let mut predicted = predicted_alternation_set_b(r);
        predicted.sort();
        let mut found = set.words();
        found.sort();
        checks.push(Check::new(
            format!("B{r} A(w1,0) as reduced words"),
            words_string(&predicted),
            words_string(&found),
        ));

        let mismatched: Vec<String> = set
            .elements
            .iter()
            .filter(|e| e.partition_q != predicted_pq_b(&e.word, r))
            .map(|e| format!("{}: {}", format_word(&e.word), e.partition_q))
            .collect();
        checks.push(Check::new(
            format!("B{r} per-element q-partition values"),
            "all match",
            if mismatched.is_empty() {
                "all match".to_string()
            } else {
                mismatched.join("; ")
            },
        ));

        let mut histogram: BTreeMap<(usize, bool), usize> = BTreeMap::new();
        for e in &set.elements {
            *histogram.entry(length_parameters_b(&e.word, r)).or_default() += 1;
        }
        let mut expected = BTreeMap::new();
        for k in 0..r {
            for has_sr in [false, true] {
                let c = predicted_count_by_length_b(r, k, has_sr);
                if c > BigUint::from(0u32) {
                    expected.insert((k, has_sr), c.to_string());
                }
            }
        }
        let fmt_hist = |h: BTreeMap<(usize, bool), String>| {
            h.into_iter()
                .map(|((k, s), c)| format!("(k={k},{}):{c}", if s { "s_r" } else { "no s_r" }))
                .collect::<Vec<_>>()
                .join(" ")
        };
        checks.push(Check::new(
            format!("B{r} counts by (k, has s_r)"),
            fmt_hist(expected),
            fmt_hist(histogram.into_iter().map(|(k, v)| (k, v.to_string())).collect()),
        ));
        rows.push(json!({"rank": r, "words": set.words()}));
    }
    Ok(Value::Array(rows))
}

fn fundamental_label(w: &RationalVector, rs: &RootSystem) -> String {
    match lattice::to_fundamental_coords(w, rs) {
        Ok(m) => m.to_string(),
        Err(_) => w.to_string(),
    }
}

fn nonzero_mu_suite(max: usize, bound: &Rational, ctx: &Context, checks: &mut Vec<Check>) -> Result<Value> {
    let mut rows = Vec::new();
    for r in 2..=max {
        let rs = b(r)?;
        let w1 = rs.fundamental_weight(1);
        let weights = rootsystem::dominant_integral_weights_in_box(&rs, bound);
        let mut nonempty = Vec::new();
        let mut scanned = 0;
        ctx.with_engine(&rs, |e| {
            for mu in weights.iter().filter(|mu| !mu.is_zero()) {
                scanned += 1;
                let set = e.alternation_set(w1, mu)?;
                if !set.is_empty() {
                    nonempty.push(format!(
                        "{} -> {}",
                        fundamental_label(mu, &rs),
                        words_string(&set.words())
                    ));
                }
            }
            Ok(())
        })?;
        checks.push(Check::new(
            format!(
                "B{r} A(w1,mu) for dominant mu != 0, |mu|_inf <= {}",
                lattice::format_rational(bound)
            ),
            format!("{} -> {{1}}", fundamental_label(w1, &rs)),
            nonempty.join("; "),
        ));
        rows.push(json!({"rank": r, "scanned": scanned, "nonempty": nonempty}));
    }

    let mut diagrams = Vec::new();
    for r in 2..=max.min(4) {
        let rs = b(r)?;
        let w1 = rs.fundamental_weight(1);
        let diagram = ctx.with_engine(&rs, |e| e.weight_diagram(w1))?;
        let mut expected: Vec<RationalVector> = weyl::orbit(w1, &rs).into_iter().collect();
        expected.push(rs.zero());
        expected.sort();
        let mut actual: Vec<RationalVector> = diagram
            .iter()
            .filter(|e| e.multiplicity.is_one())
            .map(|e| e.weight.clone())
            .collect();
        actual.sort();
        let fmt = |v: &[RationalVector]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        checks.push(Check::new(
            format!("B{r} weights of L(w1) with multiplicity 1"),
            fmt(&expected),
            fmt(&actual),
        ));
        checks.push(Check::new(
            format!("B{r} weight count of L(w1)"),
            2 * r + 1,
            diagram.len(),
        ));
        diagrams.push(json!({"rank": r, "weights": diagram.len()}));
    }
    Ok(json!({"scan": rows, "weight_diagrams": diagrams}))
}

/// Expected fundamental-basis coefficients of the sum of the simple roots.
fn expected_sum_of_simple_roots(label: LieType, r: usize) -> Vec<i64> {
    let mut m = vec![0i64; r];
    let mut set = |i: usize, v: i64| m[i - 1] += v;
    match label {
        LieType::A => {
            set(1, 1);
            set(r, 1);
        }
        LieType::B => set(1, 1),
        LieType::C => {
            set(1, 1);
            set(r - 1, -1);
            set(r, 1);
        }
        LieType::D => {
            set(1, 1);
            set(r - 2, -1);
            set(r - 1, 1);
            set(r, 1);
        }
        LieType::G2 => {
            set(1, -1);
            set(2, 1);
        }
        LieType::F4 => {
            set(1, 1);
            set(3, -1);
            set(4, 1);
        }
        LieType::E6 | LieType::E7 | LieType::E8 => {
            set(1, 1);
            set(2, 1);
            set(4, -1);
            set(r, 1);
        }
    }
    m
}

fn dominance_suite(max: usize, checks: &mut Vec<Check>) -> Result<Value> {
    let mut systems = Vec::new();
    for (label, lo) in [(LieType::A, 2), (LieType::B, 2), (LieType::C, 3), (LieType::D, 4)] {
        systems.extend((lo..=max).map(|r| (label, r)));
    }
    for label in [LieType::G2, LieType::F4, LieType::E6, LieType::E7, LieType::E8] {
        systems.push((label, label.fixed_rank().expect("exceptional")));
    }
    let mut rows = Vec::new();
    for (label, r) in systems {
        let rs = RootSystem::build(label, r)?;
        let m = rootsystem::sum_of_simple_roots_in_fundamental_basis(&rs);
        let expected = RationalVector::from_ints(&expected_sum_of_simple_roots(label, r));
        checks.push(Check::new(format!("{} sum of simple roots", rs.name()), &expected, &m));
        let dominant = rootsystem::is_dominant(&rs.sum_of_simple_roots(), &rs)?;
        let expect_dominant = matches!(label, LieType::A | LieType::B);
        checks.push(Check::new(format!("{} dominant", rs.name()), expect_dominant, dominant));
        rows.push(json!({
            "system": rs.name(),
            "coefficients": m.coords().iter().map(lattice::format_rational).collect::<Vec<_>>(),
            "dominant": dominant,
        }));
    }
    Ok(Value::Array(rows))
}

fn identities_suite(max: usize, checks: &mut Vec<Check>) -> Result<Value> {
    for r in 1..=max {
        checks.push(Check::new(
            format!("alternating identities r={r}"),
            true,
            verify_alternating_identity(r),
        ));
    }
    for m in 0..=15 {
        let count = nonconsecutive_subsets(1, m).count();
        checks.push(Check::new(
            format!("nonconsecutive subsets of 1..{m} = F_{}", m + 2),
            fibonacci(m + 2)?,
            count,
        ));
    }
    Ok(json!({"max_rank": max, "subset_ranges": 16}))
}

const ORACLE_SYSTEMS: [(LieType, usize); 9] = [
    (LieType::A, 2),
    (LieType::A, 3),
    (LieType::A, 4),
    (LieType::B, 2),
    (LieType::B, 3),
    (LieType::B, 4),
    (LieType::C, 3),
    (LieType::D, 4),
    (LieType::G2, 2),
];

/// Largest height of the random points in the oracle suite.
pub const ORACLE_MAX_HEIGHT: usize = 12;

fn oracle_suite(samples: usize, seed: u64, checks: &mut Vec<Check>) -> Result<Value> {
    let systems: Vec<RootSystem> = ORACLE_SYSTEMS
        .iter()
        .map(|&(t, r)| RootSystem::build(t, r))
        .collect::<Result<_>>()?;
    let pfs: Vec<PartitionFunction> = systems.iter().map(PartitionFunction::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = vec![0usize; systems.len()];
    let mut mismatches: Vec<Vec<String>> = vec![Vec::new(); systems.len()];
    for _ in 0..samples {
        let s = rng.gen_range(0..systems.len());
        let rs = &systems[s];
        let height = rng.gen_range(0..=ORACLE_MAX_HEIGHT);
        let mut coords = vec![0i64; rs.rank()];
        for _ in 0..height {
            coords[rng.gen_range(0..rs.rank())] += 1;
        }
        let xi = from_simple_root_coords(&RationalVector::from_ints(&coords), rs);
        tried[s] += 1;
        let fast = pfs[s].partition_q(&xi);
        let slow = partition_q_bruteforce(&xi, rs)?;
        if fast != slow {
            mismatches[s].push(format!("{coords:?}: {fast} vs {slow}"));
        }
    }
    let mut rows = Vec::new();
    for (i, rs) in systems.iter().enumerate() {
        checks.push(Check::new(
            format!("{} partition function vs brute force ({} points)", rs.name(), tried[i]),
            "no mismatches",
            if mismatches[i].is_empty() {
                "no mismatches".to_string()
            } else {
                mismatches[i].join("; ")
            },
        ));
        rows.push(json!({"system": rs.name(), "points": tried[i], "mismatches": mismatches[i].len()}));
    }
    Ok(json!({"seed": seed, "samples": samples, "systems": rows}))
}
