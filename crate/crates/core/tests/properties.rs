mod common;

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;

use common::*;
use weylalt::combinatorics::nonconsecutive_subsets;
use weylalt::kostant::{partition_q_bruteforce, PartitionFunction, QPolynomial};
use weylalt::lattice::{
    from_fundamental_coords, from_simple_root_coords, to_fundamental_coords, to_simple_root_coords, RationalMatrix,
    RationalVector,
};
use weylalt::multiplicity::Engine;
use weylalt::weyl::{act, WeylGroup, DEFAULT_CAP};
use weylalt::{LieType, RootSystem};

fn systems() -> &'static [RootSystem] {
    static CELL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            (LieType::A, 3),
            (LieType::B, 3),
            (LieType::C, 4),
            (LieType::D, 4),
            (LieType::G2, 2),
            (LieType::F4, 4),
            (LieType::E6, 6),
        ]
        .into_iter()
        .map(|(t, r)| build(t, r))
        .collect()
    })
}

fn small_ints(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, n)
}

fn fracs(v: &[(i64, i64)]) -> RationalVector {
    RationalVector::new(v.iter().map(|&(p, d)| frac(p, d)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_root_coordinates_roundtrip(
        idx in 0usize..7,
        c in prop::collection::vec((-6i64..=6, 1i64..=4), 8),
    ) {
        let rs = &systems()[idx];
        let c = fracs(&c[..rs.rank()]);
        let v = from_simple_root_coords(&c, rs);
        prop_assert_eq!(to_simple_root_coords(&v, rs).unwrap(), c.clone());
        prop_assert_eq!(Some(c.into_coords()), solve_simple_coords(rs, &v));
    }

    #[test]
    fn fundamental_coordinates_roundtrip(idx in 0usize..7, m in small_ints(8, -5, 5)) {
        let rs = &systems()[idx];
        let m = RationalVector::from_ints(&m[..rs.rank()]);
        let v = from_fundamental_coords(&m, rs);
        prop_assert_eq!(to_fundamental_coords(&v, rs).unwrap(), m.clone());
        for (i, a) in rs.simple_roots().iter().enumerate() {
            prop_assert_eq!(q(2) * v.dot(a) / a.dot(a), m[i].clone());
        }
    }

    #[test]
    fn signed_permutations_agree_with_reflection_products(
        r in 2usize..=6,
        word in prop::collection::vec(1usize..=6, 0..14),
        v in prop::collection::vec((-7i64..=7, 1i64..=2), 6),
    ) {
        let rs = build(LieType::B, r);
        let group = WeylGroup::new(&rs);
        let word: Vec<usize> = word.into_iter().filter(|&i| i <= r).collect();
        let w = group.from_word(&word).unwrap();
        prop_assert!(w.signed_perm().is_some());
        let mut m = RationalMatrix::identity(r);
        for &i in &word {
            m = &m * &reflection(rs.simple_root(i));
        }
        prop_assert_eq!(&w.matrix(), &m);
        let v = fracs(&v[..r]);
        prop_assert_eq!(act(&w, &v).unwrap(), m.mul_vec(&v));
    }

    #[test]
    fn length_is_inversions_and_reduced_word_length(
        idx in 0usize..6,
        word in prop::collection::vec(1usize..=4, 0..20),
    ) {
        let rs = &systems()[idx];
        let group = WeylGroup::new(rs);
        let word: Vec<usize> = word.into_iter().filter(|&i| i <= rs.rank()).collect();
        let w = group.from_word(&word).unwrap();
        prop_assert_eq!(w.length(), group.inversion_count(&w));
        let reduced = group.reduced_word(&w);
        prop_assert_eq!(reduced.len(), w.length());
        prop_assert!(reduced.len() <= word.len());
        prop_assert_eq!(reduced.len() % 2, word.len() % 2);
        prop_assert_eq!(&group.from_word(&reduced).unwrap(), &w);

        let m = w.matrix();
        prop_assert_eq!(&m * &m.transpose(), RationalMatrix::identity(rs.ambient_dim()));
        let sign = if w.length() % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(m.determinant(), sign);
        prop_assert_eq!(w.sign() as i64, if w.length() % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn partition_function_is_monotone_along_positive_roots(
        idx in 0usize..5,
        c in small_ints(4, 0, 3),
        root in 0usize..64,
    ) {
        let rs = &systems()[idx];
        let pf = PartitionFunction::new(rs);
        let c: Vec<i64> = c.iter().cycle().take(rs.rank()).copied().collect();
        let beta = &rs.positive_root_coords()[root % rs.positive_roots().len()];
        let up: Vec<i64> = c.iter().zip(beta).map(|(x, b)| x + b).collect();
        let (p, p_up) = (pf.partition_q_coords(&c), pf.partition_q_coords(&up));
        prop_assert!(p_up.eval_at_one() >= p.eval_at_one());
        // ℘(ξ)·q ≤ ℘(ξ+β) coefficientwise.
        for (k, coeff) in p.coeffs().iter().enumerate() {
            prop_assert!(p_up.coeff(k + 1) >= *coeff);
        }
    }

    #[test]
    fn partition_function_ignores_root_order(
        idx in 0usize..5,
        c in small_ints(4, 0, 3),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let rs = &systems()[idx];
        let mut order: Vec<usize> = (0..rs.positive_roots().len()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let c: Vec<i64> = c.iter().cycle().take(rs.rank()).copied().collect();
        let a = PartitionFunction::new(rs).partition_q_coords(&c);
        let b = PartitionFunction::with_root_order(rs, &order).partition_q_coords(&c);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn partition_function_matches_enumeration(idx in 0usize..5, c in small_ints(4, 0, 2)) {
        let rs = &systems()[idx];
        let c: Vec<i64> = c.iter().cycle().take(rs.rank()).copied().collect();
        let xi = from_simple_root_coords(&RationalVector::from_ints(&c), rs);
        let fast = PartitionFunction::new(rs).partition_q(&xi);
        prop_assert_eq!(&fast, &partition_q_bruteforce(&xi, rs).unwrap());
        let height: i64 = c.iter().sum();
        if height > 0 {
            // The longest partition uses simple roots only.
            prop_assert_eq!(fast.degree().unwrap() as i64, height);
            prop_assert_eq!(fast.coeff(height as usize), num_bigint::BigUint::one());
        }
    }

    #[test]
    fn partition_function_vanishes_off_the_cone(idx in 0usize..5, c in small_ints(4, -3, 3)) {
        let rs = &systems()[idx];
        let c: Vec<i64> = c.iter().cycle().take(rs.rank()).copied().collect();
        prop_assume!(c.iter().any(|&x| x < 0));
        prop_assert!(PartitionFunction::new(rs).partition_q_coords(&c).is_zero());
    }

    #[test]
    fn subsets_are_distinct_and_separated(lo in 1usize..4, len in 0usize..12) {
        let hi = lo + len;
        let mut seen = HashSet::new();
        for s in nonconsecutive_subsets(lo, hi) {
            prop_assert!(s.windows(2).all(|w| w[1] >= w[0] + 2));
            prop_assert!(s.iter().all(|&i| (lo..=hi).contains(&i)));
            prop_assert!(seen.insert(s));
        }
        prop_assert_eq!(seen.len() as u128, fib(len + 3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplicity_is_constant_on_orbits(
        r in 2usize..=4,
        lambda in small_ints(4, 0, 2),
        mu in small_ints(4, -2, 2),
        word in prop::collection::vec(1usize..=4, 0..8),
    ) {
        let rs = build(LieType::B, r);
        let engine = Engine::new(&rs);
        let lambda = from_fundamental_coords(&RationalVector::from_ints(&lambda[..r]), &rs);
        let mu = from_fundamental_coords(&RationalVector::from_ints(&mu[..r]), &rs);
        let word: Vec<usize> = word.into_iter().filter(|&i| i <= r).collect();
        let w = engine.group().from_word(&word).unwrap();
        let moved = act(&w, &mu).unwrap();
        let m = engine.multiplicity(&lambda, &mu).unwrap();
        prop_assert_eq!(&m, &engine.multiplicity(&lambda, &moved).unwrap());
        prop_assert!(!m.is_negative());
    }

    #[test]
    fn q_multiplicity_at_one_is_the_multiplicity(
        idx in 0usize..5,
        lambda in small_ints(4, 0, 2),
        depth in small_ints(4, 0, 2),
    ) {
        let rs = &systems()[idx];
        let r = rs.rank();
        let lambda = from_fundamental_coords(&RationalVector::from_ints(&lambda[..r]), rs);
        let below = from_simple_root_coords(&RationalVector::from_ints(&depth[..r]), rs);
        let mu = &lambda - &below;
        let set = Engine::new(rs).alternation_set(&lambda, &mu).unwrap();
        let qm = set.q_multiplicity();
        prop_assert_eq!(qm.eval_at_one(), set.multiplicity());
        for e in &set.elements {
            prop_assert!(!e.partition_q.is_zero());
            prop_assert_eq!(e.sign() as i64, if e.length % 2 == 0 { 1 } else { -1 });
        }
        // L(λ) has λ − Σ c_i α_i as a weight only with non-negative multiplicity.
        prop_assert!(set.multiplicity() >= BigInt::from(0));
    }
}

fn words_and_partitions(threads: usize, rs: &RootSystem, lambda: &RationalVector) -> Vec<(Vec<usize>, QPolynomial)> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let set = Engine::new(rs).alternation_set(lambda, &rs.zero()).unwrap();
        set.elements.into_iter().map(|e| (e.word, e.partition_q)).collect()
    })
}

#[test]
fn alternation_sets_do_not_depend_on_thread_count() {
    for (t, r) in [(LieType::B, 5), (LieType::D, 4), (LieType::F4, 4)] {
        let rs = build(t, r);
        let lambda = rs.highest_root().clone();
        let one = words_and_partitions(1, &rs, &lambda);
        let four = words_and_partitions(4, &rs, &lambda);
        assert!(!one.is_empty());
        assert_eq!(one, four, "{}", rs.name());
    }
}

#[test]
fn enumeration_is_ordered_by_length_then_word() {
    for (t, r) in [(LieType::B, 3), (LieType::A, 3), (LieType::G2, 2)] {
        let rs = build(t, r);
        let group = WeylGroup::new(&rs);
        let keys: Vec<(usize, Vec<usize>)> = group
            .enumerate(DEFAULT_CAP)
            .unwrap()
            .map(|w| (w.length(), group.reduced_word(&w)))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len().to_u128().unwrap(), rs.weyl_group_order());
    }
}
