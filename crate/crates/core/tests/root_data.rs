//! Published root data: fundamental weights in the simple-root basis, ρ, and
//! the expansion of the sum of the simple roots.

mod common;

use common::*;
use weylalt::lattice::{to_fundamental_coords, to_simple_root_coords, Rational, RationalVector};
use weylalt::rootsystem::{is_dominant, sum_of_simple_roots_in_fundamental_basis};
use weylalt::weyl::{act, WeylGroup};
use weylalt::{LieType, RootSystem};

fn row(d: i64, nums: &[i64]) -> Vec<Rational> {
    nums.iter().map(|&n| frac(n, d)).collect()
}

fn assert_fundamental_table(rs: &RootSystem, table: &[Vec<Rational>]) {
    for (i, expected) in table.iter().enumerate() {
        let got = to_simple_root_coords(rs.fundamental_weight(i + 1), rs).unwrap();
        assert_eq!(got.coords(), &expected[..], "{} w{}", rs.name(), i + 1);
    }
}

#[test]
fn e6_fundamental_weights() {
    let rs = build(LieType::E6, 6);
    assert_fundamental_table(
        &rs,
        &[
            row(3, &[4, 3, 5, 6, 4, 2]),
            row(1, &[1, 2, 2, 3, 2, 1]),
            row(3, &[5, 6, 10, 12, 8, 4]),
            row(1, &[2, 3, 4, 6, 4, 2]),
            row(3, &[4, 6, 8, 12, 10, 5]),
            row(3, &[2, 3, 4, 6, 5, 4]),
        ],
    );
}

#[test]
fn e7_fundamental_weights() {
    let rs = build(LieType::E7, 7);
    assert_fundamental_table(
        &rs,
        &[
            row(1, &[2, 2, 3, 4, 3, 2, 1]),
            row(2, &[4, 7, 8, 12, 9, 6, 3]),
            row(1, &[3, 4, 6, 8, 6, 4, 2]),
            row(1, &[4, 6, 8, 12, 9, 6, 3]),
            row(2, &[6, 9, 12, 18, 15, 10, 5]),
            row(1, &[2, 3, 4, 6, 5, 4, 2]),
            row(2, &[2, 3, 4, 6, 5, 4, 3]),
        ],
    );
}

#[test]
fn e8_fundamental_weights() {
    let rs = build(LieType::E8, 8);
    assert_fundamental_table(
        &rs,
        &[
            row(1, &[4, 5, 7, 10, 8, 6, 4, 2]),
            row(1, &[5, 8, 10, 15, 12, 9, 6, 3]),
            row(1, &[7, 10, 14, 20, 16, 12, 8, 4]),
            row(1, &[10, 15, 20, 30, 24, 18, 12, 6]),
            row(1, &[8, 12, 16, 24, 20, 15, 10, 5]),
            row(1, &[6, 9, 12, 18, 15, 12, 8, 4]),
            row(1, &[4, 6, 8, 12, 10, 8, 6, 3]),
            row(1, &[2, 3, 4, 6, 5, 4, 3, 2]),
        ],
    );
}

#[test]
fn g2_fundamental_weights() {
    let rs = build(LieType::G2, 2);
    // ϖ2 = 3α1 + 2α2: pairs to 0 with α1^∨ and 1 with α2^∨.
    assert_fundamental_table(&rs, &[row(1, &[2, 1]), row(1, &[3, 2])]);
    assert_eq!(rs.simple_root(1), &RationalVector::from_ints(&[1, -1, 0]));
    assert_eq!(rs.simple_root(2), &RationalVector::from_ints(&[-2, 1, 1]));
}

#[test]
fn f4_fundamental_weights_in_bourbaki_numbering() {
    let rs = build(LieType::F4, 4);
    // The same table as for the numbering α1 = ½(e1−e2−e3−e4), α2 = e4,
    // α3 = e3−e4, α4 = e2−e3, read with both indices reversed.
    let reversed = [[2, 3, 2, 1], [3, 6, 4, 2], [4, 8, 6, 3], [2, 4, 3, 2]];
    let table: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| q(reversed[3 - i][3 - j])).collect())
        .collect();
    assert_fundamental_table(&rs, &table);
    assert_eq!(
        rs.simple_root(4),
        &RationalVector::from_fracs(&[(1, 2), (-1, 2), (-1, 2), (-1, 2)])
    );
}

#[test]
fn classical_fundamental_weights_and_rho() {
    for r in 2..=7 {
        let rs = build(LieType::B, r);
        for i in 1..r {
            let expected: Vec<i64> = (0..r).map(|j| (j < i) as i64).collect();
            assert_eq!(rs.fundamental_weight(i), &RationalVector::from_ints(&expected));
        }
        assert_eq!(rs.fundamental_weight(r), &RationalVector::new(vec![frac(1, 2); r]));
        let rho: Vec<(i64, i64)> = (0..r).map(|j| (2 * (r - j) as i64 - 1, 2)).collect();
        assert_eq!(rs.rho(), &RationalVector::from_fracs(&rho));
    }
    for r in 3..=7 {
        let rs = build(LieType::C, r);
        for i in 1..=r {
            let expected: Vec<i64> = (0..r).map(|j| (j < i) as i64).collect();
            assert_eq!(rs.fundamental_weight(i), &RationalVector::from_ints(&expected));
        }
    }
    for r in 4..=7 {
        let rs = build(LieType::D, r);
        let mut minus = vec![frac(1, 2); r];
        minus[r - 1] = frac(-1, 2);
        assert_eq!(rs.fundamental_weight(r - 1), &RationalVector::new(minus));
        assert_eq!(rs.fundamental_weight(r), &RationalVector::new(vec![frac(1, 2); r]));
    }
}

fn fundamental_expansion(rs: &RootSystem, terms: &[(usize, i64)]) -> RationalVector {
    let mut m = vec![q(0); rs.rank()];
    for &(i, c) in terms {
        m[i - 1] += q(c);
    }
    RationalVector::new(m)
}

#[test]
fn sum_of_simple_roots_expansions() {
    let mut cases: Vec<(RootSystem, Vec<(usize, i64)>, bool)> = Vec::new();
    for r in 3..=8 {
        cases.push((build(LieType::C, r), vec![(1, 1), (r - 1, -1), (r, 1)], false));
    }
    for r in 4..=8 {
        cases.push((
            build(LieType::D, r),
            vec![(1, 1), (r - 2, -1), (r - 1, 1), (r, 1)],
            false,
        ));
    }
    for r in 2..=8 {
        cases.push((build(LieType::B, r), vec![(1, 1)], true));
        cases.push((build(LieType::A, r), vec![(1, 1), (r, 1)], true));
    }
    cases.push((build(LieType::G2, 2), vec![(1, -1), (2, 1)], false));
    cases.push((build(LieType::F4, 4), vec![(1, 1), (3, -1), (4, 1)], false));
    for (t, r) in [(LieType::E6, 6), (LieType::E7, 7), (LieType::E8, 8)] {
        cases.push((build(t, r), vec![(1, 1), (2, 1), (4, -1), (r, 1)], false));
    }
    for (rs, terms, dominant) in cases {
        let expected = fundamental_expansion(&rs, &terms);
        assert_eq!(sum_of_simple_roots_in_fundamental_basis(&rs), expected, "{}", rs.name());
        // Cross-check through the pairing definition.
        let sum = rs.sum_of_simple_roots();
        let pairings: Vec<Rational> = rs.simple_roots().iter().map(|a| q(2) * sum.dot(a) / a.dot(a)).collect();
        assert_eq!(RationalVector::new(pairings), expected);
        assert_eq!(is_dominant(&sum, &rs).unwrap(), dominant, "{}", rs.name());
    }
}

#[test]
fn type_b_reflections_on_the_shifted_weight() {
    for r in 2..=6 {
        let rs = build(LieType::B, r);
        let group = WeylGroup::new(&rs);
        let w1 = rs.fundamental_weight(1);
        let shifted = w1 + rs.rho();
        let s2 = group.simple_reflection(2).unwrap();
        let got = &act(&s2, &shifted).unwrap() - rs.rho();
        assert_eq!(got, w1 - rs.simple_root(2));
        if r == 2 {
            let s1 = group.simple_reflection(1).unwrap();
            let got = &act(&s1, &shifted).unwrap() - rs.rho();
            assert_eq!(got, rs.simple_root(2) - rs.simple_root(1));
        }
        assert_eq!(
            to_fundamental_coords(w1, &rs).unwrap(),
            fundamental_expansion(&rs, &[(1, 1)])
        );
    }
}
