//! Slow, independent reference implementations used to check the library.
//! None of these call into the library's algorithms; they only share its
//! exact number and vector types.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use weylalt::lattice::{Rational, RationalMatrix, RationalVector};
use weylalt::{LieType, RootSystem};

pub fn build(t: LieType, r: usize) -> RootSystem {
    RootSystem::build(t, r).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

/// Σ c_i α_i.
pub fn combine(rs: &RootSystem, c: &[Rational]) -> RationalVector {
    let mut v = rs.zero();
    for (ci, a) in c.iter().zip(rs.simple_roots()) {
        v = &v + &a.scale(ci);
    }
    v
}

/// Simple-root coordinates by solving the normal equations with plain
/// Gaussian elimination. `None` when v is off the span.
pub fn solve_simple_coords(rs: &RootSystem, v: &RationalVector) -> Option<Vec<Rational>> {
    let r = rs.rank();
    let a = rs.simple_roots();
    let mut m: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational> = (0..r).map(|j| a[i].dot(&a[j])).collect();
            row.push(a[i].dot(v));
            row
        })
        .collect();
    for col in 0..r {
        let pivot = (col..r).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..r {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    let c: Vec<Rational> = m.iter().map(|row| row[r].clone()).collect();
    (combine(rs, &c) == *v).then_some(c)
}

/// Non-negative integer simple-root coordinates, if any.
pub fn natural_coords(rs: &RootSystem, v: &RationalVector) -> Option<Vec<usize>> {
    solve_simple_coords(rs, v)?
        .iter()
        .map(|x| {
            if x.is_integer() && !x.is_negative() {
                x.to_integer().to_usize()
            } else {
                None
            }
        })
        .collect()
}

/// Coefficients of ℘_q by a knapsack table over the box [0, target].
pub fn partition_dp(rs: &RootSystem, target: &[usize]) -> Vec<u128> {
    let roots: Vec<Vec<usize>> = rs
        .positive_roots()
        .iter()
        .map(|a| natural_coords(rs, a).expect("positive roots are natural combinations"))
        .collect();
    let dims: Vec<usize> = target.iter().map(|&t| t + 1).collect();
    let size: usize = dims.iter().product();
    let parts = target.iter().sum::<usize>() + 1;
    let index = |v: &[usize]| v.iter().zip(&dims).fold(0, |acc, (&x, &d)| acc * d + x);
    let decode = |mut i: usize| {
        let mut v = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            v[k] = i % dims[k];
            i /= dims[k];
        }
        v
    };
    let mut table = vec![vec![0u128; parts]; size];
    table[0][0] = 1;
    for root in &roots {
        for i in 0..size {
            let v = decode(i);
            if v.iter().zip(root).any(|(x, a)| x < a) {
                continue;
            }
            let prev: Vec<usize> = v.iter().zip(root).map(|(x, a)| x - a).collect();
            let j = index(&prev);
            for p in 1..parts {
                let add = table[j][p - 1];
                table[i][p] += add;
            }
        }
    }
    let mut out = table[index(target)].clone();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// ℘ of an ambient vector via [`partition_dp`].
pub fn partition_count(rs: &RootSystem, v: &RationalVector) -> u128 {
    match natural_coords(rs, v) {
        Some(c) => partition_dp(rs, &c).iter().sum(),
        None => 0,
    }
}

/// I − 2ααᵀ/(α, α), built entry by entry.
pub fn reflection(alpha: &RationalVector) -> RationalMatrix {
    let n = alpha.dim();
    let norm = alpha.dot(alpha);
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { q(1) } else { q(0) };
            m.set(i, j, delta - q(2) * &alpha[i] * &alpha[j] / &norm);
        }
    }
    m
}

fn matrix_key(m: &RationalMatrix) -> Vec<Rational> {
    let mut k = Vec::new();
    for i in 0..m.rows() {
        k.extend(m.row(i).into_coords());
    }
    k
}

/// The Weyl group as matrices by breadth-first closure, with word lengths.
pub fn weyl_closure(rs: &RootSystem) -> Vec<(RationalMatrix, usize)> {
    let gens: Vec<RationalMatrix> = rs.simple_roots().iter().map(reflection).collect();
    let id = RationalMatrix::identity(rs.ambient_dim());
    let mut seen = HashSet::from([matrix_key(&id)]);
    let mut out = vec![(id.clone(), 0)];
    let mut queue = VecDeque::from([(id, 0)]);
    while let Some((m, len)) = queue.pop_front() {
        for g in &gens {
            let next = g * &m;
            if seen.insert(matrix_key(&next)) {
                out.push((next.clone(), len + 1));
                queue.push_back((next, len + 1));
            }
        }
    }
    out
}

/// m(λ, μ) by summing Kostant's formula over the whole closure.
pub fn kostant_naive(
    rs: &RootSystem,
    group: &[(RationalMatrix, usize)],
    lambda: &RationalVector,
    mu: &RationalVector,
) -> (i128, Vec<usize>) {
    let rho = rs.rho();
    let v = lambda + rho;
    let t = mu + rho;
    let mut total = 0i128;
    let mut support = Vec::new();
    for (i, (m, len)) in group.iter().enumerate() {
        let xi = &m.mul_vec(&v) - &t;
        let p = partition_count(rs, &xi) as i128;
        if p > 0 {
            support.push(i);
            total += if len % 2 == 0 { p } else { -p };
        }
    }
    (total, support)
}

/// Every weight of L(λ) with multiplicity, by Freudenthal's recursion over
/// λ − Σ c_i α_i in order of depth.
pub fn freudenthal(rs: &RootSystem, lambda: &RationalVector) -> HashMap<RationalVector, i128> {
    let rho = rs.rho();
    let positive = rs.positive_roots();
    // Depth bound: height of λ − w₀λ, with w₀λ found by reflecting to the
    // antidominant chamber by hand.
    let mut low = lambda.clone();
    'outer: loop {
        for a in rs.simple_roots() {
            let c = q(2) * low.dot(a) / a.dot(a);
            if c.is_positive() {
                low = &low - &a.scale(&c);
                continue 'outer;
            }
        }
        break;
    }
    let depth: usize = natural_coords(rs, &(lambda - &low)).unwrap().iter().sum();

    let norm = |v: &RationalVector| v.dot(v);
    let top = norm(&(lambda + rho));
    let mut mult: HashMap<RationalVector, i128> = HashMap::from([(lambda.clone(), 1)]);
    let mut layer = vec![lambda.clone()];
    for _ in 1..=depth {
        let mut next: Vec<RationalVector> = Vec::new();
        let mut seen = HashSet::new();
        for nu in &layer {
            for a in rs.simple_roots() {
                let mu = nu - a;
                if seen.insert(mu.clone()) {
                    next.push(mu);
                }
            }
        }
        for mu in &next {
            let mut numerator = q(0);
            for alpha in positive {
                let mut k = 1;
                loop {
                    let up = mu + &alpha.scale(&q(k));
                    if natural_coords(rs, &(lambda - &up)).is_none() {
                        break;
                    }
                    if let Some(&m) = mult.get(&up) {
                        numerator += q(m as i64) * up.dot(alpha);
                    }
                    k += 1;
                }
            }
            numerator *= q(2);
            let denom = &top - norm(&(mu + rho));
            let m = if numerator.is_zero() {
                q(0)
            } else {
                assert!(!denom.is_zero(), "Freudenthal denominator vanished at {mu}");
                numerator / denom
            };
            assert!(m.is_integer(), "non-integral multiplicity at {mu}");
            let m = m.to_integer().to_i128().unwrap();
            if m != 0 {
                mult.insert(mu.clone(), m);
            }
        }
        layer = next;
    }
    mult
}

/// dim L(λ) = Π_{α>0} (λ+ρ, α)/(ρ, α).
pub fn weyl_dimension(rs: &RootSystem, lambda: &RationalVector) -> Rational {
    let rho = rs.rho();
    let shifted = lambda + rho;
    rs.positive_roots()
        .iter()
        .fold(Rational::one(), |acc, a| acc * shifted.dot(a) / rho.dot(a))
}

pub fn fib(n: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

pub fn binom(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut c = 1u128;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}
