//! Fibonacci numbers, nonconsecutive subsets and the alternating binomial
//! sums that make m_q(ϖ1, 0) collapse to q^r in type B.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kostant::SignedQPolynomial;

/// Growable table of Fibonacci numbers, F_1 = F_2 = 1.
#[derive(Debug, Default)]
pub struct FibSequence {
    cache: Vec<BigUint>,
}

impl FibSequence {
    pub fn new() -> Self {
        Self {
            cache: vec![BigUint::one(), BigUint::one()],
        }
    }

    pub fn get(&mut self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::FibonacciIndex);
        }
        if self.cache.is_empty() {
            *self = Self::new();
        }
        while self.cache.len() < n {
            let k = self.cache.len();
            let next = &self.cache[k - 1] + &self.cache[k - 2];
            self.cache.push(next);
        }
        Ok(self.cache[n - 1].clone())
    }
}

static FIB: Mutex<FibSequence> = Mutex::new(FibSequence { cache: Vec::new() });

/// F_n for n ≥ 1.
pub fn fibonacci(n: usize) -> Result<BigUint> {
    FIB.lock().expect("fibonacci cache").get(n)
}

/// Binomial coefficient with C(n, k) = 0 whenever n < 0, k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64)
    })
}

/// Subsets of {lo, …, hi} containing no two consecutive integers, as sorted
/// lists, starting with ∅. An empty range (lo = hi + 1) yields only ∅.
pub fn nonconsecutive_subsets(lo: usize, hi: usize) -> NonconsecutiveSubsets {
    NonconsecutiveSubsets {
        lo,
        hi,
        next: Some(Vec::new()),
    }
}

/// Iterator returned by [`nonconsecutive_subsets`]. Subsets come out in
/// lexicographic order of their sorted member lists.
#[derive(Clone, Debug)]
pub struct NonconsecutiveSubsets {
    lo: usize,
    hi: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for NonconsecutiveSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        self.next = self.successor(&current);
        Some(current)
    }
}

impl NonconsecutiveSubsets {
    fn successor(&self, s: &[usize]) -> Option<Vec<usize>> {
        // Extend by the smallest admissible element if there is one.
        let first_free = s.last().map_or(self.lo, |&x| x + 2);
        if first_free <= self.hi {
            let mut t = s.to_vec();
            t.push(first_free);
            return Some(t);
        }
        // Otherwise bump the deepest element that can still grow.
        let mut t = s.to_vec();
        while let Some(x) = t.pop() {
            if x < self.hi {
                t.push(x + 1);
                return Some(t);
            }
        }
        None
    }
}

fn one_plus_q_pow(n: i64) -> SignedQPolynomial {
    SignedQPolynomial::one_plus_q_pow(n as usize)
}

/// Σ_k (−1)^k C(n−k, k) q^{1+k} (1+q)^{n−2k}, with an extra overall sign
/// when `negate`.
fn alternating_sum(n: i64, negate: bool) -> SignedQPolynomial {
    let mut total = SignedQPolynomial::zero();
    for k in 0..=n.max(0) / 2 {
        let c = binomial(n - k, k);
        if c.is_zero() {
            continue;
        }
        let odd = (k % 2 == 1) != negate;
        let c = if odd { -BigInt::from(c) } else { BigInt::from(c) };
        let term = one_plus_q_pow(n - 2 * k).shift(1 + k as usize).scale(&c);
        total = &total + &term;
    }
    total
}

/// q + q² + ⋯ + q^n.
fn q_range(n: i64) -> SignedQPolynomial {
    (1..=n.max(0) as usize).fold(SignedQPolynomial::zero(), |acc, i| &acc + &SignedQPolynomial::q_pow(i))
}

/// Checks, as exact polynomial identities,
///
/// Σ_k (−1)^k C(r−1−k, k) q^{1+k}(1+q)^{r−1−2k} = q + ⋯ + q^r and
/// Σ_k (−1)^{1+k} C(r−2−k, k) q^{1+k}(1+q)^{r−2−2k} = −(q + ⋯ + q^{r−1}).
pub fn verify_alternating_identity(r: usize) -> bool {
    let r = r as i64;
    if r < 1 {
        return false;
    }
    alternating_sum(r - 1, false) == q_range(r) && alternating_sum(r - 2, true) == -&q_range(r - 1)
}
