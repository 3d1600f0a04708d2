//! Weyl alternation sets and Kostant's multiplicity formula
//!
//! m(λ, μ) = Σ_{σ∈W} (−1)^{ℓ(σ)} ℘(σ(λ+ρ) − (μ+ρ)),
//!
//! together with its q-analog and the closed forms known for L(ϖ1) in type B.
//!
//! The sum runs over the whole group, but an element only contributes when
//! σ(λ+ρ) − (μ+ρ) has non-negative integer simple-root coordinates, which is
//! checked in machine integers before any partition function is evaluated.

use std::cmp::Reverse;
use std::collections::{HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{binomial, nonconsecutive_subsets};
use crate::error::{Error, Result};
use crate::kostant::{lattice_coords, PartitionFunction, QPolynomial, SignedQPolynomial};
use crate::lattice::{self, RationalVector};
use crate::rootsystem::{self, RootSystem};
use crate::weyl::{self, WeylElement, WeylGroup, DEFAULT_CAP};

/// One σ in an alternation set, with the data of its term in the sum.
#[derive(Clone, Debug)]
pub struct AlternationElement {
    pub element: WeylElement,
    /// Lexicographically smallest reduced word.
    pub word: Vec<usize>,
    pub length: usize,
    /// σ(λ+ρ) − (μ+ρ) in ambient coordinates.
    pub xi: RationalVector,
    /// The same vector in simple-root coordinates.
    pub xi_coords: Vec<i64>,
    pub partition_q: QPolynomial,
}

impl AlternationElement {
    /// (−1)^ℓ(σ).
    pub fn sign(&self) -> i32 {
        self.element.sign()
    }

    /// ℘(σ(λ+ρ) − (μ+ρ)).
    pub fn partition(&self) -> BigUint {
        self.partition_q.eval_at_one()
    }

    /// This element's term (−1)^ℓ(σ) ℘_q(…).
    pub fn q_contribution(&self) -> SignedQPolynomial {
        let p = SignedQPolynomial::from(&self.partition_q);
        if self.sign() < 0 {
            -&p
        } else {
            p
        }
    }
}

/// 𝒜(λ, μ): the σ ∈ W with ℘(σ(λ+ρ) − (μ+ρ)) > 0, ordered by length and
/// then by reduced word.
#[derive(Clone, Debug)]
pub struct AlternationSet {
    pub lambda: RationalVector,
    pub mu: RationalVector,
    pub elements: Vec<AlternationElement>,
}

impl AlternationSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn words(&self) -> Vec<Vec<usize>> {
        self.elements.iter().map(|e| e.word.clone()).collect()
    }

    pub fn contains_identity(&self) -> bool {
        self.elements.iter().any(|e| e.length == 0)
    }

    pub fn multiplicity(&self) -> BigInt {
        self.elements.iter().fold(BigInt::zero(), |acc, e| {
            let p = BigInt::from(e.partition());
            if e.sign() < 0 {
                acc - p
            } else {
                acc + p
            }
        })
    }

    pub fn q_multiplicity(&self) -> SignedQPolynomial {
        self.elements
            .iter()
            .fold(SignedQPolynomial::zero(), |acc, e| &acc + &e.q_contribution())
    }
}

/// A weight of an irreducible module together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDiagramEntry {
    pub weight: RationalVector,
    pub multiplicity: BigUint,
}

/// Shares one Weyl group and one partition-function memo across queries on a
/// root system.
pub struct Engine<'a> {
    rs: &'a RootSystem,
    group: WeylGroup<'a>,
    pf: PartitionFunction<'a>,
    cap: u64,
    /// Root-coordinate matrix scaled to integers, with its scale.
    coord_rows: Vec<Vec<i128>>,
    coord_denom: i128,
}

impl<'a> Engine<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        Self::with_partition_function(PartitionFunction::new(rs))
    }

    pub fn with_partition_function(pf: PartitionFunction<'a>) -> Self {
        let rs = pf.root_system();
        let m = rs.root_coordinate_matrix();
        let denom = (0..m.rows()).fold(BigInt::one(), |acc, i| acc.lcm(&m.row(i).common_denominator()));
        let coord_rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .scaled_i64(&denom)
                    .expect("root coordinate matrix has small entries")
                    .into_iter()
                    .map(i128::from)
                    .collect()
            })
            .collect();
        Self {
            rs,
            group: WeylGroup::new(rs),
            pf,
            cap: DEFAULT_CAP,
            coord_rows,
            coord_denom: denom.to_i128().expect("small denominator"),
        }
    }

    /// Largest Weyl group order this engine will sum over.
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn group(&self) -> &WeylGroup<'a> {
        &self.group
    }

    pub fn partition_function(&self) -> &PartitionFunction<'a> {
        &self.pf
    }

    fn check_weight(&self, w: &RationalVector) -> Result<()> {
        let m = lattice::to_fundamental_coords(w, self.rs)?;
        if !m.is_integral() {
            return Err(Error::NotIntegral(w.to_string()));
        }
        Ok(())
    }

    /// 𝒜(λ, μ). Both weights must lie in the weight lattice.
    pub fn alternation_set(&self, lambda: &RationalVector, mu: &RationalVector) -> Result<AlternationSet> {
        self.check_weight(lambda)?;
        self.check_weight(mu)?;
        let rho = self.rs.rho();
        let v = lambda + rho;
        let t = mu + rho;

        let d = v.common_denominator().lcm(&t.common_denominator());
        let v_int = v.scaled_i64(&d).expect("weights have small coordinates");
        let t_int: Vec<i128> = t
            .scaled_i64(&d)
            .expect("weights have small coordinates")
            .into_iter()
            .map(i128::from)
            .collect();
        let d = d.to_i128().expect("small denominator");

        let survives = |w: &WeylElement| -> bool {
            let mut image = vec![0i64; v_int.len()];
            let e = i128::from(w.action().apply_int(&v_int, &mut image));
            let xi: Vec<i128> = image.iter().zip(&t_int).map(|(&y, &t)| i128::from(y) - e * t).collect();
            let scale = d * e * self.coord_denom;
            self.coord_rows.iter().all(|row| {
                let c: i128 = row.iter().zip(&xi).map(|(a, x)| a * x).sum();
                c >= 0 && c % scale == 0
            })
        };

        let mut candidates = Vec::new();
        for layer in self.group.layers(self.cap)? {
            candidates.extend(layer.into_par_iter().filter(|w| survives(w)).collect::<Vec<_>>());
        }

        let elements: Vec<Option<AlternationElement>> = candidates
            .into_par_iter()
            .map(|w| {
                let xi = &weyl::act(&w, &v).expect("dimension checked") - &t;
                let xi_coords = lattice_coords(&xi, self.rs)?;
                let partition_q = self.pf.partition_q_coords(&xi_coords);
                if partition_q.is_zero() {
                    return None;
                }
                Some(AlternationElement {
                    word: self.group.reduced_word(&w),
                    length: w.length(),
                    element: w,
                    xi,
                    xi_coords,
                    partition_q,
                })
            })
            .collect();

        Ok(AlternationSet {
            lambda: lambda.clone(),
            mu: mu.clone(),
            elements: elements.into_iter().flatten().collect(),
        })
    }

    /// m(λ, μ).
    pub fn multiplicity(&self, lambda: &RationalVector, mu: &RationalVector) -> Result<BigInt> {
        Ok(self.alternation_set(lambda, mu)?.multiplicity())
    }

    /// m_q(λ, μ).
    pub fn q_multiplicity(&self, lambda: &RationalVector, mu: &RationalVector) -> Result<SignedQPolynomial> {
        Ok(self.alternation_set(lambda, mu)?.q_multiplicity())
    }

    /// Every weight of L(λ) with its multiplicity.
    ///
    /// Walks the dominant weights below λ by subtracting positive roots and
    /// moving back to the dominant chamber, keeps those with m > 0 and within
    /// height(λ − w₀λ) of λ, then expands each to its W-orbit. Entries are
    /// ordered by depth below λ, then by ambient coordinates, descending.
    pub fn weight_diagram(&self, lambda: &RationalVector) -> Result<Vec<WeightDiagramEntry>> {
        if !rootsystem::is_dominant_integral(lambda, self.rs)? {
            return Err(Error::NotDominantIntegral(lambda.to_string()));
        }
        let depth =
            |mu: &RationalVector| -> Option<i64> { lattice_coords(&(lambda - mu), self.rs).map(|c| c.iter().sum()) };
        let lowest = self.rs.antidominant_representative(lambda);
        let max_depth = depth(&lowest).expect("λ − w₀λ is a sum of positive roots");

        let mut dominant = vec![(lambda.clone(), BigUint::one())];
        let mut seen = HashSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(nu) = queue.pop_front() {
            for alpha in self.rs.positive_roots() {
                let cand = self.rs.dominant_representative(&(&nu - alpha));
                if !seen.insert(cand.clone()) {
                    continue;
                }
                if !depth(&cand).is_some_and(|h| h <= max_depth) {
                    continue;
                }
                let m = self.multiplicity(lambda, &cand)?;
                if m.is_positive() {
                    dominant.push((cand.clone(), m.to_biguint().expect("positive")));
                    queue.push_back(cand);
                }
            }
        }

        let mut entries: Vec<WeightDiagramEntry> = dominant
            .into_iter()
            .flat_map(|(rep, m)| {
                weyl::orbit(&rep, self.rs)
                    .into_iter()
                    .map(move |weight| WeightDiagramEntry {
                        weight,
                        multiplicity: m.clone(),
                    })
            })
            .collect();
        entries.sort_by_cached_key(|e| (depth(&e.weight), Reverse(e.weight.clone())));
        Ok(entries)
    }
}

/// 𝒜(λ, μ) over `rs`, refusing groups larger than `cap`.
pub fn alternation_set(
    lambda: &RationalVector,
    mu: &RationalVector,
    rs: &RootSystem,
    cap: u64,
) -> Result<AlternationSet> {
    Engine::new(rs).with_cap(cap).alternation_set(lambda, mu)
}

/// m(λ, μ) by Kostant's formula.
pub fn multiplicity(lambda: &RationalVector, mu: &RationalVector, rs: &RootSystem, cap: u64) -> Result<BigInt> {
    Engine::new(rs).with_cap(cap).multiplicity(lambda, mu)
}

/// m_q(λ, μ).
pub fn q_multiplicity(
    lambda: &RationalVector,
    mu: &RationalVector,
    rs: &RootSystem,
    cap: u64,
) -> Result<SignedQPolynomial> {
    Engine::new(rs).with_cap(cap).q_multiplicity(lambda, mu)
}

/// Weights of L(λ) with multiplicities.
pub fn weight_diagram(lambda: &RationalVector, rs: &RootSystem, cap: u64) -> Result<Vec<WeightDiagramEntry>> {
    Engine::new(rs).with_cap(cap).weight_diagram(lambda)
}

/// Expected 𝒜(ϖ1, 0) in B_r: the products of s_i over nonconsecutive subsets
/// of {2, …, r}, each as its sorted index list.
pub fn predicted_alternation_set_b(r: usize) -> Vec<Vec<usize>> {
    nonconsecutive_subsets(2, r).collect()
}

/// Splits a nonconsecutive subset of {2, …, r} into (k, has s_r), where k
/// counts the factors other than s_r.
pub fn length_parameters_b(indices: &[usize], r: usize) -> (usize, bool) {
    let has_sr = indices.contains(&r);
    (indices.len() - usize::from(has_sr), has_sr)
}

/// Expected ℘_q(σ(ϖ1+ρ) − ρ) in B_r for σ = Π_{i∈indices} s_i:
/// q^{1+k}(1+q)^{r−1−2k} without s_r and q^{1+k}(1+q)^{r−2−2k} with it, where
/// k excludes s_r. Index lists too long for rank r give the zero polynomial.
pub fn predicted_pq_b(indices: &[usize], r: usize) -> QPolynomial {
    let (k, has_sr) = length_parameters_b(indices, r);
    match (r + 1).checked_sub(2 + usize::from(has_sr) + 2 * k) {
        Some(exponent) => QPolynomial::one_plus_q_pow(exponent).shift(1 + k),
        None => QPolynomial::zero(),
    }
}

/// Expected number of elements of 𝒜(ϖ1, 0) in B_r with parameters
/// (k, has_sr): C(r−1−k, k) or C(r−2−k, k).
pub fn predicted_count_by_length_b(r: usize, k: usize, has_sr: bool) -> BigUint {
    let top = r as i64 - 1 - i64::from(has_sr) - k as i64;
    binomial(top, k as i64)
}
