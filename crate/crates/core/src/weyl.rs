//! Weyl group elements, breadth-first enumeration by length, and the action
//! on weights.
//!
//! Types A–D are handled as signed permutations of the ε_i (type A never
//! flips a sign). G2, F4 and the E-series use integer matrices over a fixed
//! common denominator: every element of those groups has ambient matrix
//! entries in (1/D)ℤ for the D that clears the generators (3 for G2, 2 for F4,
//! 4 for the E-series), so products stay exact in `i64`.
//!
//! Enumeration keeps only three length layers alive at a time. Right
//! multiplication by a simple reflection changes length by exactly one, so
//! the children of layer k that are not in layer k−1 are precisely layer k+1.
//! Layers are visited with generators in ascending order, which makes the
//! first discovery of each element follow its lexicographically smallest
//! reduced word; within a layer, elements therefore come out sorted by that
//! word.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lattice::{Rational, RationalMatrix, RationalVector};
use crate::rootsystem::RootSystem;

/// Default bound on the group order accepted by [`WeylGroup::enumerate`].
/// B_8 (10,321,920 elements) needs an explicit raise.
pub const DEFAULT_CAP: u64 = 2_000_000;

/// Compact representation of a group element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Action {
    /// Entry i is ±(π(i)+1): the element sends ε_i to ±ε_{π(i)}.
    SignedPerm(SmallVec<[i8; 16]>),
    /// Row-major `dim × dim` integer matrix; the element is `entries / denom`.
    Matrix { entries: Box<[i64]>, denom: i64 },
}

impl Action {
    fn dim(&self) -> usize {
        match self {
            Action::SignedPerm(p) => p.len(),
            Action::Matrix { entries, .. } => entries.len().sqrt(),
        }
    }

    /// `self ∘ rhs`.
    fn compose(&self, rhs: &Action) -> Action {
        match (self, rhs) {
            (Action::SignedPerm(a), Action::SignedPerm(b)) => Action::SignedPerm(
                b.iter()
                    .map(|&p| {
                        let image = a[(p.unsigned_abs() - 1) as usize];
                        if p < 0 {
                            -image
                        } else {
                            image
                        }
                    })
                    .collect(),
            ),
            (Action::Matrix { entries: a, denom }, Action::Matrix { entries: b, .. }) => {
                let n = self.dim();
                let mut out = vec![0i64; n * n].into_boxed_slice();
                for i in 0..n {
                    for j in 0..n {
                        let s: i64 = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum();
                        assert!(s % denom == 0, "Weyl matrix left the (1/{denom})ℤ lattice");
                        out[i * n + j] = s / denom;
                    }
                }
                Action::Matrix {
                    entries: out,
                    denom: *denom,
                }
            }
            _ => unreachable!("mixed element representations"),
        }
    }

    /// Applies the element to an integer vector. Returns the image and the
    /// denominator it must be divided by.
    pub(crate) fn apply_int(&self, v: &[i64], out: &mut [i64]) -> i64 {
        match self {
            Action::SignedPerm(p) => {
                for (i, &e) in p.iter().enumerate() {
                    let target = (e.unsigned_abs() - 1) as usize;
                    out[target] = if e < 0 { -v[i] } else { v[i] };
                }
                1
            }
            Action::Matrix { entries, denom } => {
                let n = v.len();
                for i in 0..n {
                    out[i] = (0..n).map(|k| entries[i * n + k] * v[k]).sum();
                }
                *denom
            }
        }
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::SignedPerm(p) => write!(f, "SignedPerm{:?}", p.as_slice()),
            Action::Matrix { entries, denom } => {
                write!(f, "Matrix({:?} / {denom})", &entries[..])
            }
        }
    }
}

/// One Weyl group element with its length.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    action: Action,
    length: usize,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    /// Signed-permutation encoding, when the group has one: entry i is
    /// ±(π(i)+1) for w(ε_i) = ±ε_{π(i)}.
    pub fn signed_perm(&self) -> Option<&[i8]> {
        match &self.action {
            Action::SignedPerm(p) => Some(p),
            Action::Matrix { .. } => None,
        }
    }

    /// (−1)^length.
    pub fn sign(&self) -> i32 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The ambient matrix of the element.
    pub fn matrix(&self) -> RationalMatrix {
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        match &self.action {
            Action::SignedPerm(p) => {
                for (i, &e) in p.iter().enumerate() {
                    let row = (e.unsigned_abs() - 1) as usize;
                    m.set(row, i, Rational::from_integer(BigInt::from(e.signum())));
                }
            }
            Action::Matrix { entries, denom } => {
                for i in 0..n {
                    for j in 0..n {
                        m.set(
                            i,
                            j,
                            Rational::new(BigInt::from(entries[i * n + j]), BigInt::from(*denom)),
                        );
                    }
                }
            }
        }
        m
    }
}

/// Exact action w(v).
pub fn act(w: &WeylElement, v: &RationalVector) -> Result<RationalVector> {
    if w.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            actual: v.dim(),
        });
    }
    Ok(match &w.action {
        Action::SignedPerm(p) => {
            let mut out = vec![Rational::zero(); v.dim()];
            for (i, &e) in p.iter().enumerate() {
                let target = (e.unsigned_abs() - 1) as usize;
                out[target] = if e < 0 { -&v[i] } else { v[i].clone() };
            }
            RationalVector::new(out)
        }
        Action::Matrix { .. } => w.matrix().mul_vec(v),
    })
}

/// The Weyl group of a root system: generators plus the machinery to walk it.
#[derive(Clone, Debug)]
pub struct WeylGroup<'a> {
    rs: &'a RootSystem,
    generators: Vec<Action>,
    identity: Action,
}

impl<'a> WeylGroup<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let n = rs.ambient_dim();
        let mats: Vec<RationalMatrix> = rs.simple_roots().iter().map(reflection_matrix).collect();

        let perms: Option<Vec<SmallVec<[i8; 16]>>> = mats.iter().map(as_signed_perm).collect();
        let (generators, identity) = match perms {
            Some(perms) => (
                perms.into_iter().map(Action::SignedPerm).collect(),
                Action::SignedPerm((1..=n as i8).collect()),
            ),
            None => {
                let denom = mats.iter().fold(BigInt::one(), |acc, m| {
                    (0..n).fold(acc, |acc, i| acc.lcm(&m.row(i).common_denominator()))
                });
                let denom_i = denom.to_i64().expect("small denominator");
                let scale = |m: &RationalMatrix| {
                    let mut entries = Vec::with_capacity(n * n);
                    for i in 0..n {
                        entries.extend(m.row(i).scaled_i64(&denom).expect("entries clear"));
                    }
                    Action::Matrix {
                        entries: entries.into_boxed_slice(),
                        denom: denom_i,
                    }
                };
                (mats.iter().map(scale).collect(), scale(&RationalMatrix::identity(n)))
            }
        };
        Self {
            rs,
            generators,
            identity,
        }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> u128 {
        self.rs.weyl_group_order()
    }

    pub fn uses_signed_perms(&self) -> bool {
        matches!(self.identity, Action::SignedPerm(_))
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            action: self.identity.clone(),
            length: 0,
        }
    }

    /// s_i for 1-based `i`.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(WeylElement {
            action: self.generators[i - 1].clone(),
            length: 1,
        })
    }

    /// s_{w_1} s_{w_2} ⋯ s_{w_k}; the length is recomputed, so the word need
    /// not be reduced.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut action = self.identity.clone();
        for &i in word {
            action = action.compose(&self.simple_reflection(i)?.action);
        }
        let mut w = WeylElement { action, length: 0 };
        w.length = self.inversion_count(&w);
        Ok(w)
    }

    /// `a ∘ b`, with its length.
    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let mut w = WeylElement {
            action: a.action.compose(&b.action),
            length: 0,
        };
        w.length = self.inversion_count(&w);
        w
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        let rho = self.rs.rho();
        self.rs
            .positive_roots()
            .iter()
            .filter(|a| act(w, a).expect("dimension matches").dot(rho).is_negative())
            .count()
    }

    /// Lexicographically smallest reduced word (1-based indices), read so that
    /// w = s_{word[0]} s_{word[1]} ⋯.
    ///
    /// Repeatedly peels off the smallest left descent: s_i is a left descent
    /// of w exactly when (α_i, w(ρ)) < 0.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut v = act(w, self.rs.rho()).expect("dimension matches");
        let mut word = Vec::with_capacity(w.length);
        'outer: loop {
            for i in 1..=self.rank() {
                if v.dot(self.rs.simple_root(i)).is_negative() {
                    word.push(i);
                    v = self.rs.reflect(&v, i);
                    continue 'outer;
                }
            }
            return word;
        }
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(())
    }

    /// Iterator over the length layers of the group.
    pub fn layers(&self, cap: u64) -> Result<Layers<'_, 'a>> {
        self.check_cap(cap)?;
        let mut first = IndexSet::new();
        first.insert(self.identity.clone());
        Ok(Layers {
            group: self,
            prev: IndexSet::new(),
            cur: Some(first),
            length: 0,
        })
    }

    /// Every element exactly once, in nondecreasing length order (ties broken
    /// by lexicographic reduced word).
    pub fn enumerate(&self, cap: u64) -> Result<impl Iterator<Item = WeylElement> + '_> {
        Ok(self.layers(cap)?.flatten())
    }
}

/// Length layers of a Weyl group, produced breadth first.
pub struct Layers<'g, 'a> {
    group: &'g WeylGroup<'a>,
    prev: IndexSet<Action>,
    cur: Option<IndexSet<Action>>,
    length: usize,
}

impl Iterator for Layers<'_, '_> {
    type Item = Vec<WeylElement>;

    fn next(&mut self) -> Option<Vec<WeylElement>> {
        let cur = self.cur.take()?;
        let length = self.length;
        let out = cur
            .iter()
            .map(|a| WeylElement {
                action: a.clone(),
                length,
            })
            .collect();

        let mut next = IndexSet::new();
        for a in &cur {
            for g in &self.group.generators {
                let child = a.compose(g);
                if !self.prev.contains(&child) {
                    next.insert(child);
                }
            }
        }
        self.prev = cur;
        self.length += 1;
        if !next.is_empty() {
            self.cur = Some(next);
        }
        Some(out)
    }
}

/// s_i as a group element.
pub fn simple_reflection(i: usize, rs: &RootSystem) -> Result<WeylElement> {
    WeylGroup::new(rs).simple_reflection(i)
}

/// All elements of W(rs), collected. Fails when |W| > cap.
pub fn enumerate(rs: &RootSystem, cap: u64) -> Result<Vec<WeylElement>> {
    let group = WeylGroup::new(rs);
    let all = group.enumerate(cap)?.collect();
    Ok(all)
}

/// The W-orbit of `v`, by closure under simple reflections.
pub fn orbit(v: &RationalVector, rs: &RootSystem) -> HashSet<RationalVector> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    queue.push_back(v.clone());
    while let Some(u) = queue.pop_front() {
        for i in 1..=rs.rank() {
            let w = rs.reflect(&u, i);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// I − 2ααᵀ/(α, α).
pub fn reflection_matrix(alpha: &RationalVector) -> RationalMatrix {
    let n = alpha.dim();
    let norm = alpha.dot(alpha);
    let two = Rational::from_integer(BigInt::from(2));
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j) - &two * &alpha[i] * &alpha[j] / &norm;
            m.set(i, j, v);
        }
    }
    m
}

fn as_signed_perm(m: &RationalMatrix) -> Option<SmallVec<[i8; 16]>> {
    let n = m.cols();
    let mut out = SmallVec::with_capacity(n);
    for j in 0..n {
        let col = m.column(j);
        let nonzero: Vec<usize> = (0..n).filter(|&i| !col[i].is_zero()).collect();
        let [row] = nonzero[..] else { return None };
        let x = &col[row];
        if x.abs() != Rational::one() {
            return None;
        }
        let target = i8::try_from(row + 1).ok()?;
        out.push(if x.is_negative() { -target } else { target });
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use crate::rootsystem::LieType;

    fn rs(label: LieType, rank: usize) -> RootSystem {
        RootSystem::build(label, rank).unwrap()
    }

    #[test]
    fn b2_reflection_on_eps() {
        let b2 = rs(LieType::B, 2);
        let s2 = simple_reflection(2, &b2).unwrap();
        let e1 = RationalVector::unit(2, 0);
        let e2 = RationalVector::unit(2, 1);
        assert_eq!(act(&s2, &e2).unwrap(), -&e2);
        assert_eq!(act(&s2, &e1).unwrap(), e1);
    }

    #[test]
    fn b3_s1_is_transposition() {
        let b3 = rs(LieType::B, 3);
        let s1 = simple_reflection(1, &b3).unwrap();
        let e = |i| RationalVector::unit(3, i);
        assert_eq!(act(&s1, &e(0)).unwrap(), e(1));
        assert_eq!(act(&s1, &e(1)).unwrap(), e(0));
        assert_eq!(act(&s1, &e(2)).unwrap(), e(2));
    }

    #[test]
    fn index_out_of_range() {
        let b3 = rs(LieType::B, 3);
        assert!(matches!(simple_reflection(0, &b3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(
            simple_reflection(4, &b3),
            Err(Error::IndexOutOfRange { index: 4, rank: 3 })
        ));
    }

    #[test]
    fn involutions() {
        for (label, rank) in [(LieType::B, 3), (LieType::G2, 2), (LieType::F4, 4), (LieType::E6, 6)] {
            let r = rs(label, rank);
            let g = WeylGroup::new(&r);
            for i in 1..=rank {
                let s = g.simple_reflection(i).unwrap();
                let ss = g.multiply(&s, &s);
                assert_eq!(ss, g.identity(), "{label} s{i}");
            }
        }
    }

    #[test]
    fn act_dimension_mismatch() {
        let b2 = rs(LieType::B, 2);
        let s1 = simple_reflection(1, &b2).unwrap();
        assert!(act(&s1, &RationalVector::zeros(3)).is_err());
    }

    #[test]
    fn act_on_shifted_weights() {
        // s_2(ϖ1 + ρ) − ρ = ϖ1 − α2 and s_1(ϖ1 + ρ) − ρ = −α1 + α2 in B_2.
        let b2 = rs(LieType::B, 2);
        let w1_rho = b2.fundamental_weight(1) + b2.rho();
        let s1 = simple_reflection(1, &b2).unwrap();
        let s2 = simple_reflection(2, &b2).unwrap();
        assert_eq!(
            &act(&s2, &w1_rho).unwrap() - b2.rho(),
            b2.fundamental_weight(1) - b2.simple_root(2)
        );
        assert_eq!(
            &act(&s1, &w1_rho).unwrap() - b2.rho(),
            b2.simple_root(2) - b2.simple_root(1)
        );
        // Same identity for s_2 in B_5.
        let b5 = rs(LieType::B, 5);
        let w1_rho = b5.fundamental_weight(1) + b5.rho();
        let s2 = simple_reflection(2, &b5).unwrap();
        assert_eq!(
            &act(&s2, &w1_rho).unwrap() - b5.rho(),
            b5.fundamental_weight(1) - b5.simple_root(2)
        );
    }

    #[test]
    fn group_orders() {
        let cases = [
            (LieType::A, 1, 2),
            (LieType::A, 3, 24),
            (LieType::B, 2, 8),
            (LieType::B, 4, 384),
            (LieType::C, 3, 48),
            (LieType::D, 4, 192),
            (LieType::G2, 2, 12),
            (LieType::F4, 4, 1152),
        ];
        for (label, rank, order) in cases {
            let r = rs(label, rank);
            let all = enumerate(&r, DEFAULT_CAP).unwrap();
            assert_eq!(all.len(), order, "{label}{rank}");
            assert_eq!(r.weyl_group_order(), order as u128);
            let distinct: HashSet<_> = all.iter().map(|w| w.action().clone()).collect();
            assert_eq!(distinct.len(), order);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let e7 = rs(LieType::E7, 7);
        assert!(matches!(
            enumerate(&e7, DEFAULT_CAP),
            Err(Error::CapExceeded { order: 2_903_040, .. })
        ));
        let b3 = rs(LieType::B, 3);
        assert!(enumerate(&b3, 47).is_err());
        assert_eq!(enumerate(&b3, 48).unwrap().len(), 48);
    }

    #[test]
    fn lengths_words_and_determinants_agree() {
        for (label, rank) in [
            (LieType::A, 3),
            (LieType::B, 3),
            (LieType::D, 4),
            (LieType::G2, 2),
            (LieType::F4, 4),
        ] {
            let r = rs(label, rank);
            let g = WeylGroup::new(&r);
            let mut last = 0;
            for w in g.enumerate(DEFAULT_CAP).unwrap() {
                assert!(w.length() >= last, "nondecreasing order");
                last = w.length();
                assert_eq!(g.inversion_count(&w), w.length());
                let word = g.reduced_word(&w);
                assert_eq!(word.len(), w.length());
                assert_eq!(g.from_word(&word).unwrap(), w);
                let det = w.matrix().determinant();
                assert_eq!(det, Rational::from_integer(BigInt::from(w.sign())));
            }
            assert_eq!(last, r.positive_roots().len(), "longest element length");
        }
    }

    #[test]
    fn layers_sorted_by_lexicographic_word() {
        let b3 = rs(LieType::B, 3);
        let g = WeylGroup::new(&b3);
        for layer in g.layers(DEFAULT_CAP).unwrap() {
            let words: Vec<_> = layer.iter().map(|w| g.reduced_word(w)).collect();
            let mut sorted = words.clone();
            sorted.sort();
            assert_eq!(words, sorted);
        }
    }

    #[test]
    fn braid_relations() {
        for (label, rank) in [
            (LieType::A, 4),
            (LieType::B, 4),
            (LieType::C, 4),
            (LieType::D, 5),
            (LieType::G2, 2),
            (LieType::F4, 4),
            (LieType::E6, 6),
            (LieType::E7, 7),
            (LieType::E8, 8),
        ] {
            let r = rs(label, rank);
            let c = r.cartan_matrix();
            let mats: Vec<_> = r.simple_roots().iter().map(reflection_matrix).collect();
            let id = RationalMatrix::identity(r.ambient_dim());
            for i in 0..rank {
                assert_eq!(&mats[i] * &mats[i], id);
                for j in i + 1..rank {
                    let m = match c[i][j] * c[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        other => panic!("bad Cartan product {other}"),
                    };
                    let st = &mats[i] * &mats[j];
                    let mut p = id.clone();
                    for k in 1..=m {
                        p = &p * &st;
                        assert_eq!(p == id, k == m, "{label}: (s{i}s{j})^{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn orbits() {
        let b2 = rs(LieType::B, 2);
        assert_eq!(orbit(&b2.zero(), &b2).len(), 1);
        assert_eq!(orbit(b2.rho(), &b2).len(), 8);
        for r in 2..=5 {
            let b = rs(LieType::B, r);
            let o = orbit(b.fundamental_weight(1), &b);
            assert_eq!(o.len(), 2 * r);
            for i in 0..r {
                let e = RationalVector::unit(r, i);
                assert!(o.contains(&e) && o.contains(&-&e));
            }
        }
    }

    #[test]
    fn matrix_path_acts_on_half_integers() {
        let e8 = rs(LieType::E8, 8);
        let g = WeylGroup::new(&e8);
        assert!(!g.uses_signed_perms());
        let s1 = g.simple_reflection(1).unwrap();
        let a1 = e8.simple_root(1).clone();
        assert_eq!(act(&s1, &a1).unwrap(), -&a1);
        let v = RationalVector::new(vec![rat(1, 3); 8]);
        assert_eq!(act(&s1, &v).unwrap(), e8.reflect(&v, 1));
    }
}
