//! Root data for the simple Lie algebras A_r, B_r, C_r, D_r, G2, F4, E6, E7
//! and E8, realized in explicit ambient coordinates.
//!
//! Classical types live in ℝ^r (ℝ^{r+1} for A_r) with the ε_i basis. G2 sits
//! in the plane of ℝ³ orthogonal to e1+e2+e3, F4 in ℝ⁴, and the E-series in
//! ℝ⁸ (E6 and E7 on the subspaces cut out by (v, e6−e7) = (v, e7+e8) = 0 and
//! (v, e7+e8) = 0 respectively). Positive roots are written down per type and
//! never produced by closure.
//!
//! F4 simple roots are numbered in Bourbaki order: α1 = e2−e3, α2 = e3−e4,
//! α3 = e4, α4 = ½(e1−e2−e3−e4).

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, from_fundamental_coords, int, rat, Rational, RationalMatrix, RationalVector};

/// Largest supported classical rank. Signed permutations are stored as `i8`.
pub const MAX_CLASSICAL_RANK: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieType {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl LieType {
    pub const ALL: [LieType; 9] = [
        LieType::A,
        LieType::B,
        LieType::C,
        LieType::D,
        LieType::G2,
        LieType::F4,
        LieType::E6,
        LieType::E7,
        LieType::E8,
    ];

    pub fn is_exceptional(self) -> bool {
        !matches!(self, LieType::A | LieType::B | LieType::C | LieType::D)
    }

    /// Rank of an exceptional type.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            LieType::G2 => Some(2),
            LieType::F4 => Some(4),
            LieType::E6 => Some(6),
            LieType::E7 => Some(7),
            LieType::E8 => Some(8),
            _ => None,
        }
    }

    fn window(self) -> &'static str {
        match self {
            LieType::A => "1 <= r <= 100",
            LieType::B => "2 <= r <= 100",
            LieType::C => "3 <= r <= 100",
            LieType::D => "4 <= r <= 100",
            LieType::G2 => "r = 2",
            LieType::F4 => "r = 4",
            LieType::E6 => "r = 6",
            LieType::E7 => "r = 7",
            LieType::E8 => "r = 8",
        }
    }

    pub fn accepts_rank(self, rank: usize) -> bool {
        let min = match self {
            LieType::A => 1,
            LieType::B => 2,
            LieType::C => 3,
            LieType::D => 4,
            other => return other.fixed_rank() == Some(rank),
        };
        (min..=MAX_CLASSICAL_RANK).contains(&rank)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::G2 => "G2",
            LieType::F4 => "F4",
            LieType::E6 => "E6",
            LieType::E7 => "E7",
            LieType::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "G2" | "G" => Ok(LieType::G2),
            "F4" | "F" => Ok(LieType::F4),
            "E6" => Ok(LieType::E6),
            "E7" => Ok(LieType::E7),
            "E8" => Ok(LieType::E8),
            _ => Err(Error::UnknownType(s.to_string())),
        }
    }
}

/// Immutable root datum for one (type, rank).
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: LieType,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<RationalVector>,
    positive_roots: Vec<RationalVector>,
    positive_root_coords: Vec<Vec<i64>>,
    fundamental_weights: Vec<RationalVector>,
    rho: RationalVector,
    cartan: Vec<Vec<i64>>,
    /// Columns are the simple roots.
    simple_root_matrix: RationalMatrix,
    /// Columns are the fundamental weights.
    fundamental_weight_matrix: RationalMatrix,
    /// (A Aᵀ)^{-1} A with A the simple roots as rows; a left inverse of
    /// `simple_root_matrix` on the root span.
    root_coordinate_matrix: RationalMatrix,
}

impl RootSystem {
    pub fn build(label: LieType, rank: usize) -> Result<Self> {
        if !label.accepts_rank(rank) {
            return Err(Error::UnsupportedRank {
                label: label.to_string(),
                rank,
                window: label.window(),
            });
        }
        let (ambient_dim, simple_roots, roots) = match label {
            LieType::A => type_a(rank),
            LieType::B => type_b(rank),
            LieType::C => type_c(rank),
            LieType::D => type_d(rank),
            LieType::G2 => type_g2(),
            LieType::F4 => type_f4(),
            LieType::E6 | LieType::E7 | LieType::E8 => type_e(rank),
        };

        let simple_root_matrix = RationalMatrix::from_columns(&simple_roots);
        let a = RationalMatrix::from_rows(&simple_roots);
        let gram = &a * &simple_root_matrix;
        let gram_inv = gram.inverse().expect("simple roots are linearly independent");
        let root_coordinate_matrix = &gram_inv * &a;

        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = int(2) * gram.get(i, j) / gram.get(i, i);
                        v.to_integer().to_i64().expect("Cartan entries are small integers")
                    })
                    .collect()
            })
            .collect();
        let cartan_rat = RationalMatrix::from_rows(
            &cartan
                .iter()
                .map(|row| RationalVector::from_ints(row))
                .collect::<Vec<_>>(),
        );
        let fundamental_weight_matrix =
            &simple_root_matrix * &cartan_rat.inverse().expect("Cartan matrix is invertible");
        let fundamental_weights: Vec<_> = (0..rank).map(|j| fundamental_weight_matrix.column(j)).collect();

        // For the exceptional types `roots` is all of Φ; keep the positive half.
        let mut positive_roots = Vec::new();
        let mut positive_root_coords = Vec::new();
        for root in roots {
            let c = root_coordinate_matrix.mul_vec(&root);
            let coords = c.to_i64().expect("roots have integer simple-root coordinates");
            if coords.iter().all(|&x| x >= 0) {
                positive_roots.push(root);
                positive_root_coords.push(coords);
            } else {
                debug_assert!(coords.iter().all(|&x| x <= 0), "root of mixed sign");
            }
        }

        let half = rat(1, 2);
        let rho = positive_roots
            .iter()
            .fold(RationalVector::zeros(ambient_dim), |acc, r| &acc + r)
            .scale(&half);
        let rho_from_weights = fundamental_weights
            .iter()
            .fold(RationalVector::zeros(ambient_dim), |acc, w| &acc + w);
        assert_eq!(rho, rho_from_weights, "ρ mismatch for {label}{rank}");

        Ok(Self {
            label,
            rank,
            ambient_dim,
            simple_roots,
            positive_roots,
            positive_root_coords,
            fundamental_weights,
            rho,
            cartan,
            simple_root_matrix,
            fundamental_weight_matrix,
            root_coordinate_matrix,
        })
    }

    pub fn label(&self) -> LieType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Short name such as `B4` or `E8`.
    pub fn name(&self) -> String {
        if self.label.is_exceptional() {
            self.label.to_string()
        } else {
            format!("{}{}", self.label, self.rank)
        }
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple_roots
    }

    /// α_i with 1-based `i`.
    pub fn simple_root(&self, i: usize) -> &RationalVector {
        &self.simple_roots[i - 1]
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive_roots
    }

    /// Simple-root coordinates of each positive root, parallel to
    /// [`positive_roots`](Self::positive_roots).
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn fundamental_weights(&self) -> &[RationalVector] {
        &self.fundamental_weights
    }

    /// ϖ_i with 1-based `i`.
    pub fn fundamental_weight(&self, i: usize) -> &RationalVector {
        &self.fundamental_weights[i - 1]
    }

    pub fn rho(&self) -> &RationalVector {
        &self.rho
    }

    /// Cartan matrix with entries ⟨α_i^∨, α_j⟩ = 2(α_i, α_j)/(α_i, α_i).
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// The standard dot product of ambient coordinates.
    pub fn inner(&self, u: &RationalVector, v: &RationalVector) -> Rational {
        u.dot(v)
    }

    pub fn simple_root_matrix(&self) -> &RationalMatrix {
        &self.simple_root_matrix
    }

    pub fn fundamental_weight_matrix(&self) -> &RationalMatrix {
        &self.fundamental_weight_matrix
    }

    pub fn root_coordinate_matrix(&self) -> &RationalMatrix {
        &self.root_coordinate_matrix
    }

    pub fn zero(&self) -> RationalVector {
        RationalVector::zeros(self.ambient_dim)
    }

    pub fn sum_of_simple_roots(&self) -> RationalVector {
        self.simple_roots.iter().fold(self.zero(), |acc, a| &acc + a)
    }

    /// The positive root of maximal height.
    pub fn highest_root(&self) -> &RationalVector {
        let (idx, _) = self
            .positive_root_coords
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .expect("root systems are non-empty");
        &self.positive_roots[idx]
    }

    /// Reflection of `v` in the hyperplane orthogonal to α_i (1-based).
    pub fn reflect(&self, v: &RationalVector, i: usize) -> RationalVector {
        let a = self.simple_root(i);
        let c = int(2) * v.dot(a) / a.dot(a);
        v - &a.scale(&c)
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        let r = self.rank;
        match self.label {
            LieType::A => fact(r + 1),
            LieType::B | LieType::C => (1u128 << r) * fact(r),
            LieType::D => (1u128 << (r - 1)) * fact(r),
            LieType::G2 => 12,
            LieType::F4 => 1152,
            LieType::E6 => 51_840,
            LieType::E7 => 2_903_040,
            LieType::E8 => 696_729_600,
        }
    }

    /// Moves `v` into the dominant chamber by simple reflections.
    pub fn dominant_representative(&self, v: &RationalVector) -> RationalVector {
        let mut v = v.clone();
        'outer: loop {
            for i in 1..=self.rank {
                if v.dot(self.simple_root(i)).is_negative() {
                    v = self.reflect(&v, i);
                    continue 'outer;
                }
            }
            return v;
        }
    }

    /// Moves `v` into the antidominant chamber; for dominant λ this is w₀λ.
    pub fn antidominant_representative(&self, v: &RationalVector) -> RationalVector {
        let mut v = v.clone();
        'outer: loop {
            for i in 1..=self.rank {
                if v.dot(self.simple_root(i)).is_positive() {
                    v = self.reflect(&v, i);
                    continue 'outer;
                }
            }
            return v;
        }
    }
}

/// Fundamental-basis coefficients m with Σ_{α∈Δ} α = Σ m_i ϖ_i.
pub fn sum_of_simple_roots_in_fundamental_basis(rs: &RootSystem) -> RationalVector {
    lattice::to_fundamental_coords(&rs.sum_of_simple_roots(), rs)
        .expect("the sum of simple roots lies in the root span")
}

/// `true` iff every fundamental-basis coefficient of `w` is non-negative.
pub fn is_dominant(w: &RationalVector, rs: &RootSystem) -> Result<bool> {
    let m = lattice::to_fundamental_coords(w, rs)?;
    Ok(m.coords().iter().all(|x| !x.is_negative()))
}

/// `true` iff every fundamental-basis coefficient is a non-negative integer.
pub fn is_dominant_integral(w: &RationalVector, rs: &RootSystem) -> Result<bool> {
    let m = lattice::to_fundamental_coords(w, rs)?;
    Ok(lattice::is_nonnegative_integral(&m))
}

/// All dominant integral weights whose ambient coordinates are bounded by
/// `bound` in absolute value.
///
/// For B_r these are exactly the k_1ε_1+⋯+k_rε_r with k_1 ≥ ⋯ ≥ k_r ≥ 0,
/// 2k_i ∈ ℤ, k_i − k_j ∈ ℤ and k_1 ≤ bound. Results are ordered by their
/// fundamental-weight coordinates.
pub fn dominant_integral_weights_in_box(rs: &RootSystem, bound: &Rational) -> Vec<RationalVector> {
    if bound.is_negative() {
        return Vec::new();
    }
    // m_i = 2(λ, α_i)/(α_i, α_i) ≤ 2·bound·|α_i|₁/(α_i, α_i) when |λ|_∞ ≤ bound.
    let limits: Vec<usize> = rs
        .simple_roots()
        .iter()
        .map(|a| {
            let l1 = a.coords().iter().fold(Rational::zero(), |acc, x| acc + x.abs());
            let m = int(2) * bound * l1 / a.dot(a);
            m.floor().to_integer().to_usize().unwrap_or(0)
        })
        .collect();

    let mut out = Vec::new();
    let mut m = vec![0usize; rs.rank()];
    loop {
        let coeffs = RationalVector::new(m.iter().map(|&x| int(x as i64)).collect());
        let w = from_fundamental_coords(&coeffs, rs);
        if w.coords().iter().all(|x| x.abs() <= *bound) {
            out.push(w);
        }
        // Odometer over the box, least significant digit last.
        let mut pos = rs.rank();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if m[pos] < limits[pos] {
                m[pos] += 1;
                m[pos + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

type RootData = (usize, Vec<RationalVector>, Vec<RationalVector>);

fn eps(dim: usize, terms: &[(usize, i64)]) -> RationalVector {
    let mut c = vec![0i64; dim];
    for &(i, v) in terms {
        c[i] += v;
    }
    RationalVector::from_ints(&c)
}

/// ε_i − ε_j and ε_i + ε_j for i < j (0-based indices into `dim`).
fn long_roots(n: usize, dim: usize, plus: bool) -> Vec<RationalVector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(eps(dim, &[(i, 1), (j, -1)]));
            if plus {
                out.push(eps(dim, &[(i, 1), (j, 1)]));
            }
        }
    }
    out
}

fn chain(n: usize, dim: usize) -> Vec<RationalVector> {
    (0..n).map(|i| eps(dim, &[(i, 1), (i + 1, -1)])).collect()
}

fn type_a(r: usize) -> RootData {
    let dim = r + 1;
    (dim, chain(r, dim), long_roots(dim, dim, false))
}

fn type_b(r: usize) -> RootData {
    let mut simple = chain(r - 1, r);
    simple.push(eps(r, &[(r - 1, 1)]));
    let mut pos = long_roots(r, r, true);
    pos.extend((0..r).map(|i| eps(r, &[(i, 1)])));
    (r, simple, pos)
}

fn type_c(r: usize) -> RootData {
    let mut simple = chain(r - 1, r);
    simple.push(eps(r, &[(r - 1, 2)]));
    let mut pos = long_roots(r, r, true);
    pos.extend((0..r).map(|i| eps(r, &[(i, 2)])));
    (r, simple, pos)
}

fn type_d(r: usize) -> RootData {
    let mut simple = chain(r - 1, r);
    simple.push(eps(r, &[(r - 2, 1), (r - 1, 1)]));
    (r, simple, long_roots(r, r, true))
}

fn with_negatives(roots: Vec<RationalVector>) -> Vec<RationalVector> {
    let negs: Vec<_> = roots.iter().map(|r| -r).collect();
    roots.into_iter().chain(negs).collect()
}

fn type_g2() -> RootData {
    let v = |a: i64, b: i64, c: i64| RationalVector::from_ints(&[a, b, c]);
    let simple = vec![v(1, -1, 0), v(-2, 1, 1)];
    let roots = with_negatives(vec![
        v(1, -1, 0),
        v(0, 1, -1),
        v(1, 0, -1),
        v(2, -1, -1),
        v(-1, 2, -1),
        v(-1, -1, 2),
    ]);
    (3, simple, roots)
}

fn type_f4() -> RootData {
    let h = |s: [i64; 4]| RationalVector::new(s.iter().map(|&x| rat(x, 2)).collect());
    let simple = vec![
        eps(4, &[(1, 1), (2, -1)]),
        eps(4, &[(2, 1), (3, -1)]),
        eps(4, &[(3, 1)]),
        h([1, -1, -1, -1]),
    ];
    let mut roots = with_negatives(long_roots(4, 4, true));
    roots.extend(with_negatives((0..4).map(|i| eps(4, &[(i, 1)])).collect()));
    for mask in 0u32..16 {
        let s = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
        roots.push(h(s));
    }
    (4, simple, roots)
}

/// Half-integer vectors ½Σ(−1)^{n(i)} e_i in ℝ⁸ with an even number of minus
/// signs, filtered by `keep`.
fn half_spinors(keep: impl Fn(&[i64; 8]) -> bool) -> Vec<RationalVector> {
    (0u32..256)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| std::array::from_fn(|i| if m >> i & 1 == 1 { -1 } else { 1 }))
        .filter(|s| keep(s))
        .map(|s: [i64; 8]| RationalVector::new(s.iter().map(|&x| rat(x, 2)).collect()))
        .collect()
}

fn type_e(r: usize) -> RootData {
    let e = |terms: &[(usize, i64)]| eps(8, terms);
    let mut simple = vec![
        RationalVector::new([1, -1, -1, -1, -1, -1, -1, 1].iter().map(|&x| rat(x, 2)).collect()),
        e(&[(0, 1), (1, 1)]),
    ];
    // α_k = e_{k−1} − e_{k−2} for k ≥ 3 (1-based e indices)
    for k in 3..=r {
        simple.push(e(&[(k - 2, 1), (k - 3, -1)]));
    }
    let mut roots;
    match r {
        6 => {
            roots = with_negatives(long_roots(5, 8, true));
            roots.extend(half_spinors(|s| s[5] == s[6] && s[6] == -s[7]));
        }
        7 => {
            roots = with_negatives(long_roots(6, 8, true));
            roots.extend(with_negatives(vec![e(&[(6, 1), (7, -1)])]));
            roots.extend(half_spinors(|s| s[6] == -s[7]));
        }
        8 => {
            roots = with_negatives(long_roots(8, 8, true));
            roots.extend(half_spinors(|_| true));
        }
        _ => unreachable!("E-series rank is 6, 7 or 8"),
    }
    (8, simple, roots)
}
