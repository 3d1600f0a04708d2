//! Kostant's partition function and its q-analog.
//!
//! ℘_q(ξ) = Σ_j c_j q^j where c_j counts the ways of writing ξ as a sum of
//! exactly j positive roots (with repetition); ℘(ξ) = ℘_q(ξ)|_{q=1}.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::ops::{Add, Mul, Neg, Sub};
use std::path::Path;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::RationalVector;
use crate::rootsystem::RootSystem;

/// Dense polynomial in q, lowest power first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

/// Polynomial with non-negative coefficients: the value domain of ℘_q.
pub type QPolynomial = Polynomial<BigUint>;

/// Polynomial with signed coefficients: the value domain of m_q.
pub type SignedQPolynomial = Polynomial<BigInt>;

impl<C: Clone + Zero + One + PartialEq> Polynomial<C> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// c·q^power
    pub fn monomial(c: C, power: usize) -> Self {
        let mut coeffs = vec![C::zero(); power];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// q^power
    pub fn q_pow(power: usize) -> Self {
        Self::monomial(C::one(), power)
    }

    /// (1+q)^n
    pub fn one_plus_q_pow(n: usize) -> Self
    where
        for<'a> &'a Self: Mul<&'a Self, Output = Self>,
    {
        let base = Self::from_coeffs(vec![C::one(), C::one()]);
        (0..n).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> C {
        self.coeffs.get(power).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies by q^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Value at q = 1.
    pub fn eval_at_one(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// `Some(k)` when the polynomial is exactly q^k.
    pub fn as_q_power(&self) -> Option<usize> {
        let d = self.degree()?;
        let is_one = |c: &C| c.is_one();
        (is_one(&self.coeffs[d]) && self.coeffs[..d].iter().all(Zero::is_zero)).then_some(d)
    }
}

impl<'a, C: Clone + Zero + One + PartialEq> Add<&'a Polynomial<C>> for &'a Polynomial<C>
where
    for<'b> &'b C: Add<&'b C, Output = C>,
{
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = C::zero();
        Polynomial::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'a, C: Clone + Zero + One + PartialEq> Mul<&'a Polynomial<C>> for &'a Polynomial<C>
where
    for<'b> &'b C: Mul<&'b C, Output = C>,
{
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl<'a> Sub<&'a SignedQPolynomial> for &'a SignedQPolynomial {
    type Output = SignedQPolynomial;

    fn sub(self, rhs: &SignedQPolynomial) -> SignedQPolynomial {
        self + &-rhs
    }
}

impl Neg for &SignedQPolynomial {
    type Output = SignedQPolynomial;

    fn neg(self) -> SignedQPolynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl SignedQPolynomial {
    pub fn scale(&self, k: &BigInt) -> Self {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl From<&QPolynomial> for SignedQPolynomial {
    fn from(p: &QPolynomial) -> Self {
        Polynomial {
            coeffs: p.coeffs.iter().map(|c| BigInt::from(c.clone())).collect(),
        }
    }
}

/// Writes terms highest power first: `2q^3 - q + 1`.
fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (usize, bool, String)>,
) -> fmt::Result {
    let mut first = true;
    for (power, negative, abs) in terms.rev() {
        let sep = match (first, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        first = false;
        let coeff = if abs == "1" && power > 0 { String::new() } else { abs };
        match power {
            0 => write!(f, "{sep}{coeff}")?,
            1 => write!(f, "{sep}{coeff}q")?,
            _ => write!(f, "{sep}{coeff}q^{power}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, false, c.to_string())),
        )
    }
}

impl fmt::Display for SignedQPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.is_negative(), c.abs().to_string())),
        )
    }
}

impl<C> fmt::Debug for Polynomial<C>
where
    Polynomial<C>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

type CacheKey = (Vec<i64>, u16);

/// Memoized ℘_q for one root system.
///
/// Backtracks over the positive roots in a fixed order (highest first, simple
/// roots last), subtracting multiples of each. Once only the simple roots are
/// left the decomposition is unique, so ℘_q(ξ) = q^{height(ξ)} there. The
/// memo is keyed on (remaining simple-root coordinates, root index) and is
/// safe to share between threads.
pub struct PartitionFunction<'a> {
    rs: &'a RootSystem,
    roots: Vec<Vec<i64>>,
    /// Index from which `roots` consists of exactly the simple roots.
    simple_tail: usize,
    cache: RwLock<HashMap<CacheKey, QPolynomial>>,
    cache_cap: Option<usize>,
}

impl<'a> PartitionFunction<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let mut order: Vec<usize> = (0..rs.positive_roots().len()).collect();
        let coords = rs.positive_root_coords();
        // Stable: ties keep the root system's listing order.
        order.sort_by_key(|&i| std::cmp::Reverse(coords[i].iter().sum::<i64>()));
        Self::with_root_order(rs, &order)
    }

    /// Uses the positive roots in the given order (a permutation of
    /// `0..|Φ⁺|`).
    pub fn with_root_order(rs: &'a RootSystem, order: &[usize]) -> Self {
        let coords = rs.positive_root_coords();
        assert_eq!(order.len(), coords.len(), "order must be a permutation");
        let roots: Vec<Vec<i64>> = order.iter().map(|&i| coords[i].clone()).collect();
        let r = rs.rank();
        let is_simple = |c: &[i64]| c.iter().sum::<i64>() == 1;
        let simple_tail = if roots.len() >= r && roots[roots.len() - r..].iter().all(|c| is_simple(c)) {
            roots.len() - r
        } else {
            roots.len()
        };
        Self {
            rs,
            roots,
            simple_tail,
            cache: RwLock::new(HashMap::new()),
            cache_cap: None,
        }
    }

    /// Stops adding memo entries once the cache holds `cap` of them.
    pub fn with_cache_cap(mut self, cap: usize) -> Self {
        self.cache_cap = Some(cap);
        self
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// ℘_q(ξ) for an ambient vector. Vectors outside the root lattice cone
    /// (negative or fractional simple-root coordinates, or off the span) give
    /// the zero polynomial.
    pub fn partition_q(&self, xi: &RationalVector) -> QPolynomial {
        match lattice_coords(xi, self.rs) {
            Some(c) => self.partition_q_coords(&c),
            None => QPolynomial::zero(),
        }
    }

    /// ℘(ξ).
    pub fn partition(&self, xi: &RationalVector) -> BigUint {
        self.partition_q(xi).eval_at_one()
    }

    /// ℘_q from simple-root coordinates.
    pub fn partition_q_coords(&self, coords: &[i64]) -> QPolynomial {
        if coords.len() != self.rs.rank() || coords.iter().any(|&x| x < 0) {
            return QPolynomial::zero();
        }
        self.count(coords.to_vec(), 0)
    }

    fn count(&self, xi: Vec<i64>, idx: usize) -> QPolynomial {
        if idx >= self.simple_tail {
            if idx == self.simple_tail && self.simple_tail < self.roots.len() {
                return QPolynomial::q_pow(xi.iter().sum::<i64>() as usize);
            }
            return if xi.iter().all(|&x| x == 0) {
                QPolynomial::one()
            } else {
                QPolynomial::zero()
            };
        }
        if xi.iter().all(|&x| x == 0) {
            return QPolynomial::one();
        }
        let key = (xi, idx as u16);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let (xi, _) = &key;

        let root = &self.roots[idx];
        let mut total = QPolynomial::zero();
        let mut rest = xi.clone();
        let mut k = 0;
        loop {
            let sub = self.count(rest.clone(), idx + 1);
            if !sub.is_zero() {
                total = &total + &sub.shift(k);
            }
            for (x, a) in rest.iter_mut().zip(root) {
                *x -= a;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
            k += 1;
        }

        let mut cache = self.cache.write().expect("cache lock");
        if self.cache_cap.is_none_or(|cap| cache.len() < cap) {
            cache.insert(key, total.clone());
        }
        total
    }

    /// Writes the memo as text: a format line, a `system=NAME` section header,
    /// then one `coords;root_index;c0,c1,...` record per line, sorted.
    pub fn dump_cache<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CACHE_MAGIC}").map_err(io_error)?;
        for line in self.section_lines() {
            writeln!(out, "{line}").map_err(io_error)?;
        }
        Ok(())
    }

    fn section_header(&self) -> String {
        format!("system={}", self.rs.name())
    }

    fn section_lines(&self) -> Vec<String> {
        let cache = self.cache.read().expect("cache lock");
        let mut entries: Vec<_> = cache.iter().collect();
        entries.sort_by(|a, b| a.0.cmp(b.0));
        let join = |v: Vec<String>| v.join(",");
        std::iter::once(self.section_header())
            .chain(entries.into_iter().map(|((coords, idx), poly)| {
                format!(
                    "{};{};{}",
                    join(coords.iter().map(ToString::to_string).collect()),
                    idx,
                    join(poly.coeffs().iter().map(ToString::to_string).collect())
                )
            }))
            .collect()
    }

    /// Loads the section for this root system from text in the
    /// [`dump_cache`](Self::dump_cache) format. Sections for other root
    /// systems are skipped. Returns the number of records loaded.
    pub fn load_cache<R: BufRead>(&self, input: R) -> Result<usize> {
        let mut lines = input.lines();
        let first = lines.next().transpose().map_err(io_error)?;
        if first.as_deref() != Some(CACHE_MAGIC) {
            return Err(Error::Cache("missing or unsupported header".into()));
        }
        let own = self.section_header();
        let mut in_section = false;
        let mut loaded = Vec::new();
        for line in lines {
            let line = line.map_err(io_error)?;
            if line.trim().is_empty() {
                continue;
            }
            if line.starts_with("system=") {
                in_section = line == own;
                continue;
            }
            if in_section {
                loaded.push(self.parse_record(&line)?);
            }
        }
        let n = loaded.len();
        self.cache.write().expect("cache lock").extend(loaded);
        Ok(n)
    }

    fn parse_record(&self, line: &str) -> Result<(CacheKey, QPolynomial)> {
        let bad = || Error::Cache(format!("malformed record {line:?}"));
        let mut parts = line.split(';');
        let (Some(c), Some(i), Some(p), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let coords = c
            .split(',')
            .map(|x| x.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let idx: u16 = i.parse().map_err(|_| bad())?;
        let coeffs = if p.is_empty() {
            Vec::new()
        } else {
            p.split(',')
                .map(|x| x.parse::<BigUint>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad())?
        };
        if coords.len() != self.rs.rank() || idx as usize > self.roots.len() {
            return Err(bad());
        }
        Ok(((coords, idx), QPolynomial::from_coeffs(coeffs)))
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Cache(e.to_string())
}

/// Loads this root system's section of a cache file. A missing file loads
/// nothing.
pub fn load_cache_file(path: &Path, pf: &PartitionFunction<'_>) -> Result<usize> {
    match std::fs::File::open(path) {
        Ok(f) => pf.load_cache(std::io::BufReader::new(f)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(0),
        Err(e) => Err(io_error(e)),
    }
}

/// Writes the memo of `pf` into a cache file, replacing its section and
/// keeping sections for other root systems.
pub fn save_cache_file(path: &Path, pf: &PartitionFunction<'_>) -> Result<()> {
    let mut sections: BTreeMap<String, Vec<String>> = BTreeMap::new();
    if let Ok(text) = std::fs::read_to_string(path) {
        let mut lines = text.lines();
        if lines.next() == Some(CACHE_MAGIC) {
            let mut current: Option<String> = None;
            for line in lines {
                if line.starts_with("system=") {
                    current = Some(line.to_string());
                    sections.entry(line.to_string()).or_default();
                } else if let Some(header) = &current {
                    if !line.trim().is_empty() {
                        sections.get_mut(header).expect("section exists").push(line.to_string());
                    }
                }
            }
        }
    }
    let mut own = pf.section_lines();
    let header = own.remove(0);
    sections.insert(header, own);

    let mut out = String::new();
    out.push_str(CACHE_MAGIC);
    out.push('\n');
    for (header, records) in &sections {
        out.push_str(header);
        out.push('\n');
        for r in records {
            out.push_str(r);
            out.push('\n');
        }
    }
    std::fs::write(path, out).map_err(io_error)
}

const CACHE_MAGIC: &str = "# weylalt partition cache v1";

/// Integer simple-root coordinates of `xi`, if they exist and are all
/// non-negative.
pub(crate) fn lattice_coords(xi: &RationalVector, rs: &RootSystem) -> Option<Vec<i64>> {
    let c = crate::lattice::to_simple_root_coords(xi, rs).ok()?;
    let ints = c.to_i64()?;
    ints.iter().all(|&x| x >= 0).then_some(ints)
}

/// ℘_q(ξ) with a fresh memo.
pub fn partition_q(xi: &RationalVector, rs: &RootSystem) -> QPolynomial {
    PartitionFunction::new(rs).partition_q(xi)
}

/// Largest height accepted by [`partition_q_bruteforce`].
pub const BRUTEFORCE_MAX_HEIGHT: i64 = 30;

/// ℘_q(ξ) by plain exhaustive search over multiplicity vectors: no memo, no
/// shortcuts, roots taken lowest first.
pub fn partition_q_bruteforce(xi: &RationalVector, rs: &RootSystem) -> Result<QPolynomial> {
    let Some(target) = crate::lattice::to_simple_root_coords(xi, rs)
        .ok()
        .and_then(|c| c.to_i64())
    else {
        return Ok(QPolynomial::zero());
    };
    if target.iter().any(|&x| x < 0) {
        return Ok(QPolynomial::zero());
    }
    let height: i64 = target.iter().sum();
    if height > BRUTEFORCE_MAX_HEIGHT {
        return Err(Error::HeightExceeded {
            height,
            bound: BRUTEFORCE_MAX_HEIGHT,
        });
    }
    let mut roots: Vec<&Vec<i64>> = rs.positive_root_coords().iter().collect();
    roots.reverse();
    roots.sort_by_key(|c| c.iter().sum::<i64>());

    let mut counts = vec![0u64; height as usize + 1];
    let mut remaining = target;
    search(&roots, 0, &mut remaining, 0, &mut counts);
    Ok(QPolynomial::from_coeffs(
        counts.into_iter().map(BigUint::from).collect(),
    ))
}

fn search(roots: &[&Vec<i64>], idx: usize, remaining: &mut [i64], parts: usize, counts: &mut [u64]) {
    if idx == roots.len() {
        if remaining.iter().all(|&x| x == 0) {
            counts[parts] += 1;
        }
        return;
    }
    let root = roots[idx];
    let mut used = 0;
    loop {
        search(roots, idx + 1, remaining, parts + used, counts);
        if remaining.iter().zip(root.iter()).any(|(x, a)| x < a) {
            break;
        }
        remaining.iter_mut().zip(root.iter()).for_each(|(x, a)| *x -= a);
        used += 1;
    }
    remaining
        .iter_mut()
        .zip(root.iter())
        .for_each(|(x, a)| *x += a * used as i64);
}
