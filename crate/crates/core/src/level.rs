//! Levels, cusps of X0(N), and the space V of rational cuspidal divisors.
//!
//! `P_d` is the normalized class of the cusps whose reduced denominator is
//! `d`; `P_1` is the cusp 0 and `P_N` is the cusp 1/N. Coefficients are
//! stored densely in mixed-radix order over the exponent vectors of `d`,
//! first prime slowest, so that `V` is literally the tensor product of the
//! local spaces `V_p = span(P_1, P_p, ..., P_{p^s})`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, euler_phi, factorize, Factorization, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    n: u64,
    factors: Factorization,
    divisors: Vec<u64>,
    dims: Vec<usize>,
}

impl Level {
    pub fn new(n: u64) -> Result<Level> {
        if n == 0 {
            return Err(Error::LevelTooSmall { min: 1, got: 0 });
        }
        let factors = factorize(n);
        let divisors = divisors(&factors);
        let dims = factors.pairs().iter().map(|&(_, e)| e as usize + 1).collect();
        Ok(Level {
            n,
            factors,
            divisors,
            dims,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &Factorization {
        &self.factors
    }

    /// Divisors of N in ascending order.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.primes().collect()
    }

    /// `s_i + 1` for each prime, in ascending prime order.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.divisors.len()
    }

    pub fn axis_of(&self, p: u64) -> Option<usize> {
        self.factors.pairs().iter().position(|&(q, _)| q == p)
    }

    pub fn divides(&self, d: u64) -> bool {
        d != 0 && self.n % d == 0
    }

    /// Position of `P_d` in the dense coefficient layout.
    pub fn index_of(&self, d: u64) -> Result<usize> {
        if !self.divides(d) {
            return Err(Error::NotADivisor { d, n: self.n });
        }
        let mut idx = 0;
        let mut rest = d;
        for (&(p, _), &dim) in self.factors.pairs().iter().zip(&self.dims) {
            let mut a = 0;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            idx = idx * dim + a;
        }
        Ok(idx)
    }

    /// Exponent vector of the divisor stored at `idx`.
    pub fn exponents_at(&self, idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        let mut rest = idx;
        for (slot, &dim) in out.iter_mut().zip(&self.dims).rev() {
            *slot = rest % dim;
            rest /= dim;
        }
        out
    }

    pub fn divisor_at(&self, idx: usize) -> u64 {
        self.exponents_at(idx)
            .iter()
            .zip(self.factors.pairs())
            .map(|(&a, &(p, _))| p.pow(a as u32))
            .product()
    }

    /// `gcd(d, N/d)`.
    pub fn width_gcd(&self, d: u64) -> u64 {
        d.gcd(&(self.n / d))
    }

    /// Number of cusps with denominator `d`, i.e. `phi(gcd(d, N/d))`.
    pub fn cusps_over(&self, d: u64) -> u64 {
        euler_phi(self.width_gcd(d))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// The cusp `a/b` of X0(N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cusp {
    pub a: u64,
    pub b: u64,
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

/// One representative per cusp, sorted by `(b, a)`.
///
/// For each `b | N` the cusps of denominator `b` are indexed by units
/// modulo `t = gcd(b, N/b)`; each class is lifted to its least positive
/// member coprime to `b`.
pub fn enumerate_cusps(level: &Level) -> Vec<Cusp> {
    let mut out = Vec::new();
    for &b in level.divisors() {
        let t = level.width_gcd(b);
        for c in 1..=t {
            if c.gcd(&t) != 1 {
                continue;
            }
            let mut a = c;
            while a.gcd(&b) != 1 {
                a += t;
            }
            out.push(Cusp { a, b });
        }
    }
    out.sort_by_key(|c| (c.b, c.a));
    out
}

/// Element of `V`, the rational span of the `P_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspDivisor {
    level: Arc<Level>,
    coeffs: Vec<Rat>,
}

impl CuspDivisor {
    pub fn zero(level: &Arc<Level>) -> Self {
        CuspDivisor {
            level: Arc::clone(level),
            coeffs: vec![Rat::zero(); level.dimension()],
        }
    }

    pub fn from_dense(level: &Arc<Level>, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != level.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a level with {} divisors",
                coeffs.len(),
                level.dimension()
            )));
        }
        Ok(CuspDivisor {
            level: Arc::clone(level),
            coeffs,
        })
    }

    pub fn from_terms<I>(level: &Arc<Level>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rat)>,
    {
        let mut v = Self::zero(level);
        for (d, c) in terms {
            let i = level.index_of(d)?;
            v.coeffs[i] += c;
        }
        Ok(v)
    }

    pub fn level(&self) -> &Arc<Level> {
        &self.level
    }

    /// Coefficients in the dense mixed-radix layout.
    pub fn dense(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, d: u64) -> Result<&Rat> {
        Ok(&self.coeffs[self.level.index_of(d)?])
    }

    /// `(d, coefficient)` for every divisor, ascending in `d`.
    pub fn terms(&self) -> Vec<(u64, Rat)> {
        let mut t: Vec<(u64, Rat)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.level.divisor_at(i), c.clone()))
            .collect();
        t.sort_by_key(|(d, _)| *d);
        t
    }

    /// Each `P_d` has degree 1.
    pub fn degree(&self) -> Rat {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CuspDivisor {
            level: Arc::clone(&self.level),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, c: impl Into<num_bigint::BigInt>) -> Self {
        self.scale(&Rat::from_integer(c.into()))
    }

    pub fn check_same_level(&self, other: &CuspDivisor) -> Result<()> {
        if self.level.n() != other.level.n() {
            return Err(Error::LevelMismatch(self.level.n(), other.level.n()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CuspDivisor) -> Result<CuspDivisor> {
        self.check_same_level(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &CuspDivisor) -> Result<CuspDivisor> {
        self.check_same_level(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &CuspDivisor, f: impl Fn(&Rat, &Rat) -> Rat) -> CuspDivisor {
        CuspDivisor {
            level: Arc::clone(&self.level),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &CuspDivisor {
    type Output = CuspDivisor;
    fn add(self, rhs: &CuspDivisor) -> CuspDivisor {
        self.try_add(rhs).expect("divisors of the same level")
    }
}

impl Sub for &CuspDivisor {
    type Output = CuspDivisor;
    fn sub(self, rhs: &CuspDivisor) -> CuspDivisor {
        self.try_sub(rhs).expect("divisors of the same level")
    }
}

impl Neg for &CuspDivisor {
    type Output = CuspDivisor;
    fn neg(self) -> CuspDivisor {
        self.scale(&-Rat::one())
    }
}

impl Mul<&CuspDivisor> for &Rat {
    type Output = CuspDivisor;
    fn mul(self, rhs: &CuspDivisor) -> CuspDivisor {
        rhs.scale(self)
    }
}

/// Writes `sum c_d P_d` as `c*Pd` terms, e.g. `P1 - 2*P4 + 1/2*P8`.
pub fn format_terms(terms: &[(u64, Rat)]) -> String {
    let mut s = String::new();
    for (d, c) in terms.iter().filter(|(_, c)| !c.is_zero()) {
        let neg = c.is_negative();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&format!("P{d}"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for CuspDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.terms()))
    }
}

impl Serialize for CuspDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(u64, Rat)> = self
            .terms()
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut m = s.serialize_map(Some(terms.len()))?;
        for (d, c) in terms {
            m.serialize_entry(&format!("P{d}"), &c.to_string())?;
        }
        m.end()
    }
}

/// The basis divisor `P_d`.
pub fn cusp_class(level: &Arc<Level>, d: u64) -> Result<CuspDivisor> {
    CuspDivisor::from_terms(level, [(d, Rat::one())])
}

/// `phi(gcd(d, N/d)) (P_d - P_1)` for every `d | N`, `d > 1`.
pub fn cuspidal_generators(level: &Arc<Level>) -> Result<Vec<CuspDivisor>> {
    if level.n() < 2 {
        return Err(Error::LevelTooSmall {
            min: 2,
            got: level.n(),
        });
    }
    level
        .divisors()
        .iter()
        .filter(|&&d| d != 1)
        .map(|&d| {
            let c = Rat::from_integer(level.cusps_over(d).into());
            CuspDivisor::from_terms(level, [(d, c.clone()), (1, -c)])
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorDecomposition {
    /// One coefficient vector of length `s_i + 1` per prime, ascending.
    Pure(Vec<Vec<Rat>>),
    NotPure,
}

/// Splits `v` as `v_1 ⊗ ... ⊗ v_k` when possible.
///
/// Every factor after the first has leading nonzero coordinate `±1` and the
/// first factor carries the scale, with a positive leading coordinate
/// whenever `k >= 2`. For `k = 1` the single factor is `v` itself.
pub fn tensor_decompose(v: &CuspDivisor) -> Result<TensorDecomposition> {
    let level = v.level();
    let pivot = v
        .coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroVector)?;
    let k = level.dims().len();
    if k == 0 {
        return Ok(TensorDecomposition::Pure(vec![]));
    }
    let pivot_exps = level.exponents_at(pivot);
    let strides = strides(level.dims());
    let pivot_val = v.coeffs[pivot].clone();

    // Fibre through the pivot along each axis, normalized at the pivot.
    let mut factors: Vec<Vec<Rat>> = (0..k)
        .map(|axis| {
            (0..level.dims()[axis])
                .map(|j| {
                    let idx = pivot
                        - pivot_exps[axis] * strides[axis]
                        + j * strides[axis];
                    &v.coeffs[idx] / &pivot_val
                })
                .collect()
        })
        .collect();

    let candidate = compose_dense(level.dims(), &factors);
    let matches = candidate
        .iter()
        .zip(&v.coeffs)
        .all(|(x, y)| &(x * &pivot_val) == y);
    if !matches {
        return Ok(TensorDecomposition::NotPure);
    }

    // Leading coordinates to 1, then fold the overall scale into factor 0.
    let mut scale = pivot_val;
    for f in factors.iter_mut() {
        let lead = f.iter().find(|c| !c.is_zero()).cloned().expect("nonzero fibre");
        for c in f.iter_mut() {
            *c /= &lead;
        }
        scale *= lead;
    }
    if scale.is_negative() && k >= 2 {
        for c in factors[1].iter_mut() {
            *c = -c.clone();
        }
        scale = -scale;
    }
    for c in factors[0].iter_mut() {
        *c *= &scale;
    }
    Ok(TensorDecomposition::Pure(factors))
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn compose_dense(dims: &[usize], factors: &[Vec<Rat>]) -> Vec<Rat> {
    let mut out = vec![Rat::one()];
    for (f, &dim) in factors.iter().zip(dims) {
        debug_assert_eq!(f.len(), dim);
        let mut next = Vec::with_capacity(out.len() * dim);
        for x in &out {
            for y in f {
                next.push(x * y);
            }
        }
        out = next;
    }
    out
}

/// Inverse of [`tensor_decompose`] on pure tensors.
pub fn tensor_compose(level: &Arc<Level>, factors: &[Vec<Rat>]) -> Result<CuspDivisor> {
    if factors.len() != level.dims().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} factors for a level with {} prime factors",
            factors.len(),
            level.dims().len()
        )));
    }
    for (i, (f, &dim)) in factors.iter().zip(level.dims()).enumerate() {
        if f.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "factor {i} has length {}, expected {dim}",
                f.len()
            )));
        }
    }
    CuspDivisor::from_dense(level, compose_dense(level.dims(), factors))
}

/// Renders factors as `(P1 + P3)x(P1 - P5)`.
pub fn format_tensor(level: &Level, factors: &[Vec<Rat>]) -> String {
    factors
        .iter()
        .zip(level.factors().pairs())
        .map(|(f, &(p, _))| {
            let terms: Vec<(u64, Rat)> = f
                .iter()
                .enumerate()
                .map(|(j, c)| (p.pow(j as u32), c.clone()))
                .collect();
            format!("({})", format_terms(&terms))
        })
        .collect::<Vec<_>>()
        .join("x")
}

/// Sparse view keyed by divisor, convenient for tests and reports.
pub fn to_map(v: &CuspDivisor) -> BTreeMap<u64, Rat> {
    v.terms().into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
