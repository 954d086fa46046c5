//! Eta quotients on X0(N): valuations at cusps, Ligozat's criterion, the
//! linear isomorphism `Lambda` from cuspidal divisors to eta exponents, and
//! exact orders of cuspidal divisor classes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, num, valuation_u64, Int, Rat};
use crate::error::{Error, Result};
use crate::level::{tensor_compose, CuspDivisor, Level};
use crate::matrix::{apply_on_axis, RatMatrix};

/// Exponents `r_delta` of `prod eta(delta tau)^{r_delta}`, one per `delta | N`,
/// in the same dense layout as [`CuspDivisor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaExponentVector {
    level: Arc<Level>,
    r: Vec<Rat>,
}

impl EtaExponentVector {
    pub fn zero(level: &Arc<Level>) -> Self {
        EtaExponentVector {
            level: Arc::clone(level),
            r: vec![Rat::zero(); level.dimension()],
        }
    }

    pub fn from_terms<I>(level: &Arc<Level>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rat)>,
    {
        let mut v = Self::zero(level);
        for (delta, e) in terms {
            let i = level.index_of(delta)?;
            v.r[i] += e;
        }
        Ok(v)
    }

    pub fn from_dense(level: &Arc<Level>, r: Vec<Rat>) -> Result<Self> {
        if r.len() != level.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "{} exponents for a level with {} divisors",
                r.len(),
                level.dimension()
            )));
        }
        Ok(EtaExponentVector {
            level: Arc::clone(level),
            r,
        })
    }

    pub fn level(&self) -> &Arc<Level> {
        &self.level
    }

    pub fn dense(&self) -> &[Rat] {
        &self.r
    }

    pub fn exponent(&self, delta: u64) -> Result<&Rat> {
        Ok(&self.r[self.level.index_of(delta)?])
    }

    /// `(delta, r_delta)` ascending in `delta`.
    pub fn terms(&self) -> Vec<(u64, Rat)> {
        let mut t: Vec<(u64, Rat)> = self
            .r
            .iter()
            .enumerate()
            .map(|(i, e)| (self.level.divisor_at(i), e.clone()))
            .collect();
        t.sort_by_key(|(d, _)| *d);
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        EtaExponentVector {
            level: Arc::clone(&self.level),
            r: self.r.iter().map(|x| x * c).collect(),
        }
    }

    /// `{"delta": exponent}` with integral exponents as JSON numbers and
    /// the rest as `"a/b"` strings. Zero exponents are omitted.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (d, e) in self.terms() {
            if e.is_zero() {
                continue;
            }
            let v = match e.to_integer().to_i64() {
                Some(i) if e.is_integer() => serde_json::Value::from(i),
                _ => serde_json::Value::from(e.to_string()),
            };
            m.insert(d.to_string(), v);
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(level: &Arc<Level>, value: &serde_json::Value) -> Result<Self> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let obj = value
            .as_object()
            .ok_or_else(|| bad("eta vector must be a JSON object".into()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (k, v) in obj {
            let delta: u64 = k
                .trim()
                .parse()
                .map_err(|_| bad(format!("key {k:?} is not a divisor")))?;
            let e = match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(|i| Rat::from_integer(i.into()))
                    .ok_or_else(|| bad(format!("exponent {n} is not an integer")))?,
                serde_json::Value::String(s) => s
                    .trim()
                    .parse::<Rat>()
                    .map_err(|_| bad(format!("exponent {s:?} is not a rational")))?,
                other => return Err(bad(format!("exponent {other} has the wrong type"))),
            };
            terms.push((delta, e));
        }
        Self::from_terms(level, terms)
    }
}

impl fmt::Display for EtaExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .filter(|(_, e)| !e.is_zero())
            .map(|(d, e)| format!("eta{d}^({e})"))
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

/// Order of vanishing of `eta(M tau)` at a cusp with denominator `d`:
/// `N gcd(d, M)^2 / (24 d gcd(d, N/d) M)`.
pub fn eta_valuation(level: &Level, m: u64, d: u64) -> Result<Rat> {
    if !level.divides(m) {
        return Err(Error::NotADivisor { d: m, n: level.n() });
    }
    if !level.divides(d) {
        return Err(Error::NotADivisor { d, n: level.n() });
    }
    let g = d.gcd(&m);
    let t = level.width_gcd(d);
    let num = Int::from(level.n()) * Int::from(g) * Int::from(g);
    let den = Int::from(24u32) * Int::from(d) * Int::from(t) * Int::from(m);
    Ok(Rat::new(num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LigozatCondition {
    /// every `r_delta` is an integer
    Integral,
    /// `sum r_delta delta ≡ 0 (mod 24)`
    OrderAtInfinity,
    /// `sum r_delta N/delta ≡ 0 (mod 24)`
    OrderAtZero,
    /// `sum r_delta = 0`
    WeightZero,
    /// `prod delta^{r_delta}` is a rational square
    SquareCharacter,
}

impl LigozatCondition {
    pub fn number(self) -> u8 {
        match self {
            LigozatCondition::Integral => 1,
            LigozatCondition::OrderAtInfinity => 2,
            LigozatCondition::OrderAtZero => 3,
            LigozatCondition::WeightZero => 4,
            LigozatCondition::SquareCharacter => 5,
        }
    }
}

impl fmt::Display for LigozatCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LigozatCondition::Integral => "exponents integral",
            LigozatCondition::OrderAtInfinity => "sum r_d*d = 0 mod 24",
            LigozatCondition::OrderAtZero => "sum r_d*N/d = 0 mod 24",
            LigozatCondition::WeightZero => "sum r_d = 0",
            LigozatCondition::SquareCharacter => "prod d^r_d is a square",
        };
        write!(f, "({}) {s}", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularityReport {
    pub holds: bool,
    pub failed: Vec<LigozatCondition>,
}

/// Ligozat's criterion for `g_r` to be a function on X0(N).
pub fn is_modular_function(r: &EtaExponentVector) -> ModularityReport {
    let level = r.level();
    let n = level.n();
    let mut failed = Vec::new();
    if !r.r.iter().all(Rat::is_integer) {
        failed.push(LigozatCondition::Integral);
    }
    let mut at_inf = Rat::zero();
    let mut at_zero = Rat::zero();
    let mut weight = Rat::zero();
    for (d, e) in r.terms() {
        at_inf += &e * Rat::from_integer(d.into());
        at_zero += &e * Rat::from_integer((n / d).into());
        weight += &e;
    }
    let div24 = |x: &Rat| (x / Rat::from_integer(24.into())).is_integer();
    if !div24(&at_inf) {
        failed.push(LigozatCondition::OrderAtInfinity);
    }
    if !div24(&at_zero) {
        failed.push(LigozatCondition::OrderAtZero);
    }
    if !weight.is_zero() {
        failed.push(LigozatCondition::WeightZero);
    }
    let two = Rat::from_integer(2.into());
    let square = level.primes().into_iter().all(|p| {
        let mut e = Rat::zero();
        for (d, x) in r.terms() {
            e += &x * Rat::from_integer(valuation_u64(d, p).into());
        }
        (e / &two).is_integer()
    });
    if !square {
        failed.push(LigozatCondition::SquareCharacter);
    }
    ModularityReport {
        holds: failed.is_empty(),
        failed,
    }
}

/// Local block `Lambda_p` on `V_p` for `p^s || N`.
///
/// Tridiagonal with prefactor `1/((p^2-1) phi(p^s))`: diagonal `p(p-1)` at
/// both corners and `p^2+1` inside; off-diagonal entries in the first or
/// last column are `-(p-1)`, all others `-p`.
pub fn lambda_block(p: u64, s: u32) -> RatMatrix {
    let n = s as usize + 1;
    let p_i = p as i64;
    let mut m = RatMatrix::zeros(n, n);
    let int = |x: i64| Rat::from_integer(x.into());
    for i in 0..n {
        let corner = i == 0 || i == n - 1;
        m[(i, i)] = if corner {
            int(p_i * (p_i - 1))
        } else {
            int(p_i * p_i + 1)
        };
        for j in [i.wrapping_sub(1), i + 1] {
            if j < n {
                let edge_col = j == 0 || j == n - 1;
                m[(i, j)] = if edge_col { int(-(p_i - 1)) } else { int(-p_i) };
            }
        }
    }
    let pre = Rat::new(
        Int::one(),
        (Int::from(p) * Int::from(p) - 1) * Int::from(euler_phi(p.pow(s))),
    );
    m.scale(&pre)
}

/// `Lambda = 24 ⊗_p Lambda_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMap {
    level: Arc<Level>,
    blocks: Vec<RatMatrix>,
}

/// JSON form of a [`LambdaMap`], used for on-disk caching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaMapJson {
    #[serde(rename = "N")]
    pub n: u64,
    pub blocks: Vec<Vec<Vec<String>>>,
}

pub fn lambda_map(level: &Arc<Level>) -> Result<LambdaMap> {
    if level.n() < 2 {
        return Err(Error::LevelTooSmall {
            min: 2,
            got: level.n(),
        });
    }
    let blocks = level
        .factors()
        .pairs()
        .iter()
        .map(|&(p, s)| lambda_block(p, s))
        .collect();
    Ok(LambdaMap {
        level: Arc::clone(level),
        blocks,
    })
}

impl LambdaMap {
    pub fn level(&self) -> &Arc<Level> {
        &self.level
    }

    /// Blocks without the global factor 24, one per prime.
    pub fn blocks(&self) -> &[RatMatrix] {
        &self.blocks
    }

    pub fn apply(&self, v: &CuspDivisor) -> Result<EtaExponentVector> {
        if v.level().n() != self.level.n() {
            return Err(Error::LevelMismatch(v.level().n(), self.level.n()));
        }
        let mut data = v.dense().to_vec();
        for (axis, b) in self.blocks.iter().enumerate() {
            data = apply_on_axis(b, self.level.dims(), axis, &data);
        }
        let c24 = Rat::from_integer(24.into());
        for x in data.iter_mut() {
            *x *= &c24;
        }
        EtaExponentVector::from_dense(&self.level, data)
    }

    /// The full `|divisors| x |divisors|` matrix in the dense layout.
    pub fn to_dense(&self) -> RatMatrix {
        let mut m = RatMatrix::identity(1);
        for b in &self.blocks {
            m = m.kron(b);
        }
        m.scale(&Rat::from_integer(24.into()))
    }

    pub fn to_json(&self) -> LambdaMapJson {
        LambdaMapJson {
            n: self.level.n(),
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    (0..b.rows())
                        .map(|i| (0..b.cols()).map(|j| b[(i, j)].to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Rebuilds a map from its JSON form, rejecting anything that does not
    /// match the blocks the level prescribes.
    pub fn from_json(json: &LambdaMapJson) -> Result<LambdaMap> {
        let level = Arc::new(Level::new(json.n)?);
        let expected = lambda_map(&level)?;
        let parsed: Vec<RatMatrix> = json
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                s.parse::<Rat>().map_err(|_| Error::Parse {
                                    pos: 0,
                                    msg: format!("bad matrix entry {s:?}"),
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(RatMatrix::from_rows)
            })
            .collect::<Result<_>>()?;
        if parsed != expected.blocks {
            return Err(Error::DimensionMismatch(format!(
                "cached Lambda blocks for level {} are inconsistent",
                json.n
            )));
        }
        Ok(expected)
    }
}

/// Divisor of the eta quotient `g_r`: the coefficient of `P_d` is
/// `phi(gcd(d, N/d))` times the common order of `g_r` at the cusps of
/// denominator `d`.
pub fn divisor_of_eta_vector(r: &EtaExponentVector) -> Result<CuspDivisor> {
    let level = r.level();
    let mut terms = Vec::with_capacity(level.dimension());
    for &d in level.divisors() {
        let mut order = Rat::zero();
        for (delta, e) in r.terms() {
            if !e.is_zero() {
                order += &e * eta_valuation(level, delta, d)?;
            }
        }
        terms.push((d, order * Rat::from_integer(level.cusps_over(d).into())));
    }
    CuspDivisor::from_terms(level, terms)
}

/// Levels where the order computation is backed by the criterion: `2^a M`
/// with `M` odd squarefree and `a <= 3`, or `p^s`, `4p^s`, `8p^s`.
pub fn is_supported_shape(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let a = n.trailing_zeros();
    let m = n >> a;
    if m == 1 {
        return true;
    }
    let f = crate::arith::factorize(m);
    (a <= 3 && f.is_squarefree()) || (f.len() == 1 && matches!(a, 0 | 2 | 3))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCertificate {
    pub order: Int,
    /// `Lambda(order * v)`.
    pub lambda_image: EtaExponentVector,
    /// Pairing of `Lambda(order * v)` with `e ⊗ .. ⊗ f_i ⊗ .. ⊗ e`, per prime.
    pub parity_checks: Vec<Int>,
}

/// Pairing of `w` with `e ⊗ ... ⊗ f_axis ⊗ ... ⊗ e`, where
/// `e = (1, 1, ...)` and `f = (0, 1, 0, 1, ...)`.
pub fn f_pairing(w: &EtaExponentVector, axis: usize) -> Rat {
    let level = w.level();
    w.dense()
        .iter()
        .enumerate()
        .filter(|(i, _)| level.exponents_at(*i)[axis] % 2 == 1)
        .map(|(_, x)| x.clone())
        .sum()
}

/// Least `n >= 1` such that `n v` is linearly equivalent to zero by the
/// eta-quotient criterion.
///
/// Each condition asks `n` to be a multiple of some integer, so `n` is the
/// lcm of: the denominators of `Lambda v`; `phi(t_d)/gcd(phi(t_d), c_d)`
/// for each coefficient `c_d`; and `2b/gcd(2b, a)` for each parity pairing
/// `a/b`.
pub fn class_order(v: &CuspDivisor) -> Result<OrderCertificate> {
    class_order_with(v, &lambda_map(v.level())?)
}

/// [`class_order`] with a precomputed (for instance cached) `Lambda`.
pub fn class_order_with(v: &CuspDivisor, lam: &LambdaMap) -> Result<OrderCertificate> {
    let level = v.level();
    if !is_supported_shape(level.n()) {
        return Err(Error::UnsupportedLevel(level.n()));
    }
    if !v.is_integral() {
        return Err(Error::NonIntegral);
    }
    let deg = v.degree();
    if !deg.is_zero() {
        return Err(Error::NonzeroDegree(deg.to_string()));
    }
    let image = lam.apply(v)?;

    let mut n = Int::one();
    for x in image.dense() {
        n = n.lcm(x.denom());
    }
    for (i, c) in v.dense().iter().enumerate() {
        let d = level.divisor_at(i);
        let phi = Int::from(level.cusps_over(d));
        let c = c.to_integer();
        if !c.is_zero() {
            n = n.lcm(&(&phi / phi.gcd(&c)));
        }
    }
    for axis in 0..level.dims().len() {
        let pair = f_pairing(&image, axis);
        if !pair.is_zero() {
            let two_b = pair.denom() * Int::from(2u32);
            let a = pair.numer().abs();
            n = n.lcm(&(&two_b / two_b.gcd(&a)));
        }
    }

    let scaled = image.scale(&Rat::from_integer(n.clone()));
    let parity_checks = (0..level.dims().len())
        .map(|axis| f_pairing(&scaled, axis).to_integer())
        .collect();
    Ok(OrderCertificate {
        order: n,
        lambda_image: scaled,
        parity_checks,
    })
}

/// Whether `v` is zero in the cuspidal class group.
pub fn is_principal(v: &CuspDivisor) -> Result<bool> {
    Ok(class_order(v)?.order.is_one())
}

/// The shapes of the closed-form order table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum TableShape {
    /// `N = p`, element `P_1 - P_p`.
    Prime { p: u64 },
    /// `N = prod p_i`, element `⊗ (P_1 + b_i P_{p_i})`.
    Squarefree { primes: Vec<u64>, signs: Vec<i8> },
    /// `N = 4p`, element `P_2 - P_{2p}`.
    FourP { p: u64 },
    /// `N = 4 prod p_i`, element `P_2 ⊗ ⊗ (P_1 + b_i P_{p_i})`.
    FourSquarefree { primes: Vec<u64>, signs: Vec<i8> },
    /// `N = 8 prod p_i`, element `(P_1 - P_8) ⊗ ⊗ (P_1 + b_i P_{p_i})`.
    EightSquarefree { primes: Vec<u64>, signs: Vec<i8> },
}

fn check_primes(primes: &[u64], signs: &[i8], odd_only: bool) -> Result<()> {
    let cond = |m: String| Err(Error::TableCondition(m));
    if primes.len() != signs.len() {
        return cond(format!("{} primes but {} signs", primes.len(), signs.len()));
    }
    if primes.is_empty() {
        return cond("at least one prime is required".into());
    }
    if !primes.windows(2).all(|w| w[0] < w[1]) {
        return cond("primes must be distinct and ascending".into());
    }
    if let Some(&p) = primes.iter().find(|&&p| !crate::arith::is_prime(p)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if odd_only && primes.contains(&2) {
        return cond("the primes must be odd".into());
    }
    if signs.iter().any(|&b| b != 1 && b != -1) {
        return cond("signs must be +1 or -1".into());
    }
    Ok(())
}

fn shifted_product(primes: &[u64], signs: &[i8]) -> Int {
    primes
        .iter()
        .zip(signs)
        .map(|(&p, &b)| Int::from(p as i128 + b as i128))
        .product()
}

impl TableShape {
    pub fn level(&self) -> u64 {
        match self {
            TableShape::Prime { p } => *p,
            TableShape::Squarefree { primes, .. } => primes.iter().product(),
            TableShape::FourP { p } => 4 * p,
            TableShape::FourSquarefree { primes, .. } => 4 * primes.iter().product::<u64>(),
            TableShape::EightSquarefree { primes, .. } => 8 * primes.iter().product::<u64>(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TableShape::Prime { p } => {
                if !crate::arith::is_prime(*p) {
                    return Err(Error::NotPrime(p.to_string()));
                }
            }
            TableShape::Squarefree { primes, signs } => {
                check_primes(primes, signs, false)?;
                if primes.len() < 2 {
                    return Err(Error::TableCondition("t > 1 is required".into()));
                }
                if !signs.contains(&-1) {
                    return Err(Error::TableCondition(
                        "at least one sign must be -1".into(),
                    ));
                }
            }
            TableShape::FourP { p } => {
                if !crate::arith::is_prime(*p) {
                    return Err(Error::NotPrime(p.to_string()));
                }
                if *p == 2 {
                    return Err(Error::TableCondition("p must be odd".into()));
                }
            }
            TableShape::FourSquarefree { primes, signs } => {
                check_primes(primes, signs, true)?;
                if primes.len() < 2 {
                    return Err(Error::TableCondition("t > 1 is required".into()));
                }
                if !signs.contains(&-1) {
                    return Err(Error::TableCondition(
                        "at least one sign must be -1".into(),
                    ));
                }
            }
            TableShape::EightSquarefree { primes, signs } => {
                check_primes(primes, signs, true)?;
            }
        }
        Ok(())
    }

    /// The table's cuspidal element at its level.
    pub fn divisor(&self) -> Result<CuspDivisor> {
        self.validate()?;
        let level = Arc::new(Level::new(self.level())?);
        let int = |x: i64| Rat::from_integer(x.into());
        let local = |b: i8| vec![int(1), int(b as i64)];
        let factors: Vec<Vec<Rat>> = match self {
            TableShape::Prime { .. } => vec![vec![int(1), int(-1)]],
            TableShape::FourP { .. } => vec![vec![int(0), int(1), int(0)], vec![int(1), int(-1)]],
            TableShape::Squarefree { signs, .. } => signs.iter().map(|&b| local(b)).collect(),
            TableShape::FourSquarefree { signs, .. } => {
                std::iter::once(vec![int(0), int(1), int(0)])
                    .chain(signs.iter().map(|&b| local(b)))
                    .collect()
            }
            TableShape::EightSquarefree { signs, .. } => {
                std::iter::once(vec![int(1), int(0), int(0), int(-1)])
                    .chain(signs.iter().map(|&b| local(b)))
                    .collect()
            }
        };
        tensor_compose(&level, &factors)
    }
}

/// Closed-form order of the table element for `shape`.
pub fn closed_form_order(shape: &TableShape) -> Result<Int> {
    shape.validate()?;
    let r = |n: Int, d: i64| Rat::new(n, Int::from(d));
    let value = match shape {
        TableShape::Prime { p } => num(&r(Int::from(*p) - 1, 12))?,
        TableShape::Squarefree { primes, signs } => num(&r(shifted_product(primes, signs), 24))?,
        TableShape::FourP { p } => Int::from((p - 1) / 2),
        TableShape::FourSquarefree { primes, signs } => shifted_product(primes, signs) / 4,
        TableShape::EightSquarefree { primes, signs } => shifted_product(primes, signs) / 2,
    };
    Ok(value)
}

/// Sparse view of an eta vector keyed by `delta`.
pub fn eta_map(r: &EtaExponentVector) -> BTreeMap<u64, Rat> {
    r.terms().into_iter().filter(|(_, e)| !e.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::level::to_map;
    use crate::parse::parse_divisor;

    fn lvl(n: u64) -> Arc<Level> {
        Arc::new(Level::new(n).unwrap())
    }

    fn eta(level: &Arc<Level>, terms: &[(u64, Rat)]) -> EtaExponentVector {
        EtaExponentVector::from_terms(level, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let l11 = Level::new(11).unwrap();
        assert_eq!(eta_valuation(&l11, 1, 1).unwrap(), rat(11, 24));
        assert_eq!(eta_valuation(&l11, 11, 11).unwrap(), rat(11, 24));
        let l14 = Level::new(14).unwrap();
        // 14 * 1 / (24 * 7 * 1 * 2)
        assert_eq!(eta_valuation(&l14, 2, 7).unwrap(), rat(1, 24));
        assert!(eta_valuation(&l14, 3, 7).is_err());
        assert!(eta_valuation(&l14, 2, 5).is_err());
    }

    #[test]
    fn ligozat_examples() {
        let l = lvl(11);
        let ok = is_modular_function(&eta(&l, &[(1, rat(12, 1)), (11, rat(-12, 1))]));
        assert!(ok.holds);
        let weight = is_modular_function(&eta(&l, &[(1, rat(2, 1)), (11, rat(2, 1))]));
        assert!(!weight.holds);
        assert!(weight.failed.contains(&LigozatCondition::WeightZero));
        let frac = is_modular_function(&eta(&l, &[(1, rat(1, 2)), (11, rat(-1, 2))]));
        assert_eq!(frac.failed.first(), Some(&LigozatCondition::Integral));
    }

    #[test]
    fn lambda_blocks() {
        let b = lambda_block(11, 1);
        let expected = RatMatrix::from_i64_rows(&[&[110, -10], &[-10, 110]])
            .scale(&rat(1, 1200));
        assert_eq!(b, expected);
        let b = lambda_block(2, 2);
        let expected =
            RatMatrix::from_i64_rows(&[&[2, -2, 0], &[-1, 5, -1], &[0, -2, 2]]).scale(&rat(1, 6));
        assert_eq!(b, expected);
        let b = lambda_block(3, 3);
        let expected = RatMatrix::from_i64_rows(&[
            &[6, -3, 0, 0],
            &[-2, 10, -3, 0],
            &[0, -3, 10, -2],
            &[0, 0, -3, 6],
        ])
        .scale(&rat(1, 8 * 18));
        assert_eq!(b, expected);
    }

    #[test]
    fn lambda_on_prime_level() {
        let l = lvl(11);
        let lam = lambda_map(&l).unwrap();
        let v = parse_divisor(&l, "P11-P1").unwrap();
        let img = lam.apply(&v).unwrap();
        assert_eq!(img.dense(), &[rat(-12, 5), rat(12, 5)]);
    }

    #[test]
    fn eta_divisor_examples() {
        let l = lvl(11);
        let d = divisor_of_eta_vector(&eta(&l, &[(1, rat(12, 1)), (11, rat(-12, 1))])).unwrap();
        assert_eq!(d, parse_divisor(&l, "5P1-5P11").unwrap());
        assert!(divisor_of_eta_vector(&EtaExponentVector::zero(&l))
            .unwrap()
            .is_zero());
        let l14 = lvl(14);
        let r = eta(&l14, &[(1, rat(24, 1)), (14, rat(-24, 1))]);
        assert!(divisor_of_eta_vector(&r).unwrap().degree().is_zero());
    }

    #[test]
    fn lambda_inverts_divisor_map_on_small_levels() {
        for n in 2..=60u64 {
            if !is_supported_shape(n) {
                continue;
            }
            let l = lvl(n);
            let lam = lambda_map(&l).unwrap();
            for i in 0..l.dimension() {
                let mut r = vec![Rat::zero(); l.dimension()];
                r[i] = Rat::one();
                let e = EtaExponentVector::from_dense(&l, r.clone()).unwrap();
                let back = lam.apply(&divisor_of_eta_vector(&e).unwrap()).unwrap();
                assert_eq!(back.dense(), &r[..], "N={n}, column {i}");
            }
        }
    }

    #[test]
    fn order_examples() {
        let cases = [
            (11, "P1-P11", 5),
            (15, "(P1+P3)x(P1-P5)", 2),
            (20, "P2-P10", 2),
            (14, "(P1+P2)x(P1-P7)", 3),
        ];
        for (n, s, expected) in cases {
            let l = lvl(n);
            let cert = class_order(&parse_divisor(&l, s).unwrap()).unwrap();
            assert_eq!(cert.order, int(expected), "{s} at N={n}");
            assert!(is_modular_function(&cert.lambda_image).holds);
            assert!(cert.parity_checks.iter().all(|x| x.is_even()));
        }
    }

    #[test]
    fn order_rejects_bad_input() {
        let l = lvl(11);
        assert_eq!(
            class_order(&parse_divisor(&l, "1/2P1-1/2P11").unwrap()),
            Err(Error::NonIntegral)
        );
        assert!(matches!(
            class_order(&parse_divisor(&l, "P1").unwrap()),
            Err(Error::NonzeroDegree(_))
        ));
        let l18 = lvl(18);
        assert_eq!(
            class_order(&parse_divisor(&l18, "P1-P18").unwrap()),
            Err(Error::UnsupportedLevel(18))
        );
    }

    #[test]
    fn supported_shapes() {
        for n in [2, 4, 8, 16, 64, 30, 120, 9, 27, 36, 72, 4 * 125, 8 * 49, 105] {
            assert!(is_supported_shape(n), "{n}");
        }
        for n in [1, 18, 16 * 3, 45, 2 * 49, 9 * 5] {
            assert!(!is_supported_shape(n), "{n}");
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_order(&TableShape::Prime { p: 11 }).unwrap(), int(5));
        let sq = TableShape::Squarefree {
            primes: vec![2, 7],
            signs: vec![1, -1],
        };
        assert_eq!(closed_form_order(&sq).unwrap(), int(3));
        let eight = TableShape::EightSquarefree {
            primes: vec![3],
            signs: vec![-1],
        };
        assert_eq!(closed_form_order(&eight).unwrap(), int(1));
        let bad = TableShape::Squarefree {
            primes: vec![3, 5],
            signs: vec![1, 1],
        };
        assert!(matches!(closed_form_order(&bad), Err(Error::TableCondition(_))));
        let single = TableShape::FourSquarefree {
            primes: vec![3],
            signs: vec![-1],
        };
        assert!(matches!(closed_form_order(&single), Err(Error::TableCondition(_))));
        assert_eq!(
            to_map(&sq.divisor().unwrap()),
            to_map(&parse_divisor(&lvl(14), "(P1+P2)x(P1-P7)").unwrap())
        );
    }

    #[test]
    fn eta_json_roundtrip() {
        let l = lvl(12);
        let r = eta(&l, &[(1, rat(3, 1)), (4, rat(-1, 2)), (12, rat(-5, 2))]);
        let j = r.to_json();
        assert_eq!(j, serde_json::json!({"1": 3, "4": "-1/2", "12": "-5/2"}));
        assert_eq!(EtaExponentVector::from_json(&l, &j).unwrap(), r);
        assert!(EtaExponentVector::from_json(&l, &serde_json::json!({"5": 1})).is_err());
        assert!(EtaExponentVector::from_json(&l, &serde_json::json!([1])).is_err());
    }

    #[test]
    fn lambda_cache_roundtrip() {
        let l = lvl(72);
        let lam = lambda_map(&l).unwrap();
        let json = lam.to_json();
        assert_eq!(LambdaMap::from_json(&json).unwrap(), lam);
        let mut bad = json.clone();
        bad.blocks[0][0][0] = "7".into();
        assert!(LambdaMap::from_json(&bad).is_err());
    }
}
