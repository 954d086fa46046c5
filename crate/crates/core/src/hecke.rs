//! Hecke operators `T_p` and Atkin-Lehner involutions `w_r` acting on the
//! cuspidal divisor space, the newness identities, the annihilator check
//! for order-2 classes, and the even-order obstruction witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{factorize, is_prime, serialize_display, Int, Rat};
use crate::error::{Error, Result};
use crate::eta::class_order;
use crate::level::{tensor_compose, CuspDivisor, Level};
use crate::matrix::{apply_on_axis, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    Hecke(u64),
    AtkinLehner(u64),
    Scalar(#[serde(serialize_with = "serialize_display")] Int),
}

/// A linear operator on `V`, stored as one block per prime of `N`.
/// `None` blocks act as the identity; `Scalar` operators carry no blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalOperator {
    level: Arc<Level>,
    kind: OperatorKind,
    blocks: Vec<Option<RatMatrix>>,
}

/// `T_p` on `V_p` for `p^s || N`, acting on columns.
pub fn hecke_block(p: u64, s: u32) -> RatMatrix {
    let n = s as usize + 1;
    let mut m = RatMatrix::zeros(n, n);
    let int = |x: u64| Rat::from_integer(x.into());
    m[(0, 0)] = Rat::one();
    m[(1, 0)] = int(p - 1);
    for j in 1..n - 1 {
        m[(j + 1, j)] = int(p);
    }
    m[(n - 1, n - 1)] = int(p);
    m
}

fn antidiagonal(n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, n - 1 - i)] = Rat::one();
    }
    m
}

pub fn hecke_matrix(level: &Arc<Level>, p: u64) -> Result<CuspidalOperator> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let pairs = level.factors().pairs();
    match level.axis_of(p) {
        None => Ok(CuspidalOperator {
            level: Arc::clone(level),
            kind: OperatorKind::Scalar(Int::from(p) + 1),
            blocks: Vec::new(),
        }),
        Some(axis) => {
            let mut blocks = vec![None; pairs.len()];
            blocks[axis] = Some(hecke_block(p, pairs[axis].1));
            Ok(CuspidalOperator {
                level: Arc::clone(level),
                kind: OperatorKind::Hecke(p),
                blocks,
            })
        }
    }
}

/// `w_r`, depending only on the primes of `r`: each `V_p` with `p | r` is
/// reversed.
pub fn atkin_lehner_matrix(level: &Arc<Level>, r: u64) -> Result<CuspidalOperator> {
    if r <= 1 {
        return Err(Error::Operator(format!(
            "w_{r} shares no prime with N = {}",
            level.n()
        )));
    }
    let pairs = level.factors().pairs();
    let mut blocks = vec![None; pairs.len()];
    for p in factorize(r).primes() {
        let axis = level.axis_of(p).ok_or_else(|| {
            Error::Operator(format!("prime {p} of r = {r} does not divide N = {}", level.n()))
        })?;
        blocks[axis] = Some(antidiagonal(pairs[axis].1 as usize + 1));
    }
    Ok(CuspidalOperator {
        level: Arc::clone(level),
        kind: OperatorKind::AtkinLehner(r),
        blocks,
    })
}

impl CuspidalOperator {
    pub fn level(&self) -> &Arc<Level> {
        &self.level
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    /// Per-prime blocks; `None` is the identity. Empty for scalars.
    pub fn blocks(&self) -> &[Option<RatMatrix>] {
        &self.blocks
    }

    pub fn apply(&self, v: &CuspDivisor) -> Result<CuspDivisor> {
        if v.level().n() != self.level.n() {
            return Err(Error::LevelMismatch(v.level().n(), self.level.n()));
        }
        if let OperatorKind::Scalar(c) = &self.kind {
            return Ok(v.scale(&Rat::from_integer(c.clone())));
        }
        let mut data = v.dense().to_vec();
        for (axis, b) in self.blocks.iter().enumerate() {
            if let Some(b) = b {
                data = apply_on_axis(b, self.level.dims(), axis, &data);
            }
        }
        CuspDivisor::from_dense(&self.level, data)
    }

    pub fn to_dense(&self) -> RatMatrix {
        let n = self.level.dimension();
        if let OperatorKind::Scalar(c) = &self.kind {
            return RatMatrix::identity(n).scale(&Rat::from_integer(c.clone()));
        }
        let mut m = RatMatrix::identity(1);
        for (axis, b) in self.blocks.iter().enumerate() {
            let dim = self.level.dims()[axis];
            m = match b {
                Some(b) => m.kron(b),
                None => m.kron(&RatMatrix::identity(dim)),
            };
        }
        m
    }
}

impl fmt::Display for CuspidalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OperatorKind::Scalar(c) => write!(f, "multiplication by {c}"),
            OperatorKind::Hecke(p) | OperatorKind::AtkinLehner(p) => {
                let name = if matches!(self.kind, OperatorKind::Hecke(_)) {
                    "T"
                } else {
                    "w"
                };
                write!(f, "{name}_{p} on X0({}):", self.level.n())?;
                for ((q, _), b) in self.level.factors().pairs().iter().zip(&self.blocks) {
                    if let Some(b) = b {
                        write!(f, " V_{q} {b}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// `v + s w(v)`.
fn one_plus(w: &CuspidalOperator, s: i64, v: &CuspDivisor) -> Result<CuspDivisor> {
    let wv = w.apply(v)?;
    Ok(v + &wv.scale_int(s))
}

fn order_of(v: &CuspDivisor) -> Result<Int> {
    if v.is_zero() {
        return Ok(Int::one());
    }
    Ok(class_order(v)?.order)
}

/// `N = 2^a M` with `M` odd squarefree and `a <= 3`.
fn squarefree_shape(n: u64) -> Option<(u32, Vec<u64>)> {
    if n < 2 {
        return None;
    }
    let a = n.trailing_zeros();
    let f = factorize(n >> a);
    (a <= 3 && f.is_squarefree()).then(|| (a, f.primes().collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub prime: u64,
    pub statement: String,
    /// The identity as vectors in `V`.
    pub vector_holds: bool,
    /// The class identity for `lambda v`; `None` when `v` has odd order.
    pub class_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewnessCase {
    pub divisor: String,
    #[serde(serialize_with = "serialize_display")]
    pub order: Int,
    pub lambda: Option<String>,
    pub checks: Vec<IdentityCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewnessReport {
    pub level: u64,
    pub cases: Vec<NewnessCase>,
}

impl NewnessReport {
    pub fn holds(&self) -> bool {
        self.failures().is_empty()
    }

    /// `(divisor, prime, statement)` for every identity that fails.
    pub fn failures(&self) -> Vec<(String, u64, String)> {
        let mut out = Vec::new();
        for c in &self.cases {
            for k in &c.checks {
                if !k.vector_holds || k.class_holds == Some(false) {
                    out.push((c.divisor.clone(), k.prime, k.statement.clone()));
                }
            }
        }
        out
    }
}

/// Builds every element `⊗ v_p` covered by the newness identities at
/// level `N` and checks each identity both as vectors and, for
/// `lambda = order/2`, as classes.
pub fn verify_newness(level: &Arc<Level>) -> Result<NewnessReport> {
    let (a, odd) = squarefree_shape(level.n()).ok_or(Error::UnsupportedLevel(level.n()))?;
    let int = |x: i64| Rat::from_integer(x.into());
    let free: Vec<u64> = if a == 1 {
        std::iter::once(2).chain(odd.iter().copied()).collect()
    } else {
        odd.clone()
    };
    let mut cases = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let signs: BTreeMap<u64, i64> = free
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, if mask >> i & 1 == 1 { -1 } else { 1 }))
            .collect();
        if a <= 2 && !signs.values().any(|&b| b == -1) {
            continue;
        }
        let two_factor = match a {
            0 => None,
            1 => Some(vec![int(1), int(signs[&2])]),
            2 => Some(vec![int(0), int(1), int(0)]),
            _ => Some(vec![int(1), int(0), int(0), int(-1)]),
        };
        let mut factors: Vec<Vec<Rat>> = two_factor.into_iter().collect();
        for p in &odd {
            factors.push(vec![int(1), int(signs[p])]);
        }
        let v = tensor_compose(level, &factors)?;
        let order = order_of(&v)?;
        let lambda: Option<Int> = order.is_even().then(|| &order / 2);
        let lv = lambda
            .as_ref()
            .map(|l| v.scale(&Rat::from_integer(l.clone())));

        let mut checks = Vec::new();
        for (axis, &(p, _)) in level.factors().pairs().iter().enumerate() {
            let tp = hecke_matrix(level, p)?;
            let tv = tp.apply(&v)?;
            let (statement, vector_holds, class_test) = if p == 2 && a >= 2 {
                let mut f = factors.clone();
                f[axis] = if a == 2 {
                    vec![int(0), int(0), int(2)]
                } else {
                    vec![int(1), int(1), int(0), int(-2)]
                };
                let expected = tensor_compose(level, &f)?;
                let what = if a == 2 {
                    "T_2 v = 2P_4 (x) rest; T_2(lambda v) = 0"
                } else {
                    "T_2 v = (P1 + P2 - 2P8) (x) rest; T_2(lambda v) = 0"
                };
                (what.to_string(), tv == expected, ClassTest::Kills)
            } else if signs[&p] == -1 {
                (
                    format!("T_{p} v = v; T_{p}(lambda v) = lambda v"),
                    tv == v,
                    ClassTest::Fixes,
                )
            } else {
                let mut f = factors.clone();
                f[axis] = vec![int(0), int(p as i64 - 1)];
                let u = tensor_compose(level, &f)?;
                (
                    format!("T_{p} v = v + 2u, u_{p} = {}P{p}; T_{p}(lambda v) = lambda v", p - 1),
                    tv == &v + &u.scale_int(2),
                    ClassTest::Fixes,
                )
            };
            let class_holds = match &lv {
                None => None,
                Some(lv) => {
                    let t = tp.apply(lv)?;
                    let diff = match class_test {
                        ClassTest::Kills => t,
                        ClassTest::Fixes => &t - lv,
                    };
                    Some(order_of(&diff)?.is_one())
                }
            };
            checks.push(IdentityCheck {
                prime: p,
                statement,
                vector_holds,
                class_holds,
            });
        }
        cases.push(NewnessCase {
            divisor: v.to_string(),
            order,
            lambda: lambda.map(|l| l.to_string()),
            checks,
        });
    }
    Ok(NewnessReport {
        level: level.n(),
        cases,
    })
}

enum ClassTest {
    Fixes,
    Kills,
}

/// For `v` of order 2: `(T_p - 1) v = 0` for `p || N` and `T_p v = 0` for
/// `p^2 | N`, as classes.
pub fn annihilator_check(v: &CuspDivisor) -> Result<bool> {
    let order = order_of(v)?;
    if order != Int::from(2) {
        return Err(Error::NotOrderTwo(order.to_u64().unwrap_or(u64::MAX)));
    }
    let level = v.level();
    for &(p, s) in level.factors().pairs() {
        let tv = hecke_matrix(level, p)?.apply(v)?;
        let target = if s == 1 { &tv - v } else { tv };
        if !order_of(&target)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Atkin-Lehner eigenvalue `s_p = ±1` for each prime `p | N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignAssignment(BTreeMap<u64, i8>);

impl SignAssignment {
    pub fn new<I: IntoIterator<Item = (u64, i8)>>(signs: I) -> Result<Self> {
        let map: BTreeMap<u64, i8> = signs.into_iter().collect();
        if let Some((p, s)) = map.iter().find(|(_, &s)| s != 1 && s != -1) {
            return Err(Error::InvalidSigns(format!("s_{p} = {s} is not +1 or -1")));
        }
        Ok(SignAssignment(map))
    }

    pub fn sign(&self, p: u64) -> Option<i8> {
        self.0.get(&p).copied()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn product(&self) -> i8 {
        self.0.values().product()
    }

    /// Every assignment on the primes of `N` meeting the constraints used
    /// by [`obstruction_witness`].
    pub fn all_valid(level: &Level) -> Vec<SignAssignment> {
        let primes = level.primes();
        (0u32..1 << primes.len())
            .map(|mask| {
                SignAssignment(
                    primes
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| (p, if mask >> i & 1 == 1 { -1 } else { 1 }))
                        .collect(),
                )
            })
            .filter(|s| s.validate(level).is_ok())
            .collect()
    }

    /// `w_N = -1`; `w_2 = +1` when `2 || N` and `w_2 = -1` when `4 || N`.
    pub fn validate(&self, level: &Level) -> Result<()> {
        let primes = level.primes();
        if !self.0.keys().copied().eq(primes.iter().copied()) {
            return Err(Error::InvalidSigns(format!(
                "signs are given on {:?}, the primes of {} are {:?}",
                self.0.keys().collect::<Vec<_>>(),
                level.n(),
                primes
            )));
        }
        if self.product() != -1 {
            return Err(Error::InvalidSigns("the product of the signs (w_N) must be -1".into()));
        }
        match level.factors().exponent_of(2) {
            1 if self.0[&2] != 1 => Err(Error::InvalidSigns("w_2 must be +1 when 2 || N".into())),
            2 if self.0[&2] != -1 => Err(Error::InvalidSigns("w_2 must be -1 when 4 || N".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, s)| format!("{p}:{}", if *s > 0 { "+" } else { "-" }))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub divisor: CuspDivisor,
    #[serde(serialize_with = "serialize_display")]
    pub order: Int,
    /// Role name and the prime playing it, e.g. `("p", 3)`.
    pub roles: Vec<(String, u64)>,
    pub construction: String,
}

/// `±1` congruent to `-q` mod 4.
fn minus_mod4(q: u64) -> i64 {
    if q % 4 == 1 {
        -1
    } else {
        1
    }
}

/// The cuspidal divisor of even order used to rule out odd modular degree
/// on levels with many prime factors.
pub fn obstruction_witness(level: &Arc<Level>, signs: &SignAssignment) -> Result<Witness> {
    let unmet = |m: String| Error::HypothesesNotMet(m);
    let n = level.n();
    let (a, odd) = squarefree_shape(n)
        .ok_or_else(|| unmet(format!("{n} is not 2^a M with M odd squarefree and a <= 3")))?;
    signs.validate(level).map_err(|e| unmet(e.to_string()))?;
    let w = |r: u64| atkin_lehner_matrix(level, r);
    let p1 = CuspDivisor::from_terms(level, [(1, Rat::one())])?;

    let (v, roles, construction) = if a <= 1 {
        let primes = level.primes();
        if primes.len() < 3 {
            return Err(unmet(format!("{n} has fewer than 3 prime factors")));
        }
        let s = |p: u64| signs.sign(p).expect("validated");
        let mut labelings = Vec::new();
        for &p in &primes {
            for &q in &primes {
                for &r in &primes {
                    labelings.push((p, q, r));
                }
            }
        }
        let (p, q, r) = labelings
            .into_iter()
            .find(|&(p, q, r)| {
                p != q && q != r && p != r && p % 2 == 1 && q % 2 == 1 && s(p) == -1 && s(q) == s(r)
            })
            .ok_or_else(|| unmet("no valid (p, q, r) role labeling".into()))?;
        let (sp, sq) = (minus_mod4(p), minus_mod4(q));
        let v = one_plus(&w(r)?, -sq, &p1)?;
        let v = one_plus(&w(q)?, sq, &v)?;
        let v = one_plus(&w(p)?, sp, &v)?;
        let c = format!(
            "(1{}w_{p})(1{}w_{q})(1{}w_{r})P1",
            sign_str(sp),
            sign_str(sq),
            sign_str(-sq)
        );
        (v, vec![("p".into(), p), ("q".into(), q), ("r".into(), r)], c)
    } else {
        if odd.len() < 2 {
            return Err(unmet(format!("{n} has fewer than 2 odd prime factors")));
        }
        let (p, q) = (odd[0], odd[1]);
        if a == 2 {
            let p2 = CuspDivisor::from_terms(level, [(2, Rat::one())])?;
            let sq = minus_mod4(q);
            let v = one_plus(&w(q)?, sq, &p2)?;
            let v = one_plus(&w(p)?, -1, &v)?;
            let c = format!("(1-w_{p})(1{}w_{q})P2", sign_str(sq));
            (v, vec![("p".into(), p), ("q".into(), q)], c)
        } else {
            let sp = signs.sign(p).expect("validated") as i64;
            let sq = signs.sign(q).expect("validated") as i64;
            let v = one_plus(&w(q)?, sq, &p1)?;
            let v = one_plus(&w(p)?, sp, &v)?;
            let v = one_plus(&w(2)?, -1, &v)?;
            let c = format!("(1-w_2)(1{}w_{p})(1{}w_{q})P1", sign_str(sp), sign_str(sq));
            (v, vec![("p".into(), p), ("q".into(), q)], c)
        }
    };
    let order = order_of(&v)?;
    Ok(Witness {
        divisor: v,
        order,
        roles,
        construction,
    })
}

fn sign_str(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::parse::parse_divisor;

    fn lvl(n: u64) -> Arc<Level> {
        Arc::new(Level::new(n).unwrap())
    }

    #[test]
    fn hecke_examples() {
        let l = lvl(11);
        assert_eq!(
            hecke_matrix(&l, 13).unwrap().kind(),
            &OperatorKind::Scalar(int(14))
        );
        let t7 = hecke_matrix(&lvl(14), 7).unwrap();
        assert_eq!(
            t7.blocks()[1].as_ref().unwrap(),
            &RatMatrix::from_i64_rows(&[&[1, 0], &[6, 7]])
        );
        assert!(t7.blocks()[0].is_none());
        assert_eq!(
            hecke_block(2, 2),
            RatMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 0, 0], &[0, 2, 2]])
        );
        assert!(matches!(hecke_matrix(&l, 12), Err(Error::NotPrime(_))));
    }

    #[test]
    fn hecke_actions() {
        let l = lvl(14);
        let v = parse_divisor(&l, "P1-P7").unwrap();
        assert_eq!(hecke_matrix(&l, 7).unwrap().apply(&v).unwrap(), v);
        let l = lvl(20);
        let v = parse_divisor(&l, "(P2)x(P1-P5)").unwrap();
        let t2v = hecke_matrix(&l, 2).unwrap().apply(&v).unwrap();
        assert_eq!(t2v, parse_divisor(&l, "(2P4)x(P1-P5)").unwrap());
        let l = lvl(24);
        let v = parse_divisor(&l, "P1-P8").unwrap();
        let t2v = hecke_matrix(&l, 2).unwrap().apply(&v).unwrap();
        assert_eq!(t2v, parse_divisor(&l, "P1+P2-2P8").unwrap());
    }

    #[test]
    fn atkin_lehner_examples() {
        let l = lvl(11);
        let w = atkin_lehner_matrix(&l, 11).unwrap();
        let v = parse_divisor(&l, "P1").unwrap();
        assert_eq!(w.apply(&v).unwrap(), parse_divisor(&l, "P11").unwrap());
        let l = lvl(12);
        let p2 = parse_divisor(&l, "P2").unwrap();
        assert_eq!(atkin_lehner_matrix(&l, 2).unwrap().apply(&p2).unwrap(), p2);
        assert_eq!(
            atkin_lehner_matrix(&l, 4).unwrap(),
            CuspidalOperator {
                kind: OperatorKind::AtkinLehner(4),
                ..atkin_lehner_matrix(&l, 2).unwrap()
            }
        );
        let l = lvl(120);
        for &r in l.divisors().iter().filter(|&&r| r > 1) {
            let w = atkin_lehner_matrix(&l, r).unwrap().to_dense();
            assert!(w.mul(&w).is_identity(), "w_{r}");
        }
        assert!(atkin_lehner_matrix(&l, 7).is_err());
        assert!(atkin_lehner_matrix(&l, 1).is_err());
    }

    #[test]
    fn newness_small_levels() {
        for n in [11, 14, 15, 20, 24, 30, 33, 40, 56, 105, 120] {
            let r = verify_newness(&lvl(n)).unwrap();
            assert!(r.holds(), "N={n}: {:?}", r.failures());
        }
        let r = verify_newness(&lvl(15)).unwrap();
        let case = r
            .cases
            .iter()
            .find(|c| c.divisor == "P1 + P3 - P5 - P15")
            .unwrap();
        assert_eq!(case.order, int(2));
        assert_eq!(case.lambda.as_deref(), Some("1"));
        let r = verify_newness(&lvl(14)).unwrap();
        let case = r
            .cases
            .iter()
            .find(|c| c.divisor == "P1 + P2 - P7 - P14")
            .unwrap();
        assert_eq!(case.order, int(3));
        assert_eq!(case.lambda, None);
        assert!(verify_newness(&lvl(18)).is_err());
    }

    #[test]
    fn newness_case_two_at_34() {
        // N = 2p with p = 17: the class identity for T_2 with b_2 = +1 fails
        let r = verify_newness(&lvl(34)).unwrap();
        let f = r.failures();
        assert_eq!(f.len(), 1, "{f:?}");
        assert_eq!(f[0].1, 2);
        assert!(r.cases.iter().all(|c| c.checks.iter().all(|k| k.vector_holds)));
    }

    #[test]
    fn annihilator_examples() {
        let l = lvl(15);
        let v = parse_divisor(&l, "(3P1+3P3)x(P1-P5)").unwrap();
        assert!(annihilator_check(&v).unwrap());
        let l = lvl(20);
        assert!(annihilator_check(&parse_divisor(&l, "P2-P10").unwrap()).unwrap());
        let l = lvl(39);
        let base = parse_divisor(&l, "(P1+P3)x(P1-P13)").unwrap();
        let n = class_order(&base).unwrap().order;
        assert!(n.is_even());
        let v = base.scale(&Rat::from_integer(n / 2));
        assert!(annihilator_check(&v).unwrap());
        let l = lvl(11);
        assert_eq!(
            annihilator_check(&parse_divisor(&l, "P1-P11").unwrap()),
            Err(Error::NotOrderTwo(5))
        );
    }

    #[test]
    fn witness_examples() {
        let l = lvl(105);
        let s = SignAssignment::new([(3, -1), (5, 1), (7, 1)]).unwrap();
        let w = obstruction_witness(&l, &s).unwrap();
        assert_eq!(w.order, int(16));
        assert_eq!(w.roles[0], ("p".to_string(), 3));

        let l = lvl(60);
        let s = SignAssignment::new([(2, -1), (3, 1), (5, 1)]).unwrap();
        let w = obstruction_witness(&l, &s).unwrap();
        assert_eq!(w.order, int(2));
        assert_eq!(w.divisor, parse_divisor(&l, "(P2)x(P1-P3)x(P1-P5)").unwrap());

        let l = lvl(120);
        let s = SignAssignment::new([(2, -1), (3, 1), (5, 1)]).unwrap();
        assert_eq!(obstruction_witness(&l, &s).unwrap().order, int(12));
    }

    #[test]
    fn witness_hypotheses() {
        let l = lvl(15);
        let s = SignAssignment::new([(3, -1), (5, 1)]).unwrap();
        assert!(matches!(
            obstruction_witness(&l, &s),
            Err(Error::HypothesesNotMet(_))
        ));
        let l = lvl(105);
        let s = SignAssignment::new([(3, 1), (5, 1), (7, 1)]).unwrap();
        assert!(matches!(
            obstruction_witness(&l, &s),
            Err(Error::HypothesesNotMet(_))
        ));
        let l = lvl(30);
        let s = SignAssignment::new([(2, -1), (3, 1), (5, 1)]).unwrap();
        assert!(obstruction_witness(&l, &s).is_err());
        assert!(SignAssignment::new([(3, 2)]).is_err());
        assert_eq!(SignAssignment::all_valid(&lvl(105)).len(), 4);
    }
}
