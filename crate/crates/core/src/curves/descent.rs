//! Descent via 2-isogeny for `E: y^2 = x^3 + a x^2 + b x` and
//! `E': y^2 = x^3 - 2a x^2 + (a^2 - 4b) x`.
//!
//! The Selmer group of the isogeny from `E'` to `E` consists of the
//! squarefree `d | b` whose torsor `N^2 = d M^4 + a M^2 e^2 + (b/d) e^4` has
//! points over `R` and every `Q_p`; only `p | 2 b b'` need checking.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factorize, is_prime_int, kronecker, modp, split_off, Int};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DescentResult {
    pub selmer_phi_size: u64,
    pub selmer_phihat_size: u64,
    pub rank_bound: u32,
}

/// Subdivision depth after which local solvability is reported as
/// undecided.
const MAX_DEPTH: u32 = 64;

fn v(x: &Int, p: u64) -> u32 {
    if x.is_zero() {
        u32::MAX
    } else {
        split_off(x, p).0
    }
}

/// Whether a nonzero `x` is a square in `Q_p`.
fn is_padic_square(x: &Int, p: u64) -> bool {
    let (k, u) = split_off(x, p);
    if k % 2 == 1 {
        return false;
    }
    if p == 2 {
        modp(&u, 8) == 1
    } else {
        let r = modp(&u, p) as i64;
        kronecker(r, p) == 1
    }
}

/// Taylor coefficients of `poly` (ascending) at `x0`.
fn taylor(poly: &[Int], x0: &Int) -> Vec<Int> {
    let mut c = poly.to_vec();
    let n = c.len();
    // repeated synthetic division by (x - x0)
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * x0;
            c[j] += t;
        }
    }
    c
}

/// Whether `poly(x)` is a nonzero square or zero in `Q_p` for some
/// `x in x0 + p^k Z_p`.
fn ball_has_square(poly: &[Int], p: u64, x0: &Int, k: u32, depth: u32) -> Result<bool> {
    if depth > MAX_DEPTH {
        return Err(Error::Precondition(format!(
            "local solvability at {p} undecided after {MAX_DEPTH} refinements"
        )));
    }
    let c = taylor(poly, x0);
    if c[0].is_zero() {
        return Ok(true);
    }
    let v0 = v(&c[0], p);
    let tail = |i: usize| v(&c[i], p).saturating_add(i as u32 * k);
    let lowest = (1..c.len()).map(tail).min().unwrap_or(u32::MAX);
    let slack = if p == 2 { 2 } else { 0 };
    if lowest > v0.saturating_add(slack) {
        return Ok(is_padic_square(&c[0], p));
    }
    let linear = tail(1);
    if (2..c.len()).all(|i| tail(i) > linear) && v0 >= linear {
        return Ok(true);
    }
    let pk = Int::from(p).pow(k);
    for j in 0..p {
        let x = x0 + &pk * j;
        if ball_has_square(poly, p, &x, k + 1, depth + 1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `N^2 = d M^4 + a M^2 e^2 + c e^4` has a nontrivial point over `Q_p`.
pub fn quartic_locally_solvable(d: &Int, a: &Int, c: &Int, p: u64) -> Result<bool> {
    let zero = Int::zero();
    // e a unit: x = M/e in Z_p
    let forward = [c.clone(), zero.clone(), a.clone(), zero.clone(), d.clone()];
    if ball_has_square(&forward, p, &zero, 0, 0)? {
        return Ok(true);
    }
    // p | e, M a unit: y = e/M in p Z_p
    let reversed = [d.clone(), zero.clone(), a.clone(), zero, c.clone()];
    ball_has_square(&reversed, p, &Int::zero(), 1, 0)
}

/// Real points on `N^2 = d M^4 + a M^2 e^2 + c e^4`.
pub fn quartic_real_solvable(d: &Int, a: &Int, c: &Int) -> bool {
    d.is_positive() || c.is_positive() || (a.is_positive() && a * a - 4 * d * c >= Int::zero())
}

fn squarefree_divisors(n: &Int) -> Result<(Vec<Int>, Vec<u64>)> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::FactorizationFailed(n.to_string()))?;
    let primes: Vec<u64> = factorize(m).primes().collect();
    let mut ds = vec![Int::one()];
    for &q in &primes {
        let len = ds.len();
        for i in 0..len {
            let x = &ds[i] * q;
            ds.push(x);
        }
    }
    let neg: Vec<Int> = ds.iter().map(|x| -x).collect();
    ds.extend(neg);
    Ok((ds, primes))
}

fn selmer_size(a: &Int, b: &Int, places: &[u64]) -> Result<u64> {
    let (ds, _) = squarefree_divisors(b)?;
    let mut count = 0u64;
    for d in &ds {
        let c = b / d;
        if !quartic_real_solvable(d, a, &c) {
            continue;
        }
        let mut ok = true;
        for &p in places {
            if !quartic_locally_solvable(d, a, &c, p)? {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Selmer sizes of both isogenies and the resulting rank bound for
/// `y^2 = x^3 + a x^2 + b x`.
pub fn two_isogeny_descent(a: &Int, b: &Int) -> Result<DescentResult> {
    let bp = a * a - 4u32 * b;
    if b.is_zero() || bp.is_zero() {
        return Err(Error::SingularModel);
    }
    let (_, pb) = squarefree_divisors(b)?;
    let (_, pbp) = squarefree_divisors(&bp)?;
    let mut places: Vec<u64> = std::iter::once(2).chain(pb).chain(pbp).collect();
    places.sort_unstable();
    places.dedup();
    let s = selmer_size(a, b, &places)?;
    let s_hat = selmer_size(&(-2 * a), &bp, &places)?;
    debug_assert!(s.is_power_of_two() && s_hat.is_power_of_two());
    let log = (s * s_hat).trailing_zeros();
    Ok(DescentResult {
        selmer_phi_size: s,
        selmer_phihat_size: s_hat,
        rank_bound: log.saturating_sub(2),
    })
}

/// Descent on `y^2 = x^3 + m x^2 - x` with `m = 1 (mod 4)` and `m^2 + 4`
/// prime.
pub fn descent_rank_bound(m: &Int) -> Result<DescentResult> {
    if !modp(m, 4).is_one() {
        return Err(Error::Precondition(format!("m = {m} is not 1 mod 4")));
    }
    let p = m * m + 4;
    if !is_prime_int(&p)? {
        return Err(Error::Precondition(format!("m^2 + 4 = {p} is not prime")));
    }
    two_isogeny_descent(m, &-Int::one())
}

/// The family parameters `m = 1 (mod 4)` with `m^2 + 4` prime and below
/// `limit`.
pub fn descent_family(limit: u64) -> Vec<i64> {
    let mmax = (limit as f64).sqrt() as i64 + 1;
    (-mmax..=mmax)
        .filter(|m| m.rem_euclid(4) == 1)
        .filter(|m| {
            let p = (m * m) as u64 + 4;
            p < limit && crate::arith::is_prime(p)
        })
        .collect()
}
