//! Local reduction data and the conductor.
//!
//! Tate's algorithm runs in full at 2 and 3, where roots modulo `p` are
//! found by exhaustion. At `p >= 5` the minimal discriminant and the
//! reduction type are read off `v(c4)`, `v(c6)`, `v(Δ)`.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::model::{invariants, WeierstrassModel};
use crate::arith::{factorize, is_prime, split_off, Int};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    pub p: u64,
    pub reduction_type: ReductionType,
    pub conductor_exponent: u32,
    /// Valuation of the minimal discriminant.
    pub minimal_disc_valuation: u32,
    /// Kodaira symbol; only produced at 2 and 3.
    pub kodaira: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conductor {
    #[serde(rename = "N")]
    pub n: u64,
    pub local: Vec<ReductionData>,
}

fn v(x: &Int, p: u64) -> u32 {
    if x.is_zero() {
        u32::MAX
    } else {
        split_off(x, p).0
    }
}

fn divides(pk: &Int, x: &Int) -> bool {
    (x % pk).is_zero()
}

fn modp(x: &Int, p: &Int) -> Int {
    x.mod_floor(p)
}

fn data(p: u64, f: u32, disc_v: u32, kodaira: Option<String>) -> ReductionData {
    let reduction_type = match f {
        0 => ReductionType::Good,
        1 => ReductionType::Multiplicative,
        _ => ReductionType::Additive,
    };
    ReductionData {
        p,
        reduction_type,
        conductor_exponent: f,
        minimal_disc_valuation: disc_v,
        kodaira,
    }
}

/// Reduction data of `m` at the prime `p`.
pub fn local_data(m: &WeierstrassModel, p: u64) -> Result<ReductionData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    invariants(m)?;
    if p >= 5 {
        Ok(local_data_large(m, p))
    } else {
        Ok(tate(m, p))
    }
}

fn local_data_large(m: &WeierstrassModel, p: u64) -> ReductionData {
    let inv = invariants(m).expect("nonsingular");
    let (v4, v6, vd) = (v(&inv.c4, p), v(&inv.c6, p), v(&inv.discriminant, p));
    let k = (v4 / 4).min(v6 / 6).min(vd / 12);
    let vd = vd - 12 * k;
    let v4 = v4.saturating_sub(4 * k);
    let f = if vd == 0 {
        0
    } else if v4 == 0 {
        1
    } else {
        2
    };
    data(p, f, vd, None)
}

/// Root `x` of `poly` (ascending coefficients) modulo `p` at which every
/// listed derivative order also vanishes.
fn root_mod(poly: &[Int], p: u64, derivs: usize) -> Option<Int> {
    let pi = Int::from(p);
    (0..p).map(Int::from).find(|x| {
        (0..=derivs).all(|d| {
            let mut acc = Int::zero();
            for (i, c) in poly.iter().enumerate().skip(d).rev() {
                let fall: u64 = ((i - d + 1)..=i).map(|j| j as u64).product();
                acc = acc * x + c * Int::from(fall);
            }
            modp(&acc, &pi).is_zero()
        })
    })
}

fn tate(model: &WeierstrassModel, p: u64) -> ReductionData {
    let pi = Int::from(p);
    let pk = |k: u32| pi.pow(k);
    let zero = Int::zero();
    let mut e = model.clone();
    loop {
        let n = v(&e.discriminant(), p);
        if n == 0 {
            return data(p, 0, 0, Some("I0".into()));
        }
        // move a singular point of the reduction to (0, 0)
        let (x0, y0) = (0..p)
            .flat_map(|x| (0..p).map(move |y| (x, y)))
            .map(|(x, y)| (Int::from(x), Int::from(y)))
            .find(|(x, y)| {
                let f = y * y + &e.a1 * x * y + &e.a3 * y
                    - (x * x * x + &e.a2 * x * x + &e.a4 * x + &e.a6);
                let fx = &e.a1 * y - (3 * x * x + 2 * &e.a2 * x + &e.a4);
                let fy = 2 * y + &e.a1 * x + &e.a3;
                [f, fx, fy].iter().all(|g| modp(g, &pi).is_zero())
            })
            .expect("a model with p | Δ has a singular point mod p");
        e = e.translate(&x0, &zero, &y0);
        let (b2, _, b6, b8) = e.b_invariants();
        if !divides(&pi, &b2) {
            return data(p, 1, n, Some(format!("I{n}")));
        }
        if !divides(&pk(2), &e.a6) {
            return data(p, n, n, Some("II".into()));
        }
        if !divides(&pk(3), &b8) {
            return data(p, n - 1, n, Some("III".into()));
        }
        if !divides(&pk(3), &b6) {
            return data(p, n - 2, n, Some("IV".into()));
        }
        // now p | a1, a2; p^2 | a3, a4; p^3 | a6
        let shifted = (0..p)
            .flat_map(|s| (0..p).map(move |t| (s, t)))
            .map(|(s, t)| e.translate(&zero, &Int::from(s), &(Int::from(t) * &pi)))
            .find(|c| {
                divides(&pi, &c.a1)
                    && divides(&pi, &c.a2)
                    && divides(&pk(2), &c.a3)
                    && divides(&pk(2), &c.a4)
                    && divides(&pk(3), &c.a6)
            })
            .expect("a suitable (s, t) exists once p^3 | b6 and b8");
        e = shifted;
        let b = &e.a2 / &pi;
        let c = &e.a4 / pk(2);
        let d = &e.a6 / pk(3);
        let w = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d
            + 4 * &c * &c * &c;
        let x = 3 * &c - &b * &b;
        let cubic = [d.clone(), c.clone(), b.clone(), Int::one()];
        if !divides(&pi, &w) {
            return data(p, n - 4, n, Some("I0*".into()));
        }
        if !divides(&pi, &x) {
            // double root: move it to 0 and run the I_m* subprocedure
            let root = root_mod(&cubic, p, 1).expect("double root exists");
            e = e.translate(&(root * &pi), &zero, &zero);
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (pk(2), pk(2));
            loop {
                let a3t = &e.a3 / &my;
                let a6t = &e.a6 / (&mx * &my);
                if !divides(&pi, &(&a3t * &a3t + 4 * &a6t)) {
                    break;
                }
                let y0 = root_mod(&[-a6t, a3t, Int::one()], p, 1).expect("double root");
                e = e.translate(&zero, &zero, &(&my * y0));
                my *= &pi;
                iy += 1;
                let a2t = &e.a2 / &pi;
                let a4t = &e.a4 / (&pi * &mx);
                let a6t = &e.a6 / (&mx * &my);
                if !divides(&pi, &(&a4t * &a4t - 4 * &a2t * &a6t)) {
                    break;
                }
                let x0 = root_mod(&[a6t, a4t, a2t], p, 1).expect("double root");
                e = e.translate(&(&mx * x0), &zero, &zero);
                mx *= &pi;
                ix += 1;
            }
            let m = ix + iy - 5;
            return data(p, n - ix - iy + 1, n, Some(format!("I{m}*")));
        }
        // triple root
        let root = root_mod(&cubic, p, 2).expect("triple root exists");
        e = e.translate(&(root * &pi), &zero, &zero);
        let a3t = &e.a3 / pk(2);
        let a6t = &e.a6 / pk(4);
        if !divides(&pi, &(&a3t * &a3t + 4 * &a6t)) {
            return data(p, n - 6, n, Some("IV*".into()));
        }
        let y0 = root_mod(&[-a6t, a3t, Int::one()], p, 1).expect("double root");
        e = e.translate(&zero, &zero, &(pk(2) * y0));
        if !divides(&pk(4), &e.a4) {
            return data(p, n - 7, n, Some("III*".into()));
        }
        if !divides(&pk(6), &e.a6) {
            return data(p, n - 8, n, Some("II*".into()));
        }
        e = e.scale_down(&pi);
    }
}

/// Primes `q` with `q | n`: trial division up to `10^6`, then the cofactor
/// must be `1`, a prime below `2^64`, or a power of one.
fn discriminant_primes(d: &Int) -> Result<Vec<u64>> {
    let mut rest = d.abs();
    if let Some(r) = rest.to_u64() {
        return Ok(factorize(r).primes().collect());
    }
    let mut primes = Vec::new();
    for q in crate::arith::primes_up_to(1_000_000) {
        if rest.is_one() {
            break;
        }
        let (k, r) = split_off(&rest, q);
        if k > 0 {
            primes.push(q);
            rest = r;
        }
        if let Some(r) = rest.to_u64() {
            primes.extend(factorize(r).primes());
            rest = Int::one();
            break;
        }
    }
    if !rest.is_one() {
        match crate::arith::as_prime_power(&rest) {
            Ok(Some((q, _))) => primes.push(q),
            _ => return Err(Error::FactorizationFailed(d.to_string())),
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

fn assemble(m: &WeierstrassModel, primes: &[u64]) -> Result<Conductor> {
    let mut n = 1u64;
    let mut local = Vec::with_capacity(primes.len());
    for &q in primes {
        let r = local_data(m, q)?;
        for _ in 0..r.conductor_exponent {
            n = n
                .checked_mul(q)
                .ok_or_else(|| Error::FactorizationFailed("conductor exceeds 2^64".into()))?;
        }
        local.push(r);
    }
    Ok(Conductor { n, local })
}

/// Conductor of `m`, factoring the discriminant.
pub fn conductor(m: &WeierstrassModel) -> Result<Conductor> {
    let inv = invariants(m)?;
    let primes = discriminant_primes(&inv.discriminant)?;
    assemble(m, &primes)
}

/// Conductor of `m` when the primes of the discriminant are known to lie in
/// `support`; errors if they do not.
pub fn conductor_with_support(m: &WeierstrassModel, support: &[u64]) -> Result<Conductor> {
    let inv = invariants(m)?;
    let mut rest = inv.discriminant.abs();
    let mut primes: Vec<u64> = support.to_vec();
    primes.sort_unstable();
    primes.dedup();
    for &q in &primes {
        rest = split_off(&rest, q).1;
    }
    if !rest.is_one() {
        return Err(Error::Precondition(format!(
            "discriminant {} has primes outside {:?}",
            inv.discriminant, primes
        )));
    }
    let present: Vec<u64> = primes
        .into_iter()
        .filter(|&q| divides(&Int::from(q), &inv.discriminant))
        .collect();
    assemble(m, &present)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n_of(a: [i64; 5]) -> u64 {
        conductor(&WeierstrassModel::from_i64(a)).unwrap().n
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(n_of([1, -9, 0, 19, 0]), 57);
        assert_eq!(n_of([0, 1, 0, -1, 0]), 20);
        assert_eq!(n_of([1, -3, 0, 2, 0]), 14);
    }

    #[test]
    fn local_types() {
        let c = conductor(&WeierstrassModel::from_i64([0, 1, 0, -1, 0])).unwrap();
        assert_eq!(c.local[0].p, 2);
        assert_eq!(c.local[0].reduction_type, ReductionType::Additive);
        assert_eq!(c.local[0].conductor_exponent, 2);
        assert_eq!(c.local[1].reduction_type, ReductionType::Multiplicative);
        let c = conductor(&WeierstrassModel::from_i64([1, -9, 0, 19, 0])).unwrap();
        assert!(c.local.iter().all(|r| r.reduction_type == ReductionType::Multiplicative));
    }

    #[test]
    fn non_minimal_model_is_reduced() {
        // 11a scaled by u = 2 and by u = 3
        let m = WeierstrassModel::from_i64([0, -4, 8, -160, -1280]);
        assert_eq!(conductor(&m).unwrap().n, 11);
        let m = WeierstrassModel::from_i64([0, -9, 27, -810, -14580]);
        assert_eq!(conductor(&m).unwrap().n, 11);
    }

    #[test]
    fn support_mismatch() {
        let m = WeierstrassModel::from_i64([1, -9, 0, 19, 0]);
        assert!(conductor_with_support(&m, &[3]).is_err());
        assert_eq!(conductor_with_support(&m, &[3, 19, 5]).unwrap().n, 57);
    }
}
