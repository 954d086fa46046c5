//! Exact integer and rational helpers shared by the rest of the crate.
//!
//! Levels and search parameters fit in machine words and use `u64`;
//! anything that can grow (curve invariants, products of prime powers,
//! rational coefficients) uses [`Int`] / [`Rat`].

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: impl Into<Int>) -> Rat {
    Rat::from_integer(n.into())
}

/// Prime factorization `n = prod p^e` with strictly increasing primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn from_pairs(mut pairs: Vec<(u64, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        Factorization(pairs)
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Miller-Rabin with the first twelve primes as witnesses, which is
/// deterministic for every n < 3.3e24 and hence for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-precision input. Values at or above 2^64 are
/// rejected rather than answered probabilistically.
pub fn is_prime_int(n: &Int) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    match n.to_u64() {
        Some(v) => Ok(is_prime(v)),
        None => Err(Error::PrimalityOutOfRange(n.to_string())),
    }
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, m) = (2u64, 128u64);
    let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r <<= 1;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if r * r == n {
        split_into(r, out);
        split_into(r, out);
        return;
    }
    let d = (1..)
        .find_map(|c| pollard_brent(n, c))
        .expect("Pollard rho finds a factor of a composite u64");
    split_into(d, out);
    split_into(n / d, out);
}

/// Trial division by small primes, Pollard-Brent rho for the cofactor.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut n = n;
    let mut found: Vec<u64> = Vec::new();
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            found.push(p);
            n /= p;
        }
    }
    // wheel mod 30
    let mut p = 7u64;
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while p <= 1000 && p * p <= n {
        while n % p == 0 {
            found.push(p);
            n /= p;
        }
        p += steps[i];
        i = (i + 1) % steps.len();
    }
    if n > 1 {
        split_into(n, &mut found);
    }
    found.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for q in found {
        match pairs.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => pairs.push((q, 1)),
        }
    }
    Factorization(pairs)
}

/// Divisors of `n` in ascending order.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in f.pairs() {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Absolute value of the numerator of `x` in lowest terms.
pub fn num(x: &Rat) -> Result<Int> {
    if x.is_zero() {
        return Err(Error::NumOfZero);
    }
    // BigRational is always reduced.
    Ok(x.numer().abs())
}

/// Kronecker symbol (a | n) for n >= 1.
pub fn kronecker(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker requires n >= 1");
    let mut n = n;
    let mut result = 1i32;
    let tz = n.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= tz;
    }
    // Jacobi symbol (a | n), n odd.
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Largest `e` with `p^e | n`.
pub fn valuation(n: &Int, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = Int::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

pub fn valuation_u64(n: u64, p: u64) -> u32 {
    assert!(n != 0, "valuation of 0");
    let mut n = n;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Strip all factors `p` from `n`, returning `(e, n / p^e)`.
pub fn split_off(n: &Int, p: u64) -> (u32, Int) {
    debug_assert!(!n.is_zero());
    let p = Int::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return (e, n);
        }
        n = q;
        e += 1;
    }
}

pub fn is_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_rational_square(x: &Rat) -> bool {
    !x.is_negative() && is_square(x.numer()) && is_square(x.denom())
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// If `n = p^k` for a prime `p < 2^64` and `k >= 1`, returns `(p, k)`.
pub fn as_prime_power(n: &Int) -> Result<Option<(u64, u32)>> {
    if *n <= Int::one() {
        return Ok(None);
    }
    let bits = n.bits() as u32;
    for k in (1..=bits).rev() {
        let r = n.nth_root(k);
        if r.pow(k) == *n && is_prime_int(&r)? {
            return Ok(Some((r.to_u64().expect("checked by is_prime_int"), k)));
        }
    }
    Ok(None)
}

/// Sieve of Eratosthenes, primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_integral(x: &Rat) -> bool {
    x.is_integer()
}

/// Sign of an arbitrary-precision integer as -1, 0, 1.
pub fn signum(n: &Int) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `x mod m` in `[0, m)`.
pub fn modp(x: &Int, m: u64) -> u64 {
    x.mod_floor(&Int::from(m)).to_u64().expect("residue fits")
}

/// Serializes any `Display` value as a JSON string; used for big integers
/// and rationals in reports.
pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(57).pairs(), &[(3, 1), (19, 1)]);
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(2537).pairs(), trial_division(2537).as_slice());
        assert_eq!(factorize(2537).pairs(), &[(43, 1), (59, 1)]);
    }

    #[test]
    fn factorize_large_semiprime() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        let f = factorize(p * q);
        assert_eq!(f.pairs(), &[(q, 1), (p, 1)]);
        let f = factorize((1u64 << 61) - 1);
        assert_eq!(f.pairs(), &[((1u64 << 61) - 1, 1)]);
    }

    #[test]
    fn factorize_reconstructs_up_to_a_million() {
        for n in 1..=1_000_000u64 {
            let f = factorize(n);
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime), "{n}");
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(73));
        assert!(!is_prime(185));
        assert!(is_prime((1 << 61) - 1));
        // strong pseudoprimes to several small bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(!is_prime(0) && !is_prime(1) && is_prime(2));
    }

    #[test]
    fn mersenne_table() {
        let mersenne_prime_exponents = [2u32, 3, 5, 7, 13, 17, 19, 31, 61];
        for e in 2..64u32 {
            let m = (1u64 << e) - 1;
            assert_eq!(is_prime(m), mersenne_prime_exponents.contains(&e), "2^{e}-1");
        }
    }

    #[test]
    fn primality_rejects_beyond_u64() {
        let big = Int::from(u64::MAX) + 2;
        assert!(matches!(
            is_prime_int(&big),
            Err(Error::PrimalityOutOfRange(_))
        ));
        assert_eq!(is_prime_int(&int(97)), Ok(true));
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(100_000);
        let from_mr: Vec<u64> = (0..=100_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, from_mr);
    }

    #[test]
    fn num_examples() {
        assert_eq!(num(&rat(10, 12)).unwrap(), int(5));
        assert_eq!(num(&rat(7, 1)).unwrap(), int(7));
        assert_eq!(num(&rat(-128, 24)).unwrap(), int(16));
        assert_eq!(num(&rat(0, 5)), Err(Error::NumOfZero));
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        for (p, s) in [(3u64, 2u32), (2, 5), (7, 3)] {
            assert_eq!(euler_phi(p.pow(s)), p.pow(s - 1) * (p - 1));
        }
        for n in 1..500u64 {
            let brute = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute);
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-2, 7), -1);
        assert_eq!(kronecker(-2, 3), 1);
        for n in 1..50 {
            assert_eq!(kronecker(1, n), 1);
        }
        assert_eq!(kronecker(3, 8), -1);
        assert_eq!(kronecker(2, 4), 0);
    }

    #[test]
    fn kronecker_matches_residue_enumeration() {
        for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
            let squares: std::collections::HashSet<u64> =
                (1..p).map(|x| x * x % p).collect();
            for a in -(p as i64)..=(p as i64) {
                let r = a.rem_euclid(p as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expected, "({a}|{p})");
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&int(-28), 2), Ok(2));
        assert_eq!(valuation(&int(3249), 19), Ok(2));
        assert_eq!(valuation(&int(80), 5), Ok(1));
        assert_eq!(valuation(&int(0), 5), Err(Error::ValuationOfZero));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(as_prime_power(&int(81)).unwrap(), Some((3, 4)));
        assert_eq!(as_prime_power(&int(5)).unwrap(), Some((5, 1)));
        assert_eq!(as_prime_power(&int(36)).unwrap(), None);
        assert_eq!(as_prime_power(&int(1)).unwrap(), None);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&factorize(36)), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(&factorize(1)), vec![1]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn num_is_reduced_numerator(a in -100_000i64..100_000, b in 1i64..100_000) {
                prop_assume!(a != 0);
                let g = a.unsigned_abs().gcd(&(b as u64));
                let x = rat(a, b);
                prop_assert_eq!(num(&x).unwrap() * Int::from(b), Int::from(a.abs()) * Int::from(b as u64 / g));
            }
        }
    }
}
