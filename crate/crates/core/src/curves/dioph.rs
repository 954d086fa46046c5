//! Exponential Diophantine checks behind the `pq` and `8p` cases.

use serde::Serialize;

use crate::arith::{as_prime_power, is_prime, primes_up_to, Int};
use crate::error::Result;
use crate::screen::EXCEPTIONAL_CONDUCTORS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SixteenSolution {
    pub q: u64,
    pub s: u32,
    pub p: u64,
    pub r: u32,
    /// `q^s - 16 p^r`.
    pub sign: i8,
}

/// Residues of `q^s` modulo 16 for `q = 3 (mod 8)`, indexed by
/// `(q mod 16 == 11, s mod 4)`.
const POW_MOD16: [[u64; 4]; 2] = [[1, 3, 9, 11], [1, 11, 9, 3]];

/// Sign `±1` with `q^s - 16 p^r = ±1` possible modulo 16, if any.
pub fn sixteen_residue_sign(q: u64, s: u32) -> Option<i8> {
    let row = usize::from(q % 16 == 11);
    match POW_MOD16[row][(s % 4) as usize] {
        1 => Some(1),
        15 => Some(-1),
        _ => None,
    }
}

/// Solutions of `q^s - 16 p^r = ±1` with `q = 3 (mod 8)` prime, `p` prime
/// and `q^s <= bound`. Only `s = 0 (mod 4)` with sign `+1` survives the
/// residue table, so `q <= bound^(1/4)`.
pub fn sixteen_pm_one_solve(bound: u64) -> Result<Vec<SixteenSolution>> {
    let mut out = Vec::new();
    let qmax = (bound as f64).powf(0.25) as u64 + 2;
    for q in primes_up_to(qmax).into_iter().filter(|q| q % 8 == 3) {
        let mut s = 1u32;
        let mut qs = q as u128;
        while qs <= bound as u128 {
            if let Some(sign) = sixteen_residue_sign(q, s) {
                let rest = if sign > 0 { qs - 1 } else { qs + 1 };
                if rest % 16 == 0 {
                    if let Some((p, r)) = as_prime_power(&Int::from(rest / 16))? {
                        out.push(SixteenSolution { q, s, p, r, sign });
                    }
                }
            }
            s += 1;
            qs *= q as u128;
        }
    }
    out.sort();
    Ok(out)
}

/// Exhaustive version of [`sixteen_pm_one_solve`] over every `q <= bound`
/// and both signs, without the residue table.
pub fn sixteen_pm_one_brute(bound: u64) -> Result<Vec<SixteenSolution>> {
    let mut out = Vec::new();
    for q in primes_up_to(bound).into_iter().filter(|q| q % 8 == 3) {
        let mut s = 1u32;
        let mut qs = q as u128;
        while qs <= bound as u128 {
            for sign in [1i8, -1] {
                let rest = if sign > 0 { qs - 1 } else { qs + 1 };
                if rest % 16 == 0 {
                    if let Some((p, r)) = as_prime_power(&Int::from(rest / 16))? {
                        out.push(SixteenSolution { q, s, p, r, sign });
                    }
                }
            }
            s += 1;
            qs *= q as u128;
        }
    }
    out.sort();
    Ok(out)
}

/// Primes `p <= limit` for which conductor `8p` is not excluded. For
/// `p > 31` this needs `p = 3 (mod 4)` and `p` a square modulo 16, which
/// never happens; smaller `p` are settled by the exceptional list.
pub fn eight_p_candidates(limit: u64) -> Vec<u64> {
    primes_up_to(limit)
        .into_iter()
        .filter(|&p| is_prime(p) && p > 2)
        .filter(|&p| {
            if p <= 31 {
                EXCEPTIONAL_CONDUCTORS.contains(&(8 * p))
            } else {
                p % 4 == 3 && matches!(p % 16, 0 | 1 | 4 | 9)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unique_solution() {
        let sols = sixteen_pm_one_solve(1_000_000).unwrap();
        assert_eq!(
            sols,
            vec![SixteenSolution { q: 3, s: 4, p: 5, r: 1, sign: 1 }]
        );
        assert!(sols.iter().all(|s| s.sign == 1));
    }

    #[test]
    fn brute_force_agrees() {
        assert_eq!(
            sixteen_pm_one_brute(200_000).unwrap(),
            sixteen_pm_one_solve(200_000).unwrap()
        );
    }

    #[test]
    fn residue_table() {
        assert_eq!(sixteen_residue_sign(3, 2), None);
        assert_eq!(sixteen_residue_sign(3, 4), Some(1));
        assert_eq!(sixteen_residue_sign(11, 8), Some(1));
        for q in [3u64, 11, 19, 43] {
            for s in 1..12 {
                let r = (q as u128).pow(s) % 16;
                let expected = match r {
                    1 => Some(1),
                    15 => Some(-1),
                    _ => None,
                };
                assert_eq!(sixteen_residue_sign(q, s), expected);
            }
        }
    }

    #[test]
    fn eight_p() {
        assert_eq!(eight_p_candidates(1_000_000), vec![3]);
        assert!(!eight_p_candidates(100).contains(&31));
    }
}
