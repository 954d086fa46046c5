//! Explicit families of curves whose conductors pass the elliptic screen:
//! Neumann-Setzer curves of prime conductor, and families of conductor
//! `2p`, `4p` and `pq`.

use std::fmt;

use num_integer::Roots;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::model::WeierstrassModel;
use super::tate::conductor_with_support;
use crate::arith::{as_prime_power, exact_sqrt, is_prime, primes_up_to, Int};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    NeumannSetzer,
    TwoP,
    FourP,
    PQ,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum FamilyParams {
    NeumannSetzer { u: i64, p: u64 },
    TwoP { k: u32, m: String, p: u64, k_odd: bool },
    FourP { m: i64, p: u64 },
    PQ { p: u64, q: u64, r: u32, s: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCandidate {
    pub family: Family,
    pub params: FamilyParams,
    pub model: WeierstrassModel,
    #[serde(rename = "N")]
    pub n: u64,
    pub verified: bool,
}

fn candidate(
    family: Family,
    params: FamilyParams,
    model: WeierstrassModel,
    expected: u64,
    support: &[u64],
) -> Result<FamilyCandidate> {
    let n = conductor_with_support(&model, support)?.n;
    Ok(FamilyCandidate {
        family,
        params,
        model,
        n: expected,
        verified: n == expected,
    })
}

/// `y^2 + xy = x^3 - (u+1)/4 x^2 - x`, discriminant `u^2 + 64`.
pub fn neumann_setzer_model(u: i64) -> WeierstrassModel {
    WeierstrassModel::new(
        Int::one(),
        -((Int::from(u) + 1u32) / 4u32),
        Int::zero(),
        -Int::one(),
        Int::zero(),
    )
}

/// Primes `p = u^2 + 64 <= limit` with `u = 3 (mod 8)`, `u` of either sign.
pub fn neumann_setzer_search(limit: u64) -> Result<Vec<FamilyCandidate>> {
    let umax = limit.saturating_sub(64).sqrt() as i64;
    let mut out: Vec<FamilyCandidate> = (-umax..=umax)
        .into_par_iter()
        .filter(|u| u.rem_euclid(8) == 3)
        .filter_map(|u| {
            let p = (u * u) as u64 + 64;
            (p <= limit && is_prime(p)).then_some((u, p))
        })
        .map(|(u, p)| {
            candidate(
                Family::NeumannSetzer,
                FamilyParams::NeumannSetzer { u, p },
                neumann_setzer_model(u),
                p,
                &[p],
            )
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| (a.n, &a.params).cmp(&(b.n, &b.params)));
    Ok(out)
}

/// Whether `7 <= k < f(p)`, where `2^f(p) = 2^18 p^2` for `p < 2^96` and
/// `2^435 p^10` otherwise.
pub fn two_p_k_in_range(k: u32, p: &Int) -> bool {
    if k < 7 {
        return false;
    }
    let two_k = Int::one() << k as usize;
    if p.bits() <= 96 {
        two_k < (Int::one() << 18) * p * p
    } else {
        two_k < (Int::one() << 435) * p.pow(10)
    }
}

/// `y^2 + xy = x^3 + (m-1)/4 x^2 + 2^(k-6) x` with `m = 1 (mod 4)`;
/// discriminant `-2^(2k-12) (2^k - m^2)`.
pub fn two_p_model(k: u32, m: &Int) -> WeierstrassModel {
    WeierstrassModel::new(
        Int::one(),
        (m - 1) / 4,
        Int::zero(),
        Int::one() << (k - 6) as usize,
        Int::zero(),
    )
}

/// All `(k, m, p)` with `p <= limit` prime, `p = 7 (mod 16)`,
/// `p = 2^k - m^2` and `k` in the range of [`two_p_k_in_range`].
pub fn two_p_search(limit: u64) -> Result<Vec<FamilyCandidate>> {
    let primes: Vec<u64> = primes_up_to(limit)
        .into_iter()
        .filter(|p| p % 16 == 7)
        .collect();
    let mut out: Vec<FamilyCandidate> = primes
        .par_iter()
        .map(|&p| {
            let pi = Int::from(p);
            let mut found = Vec::new();
            let mut k = 7;
            while two_p_k_in_range(k, &pi) {
                let diff = (Int::one() << k as usize) - &pi;
                if let Some(root) = exact_sqrt(&diff) {
                    let m = if (&root % 4u32).is_one() { root } else { -root };
                    let params = FamilyParams::TwoP {
                        k,
                        m: m.to_string(),
                        p,
                        k_odd: k % 2 == 1,
                    };
                    found.push(candidate(
                        Family::TwoP,
                        params,
                        two_p_model(k, &m),
                        2 * p,
                        &[2, p],
                    )?);
                }
                k += 1;
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort_by(|a, b| (a.n, &a.params).cmp(&(b.n, &b.params)));
    Ok(out)
}

/// `y^2 = x^3 + m x^2 - x`, discriminant `16 (m^2 + 4)`.
pub fn four_p_model(m: i64) -> WeierstrassModel {
    WeierstrassModel::from_i64([0, m, 0, -1, 0])
}

/// Primes `p = m^2 + 4 <= limit` with `m = 1 (mod 4)`.
pub fn four_p_search(limit: u64) -> Result<Vec<FamilyCandidate>> {
    let mmax = limit.saturating_sub(4).sqrt() as i64;
    let mut out: Vec<FamilyCandidate> = (-mmax..=mmax)
        .into_par_iter()
        .filter(|m| m.rem_euclid(4) == 1)
        .filter_map(|m| {
            let p = (m * m) as u64 + 4;
            (p <= limit && is_prime(p)).then_some((m, p))
        })
        .map(|(m, p)| {
            candidate(
                Family::FourP,
                FamilyParams::FourP { m, p },
                four_p_model(m),
                4 * p,
                &[2, p],
            )
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| (a.n, &a.params).cmp(&(b.n, &b.params)));
    Ok(out)
}

/// `y^2 + xy = x^3 - (P+17)/4 x^2 + P x` with `P = p^r`; when
/// `P - 16 = q^s` the discriminant is `p^(2r) q^(2s)`.
pub fn pq_model(p_r: &Int) -> WeierstrassModel {
    WeierstrassModel::new(
        Int::one(),
        -((p_r + 17u32) / 4u32),
        Int::zero(),
        p_r.clone(),
        Int::zero(),
    )
}

/// Search limits for [`pq_search_with`]: `power_bound` caps `p^r` when
/// `r >= 3` or `s >= 3`; `pair_limit` caps `p = q + 16` when `r = s = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PqBounds {
    pub power_bound: u64,
    pub pair_limit: u64,
}

/// Default cap on `p` for the `r = s = 1` twin pairs.
pub const PQ_PAIR_LIMIT: u64 = 1_000_000;

/// [`pq_search_with`] with `power_bound = bound` and
/// `pair_limit = min(bound, PQ_PAIR_LIMIT)`.
pub fn pq_search(bound: u64) -> Result<Vec<FamilyCandidate>> {
    pq_search_with(PqBounds {
        power_bound: bound,
        pair_limit: bound.min(PQ_PAIR_LIMIT),
    })
}

/// All `(p, q, r, s)` with `p^r - q^s = 16`, `p = q = 3 (mod 8)` prime and
/// `r`, `s` odd, within `bounds`.
pub fn pq_search_with(bounds: PqBounds) -> Result<Vec<FamilyCandidate>> {
    let good = |x: u64| x % 8 == 3 && is_prime(x);
    let mut tuples: Vec<(u64, u64, u32, u32)> = Vec::new();

    // r = s = 1
    for q in primes_up_to(bounds.pair_limit.saturating_sub(16)) {
        if good(q) && good(q + 16) {
            tuples.push((q + 16, q, 1, 1));
        }
    }
    let root3 = bounds.power_bound.cbrt() + 1;
    let small = primes_up_to(root3);
    let odd_powers = |base: u64| {
        let mut v = Vec::new();
        let mut e = 3u32;
        let mut x = (base as u128).pow(3);
        while x <= bounds.power_bound as u128 {
            v.push((e, x as u64));
            e += 2;
            x *= (base as u128) * (base as u128);
        }
        v
    };
    let split = |n: u64| -> Result<Option<(u64, u32)>> { as_prime_power(&Int::from(n)) };
    for &p in small.iter().filter(|&&p| good(p)) {
        // r >= 3
        for (r, pr) in odd_powers(p) {
            if let Some((q, s)) = split(pr - 16)? {
                if s % 2 == 1 && good(q) {
                    tuples.push((p, q, r, s));
                }
            }
        }
    }
    for &q in small.iter().filter(|&&q| good(q)) {
        // s >= 3
        for (s, qs) in odd_powers(q) {
            if qs + 16 > bounds.power_bound {
                continue;
            }
            if let Some((p, r)) = split(qs + 16)? {
                if r % 2 == 1 && good(p) {
                    tuples.push((p, q, r, s));
                }
            }
        }
    }
    tuples.sort_unstable();
    tuples.dedup();
    let mut out: Vec<FamilyCandidate> = tuples
        .par_iter()
        .map(|&(p, q, r, s)| {
            let pr = Int::from(p).pow(r);
            candidate(
                Family::PQ,
                FamilyParams::PQ { p, q, r, s },
                pq_model(&pr),
                p * q,
                &[p, q],
            )
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| (a.n, &a.params).cmp(&(b.n, &b.params)));
    Ok(out)
}

/// Conductor for display when a candidate is not verified.
pub fn actual_conductor(c: &FamilyCandidate) -> Result<u64> {
    let support: Vec<u64> = crate::arith::factorize(c.n).primes().collect();
    Ok(conductor_with_support(&c.model, &support)?.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::model::invariants;
    use crate::curves::torsion::{two_torsion_structure, TwoTorsion};

    #[test]
    fn neumann_setzer_examples() {
        let c = neumann_setzer_search(1000).unwrap();
        let ps: Vec<u64> = c.iter().map(|c| c.n).collect();
        assert!(ps.contains(&73) && ps.contains(&89));
        assert!(!ps.contains(&185));
        assert!(c.iter().all(|c| c.verified));
        let u3 = c.iter().find(|c| c.n == 73).unwrap();
        assert_eq!(u3.params, FamilyParams::NeumannSetzer { u: 3, p: 73 });
        assert_eq!(invariants(&neumann_setzer_model(-13)).unwrap().discriminant, Int::from(233));
    }

    #[test]
    fn two_p_examples() {
        let c = two_p_search(110).unwrap();
        let first = &c[0];
        assert_eq!(first.model, WeierstrassModel::from_i64([1, -3, 0, 2, 0]));
        assert_eq!(first.n, 14);
        assert!(first.verified);
        let p23 = c.iter().find(|c| c.n == 46).unwrap();
        assert_eq!(p23.model, WeierstrassModel::from_i64([1, 11, 0, 32, 0]));
        assert!(c.iter().any(|c| c.n == 206));
        for x in &c {
            let FamilyParams::TwoP { p, .. } = x.params else { panic!() };
            assert_eq!(p % 16, 7);
        }
    }

    #[test]
    fn four_p_examples() {
        let c = four_p_search(200).unwrap();
        let ns: Vec<u64> = c.iter().map(|c| c.n).collect();
        assert_eq!(ns, vec![20, 52, 116, 212, 692]);
        assert!(c.iter().all(|c| c.verified));
        for x in &c {
            let FamilyParams::FourP { p, .. } = x.params else { panic!() };
            assert_eq!(p % 8, 5);
        }
    }

    #[test]
    fn pq_examples() {
        let c = pq_search(5000).unwrap();
        let find = |n: u64| c.iter().find(|c| c.n == n).unwrap();
        let c57 = find(57);
        assert_eq!(c57.params, FamilyParams::PQ { p: 19, q: 3, r: 1, s: 1 });
        assert_eq!(c57.model, WeierstrassModel::from_i64([1, -9, 0, 19, 0]));
        assert_eq!(find(33).params, FamilyParams::PQ { p: 3, q: 11, r: 3, s: 1 });
        assert_eq!(find(2537).params, FamilyParams::PQ { p: 59, q: 43, r: 1, s: 1 });
        for x in &c {
            assert!(x.verified, "{x:?}");
            assert_eq!(two_torsion_structure(&x.model), TwoTorsion::Z2xZ2);
        }
    }
}
