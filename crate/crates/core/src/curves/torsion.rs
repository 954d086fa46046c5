//! Rational 2-torsion, the reduction of order-4 points at 2, and the
//! search for `Z/2 x Z/4` curves of conductor `pq`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::model::{invariants, WeierstrassModel};
use super::tate::{conductor, conductor_with_support, ReductionType};
use crate::arith::{factorize, is_square, Int, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwoTorsion {
    Trivial,
    Z2,
    Z2xZ2,
}

/// Distinct integer roots of the monic cubic `X^3 + b X^2 + c X + d`,
/// ascending.
fn integer_roots(b: &Int, c: &Int, d: &Int) -> Vec<Int> {
    let f = |x: &Int| ((x + b) * x + c) * x + d;
    let bound = Int::one() + b.abs().max(c.abs()).max(d.abs());
    let mut cuts = vec![-&bound];
    let disc = b * b - 3u32 * c;
    if disc.is_positive() {
        let s = disc.sqrt();
        let s_ceil = if &s * &s == disc { s.clone() } else { &s + 1 };
        let three = Int::from(3);
        let lo = (-b - s_ceil).div_floor(&three);
        let hi = (-b + s).div_floor(&three);
        cuts.push(lo.clamp(-&bound, bound.clone()));
        cuts.push(hi.clamp(-&bound, bound.clone()));
    }
    cuts.push(bound.clone());
    // monotone on [cuts[i] (+1 for i > 0), cuts[i+1]]
    let mut roots = BTreeSet::new();
    for i in 0..cuts.len() - 1 {
        let mut lo = if i == 0 { cuts[0].clone() } else { &cuts[i] + 1 };
        let mut hi = cuts[i + 1].clone();
        if lo > hi {
            continue;
        }
        let increasing = f(&hi) >= f(&lo);
        // find the first point where f has passed zero
        while lo < hi {
            let mid = (&lo + &hi).div_floor(&Int::from(2));
            let past = if increasing {
                !f(&mid).is_negative()
            } else {
                !f(&mid).is_positive()
            };
            if past {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if f(&lo).is_zero() {
            roots.insert(lo);
        }
    }
    roots.into_iter().collect()
}

/// Roots of `X^3 + b2 X^2 + 8 b4 X + 16 b6`, where `X = 4x` for the
/// 2-torsion points `(x, y)`.
fn scaled_division_roots(m: &WeierstrassModel) -> Vec<Int> {
    let (b2, b4, b6, _) = m.b_invariants();
    integer_roots(&b2, &(8 * b4), &(16 * b6))
}

/// x-coordinates of the rational points of order 2.
pub fn two_torsion_x(m: &WeierstrassModel) -> Vec<Rat> {
    scaled_division_roots(m)
        .into_iter()
        .map(|x| Rat::new(x, Int::from(4)))
        .collect()
}

pub fn two_torsion_structure(m: &WeierstrassModel) -> TwoTorsion {
    match scaled_division_roots(m).len() {
        0 => TwoTorsion::Trivial,
        1 => TwoTorsion::Z2,
        _ => TwoTorsion::Z2xZ2,
    }
}

/// For a model `y^2 + xy = x^3 + a2 x^2 + a4 x` with good reduction at 2,
/// semistable, with full 2-torsion and a rational point of order 4:
/// whether every rational point of order 4 reduces to a point of order 4
/// in `E(F_2)`.
///
/// The 2-torsion sits at `x = 0, -4α, -β/4` with `b2 = 16α + β` and
/// `a4 = αβ`, `β` odd. A point `T` of order 2 is halvable iff `X(T) - X(T')`
/// is a square for both other `T'`; halves of `T` reduce to order 4 iff `T`
/// itself does not reduce to the identity, i.e. iff `x(T)` is 2-integral.
pub fn order4_reduction_check(m: &WeierstrassModel) -> Result<bool> {
    let pre = |s: &str| Err(Error::Precondition(s.to_string()));
    if !m.a1.is_one() || !m.a3.is_zero() || !m.a6.is_zero() {
        return pre("model must have the shape y^2 + xy = x^3 + a2 x^2 + a4 x");
    }
    let inv = invariants(m)?;
    if inv.discriminant.is_even() {
        return pre("reduction at 2 must be good (odd discriminant)");
    }
    let n = conductor(m)?;
    if n
        .local
        .iter()
        .any(|r| r.reduction_type == ReductionType::Additive)
    {
        return pre("the curve must be semistable");
    }
    let roots = scaled_division_roots(m);
    if roots.len() != 3 {
        return pre("full rational 2-torsion is required");
    }
    let halvable: Vec<&Int> = roots
        .iter()
        .filter(|e| {
            roots
                .iter()
                .filter(|o| o != e)
                .all(|o| is_square(&(*e - o)))
        })
        .collect();
    if halvable.is_empty() {
        return pre("no rational point of order 4");
    }
    let four = Int::from(4);
    Ok(halvable.iter().all(|e| (*e % &four).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Z2Z4Hit {
    pub a: i64,
    pub b: i64,
    pub model: WeierstrassModel,
    #[serde(rename = "N")]
    pub n: u64,
}

/// `y^2 + xy = x^3 + (16α + β - 1)/4 x^2 + αβ x` with `α = a^2`, `β = b^2`:
/// full 2-torsion with a point of order 4 over `(0, 0)` and discriminant
/// `a^4 b^4 (4a - b)^2 (4a + b)^2`.
pub fn z2z4_model(a: i64, b: i64) -> WeierstrassModel {
    let (alpha, beta) = (Int::from(a) * a, Int::from(b) * b);
    WeierstrassModel::new(
        Int::one(),
        (16 * &alpha + &beta - 1) / 4,
        Int::zero(),
        alpha * beta,
        Int::zero(),
    )
}

/// Odd coprime `a`, `b` with `|a|, |b| <= bound` and `4a + b > 1` for which
/// `a b (4a - b)(4a + b)` is supported on exactly two primes, with the
/// conductor of [`z2z4_model`].
pub fn z2z4_pq_search(bound: i64) -> Result<Vec<Z2Z4Hit>> {
    let mut hits = Vec::new();
    for a in (-bound..=bound).filter(|a| a % 2 != 0) {
        for b in (-bound..=bound).filter(|b| b % 2 != 0) {
            if a.gcd(&b) != 1 || 4 * a + b <= 1 {
                continue;
            }
            let mut support = BTreeSet::new();
            for x in [a, b, 4 * a - b, 4 * a + b] {
                support.extend(factorize(x.unsigned_abs()).primes());
            }
            if support.len() != 2 {
                continue;
            }
            let model = z2z4_model(a, b);
            let primes: Vec<u64> = support.into_iter().collect();
            let n = conductor_with_support(&model, &primes)?.n;
            hits.push(Z2Z4Hit { a, b, model, n });
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn model(a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_i64(a)
    }

    #[test]
    fn torsion_examples() {
        let m = model([1, -9, 0, 19, 0]);
        assert_eq!(two_torsion_structure(&m), TwoTorsion::Z2xZ2);
        assert_eq!(two_torsion_x(&m), vec![rat(0, 1), rat(19, 4), rat(4, 1)]
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect::<Vec<_>>());
        assert_eq!(two_torsion_structure(&model([0, 1, 0, -1, 0])), TwoTorsion::Z2);
        assert_eq!(two_torsion_structure(&model([0, 0, 0, -1, 0])), TwoTorsion::Z2xZ2);
        assert_eq!(two_torsion_structure(&model([0, -1, 1, -10, -20])), TwoTorsion::Trivial);
        assert_eq!(two_torsion_structure(&model([0, 0, 0, 0, 1])), TwoTorsion::Z2);
    }

    #[test]
    fn integer_roots_brute_force() {
        for b in -12i64..=12 {
            for c in -12i64..=12 {
                for d in -12i64..=12 {
                    let got = integer_roots(&int(b), &int(c), &int(d));
                    let expected: Vec<Int> = (-40i64..=40)
                        .filter(|x| x * x * x + b * x * x + c * x + d == 0)
                        .map(int)
                        .collect();
                    assert_eq!(got, expected, "b={b} c={c} d={d}");
                }
            }
        }
    }

    #[test]
    fn order4_examples() {
        // alpha = beta = 1
        assert!(order4_reduction_check(&z2z4_model(1, 1)).unwrap());
        assert_eq!(z2z4_model(1, 1), model([1, 4, 0, 1, 0]));
        assert!(matches!(
            order4_reduction_check(&model([0, 1, 0, -1, 0])),
            Err(Error::Precondition(_))
        ));
        // additive at 2 once the shape is right: 14a-like model has even Δ
        assert!(matches!(
            order4_reduction_check(&model([1, -3, 0, 2, 0])),
            Err(Error::Precondition(_))
        ));
        // Z2 x Z2 without a point of order 4
        assert!(matches!(
            order4_reduction_check(&model([1, -9, 0, 19, 0])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn order4_holds_on_the_search_family() {
        for hit in z2z4_pq_search(15).unwrap() {
            assert!(order4_reduction_check(&hit.model).unwrap(), "{:?}", hit);
        }
    }

    #[test]
    fn z2z4_search_examples() {
        let hits = z2z4_pq_search(100).unwrap();
        let ns: BTreeSet<u64> = hits.iter().map(|h| h.n).collect();
        assert_eq!(ns, BTreeSet::from([15, 21]));
        assert!(hits.iter().any(|h| (h.a, h.b, h.n) == (1, 1, 15)));
        assert!(hits.iter().any(|h| (h.a, h.b, h.n) == (1, 3, 21)));
    }
}
