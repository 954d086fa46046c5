//! Integral Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Int,
    pub a2: Int,
    pub a3: Int,
    pub a4: Int,
    pub a6: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: Int,
    pub b4: Int,
    pub b6: Int,
    pub b8: Int,
    pub c4: Int,
    pub c6: Int,
    pub discriminant: Int,
    pub j: Rat,
}

impl WeierstrassModel {
    pub fn new(a1: Int, a2: Int, a3: Int, a4: Int, a6: Int) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_i64(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(Int::from);
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn coefficients(&self) -> [&Int; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> (Int, Int, Int, Int) {
        let WeierstrassModel { a1, a2, a3, a4, a6 } = self;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> Int {
        let (b2, b4, b6, b8) = self.b_invariants();
        -&b2 * &b2 * &b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    /// Model after `x = x' + r`, `y = y' + s x' + t`.
    pub fn translate(&self, r: &Int, s: &Int, t: &Int) -> WeierstrassModel {
        let WeierstrassModel { a1, a2, a3, a4, a6 } = self;
        let rs = r * s;
        WeierstrassModel {
            a1: a1 + 2 * s,
            a2: a2 - s * a1 + 3 * r - s * s,
            a3: a3 + r * a1 + 2 * t,
            a4: a4 - s * a3 + 2 * r * a2 - (t + &rs) * a1 + 3 * r * r - 2 * s * t,
            a6: a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
        }
    }

    /// Divides `a_i` by `u^i`; the caller guarantees divisibility.
    pub fn scale_down(&self, u: &Int) -> WeierstrassModel {
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        WeierstrassModel {
            a1: &self.a1 / u,
            a2: &self.a2 / &u2,
            a3: &self.a3 / &u3,
            a4: &self.a4 / &u4,
            a6: &self.a6 / &u6,
        }
    }

    /// `[a1, a2, a3, a4, a6]` as JSON, numbers when they fit in `i64` and
    /// decimal strings otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("model serializes")
    }
}

impl Serialize for WeierstrassModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(5))?;
        for a in self.coefficients() {
            match a.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&a.to_string())?,
            }
        }
        seq.end()
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.coefficients();
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}]")
    }
}

/// Standard `b`, `c`, discriminant and `j` invariants.
pub fn invariants(m: &WeierstrassModel) -> Result<CurveInvariants> {
    let (b2, b4, b6, b8) = m.b_invariants();
    let discriminant = m.discriminant();
    if discriminant.is_zero() {
        return Err(Error::SingularModel);
    }
    let c4 = &b2 * &b2 - 24 * &b4;
    let c6 = -&b2 * &b2 * &b2 + 36 * &b2 * &b4 - 216 * &b6;
    let j = Rat::new(&c4 * &c4 * &c4, discriminant.clone());
    Ok(CurveInvariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        discriminant,
        j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    #[test]
    fn discriminant_examples() {
        let m = WeierstrassModel::from_i64([1, -9, 0, 19, 0]);
        let inv = invariants(&m).unwrap();
        assert_eq!(inv.discriminant, int(3249));
        assert_eq!((inv.b2.clone(), inv.b4.clone(), inv.b8.clone()), (int(-35), int(38), int(-361)));
        assert_eq!(inv.c4, int(313));
        let m = WeierstrassModel::from_i64([0, 1, 0, -1, 0]);
        assert_eq!(invariants(&m).unwrap().discriminant, int(80));
        let m = WeierstrassModel::from_i64([1, -3, 0, 2, 0]);
        assert_eq!(invariants(&m).unwrap().discriminant, int(-28));
        let m = WeierstrassModel::from_i64([0, 0, 0, 0, 0]);
        assert_eq!(invariants(&m), Err(Error::SingularModel));
    }

    #[test]
    fn json_form() {
        let m = WeierstrassModel::from_i64([1, -3, 0, 2, 0]);
        assert_eq!(m.to_json(), serde_json::json!([1, -3, 0, 2, 0]));
        let big = WeierstrassModel::new(int(0), int(0), int(0), Int::from(1u128 << 70), int(1));
        assert_eq!(big.to_json()[3], serde_json::json!((1u128 << 70).to_string()));
    }

    proptest! {
        #[test]
        fn invariant_identities(a in proptest::array::uniform5(-1000i64..1000)) {
            let m = WeierstrassModel::from_i64(a);
            let (b2, b4, b6, b8) = m.b_invariants();
            prop_assert_eq!(4 * &b8, &b2 * &b6 - &b4 * &b4);
            let d = m.discriminant();
            let c4 = &b2 * &b2 - 24 * &b4;
            let c6 = -&b2 * &b2 * &b2 + 36 * &b2 * &b4 - 216 * &b6;
            prop_assert_eq!(1728 * &d, &c4 * &c4 * &c4 - &c6 * &c6);
        }

        #[test]
        fn translation_preserves_discriminant(
            a in proptest::array::uniform5(-50i64..50),
            r in -20i64..20, s in -20i64..20, t in -20i64..20,
        ) {
            let m = WeierstrassModel::from_i64(a);
            let n = m.translate(&int(r), &int(s), &int(t));
            prop_assert_eq!(m.discriminant(), n.discriminant());
        }
    }
}
