//! Necessary conditions on the level of a modular abelian variety, or the
//! conductor of an elliptic curve, with odd congruence number.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::factorize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Prime,
    PrimePower,
    PQ,
    TwoP,
    FourP,
    EightP,
    TwoPower,
    CMException,
    Rejected,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub const ADMISSIBLE_MEANING: &str =
    "admissible means only: not excluded by the necessary conditions checked here";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    #[serde(rename = "N")]
    pub n: u64,
    pub admissible: bool,
    #[serde(rename = "case")]
    pub case_tag: CaseTag,
    pub reasons: Vec<String>,
    pub analytic_rank_note: String,
}

impl Verdict {
    fn admit(n: u64, tag: CaseTag, reason: String, note: &str) -> Verdict {
        Verdict {
            n,
            admissible: true,
            case_tag: tag,
            reasons: vec![reason, ADMISSIBLE_MEANING.to_string()],
            analytic_rank_note: note.to_string(),
        }
    }

    fn reject(n: u64, reason: String) -> Verdict {
        Verdict {
            n,
            admissible: false,
            case_tag: CaseTag::Rejected,
            reasons: vec![reason],
            analytic_rank_note: String::new(),
        }
    }
}

/// Prime factorization of `N` in the shape the screens dispatch on.
enum Shape {
    One,
    Prime(u64),
    /// `p^s` with `p` odd and `s >= 2`.
    OddPower(u64, u32),
    TwoPower(u32),
    /// `2^a p^s` with `p` odd and `a >= 1`.
    TwoTimes(u32, u64, u32),
    /// Two distinct odd primes to the first power.
    PQ(u64, u64),
    Other(usize),
}

fn shape(n: u64) -> Shape {
    let f = factorize(n);
    let pairs = f.pairs();
    match pairs {
        [] => Shape::One,
        [(p, 1)] => Shape::Prime(*p),
        [(2, s)] => Shape::TwoPower(*s),
        [(p, s)] => Shape::OddPower(*p, *s),
        [(2, a), (p, s)] => Shape::TwoTimes(*a, *p, *s),
        [(p, 1), (q, 1)] => Shape::PQ(*p, *q),
        _ => Shape::Other(pairs.len()),
    }
}

const CM_CAVEAT: &str = "shape allowed only for varieties with complex multiplication or inner twists";
const VARIETY_RANK_NOTE: &str =
    "informational: the analytic rank of such a variety is even (not used in the verdict)";

fn pq_admissible(p: u64, q: u64) -> bool {
    let pm3 = |x: u64| x % 8 == 3 || x % 8 == 5;
    (pm3(p) && q % 4 == 3) || (pm3(q) && p % 4 == 3)
}

/// Screen for levels of modular abelian varieties with odd congruence
/// number.
pub fn classify_conductor(n: u64) -> Verdict {
    use CaseTag::*;
    let note = VARIETY_RANK_NOTE;
    match shape(n) {
        Shape::One => Verdict::reject(n, "there are no such varieties of level 1".into()),
        Shape::Prime(p) => Verdict::admit(n, Prime, format!("N = {p} is prime"), note),
        Shape::OddPower(p, s) => {
            Verdict::admit(n, PrimePower, format!("N = {p}^{s}; {CM_CAVEAT}"), note)
        }
        Shape::TwoPower(s) => Verdict::admit(n, TwoPower, format!("N = 2^{s}; {CM_CAVEAT}"), note),
        Shape::TwoTimes(1, p, 1) => {
            if p % 16 == 7 {
                Verdict::admit(n, TwoP, format!("N = 2*{p} with {p} = 7 mod 16"), note)
            } else {
                Verdict::reject(n, format!("N = 2*{p} but {p} = {} mod 16, not 7", p % 16))
            }
        }
        Shape::TwoTimes(1, p, s) => Verdict::reject(
            n,
            format!("N = 2*{p}^{s}: 2 || N is only allowed with N = 2p"),
        ),
        Shape::TwoTimes(2, p, 1) => {
            if p % 8 == 5 {
                Verdict::admit(n, FourP, format!("N = 4*{p} with {p} = 5 mod 8"), note)
            } else {
                Verdict::reject(n, format!("N = 4*{p} but {p} = {} mod 8, not 5", p % 8))
            }
        }
        Shape::TwoTimes(3, p, 1) => {
            if p % 4 == 3 {
                Verdict::admit(n, EightP, format!("N = 8*{p} with {p} = 3 mod 4"), note)
            } else {
                Verdict::reject(n, format!("N = 8*{p} but {p} = 1 mod 4, not 3"))
            }
        }
        Shape::TwoTimes(a @ (2 | 3), p, s) => Verdict::admit(
            n,
            CMException,
            format!("N = {}*{p}^{s}; {CM_CAVEAT}", 1u64 << a),
            note,
        ),
        Shape::TwoTimes(a, p, s) => Verdict::reject(
            n,
            format!("N = 2^{a}*{p}^{s}: a power of 2 above 8 times an odd prime power"),
        ),
        Shape::PQ(p, q) => {
            if pq_admissible(p, q) {
                Verdict::admit(
                    n,
                    PQ,
                    format!("N = {p}*{q}: one prime is 3 or 5 mod 8 and the other 3 mod 4"),
                    note,
                )
            } else {
                Verdict::reject(
                    n,
                    format!(
                        "N = {p}*{q}: no labeling with p = 3 or 5 mod 8 and q = 3 mod 4 ({p} = {} mod 8, {q} = {} mod 8)",
                        p % 8,
                        q % 8
                    ),
                )
            }
        }
        Shape::Other(k) => {
            if k >= 3 {
                Verdict::reject(n, format!("{k} prime factors; at most two are allowed"))
            } else {
                Verdict::reject(n, "two odd primes, at least one to a power above 1".into())
            }
        }
    }
}

/// Conductors of the exceptional curves 11A, 15A, 17A, 19A, 21A, 24A, 27A,
/// 32A, 36A, 37B, 49A, 243B.
pub const EXCEPTIONAL_CONDUCTORS: [u64; 12] = [11, 15, 17, 19, 21, 24, 27, 32, 36, 37, 49, 243];

/// Screen for conductors of elliptic curves with odd congruence number.
/// Admits a subset of [`classify_conductor`].
pub fn classify_elliptic(n: u64) -> Verdict {
    use CaseTag::*;
    let base = classify_conductor(n);
    if !base.admissible {
        return base;
    }
    let prime_note = "informational: curves of prime conductor without 2-torsion have even analytic rank; all other cases have rank 0";
    let rank0 = "informational: every curve in this case has rank 0";
    let exceptional = EXCEPTIONAL_CONDUCTORS.contains(&n);
    match shape(n) {
        Shape::Prime(p) => {
            let mut reason = format!("N = {p} is prime");
            if exceptional {
                reason.push_str(" (conductor of an exceptional curve)");
            }
            Verdict::admit(n, Prime, reason, prime_note)
        }
        Shape::PQ(p, q) => {
            if p % 8 == 3 && q % 8 == 3 {
                Verdict::admit(n, PQ, format!("N = {p}*{q} with both primes 3 mod 8"), rank0)
            } else if exceptional {
                Verdict::admit(n, CMException, format!("N = {n} is an exceptional conductor"), rank0)
            } else {
                Verdict::reject(
                    n,
                    format!("N = {p}*{q}: both primes must be 3 mod 8 for an elliptic curve"),
                )
            }
        }
        Shape::TwoTimes(1, _, 1) | Shape::TwoTimes(2, _, 1) => Verdict {
            analytic_rank_note: rank0.into(),
            ..base
        },
        Shape::TwoTimes(3, p, 1) => {
            if exceptional {
                Verdict::admit(n, EightP, format!("N = 8*{p}, the only case is 24A"), rank0)
            } else {
                Verdict::reject(n, format!("N = 8*{p}: only 24 carries such a curve"))
            }
        }
        _ => {
            if exceptional {
                Verdict::admit(
                    n,
                    base.case_tag,
                    format!("N = {n} is the conductor of an exceptional CM curve"),
                    rank0,
                )
            } else {
                Verdict::reject(
                    n,
                    format!(
                        "N = {n} is not semistable and not one of the exceptional conductors 27, 32, 36, 49, 243"
                    ),
                )
            }
        }
    }
}

/// Conductors named by curve labels, with the expected elliptic verdict.
pub const REGRESSION_CONDUCTORS: [(u64, bool); 21] = [
    (11, true),
    (14, true),
    (15, true),
    (17, true),
    (19, true),
    (20, true),
    (21, true),
    (24, true),
    (26, false),
    (27, true),
    (32, true),
    (36, true),
    (37, true),
    (46, true),
    (49, true),
    (52, true),
    (73, true),
    (116, true),
    (243, true),
    (40, false),
    (105, false),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductor_examples() {
        let v = classify_conductor(14);
        assert!(v.admissible);
        assert_eq!(v.case_tag, CaseTag::TwoP);
        let v = classify_conductor(105);
        assert!(!v.admissible);
        assert!(v.reasons[0].contains("3 prime factors"));
        assert_eq!(classify_conductor(26).case_tag, CaseTag::Rejected);
        assert_eq!(classify_conductor(1).case_tag, CaseTag::Rejected);
        assert_eq!(classify_conductor(2).case_tag, CaseTag::Prime);
        assert_eq!(classify_conductor(16).case_tag, CaseTag::TwoPower);
        assert_eq!(classify_conductor(4 * 49).case_tag, CaseTag::CMException);
        assert_eq!(classify_conductor(2 * 49).case_tag, CaseTag::Rejected);
        assert_eq!(classify_conductor(16 * 3).case_tag, CaseTag::Rejected);
        assert_eq!(classify_conductor(9 * 5).case_tag, CaseTag::Rejected);
        assert_eq!(classify_conductor(40).case_tag, CaseTag::Rejected);
    }

    #[test]
    fn elliptic_examples() {
        let v = classify_elliptic(57);
        assert_eq!((v.admissible, v.case_tag), (true, CaseTag::PQ));
        let v = classify_elliptic(15);
        assert_eq!((v.admissible, v.case_tag), (true, CaseTag::CMException));
        let v = classify_elliptic(40);
        assert!(!v.admissible);
        assert!(!v.reasons.is_empty());
        assert_eq!(classify_elliptic(24).case_tag, CaseTag::EightP);
        assert_eq!(classify_elliptic(56).case_tag, CaseTag::Rejected);
        assert_eq!(classify_elliptic(35).case_tag, CaseTag::Rejected);
        assert_eq!(classify_elliptic(9).case_tag, CaseTag::Rejected);
        assert_eq!(classify_elliptic(243).case_tag, CaseTag::PrimePower);
        assert_eq!(classify_elliptic(32).case_tag, CaseTag::TwoPower);
        assert_eq!(classify_elliptic(36).case_tag, CaseTag::CMException);
    }

    #[test]
    fn regression_list() {
        for (n, expected) in REGRESSION_CONDUCTORS {
            let v = classify_elliptic(n);
            assert_eq!(v.admissible, expected, "N={n}: {:?}", v.reasons);
            assert_eq!(v.admissible, v.case_tag != CaseTag::Rejected);
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = serde_json::to_value(classify_conductor(14)).unwrap();
        assert_eq!(v["N"], 14);
        assert_eq!(v["admissible"], true);
        assert_eq!(v["case"], "TwoP");
        assert!(v["reasons"]
            .as_array()
            .unwrap()
            .iter()
            .any(|r| r == ADMISSIBLE_MEANING));
    }

    #[test]
    fn elliptic_refines_conductor() {
        for n in 1..20_000 {
            if classify_elliptic(n).admissible {
                assert!(classify_conductor(n).admissible, "N={n}");
            }
        }
    }

    #[test]
    fn three_primes_rejected() {
        for n in 1..100_000u64 {
            if factorize(n).len() >= 3 {
                assert!(!classify_conductor(n).admissible, "N={n}");
            }
        }
    }
}
