//! The acceptance suite: one check per criterion, each with a fast scope
//! (reduced bounds) and a full scope.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, int, is_prime, primes_up_to, Int, Rat};
use crate::curves::descent::descent_family;
use crate::curves::{
    conductor, descent_rank_bound, four_p_search, invariants, neumann_setzer_search, pq_search,
    sixteen_pm_one_solve, two_p_search, z2z4_pq_search, FamilyParams, SixteenSolution,
    WeierstrassModel,
};
use crate::error::Result;
use crate::eta::{
    class_order, class_order_with, closed_form_order, divisor_of_eta_vector, is_supported_shape, lambda_map,
    EtaExponentVector, TableShape,
};
use crate::hecke::{atkin_lehner_matrix, obstruction_witness, verify_newness, SignAssignment};
use crate::level::{CuspDivisor, Level};
use crate::parse::parse_divisor;
use crate::screen::{classify_elliptic, REGRESSION_CONDUCTORS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Fast,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Wall time; left out of serialized output so reports stay
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = if self.id == 0 {
            "extra       ".to_string()
        } else {
            format!("criterion {:>2}", self.id)
        };
        write!(
            f,
            "{label} {} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Criteria that fail on their own terms. Criterion 3: at `N = 2p` with
/// `p = 1 (mod 16)` the class identity for `T_2` in the `b_2 = +1` case does
/// not hold, because `u = P_2 (x) ...` has twice the order of `v`.
pub const KNOWN_FAILURES: &[u8] = &[3];

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "order table"),
    (2, "lambda consistency"),
    (3, "newness identities"),
    (4, "witness evenness"),
    (5, "classification regression"),
    (6, "family reproduction"),
    (7, "diophantine uniqueness"),
    (8, "descent sweep"),
    (9, "z2 x z4 pq search"),
    (10, "conductor spot checks"),
];

struct Bounds {
    prime_row: u64,
    table: u64,
    lambda: u64,
    newness: u64,
    witness_odd: u64,
    witness_even: u64,
    neumann_setzer: u64,
    two_p: u64,
    four_p: u64,
    pq: u64,
    sixteen: u64,
    descent: u64,
}

fn bounds(scope: Scope) -> Bounds {
    match scope {
        Scope::Full => Bounds {
            prime_row: 1000,
            table: 5000,
            lambda: 500,
            newness: 3000,
            witness_odd: 100_000,
            witness_even: 10_000,
            neumann_setzer: 1_000_000,
            two_p: 1_000,
            four_p: 1_000,
            pq: 1 << 40,
            sixteen: 1_000_000_000_000,
            descent: 10_000,
        },
        Scope::Fast => Bounds {
            prime_row: 300,
            table: 1000,
            lambda: 150,
            newness: 600,
            witness_odd: 5_000,
            witness_even: 2_000,
            neumann_setzer: 100_000,
            two_p: 1_000,
            four_p: 1_000,
            pq: 1 << 24,
            sixteen: 100_000_000,
            descent: 2_000,
        },
    }
}

pub fn run_all(scope: Scope) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, scope)).collect()
}

/// Runs one criterion; `id` outside 1..=10 panics.
pub fn run_criterion(id: u8, scope: Scope) -> CriterionReport {
    let b = bounds(scope);
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .expect("criterion id in 1..=10");
    let start = Instant::now();
    let outcome = match id {
        1 => order_table(&b),
        2 => lambda_consistency(&b),
        3 => newness(&b),
        4 => witness_evenness(&b),
        5 => regression(),
        6 => families(&b),
        7 => diophantine(&b),
        8 => descent(&b),
        9 => z2z4(),
        _ => spot_checks(),
    };
    let (passed, detail) = match outcome {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

type Outcome = Result<(bool, String)>;

fn sign_vectors(k: usize) -> impl Iterator<Item = Vec<i8>> {
    (0u32..1 << k).map(move |mask| {
        (0..k)
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect()
    })
}

/// Odd squarefree `M` with exactly `t` prime factors and `mult * M < limit`.
fn odd_squarefree(limit: u64, mult: u64, t: std::ops::RangeInclusive<usize>) -> Vec<Vec<u64>> {
    (3..limit.div_ceil(mult))
        .step_by(2)
        .filter_map(|m| {
            let f = factorize(m);
            (f.is_squarefree() && t.contains(&f.len())).then(|| f.primes().collect())
        })
        .collect()
}

fn order_table(b: &Bounds) -> Outcome {
    let mut shapes: Vec<TableShape> = primes_up_to(b.prime_row - 1)
        .into_iter()
        .map(|p| TableShape::Prime { p })
        .collect();
    for n in 2..b.table {
        let f = factorize(n);
        if f.is_squarefree() && (2..=3).contains(&f.len()) {
            let primes: Vec<u64> = f.primes().collect();
            for signs in sign_vectors(primes.len()).filter(|s| s.contains(&-1)) {
                shapes.push(TableShape::Squarefree {
                    primes: primes.clone(),
                    signs,
                });
            }
        }
    }
    for p in primes_up_to((b.table - 1) / 4).into_iter().filter(|&p| p > 2) {
        shapes.push(TableShape::FourP { p });
    }
    for primes in odd_squarefree(b.table, 4, 2..=usize::MAX) {
        for signs in sign_vectors(primes.len()).filter(|s| s.contains(&-1)) {
            shapes.push(TableShape::FourSquarefree {
                primes: primes.clone(),
                signs,
            });
        }
    }
    for primes in odd_squarefree(b.table, 8, 1..=usize::MAX) {
        for signs in sign_vectors(primes.len()) {
            shapes.push(TableShape::EightSquarefree {
                primes: primes.clone(),
                signs,
            });
        }
    }
    let mismatches: Vec<String> = shapes
        .par_iter()
        .map(|s| -> Result<Option<String>> {
            let computed = class_order(&s.divisor()?)?.order;
            let closed = closed_form_order(s)?;
            Ok((computed != closed).then(|| format!("{s:?}: {computed} vs {closed}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((
        mismatches.is_empty(),
        format!(
            "{} table elements, {} mismatches{}",
            shapes.len(),
            mismatches.len(),
            first(&mismatches)
        ),
    ))
}

fn first(xs: &[String]) -> String {
    xs.first().map(|x| format!("; first: {x}")).unwrap_or_default()
}

fn lambda_consistency(b: &Bounds) -> Outcome {
    let levels: Vec<u64> = (2..=b.lambda).filter(|&n| is_supported_shape(n)).collect();
    let bad: Vec<String> = levels
        .par_iter()
        .map(|&n| -> Result<Option<String>> {
            let level = Arc::new(Level::new(n)?);
            let lam = lambda_map(&level)?;
            for i in 0..level.dimension() {
                let mut r = vec![Rat::zero(); level.dimension()];
                r[i] = Rat::from_integer(Int::from(1));
                let e = EtaExponentVector::from_dense(&level, r.clone())?;
                let back = lam.apply(&divisor_of_eta_vector(&e)?)?;
                if back.dense() != &r[..] {
                    return Ok(Some(format!("N={n} column {i}")));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((
        bad.is_empty(),
        format!("{} levels, {} failures{}", levels.len(), bad.len(), first(&bad)),
    ))
}

/// Levels `N = 2p` with `p = 1 (mod 16)` prime.
pub fn is_known_newness_exception(n: u64, prime: u64) -> bool {
    prime == 2 && n % 4 == 2 && is_prime(n / 2) && (n / 2) % 16 == 1
}

fn newness(b: &Bounds) -> Outcome {
    let levels: Vec<u64> = (2..b.newness)
        .filter(|&n| {
            let a = n.trailing_zeros();
            a <= 3 && factorize(n >> a).is_squarefree()
        })
        .collect();
    // (N, elements, failing checks as (prime, vector identity held))
    let results: Vec<(u64, usize, Vec<(u64, bool)>)> = levels
        .par_iter()
        .map(|&n| {
            let r = verify_newness(&Arc::new(Level::new(n)?))?;
            let failing = r
                .cases
                .iter()
                .flat_map(|c| &c.checks)
                .filter(|k| !k.vector_holds || k.class_holds == Some(false))
                .map(|k| (k.prime, k.vector_holds))
                .collect();
            Ok((n, r.cases.len(), failing))
        })
        .collect::<Result<_>>()?;
    let cases: usize = results.iter().map(|r| r.1).sum();
    let failing: Vec<(u64, u64, bool)> = results
        .iter()
        .flat_map(|(n, _, f)| f.iter().map(move |&(p, v)| (*n, p, v)))
        .collect();
    let failing_levels: BTreeSet<u64> = failing.iter().map(|f| f.0).collect();
    let explained = failing
        .iter()
        .all(|&(n, p, vector)| vector && is_known_newness_exception(n, p));
    let shown: Vec<String> = failing_levels.iter().take(8).map(u64::to_string).collect();
    let detail = format!(
        "{} levels, {} elements, {} failing identities at N in {{{}{}}}; {}",
        levels.len(),
        cases,
        failing.len(),
        shown.join(", "),
        if failing_levels.len() > 8 { ", ..." } else { "" },
        if failing.is_empty() {
            "all identities hold"
        } else if explained {
            "every failure is the T_2 class identity at N = 2p, p = 1 mod 16"
        } else {
            "unexplained failures present"
        }
    );
    Ok((failing.is_empty(), detail))
}

fn witness_evenness(b: &Bounds) -> Outcome {
    let mut levels: Vec<u64> = odd_squarefree(b.witness_odd, 1, 3..=3)
        .into_iter()
        .map(|ps| ps.iter().product())
        .collect();
    for mult in [4u64, 8] {
        levels.extend(
            odd_squarefree(b.witness_even, mult, 2..=usize::MAX)
                .into_iter()
                .map(|ps| mult * ps.iter().product::<u64>()),
        );
    }
    let results: Vec<(usize, Vec<String>)> = levels
        .par_iter()
        .map(|&n| {
            let level = Arc::new(Level::new(n)?);
            let mut odd = Vec::new();
            let valid = SignAssignment::all_valid(&level);
            for s in &valid {
                let w = obstruction_witness(&level, s)?;
                if w.order.is_odd() {
                    odd.push(format!("N={n} signs {s}: order {}", w.order));
                }
            }
            Ok((valid.len(), odd))
        })
        .collect::<Result<_>>()?;
    let assignments: usize = results.iter().map(|r| r.0).sum();
    let odd: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    Ok((
        odd.is_empty() && assignments > 0,
        format!(
            "{} levels, {} sign assignments, {} odd orders{}",
            levels.len(),
            assignments,
            odd.len(),
            first(&odd)
        ),
    ))
}

fn regression() -> Outcome {
    let wrong: Vec<String> = REGRESSION_CONDUCTORS
        .iter()
        .filter(|(n, expected)| classify_elliptic(*n).admissible != *expected)
        .map(|(n, _)| n.to_string())
        .collect();
    Ok((
        wrong.is_empty(),
        format!(
            "{} conductors, {} mismatches{}",
            REGRESSION_CONDUCTORS.len(),
            wrong.len(),
            first(&wrong)
        ),
    ))
}

fn families(b: &Bounds) -> Outcome {
    let mut problems = Vec::new();
    let two_p = two_p_search(b.two_p)?;
    for (p, n) in [(7u64, 14u64), (23, 46)] {
        let hit = two_p.iter().any(|c| {
            matches!(c.params, FamilyParams::TwoP { p: q, .. } if q == p) && c.n == n && c.verified
        });
        if !hit {
            problems.push(format!("two_p misses p={p}"));
        }
    }
    let four_p = four_p_search(b.four_p)?;
    for n in [20u64, 116] {
        if !four_p.iter().any(|c| c.n == n && c.verified) {
            problems.push(format!("four_p misses N={n}"));
        }
    }
    let ns = neumann_setzer_search(b.neumann_setzer)?;
    let ns_n: BTreeSet<u64> = ns.iter().map(|c| c.n).collect();
    if !(ns_n.contains(&73) && ns_n.contains(&89)) || ns_n.contains(&185) {
        problems.push("neumann_setzer membership".into());
    }
    let pq = pq_search(b.pq)?;
    for (t, n) in [((19, 3, 1, 1), 57u64), ((3, 11, 3, 1), 33), ((59, 43, 1, 1), 2537)] {
        let want = FamilyParams::PQ {
            p: t.0,
            q: t.1,
            r: t.2,
            s: t.3,
        };
        if !pq.iter().any(|c| c.params == want && c.n == n) {
            problems.push(format!("pq misses {t:?}"));
        }
    }
    let all: Vec<_> = two_p.iter().chain(&four_p).chain(&ns).chain(&pq).collect();
    let unverified = all.iter().filter(|c| !c.verified).count();
    if unverified > 0 {
        problems.push(format!("{unverified} unverified candidates"));
    }
    Ok((
        problems.is_empty(),
        format!(
            "two_p {}, four_p {}, neumann_setzer {}, pq {} candidates; {}",
            two_p.len(),
            four_p.len(),
            ns.len(),
            pq.len(),
            if problems.is_empty() {
                "all conductor-verified".to_string()
            } else {
                problems.join("; ")
            }
        ),
    ))
}

fn diophantine(b: &Bounds) -> Outcome {
    let sols = sixteen_pm_one_solve(b.sixteen)?;
    let expected = vec![SixteenSolution {
        q: 3,
        s: 4,
        p: 5,
        r: 1,
        sign: 1,
    }];
    let minus = sols.iter().filter(|s| s.sign < 0).count();
    Ok((
        sols == expected && minus == 0,
        format!("{} solutions up to {}, {} in the -1 branch", sols.len(), b.sixteen, minus),
    ))
}

fn descent(b: &Bounds) -> Outcome {
    let ms = descent_family(b.descent);
    let bad: Vec<String> = ms
        .par_iter()
        .map(|&m| {
            let r = descent_rank_bound(&int(m))?;
            let ok = (r.selmer_phi_size, r.selmer_phihat_size, r.rank_bound) == (2, 2, 0);
            Ok((!ok).then(|| format!("m={m}: {r:?}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((
        bad.is_empty() && !ms.is_empty(),
        format!("{} family members, {} deviations{}", ms.len(), bad.len(), first(&bad)),
    ))
}

fn z2z4() -> Outcome {
    let ns: BTreeSet<u64> = z2z4_pq_search(100)?.iter().map(|h| h.n).collect();
    Ok((ns == BTreeSet::from([15, 21]), format!("conductors {ns:?}")))
}

/// The pinned models with their discriminants and conductors (PARI).
pub const SPOT_MODELS: [([i64; 5], i64, u64); 5] = [
    ([1, -9, 0, 19, 0], 3249, 57),
    ([1, -3, 0, 2, 0], -28, 14),
    ([0, 1, 0, -1, 0], 80, 20),
    ([1, 11, 0, 32, 0], -23552, 46),
    ([0, 5, 0, -1, 0], 464, 116),
];

fn spot_checks() -> Outcome {
    let mut wrong = Vec::new();
    for (a, disc, n) in SPOT_MODELS {
        let m = WeierstrassModel::from_i64(a);
        let d = invariants(&m)?.discriminant;
        let got = conductor(&m)?.n;
        if d != int(disc) || got != n {
            wrong.push(format!("{a:?}: disc {d}, N {got}"));
        }
    }
    Ok((wrong.is_empty(), format!("5 models, {} mismatches{}", wrong.len(), first(&wrong))))
}

/// Random spot checks driven by `seed`: display/parse round trips,
/// involutivity of `w_r`, `Lambda` inverting the eta divisor map, and
/// minimality of `class_order`.
pub fn run_property_sample(seed: u64, cases: usize) -> CriterionReport {
    let start = Instant::now();
    let outcome = property_sample(seed, cases);
    let (passed, detail) = match outcome {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id: 0,
        name: "seeded property sample",
        passed,
        detail: format!("seed {seed}: {detail}"),
        elapsed: start.elapsed(),
    }
}

fn property_sample(seed: u64, cases: usize) -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..cases {
        let n = rng.gen_range(2..3000u64);
        let level = Arc::new(Level::new(n)?);
        let mut coeffs: Vec<Rat> = (0..level.dimension())
            .map(|_| Rat::from_integer(rng.gen_range(-5..=5i64).into()))
            .collect();
        let deg: Rat = coeffs.iter().sum();
        coeffs[0] -= deg;
        let v = CuspDivisor::from_dense(&level, coeffs)?;

        if parse_divisor(&level, &v.to_string())? != v {
            bad.push(format!("N={n}: parse round trip of {v}"));
        }
        let primes = level.primes();
        let r: u64 = primes.iter().filter(|_| rng.gen_bool(0.5)).product();
        if r > 1 {
            let w = atkin_lehner_matrix(&level, r)?;
            if w.apply(&w.apply(&v)?)? != v {
                bad.push(format!("N={n}: w_{r} is not an involution"));
            }
        }
        let lam = lambda_map(&level)?;
        let e = lam.apply(&v)?;
        if divisor_of_eta_vector(&e)? != v {
            bad.push(format!("N={n}: divisor of Lambda v differs from v"));
        }
        if is_supported_shape(n) {
            let order = class_order_with(&v, &lam)?.order;
            if !class_order_with(&v.scale_int(order.clone()), &lam)?.order.is_one() {
                bad.push(format!("N={n}: {order} * ({v}) is not principal"));
            }
            let small = order.to_u64().ok_or_else(|| {
                crate::error::Error::FactorizationFailed(order.to_string())
            })?;
            for q in factorize(small).primes() {
                let part = v.scale_int(&order / q);
                if class_order_with(&part, &lam)?.order.is_one() {
                    bad.push(format!("N={n}: order of {v} is not minimal"));
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{cases} random divisors, {} failures{}", bad.len(), first(&bad)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_exception_predicate() {
        assert!(is_known_newness_exception(34, 2));
        assert!(is_known_newness_exception(194, 2));
        assert!(!is_known_newness_exception(34, 17));
        assert!(!is_known_newness_exception(46, 2));
        assert!(!is_known_newness_exception(68, 2));
    }

    #[test]
    fn property_sample_is_deterministic() {
        let a = run_property_sample(7, 40);
        assert!(a.passed, "{a}");
        assert_eq!(a.detail, run_property_sample(7, 40).detail);
    }

    #[test]
    fn quick_criteria() {
        for id in [5, 9, 10] {
            let r = run_criterion(id, Scope::Fast);
            assert!(r.passed, "{r}");
        }
    }
}
