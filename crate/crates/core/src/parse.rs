//! Text syntax for cuspidal divisors.
//!
//! ```text
//! input  := '0' | expr | tensor
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coef ['*']] 'P' ['_'] nat
//! coef   := nat ['/' nat]
//! tensor := '(' expr ')' ('x' '(' expr ')')*
//! ```
//!
//! In the tensor form the i-th factor lives on the i-th prime of N in
//! ascending order and may only mention `P1` and powers of that prime.
//! Whitespace is ignored everywhere.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::level::{tensor_compose, CuspDivisor, Level};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn nat(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }

    fn index(&mut self) -> Result<u64> {
        let start = self.pos;
        let n = self.nat()?;
        u64::try_from(n).map_err(|_| Error::Parse {
            pos: start,
            msg: "cusp index does not fit in 64 bits".into(),
        })
    }

    fn term(&mut self) -> Result<(u64, Rat)> {
        let coef = if matches!(self.peek(), Some(b'0'..=b'9')) {
            let num = self.nat()?;
            let den = if self.eat(b'/') {
                let d = self.nat()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                d
            } else {
                Int::one()
            };
            self.eat(b'*');
            Rat::new(num, den)
        } else {
            Rat::one()
        };
        if !(self.eat(b'P') || self.eat(b'p')) {
            return Err(self.error("expected 'P'"));
        }
        self.eat(b'_');
        let d = self.index()?;
        Ok((d, coef))
    }

    fn expr(&mut self) -> Result<Vec<(u64, Rat)>> {
        let mut terms = Vec::new();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (d, c) = self.term()?;
            terms.push((d, if negate { -c } else { c }));
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses either a flat expression such as `P1-P11` or a tensor such as
/// `(P1+P3)x(P1-P5)` into a divisor at `level`.
pub fn parse_divisor(level: &Arc<Level>, src: &str) -> Result<CuspDivisor> {
    if src.trim() == "0" {
        return Ok(CuspDivisor::zero(level));
    }
    let mut cur = Cursor::new(src);
    if cur.peek() == Some(b'(') {
        parse_tensor(level, &mut cur)
    } else {
        let terms = cur.expr()?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        CuspDivisor::from_terms(level, terms)
    }
}

fn parse_tensor(level: &Arc<Level>, cur: &mut Cursor<'_>) -> Result<CuspDivisor> {
    let pairs = level.factors().pairs().to_vec();
    let mut factors = Vec::with_capacity(pairs.len());
    loop {
        let start = cur.pos;
        cur.expect(b'(')?;
        let terms = cur.expr()?;
        cur.expect(b')')?;
        let axis = factors.len();
        let &(p, s) = pairs.get(axis).ok_or(Error::Parse {
            pos: start,
            msg: format!("more tensor factors than the {} primes of {}", pairs.len(), level.n()),
        })?;
        let mut local = vec![Rat::zero(); s as usize + 1];
        for (d, c) in terms {
            let j = local_exponent(d, p, s).ok_or_else(|| Error::Parse {
                pos: start,
                msg: format!("P{d} is not P1 or a power p^j with p = {p}, j <= {s}"),
            })?;
            local[j] += c;
        }
        factors.push(local);
        if !cur.eat(b'x') {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    if factors.len() != pairs.len() {
        return Err(cur.error(format!(
            "{} tensor factors given, level {} has {} primes",
            factors.len(),
            level.n(),
            pairs.len()
        )));
    }
    tensor_compose(level, &factors)
}

fn local_exponent(d: u64, p: u64, s: u32) -> Option<usize> {
    let mut rest = d;
    let mut j = 0;
    while rest % p == 0 && rest > 1 {
        rest /= p;
        j += 1;
    }
    (rest == 1 && j <= s).then_some(j as usize)
}
