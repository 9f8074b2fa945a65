//! Text form of polynomials and fractions.
//!
//! Polynomials serialize as sums of terms `c*t1^a*t2^b` with unit pieces
//! omitted (`t1^2 - t1 + 1`, `3 - 2*t1*t2^-1`), terms emitted in descending
//! monomial order. The parser accepts arbitrary whitespace. With a single
//! variable the name `t` is used and accepted interchangeably with `t1`.
//! Fractions serialize as `num / den`; `/` occurs nowhere else, so parsing
//! splits on it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::ratfunc::RatFunc;

pub(crate) fn var_name(nvars: usize, var: usize) -> String {
    if nvars == 1 {
        "t".to_string()
    } else {
        format!("t{}", var + 1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let nv = self.nvars();
        let mut first = true;
        // Descending monomial order.
        let terms: Vec<_> = self.terms().collect();
        for (e, c) in terms.into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_zero() {
                pieces.push(abs.to_string());
            }
            for (i, &exp) in e.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let v = var_name(nv, i);
                if exp == 1 {
                    pieces.push(v);
                } else {
                    pieces.push(format!("{}^{}", v, exp));
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{} / {}", self.num(), self.den())
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize), // 0-based variable index
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn next(&mut self, nvars: usize) -> Result<Tok> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(s.parse::<BigInt>().map_err(|e| {
                    Error::Parse(format!("bad integer {:?}: {}", s, e))
                })?))
            }
            b't' => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    if nvars == 1 {
                        Ok(Tok::Var(0))
                    } else {
                        Err(Error::Parse(format!(
                            "bare variable 't' is ambiguous with {} variables; use t1..t{}",
                            nvars, nvars
                        )))
                    }
                } else {
                    let idx: usize = std::str::from_utf8(&self.src[start..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad variable index: {}", e)))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!(
                            "variable t{} out of range 1..{}",
                            idx, nvars
                        )));
                    }
                    Ok(Tok::Var(idx - 1))
                }
            }
            other => Err(Error::Parse(format!(
                "unexpected character {:?} at offset {}",
                other as char, self.pos
            ))),
        }
    }
}

/// Parse a Laurent polynomial in `nvars` variables from its text form.
pub fn parse_poly(s: &str, nvars: usize) -> Result<LaurentPoly> {
    if nvars == 0 {
        return Err(Error::Parse("variable count must be at least 1".into()));
    }
    let mut lx = Lexer::new(s);
    let mut out = LaurentPoly::zero(nvars);
    let mut tok = lx.next(nvars)?;
    if tok == Tok::End {
        return Err(Error::Parse("empty polynomial".into()));
    }
    loop {
        // sign prefix
        let mut sign = BigInt::one();
        loop {
            match tok {
                Tok::Plus => {}
                Tok::Minus => sign = -sign,
                _ => break,
            }
            tok = lx.next(nvars)?;
        }
        // one term: factors separated by optional '*'
        let mut coeff = sign;
        let mut exps = ExpVec::zero(nvars);
        let mut saw_factor = false;
        loop {
            match tok {
                Tok::Int(ref n) => {
                    coeff *= n;
                    saw_factor = true;
                    tok = lx.next(nvars)?;
                }
                Tok::Var(i) => {
                    let mut e: i32 = 1;
                    tok = lx.next(nvars)?;
                    if tok == Tok::Caret {
                        tok = lx.next(nvars)?;
                        let mut esign = 1i32;
                        while tok == Tok::Minus || tok == Tok::Plus {
                            if tok == Tok::Minus {
                                esign = -esign;
                            }
                            tok = lx.next(nvars)?;
                        }
                        match tok {
                            Tok::Int(ref n) => {
                                let v: i32 = n.to_string().parse().map_err(|_| {
                                    Error::Parse(format!("exponent {} out of range", n))
                                })?;
                                e = esign * v;
                                tok = lx.next(nvars)?;
                            }
                            _ => return Err(Error::Parse("expected exponent after '^'".into())),
                        }
                    }
                    exps.0[i] += e;
                    saw_factor = true;
                }
                Tok::Star => {
                    tok = lx.next(nvars)?;
                    continue;
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(Error::Parse("expected a term".into()));
        }
        out = &out + &LaurentPoly::monomial(nvars, exps, coeff);
        match tok {
            Tok::End => break,
            Tok::Plus | Tok::Minus => continue,
            ref t => {
                return Err(Error::Parse(format!("unexpected token {:?}", t)));
            }
        }
    }
    Ok(out)
}

/// Parse a rational function `num / den` (or a bare polynomial).
pub fn parse_ratfunc(s: &str, nvars: usize) -> Result<RatFunc> {
    let mut parts = s.split('/');
    let num = parts.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    match parts.next() {
        None => RatFunc::from_poly(parse_poly(num, nvars)?),
        Some(den) => {
            if parts.next().is_some() {
                return Err(Error::Parse("more than one '/' in fraction".into()));
            }
            RatFunc::new(parse_poly(num, nvars)?, parse_poly(den, nvars)?)
        }
    }
}

/// Parse a comma-separated vector of rational functions.
pub fn parse_vector(s: &str, nvars: usize) -> Result<Vec<RatFunc>> {
    s.split(',').map(|part| parse_ratfunc(part, nvars)).collect()
}
