//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr     := sign? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := 'Dt' | 'Dx' uint | rational | 'i' | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! A single leading sign is accepted at the start of every `expr` so that
//! printed polynomials with negative coefficients parse back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussRational, MultiPoly, SymbolicError};

const MAX_EXPONENT: u32 = 256;

pub fn parse_operator(text: &str, n: usize) -> Result<MultiPoly, SymbolicError> {
    if n == 0 {
        return Err(SymbolicError::ZeroDimension);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a constant expression (no `Dt`/`Dx` symbols) into a Gaussian
/// rational, e.g. `"3/4"`, `"-i"`, `"1/2 - 3*i"`.
pub fn parse_gauss(text: &str) -> Result<GaussRational, SymbolicError> {
    let p = parse_operator(text, 1)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Ok(GaussRational::zero()),
        (Some((m, c)), None) if m.total_degree() == 0 => Ok(c.clone()),
        _ => Err(SymbolicError::NotConstant(text.to_string())),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: &str) -> SymbolicError {
        SymbolicError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, SymbolicError> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, SymbolicError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, SymbolicError> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => Err(SymbolicError::NegativeExponent { pos: self.pos }),
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let e = self.uint()?;
                let e: u32 = e
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or(SymbolicError::Syntax {
                        pos: at,
                        msg: format!("exponent exceeds {MAX_EXPONENT}"),
                    })?;
                Ok(base.pow(e))
            }
            _ => Err(self.syntax("expected exponent")),
        }
    }

    fn base(&mut self) -> Result<MultiPoly, SymbolicError> {
        let n = self.n;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'i') => {
                self.pos += 1;
                self.reject_identifier_tail()?;
                Ok(MultiPoly::constant(n, GaussRational::i()))
            }
            Some(b'D') => {
                let start = self.pos;
                match self.src.get(self.pos + 1) {
                    Some(b't') => {
                        self.pos += 2;
                        self.reject_identifier_tail()?;
                        Ok(MultiPoly::variable(n, 0))
                    }
                    Some(b'x') => {
                        self.pos += 2;
                        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                            return Err(self.syntax("expected index after 'Dx'"));
                        }
                        let idx = self.uint()?;
                        let name = format!("Dx{idx}");
                        match usize::try_from(&idx) {
                            Ok(k) if (1..=n).contains(&k) => Ok(MultiPoly::variable(n, k)),
                            _ => Err(SymbolicError::UnknownSymbol { pos: start, name }),
                        }
                    }
                    _ => Err(self.unknown_word(start)),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.syntax("expected denominator"));
                    }
                    let at = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(SymbolicError::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    q /= BigRational::from_integer(den);
                }
                Ok(MultiPoly::constant(n, GaussRational::real(q)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                Err(self.unknown_word(start))
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn unknown_word(&mut self, start: usize) -> SymbolicError {
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
            end += 1;
        }
        SymbolicError::UnknownSymbol {
            pos: start,
            name: String::from_utf8_lossy(&self.src[start..end.max(start + 1)]).into_owned(),
        }
    }

    /// `Dtx` or `ix` must not silently tokenize as `Dt` followed by junk.
    fn reject_identifier_tail(&mut self) -> Result<(), SymbolicError> {
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos - 1;
                let mut s = start;
                while s > 0 && self.src[s - 1].is_ascii_alphanumeric() {
                    s -= 1;
                }
                Err(self.unknown_word(s))
            }
            _ => Ok(()),
        }
    }

    fn uint(&mut self) -> Result<BigInt, SymbolicError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().expect("digit string"))
    }
}
