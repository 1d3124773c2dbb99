//! Polynomials in `z` over complex literals.
//!
//! ```text
//! poly    := sign? term (('+' | '-') term)*
//! term    := coeff ('*'? monomial)? | monomial
//! coeff   := factor ('*' factor)*
//! factor  := number 'i'? | 'i' | '(' complex ')'
//! complex := sign? part (('+' | '-') part)*     part := number 'i'? | 'i'
//! monomial:= 'z' ('^' digits)?
//! ```
//! Whitespace is allowed between tokens.

use crate::error::{Error, Result};
use crate::operators::PolynomialSymbol;
use crate::series::{Complex, TruncatedSeries};

/// Parses a polynomial; constant terms are allowed.
pub fn parse_polynomial(text: &str) -> Result<TruncatedSeries> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let coeffs = p.poly()?;
    Ok(TruncatedSeries::polynomial(coeffs))
}

/// Parses a symbol `g`, rejecting constant terms and constant polynomials.
pub fn parse_symbol(text: &str) -> Result<PolynomialSymbol> {
    let g = parse_polynomial(text)?;
    PolynomialSymbol::new(g.coeffs().to_vec())
}

/// Parses a complex scalar such as `2`, `-i`, `2-i`, `0.6+0.2i` or `(1+2i)`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let value = if p.peek() == Some(b'(') {
        p.factor()?
    } else {
        p.complex_body()?
    };
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<f64> {
        if self.eat(b'+') {
            Some(1.0)
        } else if self.eat(b'-') {
            Some(-1.0)
        } else {
            None
        }
    }

    fn poly(&mut self) -> Result<Vec<Complex>> {
        let mut coeffs: Vec<Complex> = Vec::new();
        let mut sign = self.sign().unwrap_or(1.0);
        loop {
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Complex::new(0.0, 0.0));
            }
            coeffs[k] += c * sign;
            self.skip_ws();
            match self.sign() {
                Some(s) => sign = s,
                None if self.pos == self.src.len() => break,
                None => return Err(self.error("expected '+', '-' or end of input")),
            }
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::new(0.0, 0.0));
        }
        Ok(coeffs)
    }

    fn term(&mut self) -> Result<(Complex, usize)> {
        self.skip_ws();
        if self.peek() == Some(b'z') {
            return Ok((Complex::new(1.0, 0.0), self.monomial()?));
        }
        let mut c = self.factor()?;
        loop {
            let before = self.pos;
            if self.eat(b'*') {
                self.skip_ws();
                if self.peek() == Some(b'z') {
                    return Ok((c, self.monomial()?));
                }
                c *= self.factor()?;
                continue;
            }
            self.pos = before;
            self.skip_ws();
            if self.peek() == Some(b'z') {
                return Ok((c, self.monomial()?));
            }
            self.pos = before;
            return Ok((c, 0));
        }
    }

    fn monomial(&mut self) -> Result<usize> {
        debug_assert_eq!(self.peek(), Some(b'z'));
        self.pos += 1;
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an exponent after '^'"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let k: usize = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "exponent out of range".into(),
        })?;
        if k > 100_000 {
            return Err(Error::Syntax {
                pos: start,
                msg: "exponent out of range".into(),
            });
        }
        Ok(k)
    }

    fn factor(&mut self) -> Result<Complex> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let c = self.complex_body()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(c)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Complex::new(0.0, 1.0))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let x = self.number()?;
                Ok(self.imaginary_suffix(x))
            }
            Some(_) => Err(self.error("expected a number, 'i', '(' or 'z'")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn imaginary_suffix(&mut self, x: f64) -> Complex {
        if self.peek() == Some(b'i') {
            self.pos += 1;
            Complex::new(0.0, x)
        } else {
            Complex::new(x, 0.0)
        }
    }

    fn complex_body(&mut self) -> Result<Complex> {
        let mut sign = self.sign().unwrap_or(1.0);
        let mut total = Complex::new(0.0, 0.0);
        loop {
            self.skip_ws();
            let part = match self.peek() {
                Some(b'i') => {
                    self.pos += 1;
                    Complex::new(0.0, 1.0)
                }
                Some(c) if c.is_ascii_digit() || c == b'.' => {
                    let x = self.number()?;
                    self.imaginary_suffix(x)
                }
                Some(_) => return Err(self.error("expected a number or 'i'")),
                None => return Err(self.error("unexpected end of input")),
            };
            total += part * sign;
            let before = self.pos;
            match self.sign() {
                Some(s) => sign = s,
                None => {
                    self.pos = before;
                    return Ok(total);
                }
            }
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
                return Err(self.error("malformed exponent"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        let x: f64 = text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "malformed number".into(),
        })?;
        if !x.is_finite() {
            return Err(Error::Syntax {
                pos: start,
                msg: "number out of range".into(),
            });
        }
        Ok(x)
    }
}
