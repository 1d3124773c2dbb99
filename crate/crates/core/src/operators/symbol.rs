use std::fmt;

use crate::error::{Error, Result};
use crate::series::{Complex, TruncatedSeries};

/// A nonconstant polynomial symbol `g(z) = b_1 z + ... + b_n z^n` with `g(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSymbol {
    /// `coeffs[m] = b_m`; `coeffs[0] == 0` and `coeffs[n] != 0`.
    coeffs: Vec<Complex>,
}

impl PolynomialSymbol {
    /// Builds a symbol from `b_0..b_n`. Trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<Complex>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == Complex::new(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.first().is_some_and(|c| *c != Complex::new(0.0, 0.0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        if coeffs.len() < 2 {
            return Err(Error::ConstantSymbol);
        }
        Ok(Self { coeffs })
    }

    /// `β z^n`
    pub fn monomial(beta: Complex, n: usize) -> Result<Self> {
        let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
        coeffs[n] = beta;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Leading coefficient `β`.
    pub fn leading(&self) -> Complex {
        self.coeffs[self.degree()]
    }

    /// `b_m`, zero outside `1..=n`.
    pub fn coeff(&self, m: usize) -> Complex {
        self.coeffs.get(m).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// `k(z) = g(z) - β z^n`, as coefficients `0..n`.
    pub fn lower_part(&self) -> Vec<Complex> {
        self.coeffs[..self.degree()].to_vec()
    }

    pub fn has_lower_part(&self) -> bool {
        self.lower_part().iter().any(|c| *c != Complex::new(0.0, 0.0))
    }

    /// The leading monomial `β z^n` as a symbol of its own.
    pub fn leading_monomial(&self) -> Self {
        Self::monomial(self.leading(), self.degree()).expect("leading coefficient is nonzero")
    }

    /// `c g` for `c != 0`.
    pub fn scaled(&self, c: Complex) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|b| b * c).collect())
    }

    pub fn as_series(&self) -> TruncatedSeries {
        TruncatedSeries::polynomial(self.coeffs.clone())
    }

    /// `g'` as an exact polynomial.
    pub fn derivative(&self) -> TruncatedSeries {
        self.as_series().derive()
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.as_series().eval(z)
    }
}

impl fmt::Display for PolynomialSymbol {
    /// Writes a string that the symbol parser reads back to identical coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for m in (1..=self.degree()).rev() {
            let c = self.coeffs[m];
            if c == Complex::new(0.0, 0.0) {
                continue;
            }
            let power = if m == 1 { "z".to_string() } else { format!("z^{m}") };
            let (negative, body) = if c.im == 0.0 {
                let mag = c.re.abs();
                let body = if mag == 1.0 { power } else { format!("{mag}*{power}") };
                (c.re < 0.0, body)
            } else if c.re == 0.0 {
                let mag = c.im.abs();
                let body = if mag == 1.0 {
                    format!("i*{power}")
                } else {
                    format!("{mag}i*{power}")
                };
                (c.im < 0.0, body)
            } else {
                let sign = if c.im < 0.0 { '-' } else { '+' };
                (false, format!("({}{}{}i)*{}", c.re, sign, c.im.abs(), power))
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
