//! Truncated complex Taylor series.
//!
//! A [`TruncatedSeries`] stores the coefficients `c_0..c_N` of an entire
//! function expanded at the origin. Besides the coefficients it records how
//! far the stored prefix is known exactly: an exact polynomial is known to
//! every degree, while the output of `exp` or of an operator that had to cut
//! its result is only known through some degree `K <= N`. Coefficients
//! `0..=K` of every operation below are the exact coefficients of the
//! corresponding formal-series operation, up to floating rounding.

mod sampling;

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use sampling::{default_samples, max_modulus, max_real_part, CircleSampler};

pub type Complex = num_complex::Complex64;

/// Default working degree for operator outputs.
pub const DEFAULT_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
    /// `None`: the stored polynomial is the whole function.
    exact_through: Option<usize>,
}

impl TruncatedSeries {
    /// An exact polynomial. An empty vector is the zero polynomial.
    pub fn polynomial(mut coeffs: Vec<Complex>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex::new(0.0, 0.0));
        }
        Self {
            coeffs,
            exact_through: None,
        }
    }

    /// Like [`TruncatedSeries::polynomial`] but rejects NaN and infinite coefficients.
    pub fn try_polynomial(coeffs: Vec<Complex>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self::polynomial(coeffs))
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::polynomial(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::polynomial(Vec::new())
    }

    pub fn constant(c: Complex) -> Self {
        Self::polynomial(vec![c])
    }

    /// `c z^k`
    pub fn monomial(c: Complex, k: usize) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// `N`, the highest stored degree.
    pub fn trunc_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree through which the stored prefix is exact; `None` for an exact polynomial.
    pub fn exact_through(&self) -> Option<usize> {
        self.exact_through
    }

    pub fn is_exact_polynomial(&self) -> bool {
        self.exact_through.is_none()
    }

    /// Marks the series as known only through degree `k`.
    pub fn known_through(mut self, k: usize) -> Self {
        self.exact_through = Some(self.exact_through.map_or(k, |e| e.min(k)));
        self
    }

    /// Index of the highest nonzero coefficient, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Complex::new(0.0, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Keeps coefficients `0..=n`. Dropping a nonzero coefficient limits exactness to `n`.
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.trunc_degree() {
            return self.clone();
        }
        let dropped = self.coeffs[n + 1..].iter().any(|c| *c != Complex::new(0.0, 0.0));
        let out = Self {
            coeffs: self.coeffs[..=n].to_vec(),
            exact_through: self.exact_through,
        };
        if dropped {
            out.known_through(n)
        } else {
            out
        }
    }

    /// Largest `|a_k - b_k|` over `k = 0..=m`.
    pub fn max_prefix_deviation(&self, other: &Self, m: usize) -> f64 {
        (0..=m)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Prefix equality to degree `m` within an absolute tolerance.
    pub fn prefix_eq(&self, other: &Self, m: usize, tol: f64) -> bool {
        self.max_prefix_deviation(other, m) <= tol
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            exact_through: self.exact_through,
        }
    }

    /// Cauchy product truncated to `out_degree`.
    pub fn mul(&self, other: &Self, out_degree: usize) -> Self {
        let (n, m) = (self.trunc_degree(), other.trunc_degree());
        let full = n + m;
        let top = out_degree.min(full);
        let mut coeffs = vec![Complex::new(0.0, 0.0); out_degree + 1];
        for (k, slot) in coeffs.iter_mut().enumerate().take(top + 1) {
            let lo = k.saturating_sub(m);
            let hi = k.min(n);
            let mut acc = Complex::new(0.0, 0.0);
            for j in lo..=hi {
                acc += self.coeffs[j] * other.coeffs[k - j];
            }
            *slot = acc;
        }
        let mut exact = min_exact(self.exact_through, other.exact_through);
        // only the product's actual support beyond out_degree matters
        if out_degree < full
            && self.degree().unwrap_or(0) + other.degree().unwrap_or(0) > out_degree
        {
            exact = min_exact(exact, Some(out_degree));
        }
        Self {
            coeffs,
            exact_through: exact,
        }
    }

    /// `D f = f'`. A degree-0 input gives the zero series of degree 0.
    pub fn derive(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self {
                coeffs: vec![Complex::new(0.0, 0.0)],
                exact_through: self.exact_through,
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Self {
            coeffs,
            exact_through: self.exact_through.map(|e| e.saturating_sub(1)),
        }
    }

    /// `J f = ∫_0^z f`, constant term zero, degree raised by one.
    pub fn antiderive(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::new(0.0, 0.0));
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        Self {
            coeffs,
            exact_through: self.exact_through.map(|e| e + 1),
        }
    }

    /// Coefficients of `exp(f)` through `out_degree`.
    ///
    /// Uses `(exp f)' = f' exp f`, i.e. `e_0 = exp(c_0)` and
    /// `(k+1) e_{k+1} = sum_{j=0..k} (j+1) c_{j+1} e_{k-j}`. The constant term is
    /// factored out as the scalar `exp(c_0)`.
    pub fn exp(&self, out_degree: usize) -> Self {
        let c0 = self.coeffs[0];
        let n = self.trunc_degree();
        let mut e = vec![Complex::new(0.0, 0.0); out_degree + 1];
        e[0] = Complex::new(1.0, 0.0);
        // (j+1) c_{j+1}, the coefficients of f'
        let fprime: Vec<Complex> = (1..=n).map(|j| self.coeffs[j] * j as f64).collect();
        for k in 0..out_degree {
            let mut acc = Complex::new(0.0, 0.0);
            for (j, d) in fprime.iter().enumerate().take(k + 1) {
                acc += d * e[k - j];
            }
            e[k + 1] = acc / (k as f64 + 1.0);
        }
        let scale = c0.exp();
        for c in &mut e {
            *c *= scale;
        }
        let nonconstant = self.coeffs[1..].iter().any(|c| *c != Complex::new(0.0, 0.0));
        let exact_through = if nonconstant {
            min_exact(self.exact_through, Some(out_degree))
        } else {
            self.exact_through
        };
        Self {
            coeffs: e,
            exact_through,
        }
    }

    /// Horner evaluation of the stored polynomial.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesWire::from(self)).expect("series serializes")
    }

    /// Parses `{"coeffs": [[re, im], ...]}`; the result is treated as an exact polynomial.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: SeriesWire = serde_json::from_str(text)?;
        Self::try_polynomial(wire.coeffs.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }
}

fn min_exact(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// JSON layout shared by the CLI: coefficients from degree 0 upward.
#[derive(Serialize, Deserialize)]
pub struct SeriesWire {
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&TruncatedSeries> for SeriesWire {
    fn from(f: &TruncatedSeries) -> Self {
        Self {
            coeffs: f.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
            exact_through: min_exact(self.exact_through, rhs.exact_through),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(),
            exact_through: min_exact(self.exact_through, rhs.exact_through),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(Complex::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn exp_z(n: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(c(1.0, 0.0), 1).exp(n)
    }

    #[test]
    fn add_cancels_and_extends() {
        let a = TruncatedSeries::from_real(&[1.0, 1.0]);
        let b = TruncatedSeries::from_real(&[1.0, -1.0]);
        assert_eq!((&a + &b).coeffs(), &[c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(&a + &TruncatedSeries::zero(), a);
        let s = &TruncatedSeries::from_real(&[0.0, 0.0, 1.0]) + &TruncatedSeries::from_real(&[0.0, 1.0]);
        assert_eq!(s.coeffs(), &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn scale_examples() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0]);
        assert_eq!(f.scale(c(2.0, 0.0)).coeffs(), &[c(2.0, 0.0), c(2.0, 0.0)]);
        assert!(f.scale(c(0.0, 0.0)).coeffs().iter().all(|x| x.norm() == 0.0));
        let z = TruncatedSeries::from_real(&[0.0, 1.0]);
        assert_eq!(z.scale(c(0.0, 1.0)).coeff(1), c(0.0, 1.0));
    }

    #[test]
    fn mul_examples() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0]);
        assert_eq!(f.mul(&f, 2).coeffs(), &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(f.mul(&TruncatedSeries::constant(c(1.0, 0.0)), 1), f);
        // e^z e^{-z} = 1 to every retained degree
        let n = 30;
        let e = exp_z(n);
        let einv = TruncatedSeries::monomial(c(-1.0, 0.0), 1).exp(n);
        let one = TruncatedSeries::constant(c(1.0, 0.0));
        assert!(e.mul(&einv, n).prefix_eq(&one, n, 1e-15));
    }

    #[test]
    fn mul_tracks_exactness() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0]);
        assert_eq!(f.mul(&f, 2).exact_through(), None);
        assert_eq!(f.mul(&f, 1).exact_through(), Some(1));
        assert_eq!(exp_z(10).mul(&f, 20).exact_through(), Some(10));
    }

    #[test]
    fn derive_examples() {
        let z2 = TruncatedSeries::monomial(c(1.0, 0.0), 2);
        assert_eq!(z2.derive().coeffs(), &[c(0.0, 0.0), c(2.0, 0.0)]);
        let k = TruncatedSeries::constant(c(3.0, 1.0));
        assert_eq!(k.derive().coeffs(), &[c(0.0, 0.0)]);
        let e = exp_z(20);
        assert!(e.derive().prefix_eq(&e, 19, 1e-16));
    }

    #[test]
    fn antiderive_examples() {
        let one = TruncatedSeries::constant(c(1.0, 0.0));
        assert_eq!(one.antiderive().coeffs(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        let two_z = TruncatedSeries::from_real(&[0.0, 2.0]);
        assert_eq!(two_z.antiderive().coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let f = TruncatedSeries::polynomial(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.25, -1.0)]);
        assert!(f.antiderive().derive().prefix_eq(&f, 2, 1e-15));
    }

    #[test]
    fn exp_examples() {
        let e = exp_z(4);
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
        for (k, w) in want.iter().enumerate() {
            assert!((e.coeff(k) - c(*w, 0.0)).norm() < 1e-16);
        }
        let e0 = TruncatedSeries::zero().exp(8);
        assert_eq!(e0.coeff(0), c(1.0, 0.0));
        assert!(e0.coeffs()[1..].iter().all(|x| x.norm() == 0.0));
        assert_eq!(e0.exact_through(), None);
    }

    #[test]
    fn exp_factors_out_constant_term() {
        let f = TruncatedSeries::polynomial(vec![c(0.5, 0.25), c(1.0, 0.0)]);
        let e = f.exp(10);
        let scale = c(0.5, 0.25).exp();
        for k in 0..=10 {
            let want = scale / (1..=k).map(|j| j as f64).product::<f64>();
            assert!((e.coeff(k) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn eval_examples() {
        let f = TruncatedSeries::from_real(&[1.0, 1.0]);
        assert_eq!(f.eval(c(1.0, 0.0)), c(2.0, 0.0));
        let z2 = TruncatedSeries::monomial(c(1.0, 0.0), 2);
        assert!((z2.eval(c(0.0, 1.0)) - c(-1.0, 0.0)).norm() < 1e-16);
        let e = exp_z(60);
        assert!((e.eval(c(1.0, 0.0)).re - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn truncate_marks_exactness_only_when_dropping() {
        let f = TruncatedSeries::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(f.truncate(1).exact_through(), None);
        assert_eq!(f.truncate(0).exact_through(), Some(0));
    }

    #[test]
    fn json_layout() {
        let f = TruncatedSeries::polynomial(vec![c(1.0, 0.0), c(0.0, -2.5)]);
        let text = f.to_json();
        assert_eq!(text, r#"{"coeffs":[[1.0,0.0],[0.0,-2.5]]}"#);
        assert_eq!(TruncatedSeries::from_json(&text).unwrap(), f);
        assert!(TruncatedSeries::from_json(r#"{"coeffs": [[1.0]]}"#).is_err());
    }
}
