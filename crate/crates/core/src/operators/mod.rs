//! Coefficient-level operators on truncated series.
//!
//! `V_g f = ∫_0^z f g'`, the multiplication operator `M_h`, the resolvent
//! `R_{λ,g}` solving `f - (1/λ) V_g f = h`, the auxiliary operators
//! `S_{λ,g}` and `T_γ`, and finite sections of `V_g` in the monomial basis.
//! Differentiation and integration are [`TruncatedSeries::derive`] and
//! [`TruncatedSeries::antiderive`].
//!
//! Every output cut to a working degree `N` records that it is known only
//! through `N` (see [`TruncatedSeries::exact_through`]).

mod section;
mod symbol;

pub use section::{finite_section, SectionMatrix};
pub use symbol::PolynomialSymbol;

use crate::error::{Error, Result};
use crate::series::{Complex, TruncatedSeries};

/// `V_g f`. The result has degree `deg f + deg g` and constant term zero.
pub fn apply_volterra(g: &PolynomialSymbol, f: &TruncatedSeries) -> TruncatedSeries {
    let gp = g.derivative();
    let out = f.trunc_degree() + gp.trunc_degree();
    f.mul(&gp, out).antiderive()
}

/// `M_h f = h f`, kept through `out_degree`.
pub fn apply_mult(h: &TruncatedSeries, f: &TruncatedSeries, out_degree: usize) -> TruncatedSeries {
    h.mul(f, out_degree)
}

/// `R_{λ,g} h`, the unique solution of `f - (1/λ) V_g f = h`, through degree `degree`.
///
/// Solved as the linear equation `f' - (g'/λ) f = h'`, `f(0) = h(0)`, whose
/// coefficient recurrence is
/// `f_{k+1} = h_{k+1} + (1/(λ(k+1))) sum_j (j+1) b_{j+1} f_{k-j}`.
/// This agrees with `h(0) e^{g/λ} + e^{g/λ} ∫_0^z e^{-g/λ} h'` (see
/// [`resolvent_apply_explicit`]) but avoids the cancellation between the two
/// exponential factors, which grows like `2^k` in the coefficient index.
pub fn resolvent_apply(
    g: &PolynomialSymbol,
    lambda: Complex,
    h: &TruncatedSeries,
    degree: usize,
) -> Result<TruncatedSeries> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::ResolventAtZero);
    }
    let gp: Vec<Complex> = g.derivative().coeffs().to_vec();
    let inv = lambda.inv();
    let mut f = vec![Complex::new(0.0, 0.0); degree + 1];
    f[0] = h.coeff(0);
    for k in 0..degree {
        let mut acc = Complex::new(0.0, 0.0);
        for (j, d) in gp.iter().enumerate().take(k + 1) {
            acc += d * f[k - j];
        }
        f[k + 1] = h.coeff(k + 1) + acc * inv / (k as f64 + 1.0);
    }
    Ok(TruncatedSeries::polynomial(f).known_through(degree))
}

/// `R_{λ,g} h` through the closed formula
/// `h(0) e^{g/λ} + e^{g/λ} ∫_0^z e^{-g/λ} h'`, composed from series operations.
///
/// Loses accuracy when `|g/λ|` is large; [`resolvent_apply`] is the stable route.
pub fn resolvent_apply_explicit(
    g: &PolynomialSymbol,
    lambda: Complex,
    h: &TruncatedSeries,
    degree: usize,
) -> Result<TruncatedSeries> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::ResolventAtZero);
    }
    let (big, small) = exp_pair(g, lambda, degree);
    let inner = small.mul(&h.derive(), degree).antiderive();
    let tail = big.mul(&inner, degree);
    Ok((&big.scale(h.coeff(0)) + &tail).truncate(degree))
}

/// `S_{λ,g} h = e^{g/λ} ∫_0^z h' e^{-g/λ}` on functions with `h(0) = 0`,
/// computed as `M_G ∘ J ∘ M_{1/G} ∘ D` with `G = e^{g/λ}`.
pub fn s_operator_apply(
    g: &PolynomialSymbol,
    lambda: Complex,
    h: &TruncatedSeries,
    degree: usize,
) -> Result<TruncatedSeries> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::ResolventAtZero);
    }
    require_x0(h)?;
    let (big, small) = exp_pair(g, lambda, degree);
    let inner = apply_mult(&small, &h.derive(), degree).antiderive();
    Ok(apply_mult(&big, &inner, degree))
}

/// `T_γ h = e^{γ z^n} ∫_0^z ζ^{n-1} h(ζ) e^{-γ ζ^n} dζ` through degree `degree`.
///
/// `f = T_γ h` solves `f' = nγ z^{n-1} f + z^{n-1} h`, `f(0) = 0`, so
/// `f_m = (nγ f_{m-n} + h_{m-n}) / m`. Multiplying out the two exponential
/// factors instead (see [`t_gamma_apply_explicit`]) loses everything to
/// cancellation once `|γ| r^n` reaches a few tens.
pub fn t_gamma_apply(n: usize, gamma: Complex, h: &TruncatedSeries, degree: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("T_gamma needs n >= 1".into()));
    }
    let ng = gamma * n as f64;
    let mut f = vec![Complex::new(0.0, 0.0); degree + 1];
    for m in n..=degree {
        f[m] = (ng * f[m - n] + h.coeff(m - n)) / m as f64;
    }
    let known = h.exact_through().map_or(degree, |e| (e + n).min(degree));
    Ok(TruncatedSeries::polynomial(f).known_through(known))
}

/// [`t_gamma_apply`] composed literally from exponentials, products and an antiderivative.
pub fn t_gamma_apply_explicit(n: usize, gamma: Complex, h: &TruncatedSeries, degree: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("T_gamma needs n >= 1".into()));
    }
    let power = TruncatedSeries::monomial(gamma, n);
    let big = power.exp(degree);
    let small = (-&power).exp(degree);
    let weight = TruncatedSeries::monomial(Complex::new(1.0, 0.0), n - 1);
    let integrand = weight.mul(h, degree).mul(&small, degree);
    Ok(big.mul(&integrand.antiderive(), degree))
}

/// Largest coefficient gap between the two sides of
/// `e^{g/λ} ∫ h' e^{-g/λ} = h + (1/λ) e^{g/λ} ∫ h g' e^{-g/λ}` for `h(0) = 0`,
/// over degrees `0..=degree - deg g`.
pub fn integration_by_parts_residual(
    g: &PolynomialSymbol,
    lambda: Complex,
    h: &TruncatedSeries,
    degree: usize,
) -> Result<f64> {
    let lhs = s_operator_apply(g, lambda, h, degree)?;
    let (big, small) = exp_pair(g, lambda, degree);
    let integrand = h.mul(&g.derivative(), degree).mul(&small, degree);
    let rhs = &h.truncate(degree) + &big.mul(&integrand.antiderive(), degree).scale(lambda.inv());
    Ok(lhs.max_prefix_deviation(&rhs, degree.saturating_sub(g.degree())))
}

/// Residual of `f - (1/λ) V_g f = h` over degrees `0..=degree`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolventResidual {
    /// `max_k |r_k|`.
    pub absolute: f64,
    /// `max_k |r_k| / max(1, s_k)`, where `s_k` sums the magnitudes of the
    /// terms that make up coefficient `k` of the left-hand side.
    pub scaled: f64,
}

pub fn resolvent_residual(
    g: &PolynomialSymbol,
    lambda: Complex,
    f: &TruncatedSeries,
    h: &TruncatedSeries,
    degree: usize,
) -> ResolventResidual {
    let inv = lambda.inv();
    let vf = apply_volterra(g, f);
    let gp = g.derivative();
    let mag_f = TruncatedSeries::polynomial(f.coeffs().iter().map(|c| Complex::new(c.norm(), 0.0)).collect());
    let mag_gp = TruncatedSeries::polynomial(gp.coeffs().iter().map(|c| Complex::new(c.norm(), 0.0)).collect());
    let mag_vf = mag_f.mul(&mag_gp, degree).antiderive();
    let (mut absolute, mut scaled) = (0.0f64, 0.0f64);
    for k in 0..=degree {
        let r = f.coeff(k) - vf.coeff(k) * inv - h.coeff(k);
        let s = f.coeff(k).norm() + mag_vf.coeff(k).re * inv.norm() + h.coeff(k).norm();
        absolute = absolute.max(r.norm());
        scaled = scaled.max(r.norm() / s.max(1.0));
    }
    ResolventResidual { absolute, scaled }
}

fn exp_pair(g: &PolynomialSymbol, lambda: Complex, degree: usize) -> (TruncatedSeries, TruncatedSeries) {
    let gl = g.as_series().scale(lambda.inv());
    (gl.exp(degree), (-&gl).exp(degree))
}

fn require_x0(h: &TruncatedSeries) -> Result<()> {
    let h0 = h.coeff(0);
    if h0 != Complex::new(0.0, 0.0) {
        return Err(Error::NotInX0(h0));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn z_pow(k: usize) -> PolynomialSymbol {
        PolynomialSymbol::monomial(c(1.0, 0.0), k).unwrap()
    }

    #[test]
    fn volterra_examples() {
        let one = TruncatedSeries::constant(c(1.0, 0.0));
        let v = apply_volterra(&z_pow(1), &one);
        assert_eq!(v.coeffs(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        let v = apply_volterra(&z_pow(2), &one);
        assert!(v.prefix_eq(&TruncatedSeries::monomial(c(1.0, 0.0), 2), 2, 1e-15));
        let z = TruncatedSeries::monomial(c(1.0, 0.0), 1);
        let v = apply_volterra(&z_pow(2), &z);
        assert_eq!(v.trunc_degree(), 3);
        assert!((v.coeff(3) - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(v.coeff(0), c(0.0, 0.0));
    }

    #[test]
    fn mult_examples() {
        let f = TruncatedSeries::from_real(&[1.0, -2.0, 0.5]);
        let one = TruncatedSeries::constant(c(1.0, 0.0));
        assert_eq!(apply_mult(&one, &f, 2), f);
        assert!(apply_mult(&TruncatedSeries::zero(), &f, 2).coeffs().iter().all(|x| x.norm() == 0.0));
        let z = TruncatedSeries::monomial(c(1.0, 0.0), 1);
        assert_eq!(apply_mult(&z, &z, 2), TruncatedSeries::monomial(c(1.0, 0.0), 2));
    }

    #[test]
    fn resolvent_of_one_is_exponential() {
        let g = PolynomialSymbol::new(vec![c(0.0, 0.0), c(0.5, -1.0), c(0.25, 0.0)]).unwrap();
        let lambda = c(1.5, 0.5);
        let f = resolvent_apply(&g, lambda, &TruncatedSeries::constant(c(1.0, 0.0)), 40).unwrap();
        let want = g.as_series().scale(lambda.inv()).exp(40);
        assert!(f.prefix_eq(&want, 40, 1e-14));
        let e = resolvent_apply(&z_pow(1), c(1.0, 0.0), &TruncatedSeries::constant(c(1.0, 0.0)), 20).unwrap();
        let mut fact = 1.0;
        for k in 0..=20 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((e.coeff(k).re - 1.0 / fact).abs() < 1e-16);
        }
    }

    #[test]
    fn resolvent_at_zero_errors() {
        let h = TruncatedSeries::constant(c(1.0, 0.0));
        assert_eq!(resolvent_apply(&z_pow(1), c(0.0, 0.0), &h, 8), Err(Error::ResolventAtZero));
        assert_eq!(resolvent_apply_explicit(&z_pow(1), c(0.0, 0.0), &h, 8), Err(Error::ResolventAtZero));
    }

    #[test]
    fn explicit_and_recurrence_routes_agree_when_well_conditioned() {
        let g = PolynomialSymbol::new(vec![c(0.0, 0.0), c(0.3, 0.1), c(-0.2, 0.4)]).unwrap();
        let h = TruncatedSeries::polynomial(vec![c(0.5, -0.5), c(1.0, 0.0), c(0.0, 0.3), c(-0.7, 0.2)]);
        for lambda in [c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)] {
            let a = resolvent_apply(&g, lambda, &h, 48).unwrap();
            let b = resolvent_apply_explicit(&g, lambda, &h, 48).unwrap();
            assert!(a.prefix_eq(&b, 48, 1e-12));
            let r = resolvent_residual(&g, lambda, &a, &h, 48);
            assert!(r.absolute < 1e-13, "{r:?}");
        }
    }

    #[test]
    fn s_operator_examples() {
        let g = z_pow(1);
        let zero = TruncatedSeries::zero();
        let s = s_operator_apply(&g, c(1.0, 0.0), &zero, 10).unwrap();
        assert!(s.coeffs().iter().all(|x| x.norm() == 0.0));
        // e^z ∫_0^z e^{-ζ} dζ = e^z - 1
        let z = TruncatedSeries::monomial(c(1.0, 0.0), 1);
        let s = s_operator_apply(&g, c(1.0, 0.0), &z, 10).unwrap();
        let mut fact = 1.0;
        assert_eq!(s.coeff(0), c(0.0, 0.0));
        for k in 1..=10 {
            fact *= k as f64;
            assert!((s.coeff(k) - c(1.0 / fact, 0.0)).norm() < 1e-15);
        }
        let err = s_operator_apply(&g, c(1.0, 0.0), &TruncatedSeries::constant(c(2.0, 0.0)), 4);
        assert_eq!(err, Err(Error::NotInX0(c(2.0, 0.0))));
    }

    #[test]
    fn s_operator_is_resolvent_on_x0() {
        let g = PolynomialSymbol::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.5)]).unwrap();
        let h = TruncatedSeries::polynomial(vec![c(0.0, 0.0), c(0.2, 0.1), c(-1.0, 0.0), c(0.0, 0.4)]);
        let lambda = c(0.0, 2.0);
        let s = s_operator_apply(&g, lambda, &h, 40).unwrap();
        let r = resolvent_apply(&g, lambda, &h, 40).unwrap();
        assert!(s.prefix_eq(&r, 40, 1e-12));
    }

    #[test]
    fn t_gamma_examples() {
        // n = 1, h = 1: (e^{γz} - 1)/γ
        let gamma = c(0.3, -0.4);
        let t = t_gamma_apply(1, gamma, &TruncatedSeries::constant(c(1.0, 0.0)), 30).unwrap();
        let want = &TruncatedSeries::monomial(gamma, 1).exp(30) - &TruncatedSeries::constant(c(1.0, 0.0));
        assert!(t.prefix_eq(&want.scale(gamma.inv()), 30, 1e-15));
        let t = t_gamma_apply(2, c(0.0, 0.0), &TruncatedSeries::constant(c(1.0, 0.0)), 8).unwrap();
        assert!(t.prefix_eq(&TruncatedSeries::monomial(c(0.5, 0.0), 2), 8, 1e-16));
        let t = t_gamma_apply(3, gamma, &TruncatedSeries::zero(), 8).unwrap();
        assert!(t.coeffs().iter().all(|x| x.norm() == 0.0));
        assert!(t_gamma_apply(0, gamma, &TruncatedSeries::zero(), 8).is_err());
    }

    #[test]
    fn t_gamma_routes_agree() {
        let h = TruncatedSeries::polynomial(vec![c(0.5, 1.0), c(0.0, -2.0), c(1.0, 0.25), c(-0.75, 0.0)]);
        for n in 1..=3 {
            let gamma = c(-0.6, 0.2);
            let a = t_gamma_apply(n, gamma, &h, 48).unwrap();
            let b = t_gamma_apply_explicit(n, gamma, &h, 48).unwrap();
            assert!(a.prefix_eq(&b, 48, 1e-14), "n={n}");
        }
    }

    #[test]
    fn integration_by_parts_examples() {
        let z = TruncatedSeries::monomial(c(1.0, 0.0), 1);
        let r = integration_by_parts_residual(&z_pow(1), c(1.0, 0.0), &z, 64).unwrap();
        assert!(r < 1e-12, "{r}");
        let z2 = TruncatedSeries::monomial(c(1.0, 0.0), 2);
        let r = integration_by_parts_residual(&z_pow(2), c(0.0, 1.0), &z2, 64).unwrap();
        assert!(r < 1e-10, "{r}");
        let r = integration_by_parts_residual(&z_pow(2), c(0.0, 1.0), &TruncatedSeries::zero(), 64).unwrap();
        assert_eq!(r, 0.0);
        assert!(integration_by_parts_residual(&z_pow(1), c(1.0, 0.0), &TruncatedSeries::constant(c(1.0, 0.0)), 8).is_err());
    }
}
