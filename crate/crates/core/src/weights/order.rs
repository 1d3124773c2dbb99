//! Order and type of an entire function from its Taylor coefficients.
//!
//! For an entire function of order `ρ` and type `τ` the coefficients satisfy
//! `ln(1/|c_k|) = (k ln k)/ρ - (k/ρ) ln(e ρ τ) + O(ln k)`, the refinement of
//! the classical `ρ = limsup k ln k / ln(1/|c_k|)` and
//! `e ρ τ = limsup k |c_k|^{ρ/k}`. The raw limsup quotients converge like
//! `1/ln k`, far too slowly for a few hundred coefficients, so the estimator
//! fits `ln(1/|c_k|) ≈ A k ln k + B k + C ln k + D` over the window and reads
//! `ρ = 1/A`, `τ = exp(-B ρ)/(e ρ)`.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::{GrowthCondition, Verdict};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Relative tolerance for order/type comparisons.
pub const DEFAULT_ORDER_TOL: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderTypeEstimate {
    pub order: f64,
    pub type_val: f64,
    pub type_infinite: bool,
    /// Inclusive coefficient index range used.
    pub window: (usize, usize),
    /// Number of coefficients that entered the fit.
    pub points: usize,
}

/// Upper half of the stored coefficients, `max(2, N/2) ..= N`.
pub fn default_window(f: &TruncatedSeries) -> RangeInclusive<usize> {
    let n = f.trunc_degree();
    (n / 2).max(2)..=n
}

pub fn order_type(f: &TruncatedSeries, window: RangeInclusive<usize>) -> Result<OrderTypeEstimate> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo < 2 || hi > f.trunc_degree() || lo > hi {
        return Err(Error::InvalidParameter(format!(
            "window {lo}..={hi} must lie within 2..={}",
            f.trunc_degree()
        )));
    }
    let mods: Vec<(usize, f64)> = (lo..=hi).map(|k| (k, f.coeff(k).norm())).collect();
    let Some(last) = mods.iter().rposition(|(_, m)| *m > 0.0) else {
        return Err(Error::InsufficientData);
    };
    // a window whose upper half is all zero reads as a polynomial
    if last < mods.len() / 2 {
        return Ok(OrderTypeEstimate {
            order: 0.0,
            type_val: 0.0,
            type_infinite: false,
            window: (lo, hi),
            points: 0,
        });
    }
    // subnormal coefficients carry too few digits to fit
    let pts: Vec<(f64, f64)> = mods
        .iter()
        .filter(|(_, m)| *m >= f64::MIN_POSITIVE && *m < 1.0)
        .map(|&(k, m)| (k as f64, -m.ln()))
        .collect();
    let basis: &[fn(f64) -> f64] = if pts.len() >= 6 {
        &[|k| k * k.ln(), |k| k, |k| k.ln(), |_| 1.0]
    } else if pts.len() >= 3 {
        &[|k| k * k.ln(), |k| k]
    } else {
        return Err(Error::InsufficientData);
    };
    let columns: Vec<Vec<f64>> = basis.iter().map(|b| pts.iter().map(|(k, _)| b(*k)).collect()).collect();
    let ys: Vec<f64> = pts.iter().map(|(_, y)| *y).collect();
    let coef = least_squares(&columns, &ys);
    let (a, b) = (coef[0], coef[1]);
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::NotEntire);
    }
    let order = 1.0 / a;
    let type_val = (-b * order).exp() / (std::f64::consts::E * order);
    Ok(OrderTypeEstimate {
        order,
        type_val,
        type_infinite: !type_val.is_finite(),
        window: (lo, hi),
        points: pts.len(),
    })
}

/// Least squares by modified Gram-Schmidt on unit-scaled columns.
fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let n = columns.len();
    let scales: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE))
        .collect();
    let mut q: Vec<Vec<f64>> = columns
        .iter()
        .zip(&scales)
        .map(|(c, s)| c.iter().map(|x| x / s).collect())
        .collect();
    let mut r = vec![vec![0.0; n]; n];
    for j in 0..n {
        for i in 0..j {
            let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            r[i][j] = d;
            let qi = q[i].clone();
            for (x, qi) in q[j].iter_mut().zip(&qi) {
                *x -= d * qi;
            }
        }
        let norm = q[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        r[j][j] = norm;
        if norm > 0.0 {
            for x in &mut q[j] {
                *x /= norm;
            }
        }
    }
    let qty: Vec<f64> = q.iter().map(|qj| qj.iter().zip(y).map(|(a, b)| a * b).sum()).collect();
    let mut x = vec![0.0; n];
    for j in (0..n).rev() {
        let s: f64 = (j + 1..n).map(|k| r[j][k] * x[k]).sum();
        x[j] = if r[j][j] > 0.0 { (qty[j] - s) / r[j][j] } else { 0.0 };
    }
    x.iter().zip(&scales).map(|(x, s)| x / s).collect()
}

/// Membership in `A_p` for `p(r) = c r^a`: order below `a`, or order `a` with finite type.
pub fn membership_ap(f: &TruncatedSeries, gc: &GrowthCondition) -> Result<Verdict> {
    membership_ap_with_tol(f, gc, DEFAULT_ORDER_TOL)
}

pub fn membership_ap_with_tol(f: &TruncatedSeries, gc: &GrowthCondition, tol: f64) -> Result<Verdict> {
    match order_band(f, gc, tol)? {
        Band::Below => Ok(Verdict::InSpace),
        Band::Above => Ok(Verdict::NotInSpace),
        Band::Equal(est) if est.type_infinite => Ok(Verdict::Inconclusive),
        Band::Equal(_) => Ok(Verdict::InSpace),
    }
}

/// Membership in `A⁰_p`: order below `a`, or order `a` with type 0.
pub fn membership_a0p(f: &TruncatedSeries, gc: &GrowthCondition) -> Result<Verdict> {
    membership_a0p_with_tol(f, gc, DEFAULT_ORDER_TOL)
}

pub fn membership_a0p_with_tol(f: &TruncatedSeries, gc: &GrowthCondition, tol: f64) -> Result<Verdict> {
    match order_band(f, gc, tol)? {
        Band::Below => Ok(Verdict::InSpace),
        Band::Above => Ok(Verdict::NotInSpace),
        Band::Equal(est) if est.type_infinite || est.type_val > 3.0 * tol => Ok(Verdict::NotInSpace),
        Band::Equal(est) if est.type_val <= tol => Ok(Verdict::InSpace),
        Band::Equal(_) => Ok(Verdict::Inconclusive),
    }
}

enum Band {
    Below,
    Equal(OrderTypeEstimate),
    Above,
}

fn order_band(f: &TruncatedSeries, gc: &GrowthCondition, tol: f64) -> Result<Band> {
    if f.is_exact_polynomial() {
        return Ok(Band::Below);
    }
    let est = order_type(f, default_window(f))?;
    let a = gc.a_exp();
    Ok(if est.order < a * (1.0 - tol) {
        Band::Below
    } else if est.order > a * (1.0 + tol) {
        Band::Above
    } else {
        Band::Equal(est)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Complex;

    fn exp_of(beta: f64, n: usize, degree: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(Complex::new(beta, 0.0), n).exp(degree)
    }

    #[test]
    fn exponential_has_order_and_type_one() {
        let est = order_type(&exp_of(1.0, 1, 200), 100..=200).unwrap();
        assert!((est.order - 1.0).abs() < 0.05, "{est:?}");
        assert!((est.type_val - 1.0).abs() < 0.05, "{est:?}");
    }

    #[test]
    fn gaussian_has_order_two() {
        let est = order_type(&exp_of(1.0, 2, 200), 100..=200).unwrap();
        assert!((est.order - 2.0).abs() < 0.1, "{est:?}");
        assert!((est.type_val - 1.0).abs() < 0.05, "{est:?}");
    }

    #[test]
    fn polynomial_has_order_zero() {
        let f = TruncatedSeries::from_real(&[1.0, 2.0, 0.5, 0.25, 0.125, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let est = order_type(&f, 2..=11).unwrap();
        assert_eq!(est.order, 0.0);
    }

    #[test]
    fn errors() {
        let f = TruncatedSeries::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(order_type(&f, 2..=4), Err(Error::InsufficientData));
        assert!(order_type(&f, 1..=4).is_err());
        assert!(order_type(&f, 2..=9).is_err());
    }

    #[test]
    fn hormander_memberships() {
        let e = exp_of(1.0, 1, 200);
        let r1 = GrowthCondition::new(1.0, 1.0).unwrap();
        let r2 = GrowthCondition::new(1.0, 2.0).unwrap();
        assert_eq!(membership_a0p(&e, &r2).unwrap(), Verdict::InSpace);
        assert_eq!(membership_ap(&e, &r1).unwrap(), Verdict::InSpace);
        assert_eq!(membership_a0p(&e, &r1).unwrap(), Verdict::NotInSpace);
        assert_eq!(membership_ap(&exp_of(1.0, 2, 200), &r1).unwrap(), Verdict::NotInSpace);
        let poly = TruncatedSeries::from_real(&[1.0, 1.0]);
        assert_eq!(membership_a0p(&poly, &r1).unwrap(), Verdict::InSpace);
    }
}
