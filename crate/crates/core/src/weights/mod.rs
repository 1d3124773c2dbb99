//! Weights `v(r) = exp(-α r^p)`, power growth conditions `p(r) = c r^a`,
//! weighted sup-norm estimates and space-membership verdicts.

mod norm;
mod order;

pub use norm::{
    membership_hv, weighted_norm, weighted_norm_default, HvMembership, NormEstimate, NormVerdict, DEFAULT_GRID,
};
pub use order::{
    default_window, membership_a0p, membership_a0p_with_tol, membership_ap, membership_ap_with_tol, order_type,
    OrderTypeEstimate, DEFAULT_ORDER_TOL,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::PolynomialSymbol;
use crate::series::{default_samples, CircleSampler, TruncatedSeries};

/// Tolerance used when comparing a polynomial degree with a real exponent.
pub const EXPONENT_TOL: f64 = 1e-9;

/// `v(r) = exp(-α r^p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerWeight {
    alpha: f64,
    p_exp: f64,
}

impl PowerWeight {
    pub fn new(alpha: f64, p_exp: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("weight needs alpha > 0, got {alpha}")));
        }
        if !(p_exp.is_finite() && p_exp > 0.0) {
            return Err(Error::InvalidParameter(format!("weight needs p > 0, got {p_exp}")));
        }
        Ok(Self { alpha, p_exp })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p_exp(&self) -> f64 {
        self.p_exp
    }

    pub fn value(&self, r: f64) -> f64 {
        self.log_value(r).exp()
    }

    pub fn log_value(&self, r: f64) -> f64 {
        -self.alpha * r.powf(self.p_exp)
    }

    /// Radius where `α r^p = 50`; beyond it the weight is below `e^{-50}`.
    pub fn default_r_max(&self) -> f64 {
        (50.0 / self.alpha).powf(1.0 / self.p_exp)
    }

    /// Checks positivity, monotonicity and `r^m v(r) -> 0` (m <= 20) on a geometric grid.
    pub fn is_admissible_on_grid(&self) -> bool {
        let grid: Vec<f64> = (0..=400).map(|i| 1e-3 * 10f64.powf(i as f64 / 40.0)).collect();
        let positive = self.value(0.0) == 1.0 && grid.iter().all(|&r| self.value(r) >= 0.0);
        let monotone = grid.windows(2).all(|w| self.value(w[1]) <= self.value(w[0]));
        // log(r^m v(r)) = m ln r - α r^p must head to -∞; look far out
        let far = self.default_r_max() * 1e3;
        let decays = (0..=20).all(|m| {
            let at = |r: f64| m as f64 * r.ln() + self.log_value(r);
            at(far) < at(far / 2.0) && at(far) < -50.0
        });
        positive && monotone && decays
    }

    pub fn is_integral_exponent(&self) -> bool {
        (self.p_exp - self.p_exp.round()).abs() < EXPONENT_TOL
    }

    /// `⌊p⌋`, with `p` snapped to the nearest integer when within [`EXPONENT_TOL`].
    pub fn floor_p(&self) -> i64 {
        snapped_floor(self.p_exp)
    }
}

pub(crate) fn snapped_floor(x: f64) -> i64 {
    if (x - x.round()).abs() < EXPONENT_TOL {
        x.round() as i64
    } else {
        x.floor() as i64
    }
}

/// `p(r) = scale · r^a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthCondition {
    scale: f64,
    a_exp: f64,
}

impl GrowthCondition {
    pub fn new(scale: f64, a_exp: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!("growth condition needs scale > 0, got {scale}")));
        }
        if !(a_exp.is_finite() && a_exp > 0.0) {
            return Err(Error::InvalidParameter(format!("growth condition needs a > 0, got {a_exp}")));
        }
        Ok(Self { scale, a_exp })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn a_exp(&self) -> f64 {
        self.a_exp
    }

    pub fn value(&self, r: f64) -> f64 {
        self.scale * r.powf(self.a_exp)
    }

    /// `p(2r) / p(r)`, constant for power growth.
    pub fn doubling_ratio(&self) -> f64 {
        2f64.powf(self.a_exp)
    }

    /// `(M, s)` with `p(r) <= M r^s + M` for all `r >= 0`.
    pub fn polynomial_bound(&self) -> (f64, f64) {
        (self.scale, self.a_exp)
    }

    /// Samples `log(1 + r^2) / p(r) -> 0` and `p(2r) = O(p(r))` on `r = 2^k`.
    pub fn satisfies_axioms(&self) -> bool {
        let radii: Vec<f64> = (0..=300).map(|k| 2f64.powi(k)).collect();
        let ratio = |r: f64| (r * r).ln_1p() / self.value(r);
        let vanishing = ratio(radii[300]) < 1e-6 && radii.windows(2).skip(250).all(|w| ratio(w[1]) < ratio(w[0]));
        let doubling = radii
            .iter()
            .all(|&r| (self.value(2.0 * r) / self.value(r) - self.doubling_ratio()).abs() <= 1e-9 * self.doubling_ratio());
        let (m, s) = self.polynomial_bound();
        let bounded = radii.iter().all(|&r| self.value(r) <= m * r.powf(s) + m);
        vanishing && doubling && bounded
    }
}

/// Space-membership verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "in")]
    InSpace,
    #[serde(rename = "out")]
    NotInSpace,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::InSpace => "in",
            Verdict::NotInSpace => "out",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// `M(g,r) = O(p(r))` for polynomial `g` and power growth: `deg g <= a`.
pub fn bigo_growth(g: &PolynomialSymbol, gc: &GrowthCondition) -> bool {
    g.degree() as f64 <= gc.a_exp + EXPONENT_TOL
}

/// `M(g,r) = o(p(r))`: `deg g < a`.
pub fn littleo_growth(g: &PolynomialSymbol, gc: &GrowthCondition) -> bool {
    (g.degree() as f64) < gc.a_exp - EXPONENT_TOL
}

/// Both sides of `M(h,r) <= 2 (A(h,2r) - Re h(0)) + |h(0)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaratheodoryCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Tolerance on the sampled maxima, relative to `max(1, rhs)`.
pub const CARATHEODORY_TOL: f64 = 1e-9;

pub fn caratheodory_check(h: &TruncatedSeries, r: f64) -> Result<CaratheodoryCheck> {
    let sampler = CircleSampler::new(default_samples(h.trunc_degree()));
    caratheodory_check_with(h, r, &sampler)
}

pub fn caratheodory_check_with(h: &TruncatedSeries, r: f64, sampler: &CircleSampler) -> Result<CaratheodoryCheck> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let h0 = h.coeff(0);
    let lhs = sampler.max_modulus(h, r);
    let rhs = 2.0 * (sampler.max_real_part(h, 2.0 * r) - h0.re) + h0.norm();
    let holds = lhs <= rhs + CARATHEODORY_TOL * rhs.abs().max(1.0);
    Ok(CaratheodoryCheck { lhs, rhs, holds })
}
