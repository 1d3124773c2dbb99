use serde::Serialize;

use super::{PowerWeight, Verdict};
use crate::error::{Error, Result};
use crate::series::{default_samples, CircleSampler, TruncatedSeries};

pub const DEFAULT_GRID: usize = 512;

const GRID_START: f64 = 1e-3;
/// A last-decade maximum must beat everything before it by this relative margin.
const GROWTH_MARGIN: f64 = 1e-9;
/// Relative agreement required between the estimates at `r_max` and `2 r_max`.
const STABILITY_TOL: f64 = 1e-2;
/// Profile end value, relative to the maximum, below which it is read as tending to 0.
const VANISHING_RATIO: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormVerdict {
    Bounded,
    DivergenceSuspected,
}

/// Grid estimate of `‖f‖_v = sup v(|z|) |f(z)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormEstimate {
    /// Largest sampled `v(r) M(f,r)`; a lower bound for the norm of the stored polynomial.
    pub value: f64,
    pub attained_r: f64,
    pub verdict: NormVerdict,
    pub r_max: f64,
    pub grid_points: usize,
    /// `v(r_max) M(f, r_max) / value`.
    pub tail_ratio: f64,
}

/// Maximizes `v(r) M(f,r)` over `r = 0` and a geometric grid on `[1e-3, r_max]`.
///
/// The verdict is `DivergenceSuspected` when the maximum over the last decade
/// `[r_max/10, r_max]` strictly exceeds everything sampled before it, i.e. the
/// running maximum is still climbing at the end of the grid. A truncated
/// series can only show divergence this way, so the verdict is a heuristic.
pub fn weighted_norm(f: &TruncatedSeries, w: &PowerWeight, r_max: f64, grid: usize) -> Result<NormEstimate> {
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("r_max must be positive, got {r_max}")));
    }
    if grid < 16 {
        return Err(Error::InvalidParameter(format!("grid needs at least 16 points, got {grid}")));
    }
    let sampler = CircleSampler::new(default_samples(f.trunc_degree()));
    let r_min = if r_max > 10.0 * GRID_START { GRID_START } else { r_max * GRID_START };
    let step = (r_max / r_min).ln() / (grid - 1) as f64;
    let decade = r_max / 10.0;

    let mut value = f.coeff(0).norm();
    let mut attained_r = 0.0;
    let mut before = value;
    let mut last_decade = f64::NEG_INFINITY;
    let mut end = value;
    for i in 0..grid {
        let r = if i == grid - 1 { r_max } else { r_min * (step * i as f64).exp() };
        let v = (w.log_value(r) + sampler.log_max_modulus(f, r)).exp();
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v > value {
            value = v;
            attained_r = r;
        }
        if r >= decade {
            last_decade = last_decade.max(v);
        } else {
            before = before.max(v);
        }
        end = v;
    }
    let climbing = last_decade > before * (1.0 + GROWTH_MARGIN) || !value.is_finite();
    Ok(NormEstimate {
        value,
        attained_r,
        verdict: if climbing {
            NormVerdict::DivergenceSuspected
        } else {
            NormVerdict::Bounded
        },
        r_max,
        grid_points: grid,
        tail_ratio: if value > 0.0 { end / value } else { 0.0 },
    })
}

/// [`weighted_norm`] with the default radius and grid.
pub fn weighted_norm_default(f: &TruncatedSeries, w: &PowerWeight) -> NormEstimate {
    weighted_norm(f, w, w.default_r_max(), DEFAULT_GRID).expect("default grid parameters are valid")
}

/// Membership in `H∞_v`, with the `H0_v` sub-verdict when it can be read off.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HvMembership {
    pub verdict: Verdict,
    /// Whether `v(|z|)|f(z)| -> 0` (membership in `H0_v`); `None` when undecided.
    pub vanishing: Option<bool>,
}

/// Exact polynomials are always in `H0_v`. Otherwise the norm is estimated at
/// `r_max` and `2 r_max`: bounded at both with a stable value gives `in`,
/// suspected divergence at both gives `out`, anything else is inconclusive.
pub fn membership_hv(f: &TruncatedSeries, w: &PowerWeight) -> HvMembership {
    if f.is_exact_polynomial() {
        return HvMembership {
            verdict: Verdict::InSpace,
            vanishing: Some(true),
        };
    }
    let r_max = w.default_r_max();
    let near = weighted_norm(f, w, r_max, DEFAULT_GRID).expect("valid grid");
    let far = weighted_norm(f, w, 2.0 * r_max, DEFAULT_GRID).expect("valid grid");
    match (near.verdict, far.verdict) {
        (NormVerdict::Bounded, NormVerdict::Bounded)
            if (near.value - far.value).abs() <= STABILITY_TOL * near.value.max(far.value) =>
        {
            HvMembership {
                verdict: Verdict::InSpace,
                vanishing: Some(near.tail_ratio < VANISHING_RATIO),
            }
        }
        (NormVerdict::DivergenceSuspected, NormVerdict::DivergenceSuspected) => HvMembership {
            verdict: Verdict::NotInSpace,
            vanishing: Some(false),
        },
        _ => HvMembership {
            verdict: Verdict::Inconclusive,
            vanishing: None,
        },
    }
}
