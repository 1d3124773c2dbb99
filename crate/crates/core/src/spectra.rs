//! Exact classification of boundedness, compactness and spectra of `V_g` for
//! polynomial symbols on `H(ℂ)`, `H∞_v`, `H0_v`, `A_p` and `A⁰_p`.
//!
//! Decisions are comparisons on `(deg g, p, α, |β|, a)`. The characterisation
//! `σ = {0} ∪ closure{λ ≠ 0 : e^{g/λ} ∉ X}` is checked independently by
//! [`spectrum_cross_check`] using [`exp_membership`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::PolynomialSymbol;
use crate::series::Complex;
use crate::weights::{bigo_growth, littleo_growth, GrowthCondition, PowerWeight, EXPONENT_TOL};

/// Relative slack on `|β|/|λ|` against `α`, and on disk containment.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectrumShape {
    ZeroOnly,
    ClosedDisk { radius: f64 },
    WholePlane,
}

impl SpectrumShape {
    pub fn tag(&self) -> &'static str {
        match self {
            SpectrumShape::ZeroOnly => "zero",
            SpectrumShape::ClosedDisk { .. } => "disk",
            SpectrumShape::WholePlane => "plane",
        }
    }

    pub fn radius(&self) -> Option<f64> {
        match self {
            SpectrumShape::ClosedDisk { radius } => Some(*radius),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Space {
    /// `H(ℂ)` with the compact-open topology.
    Entire,
    /// `H∞_v`.
    Hv(PowerWeight),
    /// `H0_v`.
    H0v(PowerWeight),
    /// `A_p`.
    Ap(GrowthCondition),
    /// `A⁰_p`.
    A0p(GrowthCondition),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Entire => write!(f, "H(C)"),
            Space::Hv(w) => write!(f, "Hv(alpha={}, p={})", w.alpha(), w.p_exp()),
            Space::H0v(w) => write!(f, "H0v(alpha={}, p={})", w.alpha(), w.p_exp()),
            Space::Ap(gc) => write!(f, "Ap(scale={}, a={})", gc.scale(), gc.a_exp()),
            Space::A0p(gc) => write!(f, "A0p(scale={}, a={})", gc.scale(), gc.a_exp()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    pub shape: SpectrumShape,
    /// Always true: `V_g - λ` is injective for every `λ`.
    pub point_spectrum_empty: bool,
    pub space: Space,
    pub witness: Option<String>,
}

#[derive(Serialize)]
struct SpectrumWire<'a> {
    shape: &'static str,
    radius: Option<f64>,
    point_spectrum: &'static str,
    space: String,
    witness: Option<&'a str>,
}

impl SpectrumResult {
    fn new(shape: SpectrumShape, space: Space, witness: String) -> Self {
        Self {
            shape,
            point_spectrum_empty: true,
            space,
            witness: Some(witness),
        }
    }

    pub fn contains(&self, lambda: Complex) -> bool {
        match self.shape {
            SpectrumShape::ZeroOnly => lambda.norm() == 0.0,
            SpectrumShape::ClosedDisk { radius } => lambda.norm() <= radius * (1.0 + BOUNDARY_TOL),
            SpectrumShape::WholePlane => true,
        }
    }

    pub fn to_json(&self) -> String {
        let wire = SpectrumWire {
            shape: self.shape.tag(),
            radius: self.shape.radius(),
            point_spectrum: if self.point_spectrum_empty { "empty" } else { "nonempty" },
            space: self.space.to_string(),
            witness: self.witness.as_deref(),
        };
        serde_json::to_string(&wire).expect("spectrum serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundednessVerdict {
    pub bounded: bool,
    pub compact: bool,
}

/// Symbol passed to the boundedness classifier.
#[derive(Clone, Debug, PartialEq)]
pub enum Symbol {
    Polynomial(PolynomialSymbol),
    /// Any entire symbol that is not a polynomial.
    Transcendental,
}

impl From<PolynomialSymbol> for Symbol {
    fn from(g: PolynomialSymbol) -> Self {
        Symbol::Polynomial(g)
    }
}

/// On `H∞_v`, `v = exp(-α r^p)`: bounded iff `deg g <= ⌊p⌋`, compact iff `deg g <= ⌊p - 1⌋`.
pub fn classify_boundedness_hv(g: &Symbol, w: &PowerWeight) -> BoundednessVerdict {
    match g {
        Symbol::Transcendental => BoundednessVerdict {
            bounded: false,
            compact: false,
        },
        Symbol::Polynomial(g) => {
            let n = g.degree() as i64;
            let floor = w.floor_p();
            BoundednessVerdict {
                bounded: n <= floor,
                compact: n < floor,
            }
        }
    }
}

/// Degree relative to the weight exponent.
enum DegreeVsP {
    Below,
    Equal,
    Above,
}

fn compare_degree(g: &PolynomialSymbol, w: &PowerWeight) -> DegreeVsP {
    let n = g.degree() as f64;
    if (n - w.p_exp()).abs() < EXPONENT_TOL {
        DegreeVsP::Equal
    } else if n < w.p_exp() {
        DegreeVsP::Below
    } else {
        DegreeVsP::Above
    }
}

pub fn classify_spectrum_hv(g: &PolynomialSymbol, w: &PowerWeight) -> Result<SpectrumResult> {
    if !classify_boundedness_hv(&Symbol::Polynomial(g.clone()), w).bounded {
        return Err(Error::Unbounded);
    }
    let n = g.degree();
    let (shape, witness) = match compare_degree(g, w) {
        DegreeVsP::Equal => {
            let radius = g.leading().norm() / w.alpha();
            (
                SpectrumShape::ClosedDisk { radius },
                format!(
                    "deg g = {n} = p: closed disk |lambda| <= |beta|/alpha; the boundary circle enters \
                     through the closure of the set where e^(g/lambda) leaves the space; same spectrum on H0v"
                ),
            )
        }
        _ => (
            SpectrumShape::ZeroOnly,
            format!("deg g = {n} < p = {}: spectrum {{0}}; same spectrum on H0v", w.p_exp()),
        ),
    };
    Ok(SpectrumResult::new(shape, Space::Hv(*w), witness))
}

/// Same shape as [`classify_spectrum_hv`], tagged for `H0_v`.
pub fn classify_spectrum_h0v(g: &PolynomialSymbol, w: &PowerWeight) -> Result<SpectrumResult> {
    let mut r = classify_spectrum_hv(g, w)?;
    r.space = Space::H0v(*w);
    r.witness = r.witness.map(|s| format!("{s} (equality with the Hv spectrum recorded as a rule)"));
    Ok(r)
}

pub fn classify_spectrum_entire(g: &PolynomialSymbol) -> SpectrumResult {
    SpectrumResult::new(
        SpectrumShape::ZeroOnly,
        Space::Entire,
        format!("H(C): the resolvent exists for every lambda != 0 (deg g = {})", g.degree()),
    )
}

pub fn classify_spectrum_ap(g: &PolynomialSymbol, gc: &GrowthCondition) -> SpectrumResult {
    let n = g.degree();
    let a = gc.a_exp();
    if bigo_growth(g, gc) {
        debug_assert!(a >= 1.0 - EXPONENT_TOL, "r = O(p(r)) must hold");
        SpectrumResult::new(
            SpectrumShape::ZeroOnly,
            Space::Ap(*gc),
            format!("M(g,r) = O(p(r)) since deg g = {n} <= a = {a}: spectrum {{0}}"),
        )
    } else {
        let extra = if a < 1.0 { "; forced since p(r) = o(r)" } else { "" };
        SpectrumResult::new(
            SpectrumShape::WholePlane,
            Space::Ap(*gc),
            format!("M(g,r) = O(p(r)) fails since deg g = {n} > a = {a}: spectrum C{extra}"),
        )
    }
}

pub fn classify_spectrum_a0p(g: &PolynomialSymbol, gc: &GrowthCondition) -> SpectrumResult {
    let n = g.degree();
    let a = gc.a_exp();
    if littleo_growth(g, gc) {
        debug_assert!(a > 1.0, "r = o(p(r)) must hold");
        SpectrumResult::new(
            SpectrumShape::ZeroOnly,
            Space::A0p(*gc),
            format!("M(g,r) = o(p(r)) since deg g = {n} < a = {a}: spectrum {{0}}"),
        )
    } else {
        let extra = if a <= 1.0 + EXPONENT_TOL { "; forced since p(r) = O(r)" } else { "" };
        SpectrumResult::new(
            SpectrumShape::WholePlane,
            Space::A0p(*gc),
            format!("M(g,r) = o(p(r)) fails since deg g = {n} >= a = {a}: spectrum C{extra}"),
        )
    }
}

/// Spectrum on any supported space.
pub fn classify_spectrum(g: &PolynomialSymbol, space: &Space) -> Result<SpectrumResult> {
    match space {
        Space::Entire => Ok(classify_spectrum_entire(g)),
        Space::Hv(w) => classify_spectrum_hv(g, w),
        Space::H0v(w) => classify_spectrum_h0v(g, w),
        Space::Ap(gc) => Ok(classify_spectrum_ap(g, gc)),
        Space::A0p(gc) => Ok(classify_spectrum_a0p(g, gc)),
    }
}

/// Whether `e^{g/λ}` belongs to `space`.
///
/// On `H∞_v` with `deg g = p = n` this is `|β|/|λ| <= α`. When `|β|/|λ| = α`
/// and `g` has lower-order terms the answer depends on them; it is then
/// decided by following `Re(g/λ) - α r^n` near the rays where the leading
/// term peaks (see [`boundary_trend`]).
pub fn exp_membership(g: &PolynomialSymbol, lambda: Complex, space: &Space) -> Result<bool> {
    if lambda.norm() == 0.0 {
        return Err(Error::ZeroLambda);
    }
    let weighted = |w: &PowerWeight, vanishing: bool| match compare_degree(g, w) {
        DegreeVsP::Below => true,
        DegreeVsP::Above => false,
        DegreeVsP::Equal => {
            let c = g.leading().norm() / lambda.norm();
            let alpha = w.alpha();
            if c < alpha * (1.0 - BOUNDARY_TOL) {
                true
            } else if c > alpha * (1.0 + BOUNDARY_TOL) {
                false
            } else {
                match boundary_trend(g, lambda, alpha) {
                    Trend::Growing => false,
                    Trend::Level => !vanishing,
                    Trend::Decaying => true,
                }
            }
        }
    };
    Ok(match space {
        Space::Entire => true,
        Space::Hv(w) => weighted(w, false),
        Space::H0v(w) => weighted(w, true),
        Space::Ap(gc) => bigo_growth(g, gc),
        Space::A0p(gc) => littleo_growth(g, gc),
    })
}

/// Long-range behaviour of `sup_θ Re(g(re^{iθ})/λ) - α r^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Growing,
    Level,
    Decaying,
}

/// Trend of `U(r) = sup_θ [Re(g/λ) - α r^n]` for `|β/λ| = α`, `n = deg g`.
///
/// Writing `φ = arg(β/λ) + nθ`, the leading part is `-2α r^n sin²(φ/2)`,
/// which is computed directly to avoid cancellation. `U` is sampled on
/// radii up to `min(1e4, 10^{15/n})`; an increase of more than 0.5 over the
/// last decade reads as growth, a decrease of more than 0.5 as decay.
pub fn boundary_trend(g: &PolynomialSymbol, lambda: Complex, alpha: f64) -> Trend {
    if !g.has_lower_part() {
        return Trend::Level;
    }
    let n = g.degree();
    let lower = PolynomialSymbol::new(g.lower_part()).ok();
    let Some(lower) = lower else {
        return Trend::Level;
    };
    let inv = lambda.inv();
    let phase = (g.leading() * inv).arg();
    let u = |r: f64| -> f64 {
        let at = |delta: f64, j: usize| {
            let theta = (-phase + 2.0 * std::f64::consts::PI * j as f64) / n as f64 + delta;
            let s = (n as f64 * delta / 2.0).sin();
            let lead = -2.0 * alpha * r.powi(n as i32) * s * s;
            lead + (lower.eval(Complex::from_polar(r, theta)) * inv).re
        };
        (0..n)
            .map(|j| {
                // coarse scan of the sector, then local refinement around the best angle
                let half = std::f64::consts::PI / n as f64;
                let mut best = (0.0, at(0.0, j));
                let mut width = half;
                for _ in 0..30 {
                    let steps = 40;
                    let lo = best.0 - width;
                    for i in 0..=steps {
                        let d = lo + 2.0 * width * i as f64 / steps as f64;
                        let v = at(d, j);
                        if v > best.1 {
                            best = (d, v);
                        }
                    }
                    width /= 8.0;
                }
                best.1
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let r_hi = 1e4f64.min(10f64.powf(15.0 / n as f64));
    let radii = [r_hi / 100.0, r_hi / 10.0, r_hi / 3.0, r_hi];
    let vals: Vec<f64> = radii.iter().map(|&r| u(r)).collect();
    let rise = vals[3] - vals[1];
    if rise > 0.5 && vals[3] >= vals[2] && vals[2] >= vals[1] {
        Trend::Growing
    } else if rise < -0.5 && vals[3] <= vals[2] {
        Trend::Decaying
    } else {
        Trend::Level
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub points: usize,
    /// Sample points where the classifier and the membership law disagree.
    pub mismatches: Vec<[f64; 2]>,
    pub passed: bool,
}

/// Relative size of the probes used to approximate the closure of the failure set.
const CLOSURE_PROBE: f64 = 1e-8;

/// Sample points: the origin, 10 circles of 50 angles and 10 rays of 50 radii,
/// scaled to the disk radius when there is one.
pub fn cross_check_samples(result: &SpectrumResult) -> Vec<Complex> {
    let scale = result.shape.radius().unwrap_or(1.0);
    let mut pts = vec![Complex::new(0.0, 0.0)];
    for factor in [0.1, 0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0, 5.0, 10.0] {
        for k in 0..50 {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / 50.0;
            pts.push(Complex::from_polar(scale * factor, theta));
        }
    }
    for ray in 0..10 {
        let theta = 2.0 * std::f64::consts::PI * (ray as f64 + 0.5) / 10.0;
        for i in 0..50 {
            let r = scale * 1e-3 * 10f64.powf(6.0 * i as f64 / 49.0);
            pts.push(Complex::from_polar(r, theta));
        }
    }
    pts
}

/// Compares `result` pointwise with `{0} ∪ closure{λ : e^{g/λ} ∉ X}` on
/// [`cross_check_samples`]. A point is in the closure of the failure set when
/// the failure set contains it or one of its radial/angular neighbours at
/// relative distance `1e-8`.
pub fn spectrum_cross_check(result: &SpectrumResult, g: &PolynomialSymbol) -> CrossCheckReport {
    let pts = cross_check_samples(result);
    let fails = |mu: Complex| !exp_membership(g, mu, &result.space).unwrap_or(true);
    let mismatches: Vec<[f64; 2]> = pts
        .iter()
        .filter(|&&lambda| {
            let in_law = if lambda.norm() == 0.0 {
                true
            } else {
                let rot = Complex::from_polar(1.0, CLOSURE_PROBE);
                [
                    lambda,
                    lambda * (1.0 + CLOSURE_PROBE),
                    lambda * (1.0 - CLOSURE_PROBE),
                    lambda * rot,
                    lambda * rot.conj(),
                ]
                .into_iter()
                .any(fails)
            };
            in_law != result.contains(lambda)
        })
        .map(|l| [l.re, l.im])
        .collect();
    CrossCheckReport {
        points: pts.len(),
        passed: mismatches.is_empty(),
        mismatches,
    }
}
