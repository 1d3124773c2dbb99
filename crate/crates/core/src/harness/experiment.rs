use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::parser::{parse_complex, parse_symbol};
use super::quadrature::{t_gamma_quadrature, GaussLegendre, DEFAULT_NODES};
use super::report::{CaseRecord, Report, Status};
use crate::error::{Error, Result};
use crate::operators::{finite_section, resolvent_apply, resolvent_residual, t_gamma_apply, PolynomialSymbol};
use crate::series::{default_samples, CircleSampler, Complex, TruncatedSeries, DEFAULT_DEGREE};
use crate::spectra::{classify_spectrum, exp_membership, spectrum_cross_check, Space, SpectrumShape};
use crate::weights::{
    caratheodory_check_with, weighted_norm, GrowthCondition, NormVerdict, PowerWeight, CARATHEODORY_TOL,
    DEFAULT_GRID,
};

/// A fully specified experiment; the same spec always yields the same report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default)]
    pub seed: u64,
    /// Deliberate error injected into each case; 0 for a faithful run.
    #[serde(default)]
    pub perturbation: f64,
    #[serde(flatten)]
    pub params: Params,
}

fn default_degree() -> usize {
    DEFAULT_DEGREE
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Params {
    /// `f = R_{λ,g} h` must satisfy `f - (1/λ) V_g f = h`.
    /// Perturbation: `f` is computed at `λ(1+δ)`.
    ResolventIdentity {
        /// Cycled over the cases; empty means a random symbol per case.
        symbols: Vec<String>,
        lambdas: Vec<String>,
        cases: usize,
        symbol_max_degree: usize,
        h_max_degree: usize,
        tol: f64,
    },
    /// `‖T_γ h‖_v / ‖h‖_v <= (1/n)(α - |γ|)^{-1}` for `v = exp(-α r^n)`,
    /// plus a quadrature check of `T_γ h` at one point per case.
    /// Perturbation: the quadrature side uses `γ(1+δ)`.
    TGammaBound {
        n_values: Vec<usize>,
        alpha: f64,
        gammas: Vec<String>,
        /// Extra values drawn uniformly from the disk `|γ| <= gamma_max`.
        sampled_gammas: usize,
        gamma_max: f64,
        polynomials: usize,
        exponentials: usize,
        h_max_degree: usize,
        tol: f64,
        oracle_tol: f64,
        /// Also measure `‖T_γ h‖_v` at twice the working degree.
        drift_check: bool,
    },
    /// Numeric divergence verdicts for `e^{g/λ}` against the exact rule,
    /// with `|λ| = factor · |β|/α`. Perturbation: the numeric side uses `α(1+δ)`.
    MembershipDivergence {
        symbols: Vec<String>,
        alpha: f64,
        factors: Vec<f64>,
        angles: usize,
        boundary_tol: f64,
    },
    /// `M(h,r) <= 2(A(h,2r) - Re h(0)) + |h(0)|` on random polynomials.
    /// Perturbation: the right side is scaled by `1-δ`.
    Caratheodory {
        count: usize,
        max_degree: usize,
        radii: Vec<f64>,
    },
    /// Finite sections are strictly lower triangular with zero spectrum.
    /// Perturbation: `δ` is written on the diagonal.
    NilpotentSections {
        symbols: Vec<String>,
        random_symbols: usize,
        symbol_max_degree: usize,
        sizes: Vec<usize>,
    },
    /// Classifier output against `{0} ∪ closure{λ : e^{g/λ} ∉ X}`.
    /// Perturbation: zero becomes a disk of radius `δ`, a disk grows by
    /// `1+δ`, the plane becomes zero.
    SpectrumCrossCheck { cases: Vec<CrossCase> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCase {
    pub symbol: String,
    #[serde(flatten)]
    pub space: SpaceSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "lowercase")]
pub enum SpaceSpec {
    Entire,
    Hv { alpha: f64, p: f64 },
    H0v { alpha: f64, p: f64 },
    Ap { scale: f64, a: f64 },
    A0p { scale: f64, a: f64 },
}

impl SpaceSpec {
    pub fn to_space(self) -> Result<Space> {
        Ok(match self {
            SpaceSpec::Entire => Space::Entire,
            SpaceSpec::Hv { alpha, p } => Space::Hv(PowerWeight::new(alpha, p)?),
            SpaceSpec::H0v { alpha, p } => Space::H0v(PowerWeight::new(alpha, p)?),
            SpaceSpec::Ap { scale, a } => Space::Ap(GrowthCondition::new(scale, a)?),
            SpaceSpec::A0p { scale, a } => Space::A0p(GrowthCondition::new(scale, a)?),
        })
    }
}

/// Experiment kinds by name, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    ResolventIdentity,
    TGammaBound,
    MembershipDivergence,
    Caratheodory,
    NilpotentSections,
    SpectrumCrossCheck,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::ResolventIdentity,
        ExperimentKind::TGammaBound,
        ExperimentKind::MembershipDivergence,
        ExperimentKind::Caratheodory,
        ExperimentKind::NilpotentSections,
        ExperimentKind::SpectrumCrossCheck,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::ResolventIdentity => "resolvent-identity",
            ExperimentKind::TGammaBound => "t-gamma-bound",
            ExperimentKind::MembershipDivergence => "membership-divergence",
            ExperimentKind::Caratheodory => "caratheodory",
            ExperimentKind::NilpotentSections => "nilpotent-sections",
            ExperimentKind::SpectrumCrossCheck => "spectrum-cross-check",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    /// Accepts `resolvent-identity`, `resolvent_identity` and `ResolventIdentity`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name().replace('-', "") == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown experiment kind `{s}`")))
    }
}

impl Params {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            Params::ResolventIdentity { .. } => ExperimentKind::ResolventIdentity,
            Params::TGammaBound { .. } => ExperimentKind::TGammaBound,
            Params::MembershipDivergence { .. } => ExperimentKind::MembershipDivergence,
            Params::Caratheodory { .. } => ExperimentKind::Caratheodory,
            Params::NilpotentSections { .. } => ExperimentKind::NilpotentSections,
            Params::SpectrumCrossCheck { .. } => ExperimentKind::SpectrumCrossCheck,
        }
    }

    /// Small default parameter sets for each kind.
    pub fn default_for(kind: ExperimentKind) -> Self {
        let strings = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match kind {
            ExperimentKind::ResolventIdentity => Params::ResolventIdentity {
                symbols: strings(&["z^2"]),
                lambdas: strings(&["1", "i", "2-i"]),
                cases: 30,
                symbol_max_degree: 3,
                h_max_degree: 20,
                tol: 1e-10,
            },
            ExperimentKind::TGammaBound => Params::TGammaBound {
                n_values: vec![2],
                alpha: 1.0,
                gammas: strings(&["0", "0.3", "0.6+0.2i"]),
                sampled_gammas: 0,
                gamma_max: 0.8,
                polynomials: 8,
                exponentials: 4,
                h_max_degree: 20,
                tol: 0.05,
                oracle_tol: 1e-8,
                drift_check: true,
            },
            ExperimentKind::MembershipDivergence => Params::MembershipDivergence {
                symbols: strings(&["z"]),
                alpha: 1.0,
                factors: vec![0.5, 1.0, 2.0],
                angles: 4,
                boundary_tol: 0.02,
            },
            ExperimentKind::Caratheodory => Params::Caratheodory {
                count: 1000,
                max_degree: 6,
                radii: vec![0.5, 1.0, 2.0, 5.0],
            },
            ExperimentKind::NilpotentSections => Params::NilpotentSections {
                symbols: strings(&["z", "z^2", "6z^2 - z", "(1+2i)z^3 + z"]),
                random_symbols: 4,
                symbol_max_degree: 3,
                sizes: vec![8, 32, 128],
            },
            ExperimentKind::SpectrumCrossCheck => {
                let case = |symbol: &str, space: SpaceSpec| CrossCase {
                    symbol: symbol.to_string(),
                    space,
                };
                Params::SpectrumCrossCheck {
                    cases: vec![
                        case("6z^2 - z", SpaceSpec::Hv { alpha: 3.0, p: 2.0 }),
                        case("z^2 + z", SpaceSpec::Hv { alpha: 1.0, p: 2.5 }),
                        case("z", SpaceSpec::Hv { alpha: 1.0, p: 1.0 }),
                        case("z", SpaceSpec::H0v { alpha: 1.0, p: 1.0 }),
                        case("z^5 - 3z^2", SpaceSpec::Entire),
                        case("z", SpaceSpec::Ap { scale: 1.0, a: 2.0 }),
                        case("z^3", SpaceSpec::Ap { scale: 1.0, a: 2.0 }),
                        case("z", SpaceSpec::Ap { scale: 1.0, a: 0.5 }),
                        case("z", SpaceSpec::A0p { scale: 1.0, a: 2.0 }),
                        case("z^2", SpaceSpec::A0p { scale: 1.0, a: 2.0 }),
                        case("z", SpaceSpec::A0p { scale: 1.0, a: 1.0 }),
                    ],
                }
            }
        }
    }
}

impl ExperimentSpec {
    pub fn new(params: Params) -> Self {
        Self {
            degree: DEFAULT_DEGREE,
            seed: 0,
            perturbation: 0.0,
            params,
        }
    }

    pub fn default_for(kind: ExperimentKind) -> Self {
        Self::new(Params::default_for(kind))
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_perturbation(mut self, delta: f64) -> Self {
        self.perturbation = delta;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.degree < 2 {
            return bad("degree must be at least 2");
        }
        if !self.perturbation.is_finite() {
            return bad("perturbation must be finite");
        }
        match &self.params {
            Params::ResolventIdentity { lambdas, cases, symbol_max_degree, .. } => {
                if lambdas.is_empty() || *cases == 0 || *symbol_max_degree == 0 {
                    return bad("resolvent-identity needs lambdas, cases > 0 and symbol_max_degree > 0");
                }
            }
            Params::TGammaBound { n_values, gammas, sampled_gammas, polynomials, exponentials, .. } => {
                if n_values.is_empty() || n_values.contains(&0) {
                    return bad("t-gamma-bound needs n_values >= 1");
                }
                if gammas.is_empty() && *sampled_gammas == 0 {
                    return bad("t-gamma-bound needs at least one gamma");
                }
                if polynomials + exponentials == 0 {
                    return bad("t-gamma-bound needs a nonempty function battery");
                }
            }
            Params::MembershipDivergence { symbols, factors, angles, .. } => {
                if symbols.is_empty() || factors.is_empty() || *angles == 0 {
                    return bad("membership-divergence needs symbols, factors and angles");
                }
                if factors.iter().any(|f| !(*f > 0.0 && f.is_finite())) {
                    return bad("membership-divergence factors must be positive");
                }
            }
            Params::Caratheodory { count, radii, .. } => {
                if *count == 0 || radii.is_empty() {
                    return bad("caratheodory needs count > 0 and radii");
                }
            }
            Params::NilpotentSections { symbols, random_symbols, symbol_max_degree, sizes } => {
                if symbols.is_empty() && *random_symbols == 0 {
                    return bad("nilpotent-sections needs symbols");
                }
                if sizes.is_empty() || (*random_symbols > 0 && *symbol_max_degree == 0) {
                    return bad("nilpotent-sections needs sizes and symbol_max_degree > 0");
                }
            }
            Params::SpectrumCrossCheck { cases } => {
                if cases.is_empty() {
                    return bad("spectrum-cross-check needs cases");
                }
            }
        }
        Ok(())
    }
}

/// Independent generator for case `index`: the seed picks the key and the
/// index picks the stream, so cases do not depend on evaluation order.
fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Stream for data shared by all cases (sampled grids, test batteries).
const SETUP_STREAM: u64 = u64::MAX;

fn unit_square(rng: &mut impl Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

fn random_polynomial(rng: &mut impl Rng, max_degree: usize) -> TruncatedSeries {
    let degree = rng.random_range(0..=max_degree);
    TruncatedSeries::polynomial((0..=degree).map(|_| unit_square(rng)).collect())
}

fn random_symbol(rng: &mut impl Rng, max_degree: usize) -> PolynomialSymbol {
    let degree = rng.random_range(1..=max_degree);
    loop {
        let mut coeffs = vec![Complex::new(0.0, 0.0)];
        coeffs.extend((0..degree).map(|_| unit_square(rng)));
        if let Ok(g) = PolynomialSymbol::new(coeffs) {
            if g.degree() == degree {
                return g;
            }
        }
    }
}

/// `a+bi` in a form [`parse_complex`] reads back.
pub fn fmt_complex(c: Complex) -> String {
    format!("{}{:+}i", c.re, c.im)
}

fn parse_all<T>(items: &[String], f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    items.iter().map(|s| f(s)).collect()
}

type Fields = BTreeMap<String, Value>;

fn fields<const K: usize>(pairs: [(&str, Value); K]) -> Fields {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn record(index: usize, ok: bool, inputs: Fields, measured: Fields, note: Option<String>) -> CaseRecord {
    CaseRecord {
        index,
        status: if ok { Status::Pass } else { Status::Fail },
        inputs,
        measured,
        note,
    }
}

fn skip(index: usize, inputs: Fields, err: &Error) -> CaseRecord {
    CaseRecord {
        index,
        status: Status::Skip,
        inputs,
        measured: Fields::new(),
        note: Some(err.to_string()),
    }
}

/// Runs every case of `spec`, in parallel, and collects the records in case order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    let start = Instant::now();
    let cases = match &spec.params {
        Params::ResolventIdentity { .. } => resolvent_identity(spec)?,
        Params::TGammaBound { .. } => t_gamma_bound(spec)?,
        Params::MembershipDivergence { .. } => membership_divergence(spec)?,
        Params::Caratheodory { .. } => caratheodory(spec)?,
        Params::NilpotentSections { .. } => nilpotent_sections(spec)?,
        Params::SpectrumCrossCheck { .. } => cross_check(spec)?,
    };
    Ok(Report::new(spec.clone(), cases, start.elapsed()))
}

fn resolvent_identity(spec: &ExperimentSpec) -> Result<Vec<CaseRecord>> {
    let Params::ResolventIdentity {
        symbols,
        lambdas,
        cases,
        symbol_max_degree,
        h_max_degree,
        tol,
    } = &spec.params
    else {
        unreachable!()
    };
    let symbols = parse_all(symbols, parse_symbol)?;
    let lambdas = parse_all(lambdas, parse_complex)?;
    let n = spec.degree;
    Ok((0..*cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(spec.seed, i as u64);
            let g = if symbols.is_empty() {
                random_symbol(&mut rng, *symbol_max_degree)
            } else {
                symbols[i % symbols.len()].clone()
            };
            let lambda = lambdas[i % lambdas.len()];
            let h = random_polynomial(&mut rng, *h_max_degree);
            let inputs = fields([
                ("symbol", g.to_string().into()),
                ("lambda", fmt_complex(lambda).into()),
                ("h_degree", h.trunc_degree().into()),
            ]);
            let f = match resolvent_apply(&g, lambda * (1.0 + spec.perturbation), &h, n) {
                Ok(f) => f,
                Err(e) => return skip(i, inputs, &e),
            };
            let res = resolvent_residual(&g, lambda, &f, &h, n);
            let largest = f.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
            let measured = fields([
                ("residual_scaled", res.scaled.into()),
                ("residual_abs", res.absolute.into()),
                ("max_coeff", largest.into()),
            ]);
            record(i, res.scaled < *tol, inputs, measured, None)
        })
        .collect())
}

/// Test function for the `T_γ` battery, materialised per `n`.
#[derive(Clone, Debug)]
enum BatteryItem {
    Polynomial(TruncatedSeries),
    /// `e^{β z^n}` truncated at the working degree.
    Exponential(Complex),
}

impl BatteryItem {
    fn label(&self) -> String {
        match self {
            BatteryItem::Polynomial(h) => format!("poly deg {}", h.trunc_degree()),
            BatteryItem::Exponential(b) => format!("exp({}*z^n)", fmt_complex(*b)),
        }
    }

    fn build(&self, n: usize, degree: usize) -> TruncatedSeries {
        match self {
            BatteryItem::Polynomial(h) => h.clone(),
            BatteryItem::Exponential(b) => {
                let exact = TruncatedSeries::monomial(*b, n).exp(degree);
                // treated as the polynomial it is
                TruncatedSeries::polynomial(exact.coeffs().to_vec())
            }
        }
    }
}

/// `(n, weight, [(h, ‖h‖_v)])`
type Prepared = (usize, PowerWeight, Vec<(TruncatedSeries, f64)>);

fn t_gamma_bound(spec: &ExperimentSpec) -> Result<Vec<CaseRecord>> {
    let Params::TGammaBound {
        n_values,
        alpha,
        gammas,
        sampled_gammas,
        gamma_max,
        polynomials,
        exponentials,
        h_max_degree,
        tol,
        oracle_tol,
        drift_check,
    } = &spec.params
    else {
        unreachable!()
    };
    let alpha = *alpha;
    PowerWeight::new(alpha, 1.0)?;
    let mut setup = case_rng(spec.seed, SETUP_STREAM);
    let mut gamma_list = parse_all(gammas, parse_complex)?;
    gamma_list.extend((0..*sampled_gammas).map(|_| {
        let r = gamma_max * setup.random::<f64>().sqrt();
        Complex::from_polar(r, setup.random_range(0.0..std::f64::consts::TAU))
    }));
    let mut battery: Vec<BatteryItem> = (0..*polynomials)
        .map(|_| BatteryItem::Polynomial(random_polynomial(&mut setup, *h_max_degree)))
        .collect();
    battery.extend((0..*exponentials).map(|_| {
        let u = setup.random_range(0.1..=0.95);
        BatteryItem::Exponential(Complex::from_polar(alpha * u, setup.random_range(0.0..std::f64::consts::TAU)))
    }));

    let degree = spec.degree;
    let grid = DEFAULT_GRID;
    // battery functions and their norms, per n
    let prepared: Vec<Prepared> = n_values
        .iter()
        .map(|&n| {
            let w = PowerWeight::new(alpha, n as f64)?;
            let items = battery
                .par_iter()
                .map(|item| {
                    let h = item.build(n, degree);
                    let norm = weighted_norm(&h, &w, w.default_r_max(), grid).map(|e| e.value);
                    norm.map(|v| (h, v))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((n, w, items))
        })
        .collect::<Result<_>>()?;

    let rule = GaussLegendre::new(DEFAULT_NODES);
    let per_n = gamma_list.len() * battery.len();
    let total = n_values.len() * per_n;
    Ok((0..total)
        .into_par_iter()
        .map(|i| {
            let (n, w, items) = &prepared[i / per_n];
            let gamma = gamma_list[(i % per_n) / battery.len()];
            let b = i % battery.len();
            let (h, h_norm) = &items[b];
            let bound = 1.0 / (*n as f64 * (alpha - gamma.norm()));
            let inputs = fields([
                ("n", (*n).into()),
                ("alpha", alpha.into()),
                ("gamma", fmt_complex(gamma).into()),
                ("function", battery[b].label().into()),
            ]);
            if gamma.norm() >= alpha {
                let measured = fields([("gamma_abs", gamma.norm().into())]);
                return record(i, false, inputs, measured, Some("hypothesis |gamma| < alpha violated".into()));
            }
            let th = match t_gamma_apply(*n, gamma, h, degree) {
                Ok(t) => t,
                Err(e) => return skip(i, inputs, &e),
            };
            let norm_of = |f: &TruncatedSeries| weighted_norm(f, w, w.default_r_max(), grid).map(|e| e.value);
            let t_norm = match norm_of(&th) {
                Ok(v) => v,
                Err(e) => return skip(i, inputs, &e),
            };
            let ratio = t_norm / h_norm;
            // oracle point on the unit circle
            let mut rng = case_rng(spec.seed, i as u64);
            let z = Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
            let quad = t_gamma_quadrature(*n, gamma * (1.0 + spec.perturbation), h, z, &rule, 4);
            let oracle_err = (th.eval(z) - quad).norm() / quad.norm().max(1.0);
            let mut measured = fields([
                ("ratio", ratio.into()),
                ("bound", bound.into()),
                ("h_norm", (*h_norm).into()),
                ("oracle_error", oracle_err.into()),
            ]);
            if *drift_check {
                if let Ok(t2) = t_gamma_apply(*n, gamma, h, 2 * degree).and_then(|t| norm_of(&t)) {
                    measured.insert("truncation_drift".into(), ((t2 - t_norm).abs() / t_norm.max(f64::MIN_POSITIVE)).into());
                }
            }
            let within = ratio <= bound * (1.0 + tol);
            let agrees = oracle_err <= *oracle_tol;
            let note = match (within, agrees) {
                (true, true) => None,
                (false, _) => Some("norm ratio exceeds the bound".to_string()),
                (true, false) => Some("series and quadrature disagree".to_string()),
            };
            record(i, within && agrees, inputs, measured, note)
        })
        .collect())
}

fn membership_divergence(spec: &ExperimentSpec) -> Result<Vec<CaseRecord>> {
    let Params::MembershipDivergence {
        symbols,
        alpha,
        factors,
        angles,
        boundary_tol,
    } = &spec.params
    else {
        unreachable!()
    };
    let symbols = parse_all(symbols, parse_symbol)?;
    let per_symbol = factors.len() * angles;
    let total = symbols.len() * per_symbol;
    Ok((0..total)
        .into_par_iter()
        .map(|i| {
            let g = &symbols[i / per_symbol];
            let factor = factors[(i % per_symbol) / angles];
            let j = i % angles;
            let n = g.degree();
            let beta = g.leading();
            let inputs_base = |lambda: Complex| {
                fields([
                    ("symbol", g.to_string().into()),
                    ("alpha", (*alpha).into()),
                    ("p", n.into()),
                    ("factor", factor.into()),
                    ("lambda", fmt_complex(lambda).into()),
                ])
            };
            let (w, w_num) = match (PowerWeight::new(*alpha, n as f64), PowerWeight::new(alpha * (1.0 + spec.perturbation), n as f64)) {
                (Ok(w), Ok(wn)) => (w, wn),
                (Err(e), _) | (_, Err(e)) => return skip(i, inputs_base(Complex::new(0.0, 0.0)), &e),
            };
            let theta = std::f64::consts::TAU * (j as f64 + 0.125) / *angles as f64;
            let lambda = Complex::from_polar(factor * beta.norm() / alpha, theta);
            let inputs = inputs_base(lambda);
            let exact = match exp_membership(g, lambda, &Space::Hv(w)) {
                Ok(m) => m,
                Err(e) => return skip(i, inputs, &e),
            };
            let f = g.as_series().scale(lambda.inv()).exp(spec.degree);
            let est = match weighted_norm(&f, &w_num, w.default_r_max(), DEFAULT_GRID) {
                Ok(e) => e,
                Err(e) => return skip(i, inputs, &e),
            };
            let diverges = est.verdict == NormVerdict::DivergenceSuspected;
            let boundary = (factor - 1.0).abs() < 1e-12;
            let boundary_ok = !boundary || (est.value - 1.0).abs() <= *boundary_tol;
            let measured = fields([
                ("verdict", if diverges { "divergence" } else { "bounded" }.into()),
                ("exact_member", exact.into()),
                ("value", est.value.into()),
                ("attained_r", est.attained_r.into()),
            ]);
            let agree = diverges != exact;
            let note = match (agree, boundary_ok) {
                (true, true) => None,
                (false, _) => Some("numeric verdict contradicts the exact rule".to_string()),
                (true, false) => Some("boundary norm not within tolerance of 1".to_string()),
            };
            record(i, agree && boundary_ok, inputs, measured, note)
        })
        .collect())
}

fn caratheodory(spec: &ExperimentSpec) -> Result<Vec<CaseRecord>> {
    let Params::Caratheodory { count, max_degree, radii } = &spec.params else {
        unreachable!()
    };
    if radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(Error::InvalidParameter("caratheodory radii must be positive".into()));
    }
    let sampler = CircleSampler::new(default_samples(*max_degree));
    Ok((0..*count)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(spec.seed, i as u64);
            let h = random_polynomial(&mut rng, *max_degree);
            let inputs = fields([("degree", h.trunc_degree().into())]);
            let mut worst: Option<(f64, f64, f64, f64)> = None;
            let mut holds = true;
            for &r in radii {
                let c = match caratheodory_check_with(&h, r, &sampler) {
                    Ok(c) => c,
                    Err(e) => return skip(i, inputs, &e),
                };
                let rhs = c.rhs * (1.0 - spec.perturbation);
                let slack = rhs - c.lhs;
                holds &= c.lhs <= rhs + CARATHEODORY_TOL * c.rhs.abs().max(1.0);
                if worst.is_none_or(|w| slack < w.1) {
                    worst = Some((r, slack, c.lhs, rhs));
                }
            }
            let (r, slack, lhs, rhs) = worst.expect("radii nonempty");
            let measured = fields([
                ("worst_radius", r.into()),
                ("min_slack", slack.into()),
                ("lhs", lhs.into()),
                ("rhs", rhs.into()),
            ]);
            record(i, holds, inputs, measured, None)
        })
        .collect())
}

fn nilpotent_sections(spec: &ExperimentSpec) -> Result<Vec<CaseRecord>> {
    let Params::NilpotentSections {
        symbols,
        random_symbols,
        symbol_max_degree,
        sizes,
    } = &spec.params
    else {
        unreachable!()
    };
    let mut list = parse_all(symbols, parse_symbol)?;
    let mut setup = case_rng(spec.seed, SETUP_STREAM);
    list.extend((0..*random_symbols).map(|_| random_symbol(&mut setup, *symbol_max_degree)));
    let total = list.len() * sizes.len();
    Ok((0..total)
        .into_par_iter()
        .map(|i| {
            let g = &list[i / sizes.len()];
            let size = sizes[i % sizes.len()];
            let inputs = fields([("symbol", g.to_string().into()), ("size", size.into())]);
            let mut a = match finite_section(g, size) {
                Ok(a) => a,
                Err(e) => return skip(i, inputs, &e),
            };
            if spec.perturbation != 0.0 {
                for k in 0..size {
                    a.set(k, k, Complex::new(spec.perturbation, 0.0));
                }
            }
            let strict = a.is_strictly_lower_triangular();
            let banded = a.within_band(g.degree());
            let eig_max = a
                .eigenvalues()
                .map(|e| e.iter().map(|x| x.norm()).fold(0.0, f64::max))
                .unwrap_or(f64::INFINITY);
            let mut rng = case_rng(spec.seed, i as u64);
            let v: Vec<Complex> = (0..size).map(|_| unit_square(&mut rng)).collect();
            let power_zero = a.power_apply(&v).iter().all(|x| *x == Complex::new(0.0, 0.0));
            let measured = fields([
                ("strictly_lower", strict.into()),
                ("banded", banded.into()),
                ("max_abs_eigenvalue", eig_max.into()),
                ("power_vanishes", power_zero.into()),
            ]);
            record(i, strict && banded && eig_max == 0.0 && power_zero, inputs, measured, None)
        })
        .collect())
}

fn cross_check(spec: &ExperimentSpec) -> Result<Vec<CaseRecord>> {
    let Params::SpectrumCrossCheck { cases } = &spec.params else {
        unreachable!()
    };
    let parsed: Vec<(PolynomialSymbol, Space)> = cases
        .iter()
        .map(|c| Ok((parse_symbol(&c.symbol)?, c.space.to_space()?)))
        .collect::<Result<_>>()?;
    let delta = spec.perturbation;
    Ok(parsed
        .par_iter()
        .enumerate()
        .map(|(i, (g, space))| {
            let inputs = fields([("symbol", g.to_string().into()), ("space", space.to_string().into())]);
            let mut result = match classify_spectrum(g, space) {
                Ok(r) => r,
                Err(e) => return skip(i, inputs, &e),
            };
            if delta != 0.0 {
                result.shape = match result.shape {
                    SpectrumShape::ZeroOnly => SpectrumShape::ClosedDisk { radius: delta.abs() },
                    SpectrumShape::ClosedDisk { radius } => SpectrumShape::ClosedDisk {
                        radius: radius * (1.0 + delta),
                    },
                    SpectrumShape::WholePlane => SpectrumShape::ZeroOnly,
                };
            }
            let rep = spectrum_cross_check(&result, g);
            let measured = fields([
                ("shape", result.shape.tag().into()),
                ("radius", result.shape.radius().into()),
                ("points", rep.points.into()),
                ("mismatches", rep.mismatches.len().into()),
            ]);
            record(i, rep.passed, inputs, measured, result.witness.clone())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_parse() {
        for k in ExperimentKind::ALL {
            assert_eq!(k.name().parse::<ExperimentKind>().unwrap(), k);
        }
        assert_eq!("ResolventIdentity".parse::<ExperimentKind>().unwrap(), ExperimentKind::ResolventIdentity);
        assert_eq!("t_gamma_bound".parse::<ExperimentKind>().unwrap(), ExperimentKind::TGammaBound);
        assert!("nope".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        for k in ExperimentKind::ALL {
            let spec = ExperimentSpec::default_for(k).with_seed(7);
            assert_eq!(ExperimentSpec::from_json(&spec.to_json()).unwrap(), spec);
        }
    }

    #[test]
    fn rng_streams_are_independent_of_order() {
        let a: f64 = case_rng(3, 5).random();
        let _: f64 = case_rng(3, 4).random();
        assert_eq!(a, case_rng(3, 5).random::<f64>());
        assert_ne!(a, case_rng(3, 6).random::<f64>());
    }

    #[test]
    fn complex_format_reparses() {
        for c in [Complex::new(2.0, -1.0), Complex::new(0.0, 0.0), Complex::new(-0.25, 3.5)] {
            assert_eq!(parse_complex(&fmt_complex(c)).unwrap(), c);
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = ExperimentSpec::default_for(ExperimentKind::ResolventIdentity);
        if let Params::ResolventIdentity { lambdas, .. } = &mut spec.params {
            lambdas.clear();
        }
        assert!(run_experiment(&spec).is_err());
        let spec = ExperimentSpec::default_for(ExperimentKind::Caratheodory).with_degree(1);
        assert!(run_experiment(&spec).is_err());
    }

    #[test]
    fn unbounded_cross_check_is_skipped() {
        let spec = ExperimentSpec::new(Params::SpectrumCrossCheck {
            cases: vec![CrossCase {
                symbol: "z^3".into(),
                space: SpaceSpec::Hv { alpha: 1.0, p: 2.0 },
            }],
        });
        let r = run_experiment(&spec).unwrap();
        assert_eq!(r.cases[0].status, Status::Skip);
        assert_eq!(r.cases[0].note.as_deref(), Some("operator not bounded on this space"));
    }
}
