//! Composite Gauss-Legendre quadrature, used as an independent check on
//! the series implementation of `T_γ`.

use crate::series::{Complex, TruncatedSeries};

pub const DEFAULT_NODES: usize = 64;

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_m` by Newton's method from the Chebyshev-like initial guesses.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "need at least one node");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            let w = 2.0 / ((1.0 - x * x) * d * d);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` over `panels` equal subintervals.
    pub fn integrate<F: Fn(f64) -> Complex>(&self, f: F, a: f64, b: f64, panels: usize) -> Complex {
        let h = (b - a) / panels as f64;
        let mut total = Complex::new(0.0, 0.0);
        for k in 0..panels {
            let mid = a + h * (k as f64 + 0.5);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                total += f(mid + 0.5 * h * x) * (w * 0.5 * h);
            }
        }
        total
    }
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `T_γ h(z)` along the segment `[0, z]`:
/// `z^n ∫_0^1 t^{n-1} h(tz) e^{γ z^n (1 - t^n)} dt`.
pub fn t_gamma_quadrature(n: usize, gamma: Complex, h: &TruncatedSeries, z: Complex, rule: &GaussLegendre, panels: usize) -> Complex {
    let zn = z.powu(n as u32);
    let integral = rule.integrate(
        |t| {
            let tn = t.powi(n as i32);
            h.eval(z * t) * (gamma * zn * (1.0 - tn)).exp() * t.powi(n as i32 - 1)
        },
        0.0,
        1.0,
        panels,
    );
    zn * integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::t_gamma_apply;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(DEFAULT_NODES);
        let w: f64 = (0..rule.len()).map(|i| rule.weights[i]).sum();
        assert!((w - 2.0).abs() < 1e-13);
        // ∫_0^1 x^100 = 1/101
        let v = rule.integrate(|x| Complex::new(x.powi(100), 0.0), 0.0, 1.0, 1);
        assert!((v.re - 1.0 / 101.0).abs() < 1e-15);
        let small = GaussLegendre::new(3);
        let v = small.integrate(|x| Complex::new(x.powi(5), 0.0), -1.0, 2.0, 1);
        assert!((v.re - (64.0 - 1.0) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_series_t_gamma() {
        let rule = GaussLegendre::new(DEFAULT_NODES);
        let h = TruncatedSeries::polynomial(vec![
            Complex::new(1.0, 0.5),
            Complex::new(-0.3, 0.0),
            Complex::new(0.0, 0.7),
        ]);
        for n in 1..=3 {
            let gamma = Complex::new(0.6, 0.2);
            let series = t_gamma_apply(n, gamma, &h, 80).unwrap();
            let z = Complex::new(0.9, -0.6);
            let q = t_gamma_quadrature(n, gamma, &h, z, &rule, 4);
            assert!((series.eval(z) - q).norm() < 1e-12 * q.norm().max(1.0), "n={n}");
        }
    }
}
