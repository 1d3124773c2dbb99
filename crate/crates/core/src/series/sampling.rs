//! Circle sampling: `M(f,r)` and `A(f,r)` over equispaced angles.
//!
//! The values of a polynomial at `M` equispaced points of a circle are one
//! inverse DFT of its scaled coefficients `c_k r^k` (folded mod `M` when the
//! degree is at least `M`), so every radius costs a single FFT.

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::{Complex, TruncatedSeries};

/// Eight angles per retained coefficient, at least 256.
pub fn default_samples(trunc_degree: usize) -> usize {
    (8 * (trunc_degree + 1)).max(256)
}

/// Reusable sampler for a fixed number of angles.
#[derive(Clone)]
pub struct CircleSampler {
    samples: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for CircleSampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircleSampler").field("samples", &self.samples).finish()
    }
}

impl CircleSampler {
    pub fn new(samples: usize) -> Self {
        assert!(samples >= 1, "at least one sample angle is required");
        let fft = FftPlanner::new().plan_fft_inverse(samples);
        Self { samples, fft }
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Values `f(r e^{2πi j/M})` for `j = 0..M`.
    pub fn values(&self, f: &TruncatedSeries, r: f64) -> Vec<Complex> {
        let mut buf = vec![Complex::new(0.0, 0.0); self.samples];
        let mut rk = 1.0;
        for (k, c) in f.coeffs().iter().enumerate() {
            buf[k % self.samples] += c * rk;
            rk *= r;
        }
        self.fft.process(&mut buf);
        buf
    }

    /// Sampled `max |f|` on `|z| = r`.
    pub fn max_modulus(&self, f: &TruncatedSeries, r: f64) -> f64 {
        self.log_max_modulus(f, r).exp()
    }

    /// `ln` of the sampled maximum modulus, `-inf` for the zero function.
    ///
    /// Coefficients are rescaled by the largest `|c_k| r^k` before the transform,
    /// so high degrees at large radii do not overflow.
    pub fn log_max_modulus(&self, f: &TruncatedSeries, r: f64) -> f64 {
        if r == 0.0 {
            return f.coeff(0).norm().ln();
        }
        let lr = r.ln();
        let logs: Vec<f64> = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm().ln() + k as f64 * lr)
            .collect();
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return top;
        }
        let mut buf = vec![Complex::new(0.0, 0.0); self.samples];
        for (k, (c, l)) in f.coeffs().iter().zip(&logs).enumerate() {
            if *l == f64::NEG_INFINITY {
                continue;
            }
            buf[k % self.samples] += c / c.norm() * (l - top).exp();
        }
        self.fft.process(&mut buf);
        let peak = buf.iter().map(|v| v.norm()).fold(0.0, f64::max);
        top + peak.ln()
    }

    /// Sampled `max Re f` on `|z| = r`.
    pub fn max_real_part(&self, f: &TruncatedSeries, r: f64) -> f64 {
        self.values(f, r)
            .iter()
            .map(|v| v.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `M(f,r)` sampled at `samples` equispaced angles; a lower bound on the true maximum.
pub fn max_modulus(f: &TruncatedSeries, r: f64, samples: usize) -> f64 {
    CircleSampler::new(samples).max_modulus(f, r)
}

/// `A(f,r)`, the sampled maximum of `Re f` on `|z| = r`.
pub fn max_real_part(f: &TruncatedSeries, r: f64, samples: usize) -> f64 {
    CircleSampler::new(samples).max_real_part(f, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horner_max(f: &TruncatedSeries, r: f64, samples: usize) -> f64 {
        (0..samples)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
                f.eval(Complex::from_polar(r, t)).norm()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn monomial_and_constant() {
        let z2 = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 2);
        for r in [0.0, 0.5, 3.0] {
            assert!((max_modulus(&z2, r, 64) - r * r).abs() < 1e-12 * (1.0 + r * r));
        }
        let k = TruncatedSeries::constant(Complex::new(3.0, -4.0));
        assert!((max_modulus(&k, 2.0, 16) - 5.0).abs() < 1e-14);
    }

    #[test]
    fn exp_modulus_matches_scalar_exponential() {
        let n = 64;
        let e = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 1).exp(n);
        let s = default_samples(n);
        for r in [0.5, 4.0, 16.0] {
            let got = max_modulus(&e, r, s);
            assert!((got / r.exp() - 1.0).abs() < 1e-3, "r={r}: {got}");
        }
    }

    #[test]
    fn real_part_examples() {
        let z = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 1);
        let iz = TruncatedSeries::monomial(Complex::new(0.0, 1.0), 1);
        let z2 = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 2);
        // 256 angles include θ = 0 and θ = 3π/2, where these maxima sit
        assert!((max_real_part(&z, 2.0, 256) - 2.0).abs() < 1e-12);
        assert!((max_real_part(&iz, 2.0, 256) - 2.0).abs() < 1e-12);
        assert!((max_real_part(&z2, 3.0, 256) - 9.0).abs() < 1e-12);
    }

    #[test]
    fn fft_agrees_with_horner_including_aliasing() {
        let f = TruncatedSeries::polynomial(
            (0..40)
                .map(|k| Complex::new((k as f64 * 0.7).sin(), (k as f64 * 1.3).cos()) / (1.0 + k as f64))
                .collect(),
        );
        for samples in [16, 33, 256] {
            for r in [0.3, 1.0, 1.7] {
                let a = max_modulus(&f, r, samples);
                let b = horner_max(&f, r, samples);
                assert!((a - b).abs() < 1e-9 * b.max(1.0), "{samples} {r}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn log_modulus_survives_huge_radii() {
        let z = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 200);
        let l = CircleSampler::new(256).log_max_modulus(&z, 1e4);
        assert!((l - 200.0 * 1e4f64.ln()).abs() < 1e-9 * l);
        assert_eq!(CircleSampler::new(16).log_max_modulus(&TruncatedSeries::zero(), 1.0), f64::NEG_INFINITY);
    }
}
