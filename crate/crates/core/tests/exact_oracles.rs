//! Coefficients compared against exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use volterra::operators::{apply_volterra, finite_section, resolvent_apply, t_gamma_apply, PolynomialSymbol};
use volterra::{Complex, TruncatedSeries};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("representable")
}

fn real_symbol(b: &[i64]) -> PolynomialSymbol {
    let mut c = vec![Complex::new(0.0, 0.0)];
    c.extend(b.iter().map(|&x| Complex::new(x as f64, 0.0)));
    PolynomialSymbol::new(c).unwrap()
}

/// `V_g f` with `g = sum b_m z^m`: coefficient `k+m` gains `f_k m b_m / (k+m)`.
fn volterra_exact(b: &[i64], f: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); f.len() + b.len()];
    for (k, fk) in f.iter().enumerate() {
        for (i, &bm) in b.iter().enumerate() {
            let m = i + 1;
            out[k + m] += fk * q(m as i64 * bm, (k + m) as i64);
        }
    }
    out
}

fn assert_close(got: &TruncatedSeries, want: &[BigRational], rel: f64) {
    for (k, w) in want.iter().enumerate() {
        let w = to_f64(w);
        let g = got.coeff(k);
        assert!(g.im == 0.0, "coefficient {k} should be real");
        assert!((g.re - w).abs() <= rel * w.abs().max(1e-300), "k={k}: {} vs {w}", g.re);
    }
}

#[test]
fn volterra_matches_rationals() {
    let b = [3, -2, 5];
    let f: Vec<BigRational> = (0..12).map(|k| q(k as i64 - 4, k as i64 + 1)).collect();
    let fs = TruncatedSeries::polynomial(f.iter().map(|x| Complex::new(to_f64(x), 0.0)).collect());
    let got = apply_volterra(&real_symbol(&b), &fs);
    assert_close(&got, &volterra_exact(&b, &f), 1e-15);
}

#[test]
fn resolvent_matches_rationals() {
    // f = h + (1/λ) V_g f, solved degree by degree
    let b = [1, 2];
    let lambda = q(1, 2);
    let n = 40;
    let h: Vec<BigRational> = vec![q(1, 1), q(0, 1), q(-3, 1)];
    let mut f: Vec<BigRational> = vec![BigRational::zero(); n + 1];
    for k in 0..=n {
        let mut acc = h.get(k).cloned().unwrap_or_else(BigRational::zero);
        for (i, &bm) in b.iter().enumerate() {
            let m = i + 1;
            if k >= m {
                acc += &f[k - m] * q(m as i64 * bm, k as i64) / &lambda;
            }
        }
        f[k] = acc;
    }
    let hs = TruncatedSeries::from_real(&[1.0, 0.0, -3.0]);
    let got = resolvent_apply(&real_symbol(&b), Complex::new(0.5, 0.0), &hs, n).unwrap();
    assert_close(&got, &f, 1e-13);
}

#[test]
fn exp_of_monomial_matches_factorials() {
    // e^{2 z^2} = sum 2^j z^{2j} / j!
    let got = TruncatedSeries::monomial(Complex::new(2.0, 0.0), 2).exp(60);
    let mut want = vec![BigRational::zero(); 61];
    let mut term = q(1, 1);
    for j in 0..=30 {
        want[2 * j] = term.clone();
        term *= q(2, j as i64 + 1);
    }
    assert_close(&got, &want, 1e-14);
}

#[test]
fn t_gamma_matches_rationals() {
    // m f_m = n γ f_{m-n} + h_{m-n}
    let (n, gamma) = (2usize, q(3, 4));
    let h = [q(1, 1), q(-1, 2), q(2, 3)];
    let degree = 30;
    let mut f = vec![BigRational::zero(); degree + 1];
    for m in n..=degree {
        let hm = h.get(m - n).cloned().unwrap_or_else(BigRational::zero);
        f[m] = (&gamma * q(n as i64, 1) * &f[m - n] + hm) / q(m as i64, 1);
    }
    let hs = TruncatedSeries::from_real(&[1.0, -0.5, 2.0 / 3.0]);
    let got = t_gamma_apply(n, Complex::new(0.75, 0.0), &hs, degree).unwrap();
    assert_close(&got, &f, 1e-14);
}

#[test]
fn section_entries_match_rationals() {
    let b = [4, -1, 7];
    let g = real_symbol(&b);
    let size = 16;
    let a = finite_section(&g, size).unwrap();
    for row in 0..size {
        for col in 0..size {
            let want = if row > col && row - col <= b.len() {
                let m = row - col;
                to_f64(&q(m as i64 * b[m - 1], row as i64))
            } else {
                0.0
            };
            assert_eq!(a.get(row, col), Complex::new(want, 0.0), "({row},{col})");
        }
    }
}
