use serde::Serialize;

use super::PolynomialSymbol;
use crate::error::{Error, Result};
use crate::series::Complex;

/// Leading `N x N` block of `V_g` in the monomial basis.
///
/// `A[row][col]` is the coefficient of `z^row` in `V_g(z^col)`; the only
/// nonzero entries are `A[j+m][j] = m b_m / (j+m)` for `1 <= m <= deg g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionMatrix {
    size: usize,
    entries: Vec<Complex>,
}

pub fn finite_section(g: &PolynomialSymbol, size: usize) -> Result<SectionMatrix> {
    if size < 2 {
        return Err(Error::InvalidParameter("finite section needs size >= 2".into()));
    }
    let mut entries = vec![Complex::new(0.0, 0.0); size * size];
    for col in 0..size {
        for m in 1..=g.degree() {
            let row = col + m;
            if row >= size {
                break;
            }
            entries[row * size + col] = g.coeff(m) * m as f64 / row as f64;
        }
    }
    Ok(SectionMatrix { size, entries })
}

impl SectionMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex) {
        self.entries[row * self.size + col] = value;
    }

    pub fn matvec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|row| {
                self.entries[row * self.size..(row + 1) * self.size]
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect()
    }

    /// Every entry on or above the diagonal is exactly zero.
    pub fn is_strictly_lower_triangular(&self) -> bool {
        (0..self.size).all(|row| (row..self.size).all(|col| self.get(row, col) == Complex::new(0.0, 0.0)))
    }

    /// Nonzero entries only where `col + 1 <= row <= col + width`.
    pub fn within_band(&self, width: usize) -> bool {
        (0..self.size).all(|row| {
            (0..self.size).all(|col| {
                (col < row && row <= col + width) || self.get(row, col) == Complex::new(0.0, 0.0)
            })
        })
    }

    /// Eigenvalues read off the diagonal; `None` unless the matrix is lower triangular.
    pub fn eigenvalues(&self) -> Option<Vec<Complex>> {
        let lower = (0..self.size).all(|row| (row + 1..self.size).all(|col| self.get(row, col) == Complex::new(0.0, 0.0)));
        lower.then(|| (0..self.size).map(|k| self.get(k, k)).collect())
    }

    /// `A^size v`, which is exactly zero for a strictly lower triangular matrix.
    pub fn power_apply(&self, v: &[Complex]) -> Vec<Complex> {
        (0..self.size).fold(v.to_vec(), |acc, _| self.matvec(&acc))
    }

    /// Row-major CSV, each cell written as the pair `re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in 0..self.size {
            let cells: Vec<String> = (0..self.size)
                .map(|col| {
                    let c = self.get(row, col);
                    format!("{},{}", c.re, c.im)
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"size": N, "rows": [[[re, im], ...], ...]}`
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire {
            size: usize,
            rows: Vec<Vec<[f64; 2]>>,
        }
        let rows = (0..self.size)
            .map(|row| (0..self.size).map(|col| {
                let c = self.get(row, col);
                [c.re, c.im]
            }).collect())
            .collect();
        serde_json::to_string(&Wire { size: self.size, rows }).expect("matrix serializes")
    }
}
