//! Truncated series: products, derivatives and the exponential.
//!
//! cargo run --example series_arithmetic

use volterra::{Complex, TruncatedSeries};

fn main() {
    let one = Complex::new(1.0, 0.0);
    let z = TruncatedSeries::monomial(one, 1);
    let p = TruncatedSeries::from_real(&[1.0, -2.0, 0.5]);

    let square = p.mul(&p, 8);
    println!("p^2      = {:?}", square.coeffs().iter().map(|c| c.re).collect::<Vec<_>>());
    println!("p'       = {:?}", p.derive().coeffs().iter().map(|c| c.re).collect::<Vec<_>>());

    // e^z e^{-z} = 1 up to rounding
    let e = z.exp(30);
    let inv = (-&z).exp(30);
    let prod = e.mul(&inv, 30);
    println!("e^z e^-z - 1, largest coefficient: {:.2e}", prod.max_prefix_deviation(&TruncatedSeries::constant(one), 30));
    println!("e^z at z=1: {}  (exact through degree {:?})", e.eval(one), e.exact_through());
    println!("{}", p.to_json());
}
