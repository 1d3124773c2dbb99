//! Spectra on the Hörmander algebras A_p and A0_p with p(r) = r^a.
//!
//! cargo run --example hormander_algebras

use volterra::operators::PolynomialSymbol;
use volterra::spectra::{classify_spectrum_a0p, classify_spectrum_ap, classify_spectrum_entire};
use volterra::weights::GrowthCondition;
use volterra::Complex;

fn main() -> volterra::Result<()> {
    println!("deg   a     A_p    A0_p");
    for deg in 1..=3 {
        let g = PolynomialSymbol::monomial(Complex::new(1.0, 0.0), deg)?;
        for a in [0.5, 1.0, 2.0, 3.0] {
            let gc = GrowthCondition::new(1.0, a)?;
            let ap = classify_spectrum_ap(&g, &gc);
            let a0p = classify_spectrum_a0p(&g, &gc);
            println!("{deg:>3} {a:>4}  {:>5}  {:>5}", ap.shape.tag(), a0p.shape.tag());
        }
    }
    let g = PolynomialSymbol::monomial(Complex::new(1.0, 0.0), 5)?;
    println!("H(C): {}", classify_spectrum_entire(&g).to_json());
    Ok(())
}
