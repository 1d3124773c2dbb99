//! Spectra of V_g on H∞_v and H0_v, with the exp-membership cross-check.
//!
//! cargo run --example spectrum_banach

use volterra::harness::parse_symbol;
use volterra::spectra::{classify_boundedness_hv, classify_spectrum, spectrum_cross_check, Space, Symbol};
use volterra::weights::PowerWeight;

fn main() -> volterra::Result<()> {
    let cases = [("6z^2 - z", 3.0, 2.0), ("z^2 + z", 1.0, 2.5), ("2iz", 4.0, 1.0), ("z^3", 1.0, 2.0)];
    for (text, alpha, p) in cases {
        let g = parse_symbol(text)?;
        let w = PowerWeight::new(alpha, p)?;
        let b = classify_boundedness_hv(&Symbol::from(g.clone()), &w);
        print!("{text:10} alpha={alpha} p={p}: bounded={} compact={}", b.bounded, b.compact);
        match classify_spectrum(&g, &Space::Hv(w)) {
            Ok(res) => {
                let check = spectrum_cross_check(&res, &g);
                println!("  spectrum {:?}, cross-check {} over {} points", res.shape, check.passed, check.points);
                println!("    {}", res.to_json());
            }
            Err(e) => println!("  {e}"),
        }
    }
    let g = parse_symbol("6z^2 - z")?;
    let h0 = classify_spectrum(&g, &Space::H0v(PowerWeight::new(3.0, 2.0)?))?;
    println!("on H0_v: {:?}", h0.shape);
    Ok(())
}
