//! Weighted sup norms and membership in H∞_v for v(r) = exp(-α r^p).
//!
//! cargo run --example weighted_norms

use volterra::weights::{membership_hv, weighted_norm_default, PowerWeight};
use volterra::{Complex, TruncatedSeries};

fn main() -> volterra::Result<()> {
    let z = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 1);
    let w = PowerWeight::new(1.0, 1.0)?;
    let est = weighted_norm_default(&z, &w);
    println!("||z||_v = {:.6} at r = {:.4} (exact 1/e = {:.6})", est.value, est.attained_r, (-1f64).exp());

    for (label, beta) in [("e^{0.5z}", 0.5), ("e^z", 1.0), ("e^{2z}", 2.0)] {
        let f = TruncatedSeries::monomial(Complex::new(beta, 0.0), 1).exp(64);
        let est = weighted_norm_default(&f, &w);
        let m = membership_hv(&f, &w);
        println!("{label:9} value {:10.4e}  {:?}  member: {}", est.value, est.verdict, m.verdict.as_str());
    }

    let slow = PowerWeight::new(1.0, 0.5)?;
    let m = membership_hv(&z.exp(64), &slow);
    println!("e^z with v = exp(-sqrt r): {}", m.verdict.as_str());
    Ok(())
}
