//! Solve f - (1/λ) V_g f = h and check the residual.
//!
//! cargo run --example resolvent_identity

use volterra::harness::{parse_complex, parse_polynomial, parse_symbol};
use volterra::operators::{resolvent_apply, resolvent_apply_explicit, resolvent_residual};

fn main() -> volterra::Result<()> {
    let g = parse_symbol("z^3 - 2iz")?;
    let h = parse_polynomial("1 + z^2 - 0.5z^7")?;
    let n = 64;
    for text in ["1", "-1", "i", "2-i", "0.1"] {
        let lambda = parse_complex(text)?;
        let f = resolvent_apply(&g, lambda, &h, n)?;
        let res = resolvent_residual(&g, lambda, &f, &h, n);
        println!("lambda = {text:>4}: scaled residual {:.2e}, absolute {:.2e}", res.scaled, res.absolute);
    }

    // the closed formula h(0) e^{g/λ} + e^{g/λ} ∫ e^{-g/λ} h' gives the same coefficients
    let lambda = parse_complex("2-i")?;
    let a = resolvent_apply(&g, lambda, &h, 40)?;
    let b = resolvent_apply_explicit(&g, lambda, &h, 40)?;
    println!("recurrence vs closed formula: {:.2e}", a.max_prefix_deviation(&b, 40));
    Ok(())
}
