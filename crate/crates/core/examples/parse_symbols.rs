//! The polynomial grammar: complex literals, implicit products, powers of z.
//!
//! cargo run --example parse_symbols

use volterra::harness::{parse_complex, parse_polynomial, parse_symbol};

fn main() {
    for text in ["6z^2 - z", "(1+2i)z^3 + z", "-2.5i z^2", "1e-3z + 2*3*z", "z + 1", "0*z", "z^"] {
        match parse_symbol(text) {
            Ok(g) => println!("{text:16} -> {g}  (degree {})", g.degree()),
            Err(e) => println!("{text:16} -> error: {e}"),
        }
    }
    println!("{:?}", parse_polynomial("3 - z").map(|p| p.coeffs().to_vec()));
    println!("{:?}", parse_complex("2-i"));
}
