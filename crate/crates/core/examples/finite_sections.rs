//! Finite sections of V_g are strictly lower triangular, hence nilpotent.
//!
//! cargo run --example finite_sections

use volterra::harness::parse_symbol;
use volterra::operators::finite_section;
use volterra::Complex;

fn main() -> volterra::Result<()> {
    let g = parse_symbol("6z^2 - z")?;
    let a = finite_section(&g, 6)?;
    print!("{}", a.to_csv());
    for size in [8, 32, 128] {
        let a = finite_section(&g, size)?;
        let v = vec![Complex::new(1.0, 0.0); size];
        let vanishes = a.power_apply(&v).iter().all(|x| x.norm() == 0.0);
        let eig = a.eigenvalues().expect("lower triangular");
        println!(
            "N={size}: strictly lower {}, band {}, max |eigenvalue| {}, A^N v = 0: {vanishes}",
            a.is_strictly_lower_triangular(),
            a.within_band(g.degree()),
            eig.iter().map(|e| e.norm()).fold(0.0, f64::max)
        );
    }
    Ok(())
}
