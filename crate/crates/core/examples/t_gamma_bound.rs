//! ‖T_γ h‖_v against (1/n)(α - |γ|)^{-1} ‖h‖_v, with a quadrature spot check.
//!
//! cargo run --release --example t_gamma_bound

use volterra::harness::{t_gamma_quadrature, GaussLegendre, DEFAULT_NODES};
use volterra::operators::t_gamma_apply;
use volterra::weights::{weighted_norm_default, PowerWeight};
use volterra::{Complex, TruncatedSeries};

fn main() -> volterra::Result<()> {
    let alpha = 1.0;
    let rule = GaussLegendre::new(DEFAULT_NODES);
    let h = TruncatedSeries::from_real(&[1.0, 0.0, -0.5, 0.25]);
    for n in 1..=3 {
        let w = PowerWeight::new(alpha, n as f64)?;
        let h_norm = weighted_norm_default(&h, &w).value;
        for gamma in [Complex::new(0.0, 0.0), Complex::new(0.5, 0.0), Complex::new(-0.3, 0.6)] {
            let th = t_gamma_apply(n, gamma, &h, 64)?;
            let ratio = weighted_norm_default(&th, &w).value / h_norm;
            let bound = 1.0 / (n as f64 * (alpha - gamma.norm()));
            let z = Complex::new(0.6, 0.8);
            let err = (th.eval(z) - t_gamma_quadrature(n, gamma, &h, z, &rule, 4)).norm();
            println!("n={n} gamma={gamma:<10} ratio {ratio:.4} <= bound {bound:.4}   quadrature gap {err:.1e}");
        }
    }
    Ok(())
}
