//! Exact least-norm coefficients `c_λ` with `Σ c_λ λ^{-t} = δ_{t,t₀}` for `t < 2ℓ₀`.

use maasskit::lseries::{ratio, vandermonde_coeffs};

fn main() -> maasskit::Result<()> {
    let lambdas = vec![ratio(4, 1), ratio(9, 2), ratio(5, 1), ratio(6, 1), ratio(7, 1)];
    let system = vandermonde_coeffs(&lambdas, 1, 2)?;
    for (lambda, c) in system.lambdas.iter().zip(&system.coeffs) {
        println!("lambda = {lambda:>4}: c = {c}");
    }
    for t in 0..2 * system.ell0 {
        println!("row {t}: exact residual {}", system.row_residual_exact(t));
    }
    println!("floating-point residual {:.2e}", system.max_residual_f64());
    Ok(())
}
