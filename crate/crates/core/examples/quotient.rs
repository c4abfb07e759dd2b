//! Dividing a Dirichlet series by zeta, and the constants in the functional
//! equation of the quotient.

use maasskit::characters::character_group;
use maasskit::corpus::{moebius_deconvolve_slice, sigma_one};
use maasskit::quotient::{dirichlet_fe_residual, quotient_fe_epsilon_residual, quotient_gamma_ratio, Completion, Sym2RootNumber};
use maasskit::specfun::SpectralParam;
use num_bigint::BigInt;
use num_complex::Complex64;

fn main() -> maasskit::Result<()> {
    let sigma: Vec<BigInt> = (1..=12).map(sigma_one).collect();
    println!("sigma / zeta = {:?}", moebius_deconvolve_slice(&sigma).iter().map(|a| a.to_string()).collect::<Vec<_>>());
    let nu = SpectralParam::imaginary(2.0)?;
    let s = Complex64::new(0.7, 1.5);
    for eps in [0, 1] {
        println!("gamma ratio, parity {eps}: {:.12}", quotient_gamma_ratio(eps, nu, s)?);
    }
    let grid = [Complex64::new(0.3, 2.0), Complex64::new(0.8, -4.0), Complex64::new(2.0, 1.0)];
    let psi = character_group(5)?.primitive_characters().remove(0);
    for conv in [Completion::Analytic, Completion::Arithmetic, Completion::Literal] {
        let r = dirichlet_fe_residual(&psi, &grid, conv, 1e-8)?;
        println!("Dirichlet FE, {} completion: pass={} max_rel={:.2e}", conv.name(), r.pass, r.max_rel_residual);
    }
    for root in [Sym2RootNumber::Stated, Sym2RootNumber::Literal] {
        let r = quotient_fe_epsilon_residual(&psi, 3, &grid, root, 1e-12)?;
        println!("quotient epsilon, {} root number: pass={} max_rel={:.2e}", root.name(), r.pass, r.max_rel_residual);
    }
    Ok(())
}
