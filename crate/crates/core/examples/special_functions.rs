//! Runs the special-function self-test and prints a few reference values.

use maasskit::specfun::{bessel_k, hyp2f1, hurwitz_zeta, selftest, whittaker_w};
use num_complex::Complex64;

fn main() -> maasskit::Result<()> {
    let c = Complex64::new;
    println!("K_(1/4)(2)      = {}", bessel_k(c(0.25, 0.0), 2.0)?);
    println!("K_(3i)(1)       = {}", bessel_k(c(0.0, 3.0), 1.0)?);
    println!("W_(1/4)(1)      = {}", whittaker_w(c(0.25, 0.0), 1.0)?);
    println!("2F1(1,1;2;-1/2) = {}", hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(-0.5, 0.0))?);
    println!("zeta(1/2+14i, 1/3) = {}", hurwitz_zeta(c(0.5, 14.0), 1.0 / 3.0)?);
    for r in selftest::selftest(1)? {
        println!("{:<20} pass={} max_rel={:.2e}", r.check_name, r.pass, r.max_rel_residual);
    }
    Ok(())
}
