//! Twisted functional equation of the Eisenstein L-function and the
//! circle-integral identity, including what happens when a pole is missed.

use maasskit::characters::character_group;
use maasskit::corpus::eisenstein_spec;
use maasskit::lseries::{circle_integral_residual, twisted_fe_residual, CircleOptions};
use maasskit::specfun::{Precision, SpectralParam};
use num_complex::Complex64;

fn main() -> maasskit::Result<()> {
    let nu = SpectralParam::real(0.25)?;
    let line: Vec<Complex64> = (-10..=10).map(|t| Complex64::new(0.5, t as f64)).collect();
    for psi in character_group(7)?.primitive_characters() {
        let r = twisted_fe_residual(nu, &psi, &line, 1e-7)?;
        println!("FE for {:?} mod 7: pass={} max_rel={:.2e}", psi.exponent_vector(), r.pass, r.max_rel_residual);
    }
    let spec = eisenstein_spec(nu, 2000)?;
    let prec = Precision::default();
    let z = Complex64::new(0.5, 1.0);
    for radius in [1.25, 0.6] {
        let opts = CircleOptions { radius, ..CircleOptions::default() };
        let r = circle_integral_residual(&spec, z, &opts, &prec, 1e-7)?;
        println!("circle radius {radius}: pass={} max_abs={:.2e}", r.pass, r.max_abs_residual);
        for n in &r.notes {
            println!("  {n}");
        }
    }
    Ok(())
}
