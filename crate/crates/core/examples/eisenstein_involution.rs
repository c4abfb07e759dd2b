//! Builds the level 1 Eisenstein pair and checks `f(z) = g(-1/z)` and the
//! twist transformation for the characters mod 5.

use maasskit::characters::character_group;
use maasskit::corpus::eisenstein_spec;
use maasskit::maassform::{eval, involution_residual, twist_transform_residual, Side};
use maasskit::specfun::{Precision, SpectralParam};
use num_complex::Complex64;

fn main() -> maasskit::Result<()> {
    let spec = eisenstein_spec(SpectralParam::real(0.25)?, 2000)?;
    let prec = Precision::default();
    let z = Complex64::new(0.3, 0.9);
    println!("f({z}) = {}", eval(&spec, Side::F, z, &prec)?);
    let points = [Complex64::new(0.0, 0.5), z, Complex64::new(-0.4, 0.7)];
    let r = involution_residual(&spec, &points, &prec, 1e-7)?;
    println!("involution: pass={} max_rel={:.2e}", r.pass, r.max_rel_residual);
    let low = Precision { min_height: 0.02, ..prec };
    for psi in character_group(5)?.characters().into_iter().filter(|p| !p.is_principal()) {
        let r = twist_transform_residual(&spec, &psi, &points, &low, 1e-6)?;
        println!("twist by {:?}: pass={} max_rel={:.2e}", psi.exponent_vector(), r.pass, r.max_rel_residual);
    }
    Ok(())
}
