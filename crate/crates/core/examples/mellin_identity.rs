//! Mellin transform of the Eisenstein series along a ray, against the
//! completed additive twists.

use maasskit::corpus::eisenstein_spec;
use maasskit::lseries::mellin_identity_residual;
use maasskit::specfun::{Precision, SpectralParam};
use num_complex::Complex64;

fn main() -> maasskit::Result<()> {
    let spec = eisenstein_spec(SpectralParam::real(0.25)?, 2000)?;
    let grid: Vec<Complex64> = (-2..=2).map(|t| Complex64::new(2.5, 2.0 * t as f64)).collect();
    for (w, alpha) in [(0.0, (0, 1)), (0.5, (1, 5))] {
        let r = mellin_identity_residual(&spec, w, alpha, &grid, &Precision::identity(), 1e-6)?;
        println!("w = {w}, alpha = {}/{}: pass={} max_rel={:.2e}", alpha.0, alpha.1, r.pass, r.max_rel_residual);
        for p in &r.grid {
            println!("  {:<14} lhs {:.10}  rhs {:.10}", p.label, p.lhs, p.rhs);
        }
    }
    Ok(())
}
