//! Enumerates the characters mod 15 and checks the Gauss-sum modulus.

use maasskit::characters::{character_group, cos_sin_decomposition_residual, TrigKind};

fn main() -> maasskit::Result<()> {
    let group = character_group(15)?;
    println!("(Z/15Z)^x has order {} and generators {:?}", group.order(), group.generators());
    for psi in group.characters() {
        let tau = psi.gauss_sum();
        println!(
            "exponents {:?}: conductor {:>2}, parity {:?}, primitive {}, |tau| = {:.12}",
            psi.exponent_vector(),
            psi.conductor(),
            psi.parity(),
            psi.is_primitive(),
            tau.norm()
        );
    }
    let worst = (1..=50)
        .flat_map(|n| [TrigKind::Cos, TrigKind::Sin].map(|k| cos_sin_decomposition_residual(n, 2, 7, k)))
        .collect::<maasskit::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("cos/sin expansion in characters mod 7, a = 2, n <= 50: worst residual {worst:.2e}");
    Ok(())
}
