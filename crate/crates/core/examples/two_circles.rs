//! Two elliptic rotations with distinct centres: the constant function is
//! invariant, the radial bump around the first centre is not.

use maasskit::hyperbolic::{build_m_int, default_pair, orbit_gap, two_circles_report, TestFamily};

fn main() -> maasskit::Result<()> {
    let m = build_m_int(3, 5, 2, 7, 1)?;
    println!("M(3,5,2) = {:?}, trace {}", m.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(), m.trace());
    let (m1, m2) = default_pair()?;
    println!("z1 = {}, z2 = {}", m1.fixed_point, m2.fixed_point);
    println!("rotation angle {:.12} rad, order {}", m1.rotation_angle, m1.order_tag);
    for n in [100, 1000, 10_000] {
        println!("largest orbit gap after {n:>5} steps: {:.2e}", orbit_gap(m1.rotation_angle, n));
    }
    for family in [TestFamily::Constant, TestFamily::Radial, TestFamily::ImaginaryPart] {
        let r = two_circles_report(family, 1e-9)?;
        println!("{family:?}: {}", r.params["verdict"]);
    }
    Ok(())
}
