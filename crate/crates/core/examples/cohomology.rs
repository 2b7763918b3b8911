//! Chevalley-Eilenberg differential, harmonic forms and Betti numbers.

use lieform::exterior::Exterior;
use lieform::lie_core::build_algebra;
use lieform::phi_split::invariant_forms;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "su3".into());
    let e = Exterior::new(&build_algebra(&name)?)?;
    let omega = &e.omega.vector;
    println!("omega has {} terms, d omega = 0: {}, delta omega = 0: {}", omega.terms.len(), e.d(omega).is_zero(), e.delta(omega).is_zero());
    let inv = invariant_forms(&e, None);
    println!("betti {:?}", inv.poincare());
    println!("primitive degrees {:?}", inv.primitive_degrees);
    Ok(())
}
