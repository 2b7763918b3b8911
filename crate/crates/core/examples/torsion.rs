//! Operators on g (x) g^perp and the measured identity constants.

use lieform::exterior::Exterior;
use lieform::lie_core::build_algebra;
use lieform::torsion_ops::{contract_rho_constant, wedge_rho_constant, TorsionOps};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "su3".into());
    let e = Exterior::new(&build_algebra(&name)?)?;
    let ops = TorsionOps::new(&e)?;
    println!("dim g^perp {}", ops.perp_dim());
    println!("rank D_- {}", ops.d_minus().rank());
    println!("ker Theta {}", ops.theta().kernel().dim());
    println!("D_+ Theta / d = {:?}", ops.d_plus_theta_constant().map(|c| c.to_string()));
    println!("D_- Theta / delta = {:?}", ops.d_minus_theta_constant().map(|c| c.to_string()));
    println!("wedge rho constant {:?}", wedge_rho_constant(&e).map(|c| c.to_string()));
    println!("contract rho constant {:?}", contract_rho_constant(&e).map(|c| c.to_string()));
    let r = ops.r_max()?;
    let plus = r.space.basis().iter().all(|v| ops.d_plus().apply(v).is_zero());
    println!("R_max dim {} Casimir {} in ker D_+ {plus}", r.space.dim(), r.eigenvalue);
    Ok(())
}
