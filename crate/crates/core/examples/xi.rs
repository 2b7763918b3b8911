//! The scalar by which wedging with omega acts on the pairing, at 128 bits.

use lieform::exterior::Exterior;
use lieform::lie_core::build_algebra;
use lieform::phi_split::{phi_split, xi_constant};
use lieform::scalars::Backend;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["su3", "so5"] {
        let e = Exterior::new(&build_algebra(name)?)?;
        let split = phi_split(&e, &e.omega.vector)?;
        if let Some(r) = xi_constant(&e, &split, Backend::float(128)?)? {
            println!("{name}: c = {} max deviation {:.2e} on a {}-dim domain", r.c_decimal(), r.max_deviation.to_f64(), r.domain_dim);
        }
    }
    Ok(())
}
