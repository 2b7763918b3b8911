//! Strong associativity of 3-dimensional subspaces of su3.

use lieform::exterior::Exterior;
use lieform::lie_core::build_algebra;
use lieform::recognize::{cartan_subspace, coassoc_system_space, restricts_to_zero, root_su2_subspace, subspace_test};
use lieform::scalars::SparseVec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_algebra("su3")?;
    let e = Exterior::new(&g)?;
    let (system, _) = coassoc_system_space(&e)?;
    println!("{} vanishing 3-forms", system.dim());
    let v = root_su2_subspace(&g, 0).ok_or("no root su2")?;
    let t = subspace_test(&g, &v)?;
    let b: [SparseVec; 3] = v.basis().to_vec().try_into().map_err(|_| "not 3-dimensional")?;
    println!("root su2: strongly associative {}, forms vanish {}", t.strongly_associative, restricts_to_zero(&e, &system, &b));
    let c = subspace_test(&g, &cartan_subspace(&g).ok_or("no Cartan subalgebra")?)?;
    println!("Cartan: bracket closed {}, multisymplectic {}", c.bracket_closed, c.restricted_multisymplectic);
    Ok(())
}
