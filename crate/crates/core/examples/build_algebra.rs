//! Build a compact simple Lie algebra and inspect its structure.

use lieform::lie_core::{build_algebra, casimir_on, RepSpace};
use lieform::scalars::SparseMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "su3".into());
    let g = build_algebra(&name)?;
    println!("{name}: dim {} rank {:?}", g.dim(), g.rank());
    println!("basis: {}", g.labels.join(" "));
    println!("jacobi violation: {:?}", g.jacobi_violation());
    let c = casimir_on(&g, RepSpace::Adjoint)?;
    println!("Casimir on the adjoint is the identity: {}", c == SparseMatrix::identity(g.dim()));
    if let Some(rd) = &g.root_datum {
        println!("exponents {:?}", rd.exponents());
        for w in rd.perp_highest_weights() {
            println!("perp constituent {w:?}: dim {}", rd.weyl_dim(&w)?);
        }
    }
    Ok(())
}
