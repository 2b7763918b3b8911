//! Recognize a 3-form and survive a random change of basis.

use lieform::exterior::Exterior;
use lieform::lie_core::build_algebra;
use lieform::recognize::{classify_3form, random_invertible, transform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = Exterior::new(&build_algebra("g2")?)?;
    let phi = &e.omega.vector;
    let r = classify_3form(phi, None)?;
    println!("{}: stabilizer dim {}, Killing signature {:?}", r.verdict, r.stab_dim, r.killing_signature);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let moved = transform(phi, &random_invertible(phi.n, &mut rng));
    let r = classify_3form(&moved, None)?;
    println!("after a basis change: {} (stab {})", r.verdict, r.stab_dim);
    Ok(())
}
