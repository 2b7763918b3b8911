//! Splitting of the exterior algebra of su3 by omega and *omega.

use lieform::exterior::Exterior;
use lieform::lie_core::build_algebra;
use lieform::phi_split::split_tables;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = Exterior::new(&build_algebra("su3")?)?;
    let t = split_tables(&e)?;
    println!("omega-   {:?}", t.omega.minus);
    println!("omega+   {:?}", t.omega.plus);
    println!("*omega-  {:?}", t.star.minus);
    println!("*omega+  {:?}", t.star.plus);
    if let Some(fw) = t.four_way {
        println!("Lambda^4 four-way split {:?}, Casimir on the 27 {:?}", fw.parts, fw.casimir_27);
    }
    Ok(())
}
