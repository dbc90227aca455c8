//! The symplectic group acting on points and on Lagrangians.
//!
//! ```bash
//! cargo run --example group_action
//! ```

use sympquot::linalg::ScalarMatrix;
use sympquot::local_model::sample::SampleKind;
use sympquot::rng::seeded;
use sympquot::symplectic::{SymplecticGenerator, SymplecticMatrix, SymplecticSpace};
use sympquot::tangent::symplectic_tangent_dimension;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymplecticSpace::standard(2)?;
    let mut rng = seeded(8);

    let shear =
        space.from_generators(&[SymplecticGenerator::UpperShear(ScalarMatrix::from_ints(&[
            &[1, 0],
            &[0, 0],
        ]))])?;
    println!("shear:\n{:?}", shear.matrix());
    match space.effectiveness_witness(&shear, 50, 1)? {
        Some(v) => println!("moves the Lagrangian\n{:?}", v.basis()),
        None => println!("no moved Lagrangian found"),
    }

    let minus = SymplecticMatrix::new(&space, ScalarMatrix::identity(4).neg())?;
    println!(
        "-I central: {}, moved Lagrangians out of 50: {}",
        minus.is_central(),
        space.moved_count(&minus, 50, 1)?
    );

    let g = space.sample_noncentral(&mut rng);
    let q = SampleKind::Member.sample(&mut rng, &space, 2, None)?;
    let moved = q.apply_group(&g)?;
    println!(
        "membership before/after: {} / {}",
        q.is_in_q(),
        moved.is_in_q()
    );
    println!(
        "divisor unchanged: {}",
        q.divisor_map().same_as(&moved.divisor_map())
    );
    println!(
        "tangent dimension before/after: {} / {}",
        symplectic_tangent_dimension(&q)?,
        symplectic_tangent_dimension(&moved)?
    );
    Ok(())
}
