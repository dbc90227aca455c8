//! The standard symplectic space, Lagrangian subspaces and their charts.
//!
//! ```bash
//! cargo run --example standard_form
//! ```

use sympquot::exactnum::scalar;
use sympquot::linalg::ScalarMatrix;
use sympquot::rng::seeded;
use sympquot::symplectic::SymplecticSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymplecticSpace::standard(2)?;
    println!("J =\n{:?}", space.form());

    let e1 = [scalar(1), scalar(0), scalar(0), scalar(0)];
    let f1 = [scalar(0), scalar(0), scalar(1), scalar(0)];
    println!("omega(e1, f1) = {}", space.pair(&e1, &f1));

    // graph of a symmetric matrix is Lagrangian, of a non-symmetric one is not
    let s = ScalarMatrix::from_ints(&[&[2, 1], &[1, -3]]);
    let n = ScalarMatrix::from_ints(&[&[2, 1], &[0, -3]]);
    println!(
        "graph(S) Lagrangian: {}",
        space.is_lagrangian(&space.graph(&s)?)
    );
    println!(
        "graph(N) Lagrangian: {}",
        space.is_lagrangian(&space.graph(&n)?)
    );

    let v = space.sample_lagrangian(&mut seeded(1));
    println!("a sampled Lagrangian, canonical basis:\n{:?}", v.basis());

    println!("{:>3} {:>12} {:>12}", "r", "dim LGr", "dim Sp");
    for r in 1..=4 {
        let sp = SymplecticSpace::standard(r)?;
        println!(
            "{:>3} {:>12} {:>12}",
            r,
            sp.lagrangian_chart_dimension(),
            sp.lie_algebra_dimension()
        );
    }
    Ok(())
}
