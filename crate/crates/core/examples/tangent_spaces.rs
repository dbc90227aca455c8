//! Tangent spaces of the two Quot schemes at sampled points.
//!
//! ```bash
//! cargo run --example tangent_spaces -- 2 3 11
//! ```
//! Arguments: r d seed (defaults 2 2 11).

use sympquot::local_model::default_order;
use sympquot::local_model::sample::{sample_member_with, SampleKind};
use sympquot::rng::seeded;
use sympquot::symplectic::SymplecticSpace;
use sympquot::tangent::{
    build_tangent_system, build_tangent_system_with, expected_hom_dimension,
    expected_tangent_dimension, LiftRule,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let r = args.first().copied().unwrap_or(2) as usize;
    let d = args.get(1).copied().unwrap_or(2) as usize;
    let seed = args.get(2).copied().unwrap_or(11);
    let space = SymplecticSpace::standard(r)?;
    let mut rng = seeded(seed);

    let reduced = SampleKind::Reduced.sample(&mut rng, &space, d, None)?;
    let system = build_tangent_system(&reduced)?;
    println!("reduced divisor, r = {r}, d = {d}");
    println!(
        "  hom space      {} (expected {})",
        system.ambient_dimension,
        expected_hom_dimension(r, d)
    );
    println!(
        "  tangent space  {} (expected {})",
        system.tangent_dimension(),
        expected_tangent_dimension(r, d)
    );
    println!("  fiber tangent  {}", system.fiber_tangent_dimension());
    println!(
        "  equations      {} rows, {} divisor unknowns",
        system.raw_matrix.rows(),
        system.divisor_unknowns
    );

    let perturbed = build_tangent_system_with(&reduced, LiftRule::Perturbed(seed))?;
    println!(
        "  other lifts give the same dimension: {}",
        perturbed.tangent_dimension() == system.tangent_dimension()
    );

    // everything at one point of multiplicity d
    let fat = sample_member_with(&mut rng, &space, d, default_order(r, d), &[d])?;
    let system = build_tangent_system(&fat)?;
    println!("one point of multiplicity {d}");
    println!("  hom space      {}", system.ambient_dimension);
    println!("  tangent space  {}", system.tangent_dimension());
    println!("  fiber tangent  {}", system.fiber_tangent_dimension());
    Ok(())
}
