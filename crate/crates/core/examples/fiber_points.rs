//! Points over a reduced divisor from support points and Lagrangians, and
//! back again.
//!
//! ```bash
//! cargo run --example fiber_points
//! ```

use sympquot::exactnum::{ratio, scalar};
use sympquot::local_model::format::QuotPointDoc;
use sympquot::local_model::{QuotPoint, SupportPoint};
use sympquot::rng::seeded;
use sympquot::symplectic::SymplecticSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymplecticSpace::standard(2)?;
    let mut rng = seeded(42);
    let points = vec![
        SupportPoint(scalar(0)),
        SupportPoint(ratio(3, 2)),
        SupportPoint(scalar(-4)),
    ];
    let lagrangians: Vec<_> = points
        .iter()
        .map(|_| space.sample_lagrangian(&mut rng))
        .collect();

    let q = QuotPoint::from_lagrangians(&space, &points, &lagrangians)?;
    println!("r = {}, d = {}, K = {}", q.r(), q.d(), q.order());
    println!(
        "in Q: {}, divisor reduced: {}",
        q.is_in_q(),
        q.divisor_map().is_reduced()
    );
    for m in q.models() {
        println!("point {}: colength {:?}", m.point, m.colength());
    }

    let (back_points, back) = q.lagrangians_from_fiber()?;
    let same = back_points == points && back.iter().zip(&lagrangians).all(|(a, b)| a == b);
    println!("recovered the same Lagrangians: {same}");

    let rebuilt = QuotPoint::from_lagrangians(&space, &back_points, &back)?;
    println!("rebuilt the same subsheaf: {}", rebuilt.same_subsheaf(&q)?);

    let doc = QuotPointDoc::from_point(&q);
    println!("point document has {} models", doc.models.len());
    Ok(())
}
