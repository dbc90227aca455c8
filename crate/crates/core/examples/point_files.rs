//! Reading and writing point documents.
//!
//! ```bash
//! cargo run --example point_files
//! ```

use sympquot::local_model::format::QuotPointDoc;
use sympquot::local_model::sample::SampleKind;
use sympquot::rng::seeded;
use sympquot::symplectic::SymplecticSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SymplecticSpace::standard(1)?;
    let q = SampleKind::Tilde.sample(&mut seeded(3), &space, 2, None)?;

    let mut doc = QuotPointDoc::from_point(&q);
    doc.seed = Some(3);
    let text = serde_json::to_string_pretty(&doc)?;
    println!("{text}");

    let parsed: QuotPointDoc = serde_json::from_str(&text)?;
    let back = parsed.to_point()?;
    println!("round trip exact: {}", back == q);

    let wider = back.with_order(2 * back.order())?;
    println!(
        "K {} -> {}: colengths {:?} -> {:?}",
        q.order(),
        wider.order(),
        q.local_colengths(),
        wider.local_colengths()
    );

    // decimals are not scalars
    let mut bad = parsed.clone();
    bad.models[0].point = "0.5".into();
    if let Err(e) = bad.to_point() {
        println!("rejected: {e}");
    }
    Ok(())
}
