//! Tangent dimension report over a grid of (r, d).
//!
//! ```bash
//! cargo run --example dimension_report -- 3 3 4 7
//! ```
//! Arguments: r_max d_max samples seed (defaults 2 2 5 7).

use std::time::Instant;

use sympquot::tangent::dimension_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let get = |i: usize, default: u64| args.get(i).copied().unwrap_or(default);
    let (r_max, d_max, samples, seed) = (get(0, 2), get(1, 2), get(2, 5), get(3, 7));

    let start = Instant::now();
    let report = dimension_report(r_max as usize, d_max as usize, samples as usize, seed)?;
    print!("{}", report.to_text());
    println!(
        "{} rows in {:.2?}; every reduced row matches: {}",
        report.grid.len(),
        start.elapsed(),
        report.all_reduced_match()
    );
    Ok(())
}
