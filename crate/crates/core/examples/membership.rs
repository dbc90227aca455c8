//! Membership tests and the divisor map on hand-written local models.
//!
//! ```bash
//! cargo run --example membership
//! ```

use sympquot::exactnum::{scalar, Jet};
use sympquot::linalg::JetMatrix;
use sympquot::local_model::{default_order, LocalModel, QuotPoint, SupportPoint};

fn at_origin(r: usize, d: usize, exps: &[usize]) -> Result<QuotPoint, sympquot::error::Error> {
    let k = default_order(r, d);
    let model = LocalModel::new(SupportPoint(scalar(0)), JetMatrix::diag_powers(exps, k));
    QuotPoint::new(r, d, k, vec![model])
}

fn report(name: &str, q: &QuotPoint) -> Result<(), sympquot::error::Error> {
    let divisor: Vec<String> = q
        .divisor_map()
        .entries()
        .iter()
        .map(|(p, m)| format!("{m}*[{p}]"))
        .collect();
    let pairing = if q.is_in_q() {
        format!("{}", q.perfect_pairing_check()?)
    } else {
        "-".into()
    };
    println!(
        "{name:<28} colength {:<8} in Q~ {:<6} in Q {:<6} perfect {:<6} divisor {}",
        format!("{:?}", q.total_colength()),
        q.is_in_tilde_q(),
        q.is_in_q(),
        pairing,
        divisor.join(" + ")
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("r=1 diag(t, 1)", &at_origin(1, 1, &[1, 0])?)?;
    report("r=1 diag(t^2, 1)", &at_origin(1, 2, &[2, 0])?)?;
    report("r=1 diag(t, t)", &at_origin(1, 2, &[1, 1])?)?;
    report("r=2 diag(t, t, 1, 1)", &at_origin(2, 1, &[1, 1, 0, 0])?)?;
    // the span of e_2, e_4, t e_1, t e_3 has the right colength, but the
    // form pairs e_2 with e_4 to a unit
    report("r=2 diag(t, 1, t, 1)", &at_origin(2, 1, &[1, 0, 1, 0])?)?;

    // the same lattice written with a non-diagonal generator matrix
    let k = default_order(1, 1);
    let a = JetMatrix::from_rows(vec![
        vec![Jet::from_ints(&[0, 1], k), Jet::from_ints(&[1], k)],
        vec![Jet::zero(k), Jet::from_ints(&[1, 2], k)],
    ])?;
    let q = QuotPoint::new(1, 1, k, vec![LocalModel::new(SupportPoint(scalar(5)), a)])?;
    report("r=1 skew generators at 5", &q)?;
    println!(
        "canonical form at 5:\n{:?}",
        q.canonical()?.models()[0].matrix
    );
    Ok(())
}
