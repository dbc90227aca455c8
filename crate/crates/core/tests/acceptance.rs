//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p sympquot --test acceptance`.

mod common;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use sympquot::local_model::sample::SampleKind;
use sympquot::local_model::{default_order, same_fiber_data, QuotPoint, SupportPoint};
use sympquot::rng::{random_points, seeded};
use sympquot::symplectic::{SymplecticMatrix, SymplecticSpace};
use sympquot::tangent::{build_tangent_system, hom_space_dimension, symplectic_tangent_dimension};

const SEED: u64 = 20_240_611;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }

    fn within(self, elapsed: Duration, budget: Duration) -> Self {
        let passed = self.passed && elapsed <= budget;
        Verdict::new(
            passed,
            format!("{} in {:.2?} (budget {:?})", self.detail, elapsed, budget),
        )
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn grid() -> impl Iterator<Item = (usize, usize)> {
    (1..=3).flat_map(|r| (1..=3).map(move |d| (r, d)))
}

fn space(r: usize) -> SymplecticSpace {
    SymplecticSpace::standard(r).expect("r >= 1")
}

/// Points of the symplectic Quot scheme collected for the membership laws.
#[derive(Default)]
struct Pool {
    members: Vec<QuotPoint>,
}

fn criterion_1() -> Verdict {
    let (failures, elapsed) = timed(|| {
        (1..=4)
            .filter(|&r| space(r).lagrangian_chart_dimension() != common::symmetric_entries(r))
            .collect::<Vec<_>>()
    });
    let values: Vec<usize> = (1..=4)
        .map(|r| space(r).lagrangian_chart_dimension())
        .collect();
    Verdict::new(
        failures.is_empty(),
        format!("chart dimensions {values:?} for r = 1..4"),
    )
    .within(elapsed, Duration::from_secs(1))
}

fn criterion_2(pool: &mut Pool) -> Verdict {
    let kinds = [SampleKind::Tilde, SampleKind::Member, SampleKind::Reduced];
    let ((ok, total, bad), elapsed) = timed(|| {
        let (mut ok, mut total, mut bad) = (0, 0, Vec::new());
        for (r, d) in grid() {
            let sp = space(r);
            let mut rng = seeded(SEED ^ (r * 10 + d) as u64);
            for i in 0..10 {
                let q = kinds[i % 3]
                    .sample(&mut rng, &sp, d, None)
                    .expect("sampler");
                total += 1;
                let expected = common::classical_quot_dimension(r, d);
                let got = hom_space_dimension(&q).ok();
                if got == Some(expected) && common::hom_dimension(&q) == Some(expected) {
                    ok += 1;
                } else {
                    bad.push((r, d, i, got));
                }
                if q.is_in_q() {
                    pool.members.push(q);
                }
            }
        }
        (ok, total, bad)
    });
    Verdict::new(
        ok == total,
        format!("hom dimension 2r^2 d on {ok}/{total} samples {bad:?}"),
    )
    .within(elapsed, Duration::from_secs(60))
}

fn reduced_samples() -> Vec<QuotPoint> {
    let mut out = Vec::new();
    for (r, d) in grid() {
        let sp = space(r);
        let mut rng = seeded(SEED.wrapping_mul(3) ^ (r * 10 + d) as u64);
        for _ in 0..10 {
            out.push(
                SampleKind::Reduced
                    .sample(&mut rng, &sp, d, None)
                    .expect("sampler"),
            );
        }
    }
    out
}

fn tangent_failures(samples: &[QuotPoint]) -> Vec<(usize, usize, Option<usize>)> {
    samples
        .iter()
        .filter_map(|q| {
            let got = symplectic_tangent_dimension(q).ok();
            let expected = common::symplectic_quot_dimension(q.r(), q.d());
            let reduced = q.divisor_map().is_reduced();
            (got != Some(expected) || !reduced).then_some((q.r(), q.d(), got))
        })
        .collect()
}

fn criterion_3(pool: &mut Pool, samples: &mut Vec<QuotPoint>) -> Verdict {
    let (bad, elapsed) = timed(|| {
        *samples = reduced_samples();
        tangent_failures(samples)
    });
    pool.members.extend(samples.iter().cloned());
    let ok = samples.len() - bad.len();
    Verdict::new(
        bad.is_empty() && samples.len() == 90,
        format!(
            "tangent dimension d(r^2+r+2)/2 on {ok}/{} reduced samples {bad:?}",
            samples.len()
        ),
    )
    .within(elapsed, Duration::from_secs(300))
}

fn criterion_4(pool: &mut Pool) -> Verdict {
    let (r, d) = (2, 3);
    let sp = space(r);
    let mut rng = seeded(SEED.wrapping_add(4));
    let mut ok = 0;
    for _ in 0..100 {
        // tuple -> point -> tuple
        let points: Vec<SupportPoint> = random_points(&mut rng, d)
            .into_iter()
            .map(SupportPoint)
            .collect();
        let lagrangians: Vec<_> = (0..d).map(|_| sp.sample_lagrangian(&mut rng)).collect();
        let q = QuotPoint::from_lagrangians(&sp, &points, &lagrangians).expect("fiber point");
        let back = q.lagrangians_from_fiber().expect("reduced member");
        let forward = back.0 == points
            && back
                .1
                .iter()
                .zip(&lagrangians)
                .all(|(x, y)| common::same_column_span(x.basis(), y.basis()))
            && same_fiber_data(&back, &(points.clone(), lagrangians.clone()));

        // point -> tuple -> point, starting from a re-presented member
        let p = SampleKind::Reduced
            .sample(&mut rng, &sp, d, None)
            .expect("sampler");
        let tuple = p.lagrangians_from_fiber().expect("reduced member");
        let rebuilt = QuotPoint::from_lagrangians(&sp, &tuple.0, &tuple.1).expect("fiber point");
        let backward = rebuilt.same_subsheaf(&p).expect("canonical forms");

        if forward && backward {
            ok += 1;
        }
        pool.members.push(q);
        pool.members.push(p);
    }
    Verdict::new(ok == 100, format!("fiber round trips {ok}/100 at r=2, d=3"))
}

fn criterion_5() -> Verdict {
    let mut witnessed = 0;
    let mut false_witnesses = 0;
    for r in 1..=3 {
        let sp = space(r);
        let mut rng = seeded(SEED.wrapping_add(5 + r as u64));
        for i in 0..100 {
            let g = sp.sample_noncentral(&mut rng);
            match sp
                .effectiveness_witness(&g, 50, SEED + i)
                .expect("valid trials")
            {
                Some(v) if common::moves(g.matrix(), v.basis()) => witnessed += 1,
                Some(_) => false_witnesses += 1,
                None => {}
            }
        }
        for sign in [1, -1] {
            let g =
                SymplecticMatrix::new(&sp, common::scalar_identity(2 * r, sign)).expect("central");
            if sp
                .effectiveness_witness(&g, 50, SEED)
                .expect("valid trials")
                .is_some()
            {
                false_witnesses += 1;
            }
            false_witnesses += sp.moved_count(&g, 50, SEED).expect("valid trials");
            let mut rng = seeded(SEED);
            false_witnesses += (0..50)
                .filter(|_| common::moves(g.matrix(), sp.sample_lagrangian(&mut rng).basis()))
                .count();
        }
    }
    Verdict::new(
        witnessed == 300 && false_witnesses == 0,
        format!("{witnessed}/300 witnessed, {false_witnesses} false witnesses"),
    )
}

/// Laws checked against the library, and against the colength oracle when
/// `oracle` is set.
fn membership_violations(q: &QuotPoint, oracle: bool) -> usize {
    let space = q.space();
    let mut violations = 0;
    let mults = q.local_multiplicities();
    if mults.iter().sum::<usize>() != q.d() || q.divisor_map().degree() != q.d() {
        violations += 1;
    }
    for (model, m) in q.models().iter().zip(mults) {
        let independent =
            !oracle || common::colength(&model.matrix, q.r() * q.d()) == Some(q.r() * m);
        if !independent || model.colength().finite() != Some(q.r() * m) {
            violations += 1;
        }
        if model.multiplicity(&space) != m {
            violations += 1;
        }
    }
    violations
}

fn criterion_6(pool: &Pool) -> Verdict {
    let violations: usize = pool
        .members
        .iter()
        .map(|q| membership_violations(q, true))
        .sum();
    Verdict::new(
        violations == 0 && !pool.members.is_empty(),
        format!(
            "{violations} violations over {} members",
            pool.members.len()
        ),
    )
}

fn criterion_7() -> Verdict {
    let sp = space(1);
    let mut rng = seeded(SEED.wrapping_add(7));
    let mut ok = 0;
    let mut non_reduced = 0;
    for i in 0..100 {
        let d = i % 3 + 1;
        let q = SampleKind::Tilde
            .sample(&mut rng, &sp, d, None)
            .expect("sampler");
        if q.models()
            .iter()
            .any(|m| m.colength().finite().unwrap_or(0) > 1)
        {
            non_reduced += 1;
        }
        if q.is_in_tilde_q() && q.is_in_q() {
            ok += 1;
        }
    }
    Verdict::new(
        ok == 100,
        format!("{ok}/100 in Q at r=1 ({non_reduced} non-reduced)"),
    )
}

/// Everything the group action must leave alone.
#[derive(Debug, PartialEq)]
struct Invariants {
    in_tilde_q: bool,
    in_q: bool,
    divisor: Vec<(String, usize)>,
    hom: Option<usize>,
    tangent: Option<(usize, usize)>,
}

fn invariants(q: &QuotPoint) -> Invariants {
    let mut divisor: Vec<(String, usize)> = q
        .divisor_map()
        .entries()
        .iter()
        .map(|(p, m)| (p.to_string(), *m))
        .collect();
    divisor.sort();
    let tangent = q.is_in_q().then(|| {
        let s = build_tangent_system(q).expect("member");
        (s.tangent_dimension(), s.fiber_tangent_dimension())
    });
    Invariants {
        in_tilde_q: q.is_in_tilde_q(),
        in_q: q.is_in_q(),
        divisor,
        hom: hom_space_dimension(q).ok(),
        tangent,
    }
}

fn criterion_8() -> Verdict {
    let kinds = [SampleKind::Reduced, SampleKind::Member, SampleKind::Tilde];
    let mut rng = seeded(SEED.wrapping_add(8));
    let mut ok = 0;
    for i in 0..50 {
        let r = i % 3 + 1;
        let d = i / 3 % 2 + 1;
        let sp = space(r);
        let q = kinds[i % 3]
            .sample(&mut rng, &sp, d, None)
            .expect("sampler");
        let g = sp.sample_noncentral(&mut rng);
        let moved = q.apply_group(&g).expect("same rank");
        if invariants(&q) == invariants(&moved) {
            ok += 1;
        }
    }
    Verdict::new(ok == 50, format!("{ok}/50 pairs invariant under the group"))
}

fn run_cli(args: &[&str], dir: &Path, env: Option<(&str, &str)>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sympquot"));
    cmd.args(args).current_dir(dir).env_remove("SYMPQUOT_MAX_K");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Verdict {
    let dir = tempfile::tempdir().expect("temp dir");
    let (_, point) = run_cli(
        &["sample", "--r", "2", "--d", "2", "--seed", "9"],
        dir.path(),
        None,
    );
    std::fs::write(dir.path().join("point.json"), &point).expect("write point");
    std::fs::write(
        dir.path().join("tuple.json"),
        r#"{"points": ["0", "1/2"], "lagrangians": [[["1"], ["0"]], [["1"], ["3"]]]}"#,
    )
    .expect("write tuple");
    let lines: [&[&str]; 10] = [
        &["sample", "--r", "2", "--d", "2", "--seed", "9"],
        &[
            "sample", "--r", "3", "--d", "2", "--seed", "1", "--kind", "member",
        ],
        &[
            "sample", "--r", "1", "--d", "3", "--seed", "5", "--kind", "tilde",
        ],
        &["check", "--input", "point.json"],
        &["divisor", "--input", "point.json"],
        &["tangent", "--input", "point.json"],
        &["fiber", "--input", "tuple.json"],
        &[
            "report",
            "--r",
            "2",
            "--d",
            "2",
            "--samples",
            "2",
            "--seed",
            "3",
        ],
        &[
            "effectiveness",
            "--r",
            "2",
            "--trials",
            "50",
            "--seed",
            "4",
            "--samples",
            "5",
        ],
        &[
            "report",
            "--r",
            "1",
            "--d",
            "2",
            "--samples",
            "2",
            "--seed",
            "3",
            "--format",
            "text",
        ],
    ];
    let mut identical = 0;
    let mut failures = Vec::new();
    for args in lines {
        let first = run_cli(args, dir.path(), None);
        let second = run_cli(args, dir.path(), None);
        if first == second && first.0 == 0 && !first.1.is_empty() {
            identical += 1;
        } else {
            failures.push(args.join(" "));
        }
    }
    Verdict::new(
        identical == 10,
        format!("{identical}/10 command lines byte-identical {failures:?}"),
    )
}

fn criterion_10(pool: &Pool, samples: &[QuotPoint]) -> Verdict {
    let doubled: Vec<QuotPoint> = samples
        .iter()
        .map(|q| q.with_order(2 * q.order()).expect("larger order"))
        .collect();
    let mut changed = tangent_failures(&doubled).len();
    for (q, d) in samples.iter().zip(&doubled) {
        if invariants(q) != invariants(d) {
            changed += 1;
        }
    }
    for q in &pool.members {
        let d = q.with_order(2 * q.order()).expect("larger order");
        changed += membership_violations(&d, false);
        if q.local_multiplicities() != d.local_multiplicities()
            || q.local_colengths()
                .iter()
                .map(|c| c.finite())
                .collect::<Vec<_>>()
                != d.local_colengths()
                    .iter()
                    .map(|c| c.finite())
                    .collect::<Vec<_>>()
        {
            changed += 1;
        }
    }

    // the command line raises K through the environment
    let dir = tempfile::tempdir().expect("temp dir");
    let (_, point) = run_cli(
        &["sample", "--r", "2", "--d", "2", "--seed", "10"],
        dir.path(),
        None,
    );
    std::fs::write(dir.path().join("point.json"), &point).expect("write point");
    let doubled_k = (2 * default_order(2, 2)).to_string();
    let plain = run_cli(&["tangent", "--input", "point.json"], dir.path(), None);
    let raised = run_cli(
        &["tangent", "--input", "point.json"],
        dir.path(),
        Some(("SYMPQUOT_MAX_K", &doubled_k)),
    );
    let strip_k = |bytes: &[u8]| {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).expect("json output");
        let k = v.as_object_mut().and_then(|o| o.remove("K"));
        (v, k)
    };
    let (a, ka) = strip_k(&plain.1);
    let (b, kb) = strip_k(&raised.1);
    if plain.0 != raised.0 || a != b || ka == kb {
        changed += 1;
    }

    Verdict::new(
        changed == 0,
        format!(
            "{changed} changed values with K doubled ({} tangent samples, {} members, CLI)",
            doubled.len(),
            pool.members.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut pool = Pool::default();
    let mut samples = Vec::new();
    let verdicts = [
        ("1 Lagrangian Grassmannian dimension", criterion_1()),
        ("2 classical Quot tangent dimension", criterion_2(&mut pool)),
        (
            "3 symplectic Quot tangent dimension",
            criterion_3(&mut pool, &mut samples),
        ),
        ("4 fiber isomorphism round trip", criterion_4(&mut pool)),
        ("5 effectiveness of the projective group", criterion_5()),
        ("6 membership laws", criterion_6(&pool)),
        ("7 rank one collapse", criterion_7()),
        ("8 group equivariance", criterion_8()),
        ("9 determinism", criterion_9()),
        ("10 truncation robustness", criterion_10(&pool, &samples)),
    ];
    let mut all = true;
    for (name, v) in &verdicts {
        println!(
            "{} criterion {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
        all &= v.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
