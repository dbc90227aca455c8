//! Tangent spaces of the two Quot schemes at a point, as explicit linear
//! systems over the rationals.
//!
//! For `F` with generators `v_1, ..., v_{2r}` (the columns of `A_p`), a
//! homomorphism `alpha: F -> E_0/F` is the tuple of images `alpha(v_j)`, each
//! written in the monomial basis of the finite-length quotient. These
//! coordinates span `Hom(F, E_0/F)`, the tangent space of the full Quot
//! scheme.
//!
//! The symplectic locus is cut out by the condition that the deformed
//! pairing `omega(v + e alpha(v), w + e alpha(w))` still factor through the
//! deformed divisor. Modulo `t^{m_p}` at each point:
//!
//! ```text
//! omega(v_i, alpha(v_j)) - omega(v_j, alpha(v_i)) = u_p(t) g_ij(t)
//! ```
//!
//! where `g = (A^T J A) / t^{m_p}` and `u_p` (a polynomial of degree
//! `< m_p`) is the first-order motion of the divisor at `p`. The `u_p` are
//! auxiliary unknowns; they are eliminated to leave constraints on `alpha`
//! alone. Pinning `u_p = 0` keeps the divisor fixed and leaves the tangent
//! space of the fiber of the divisor map.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Jet, Scalar};
use crate::linalg::{JetMatrix, LatticeQuotient, ScalarMatrix};
use crate::local_model::sample::SampleKind;
use crate::local_model::QuotPoint;
use crate::rng::{seeded, small_int};

/// How classes in `E_0/F` are lifted to `E_0` when evaluating the pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftRule {
    /// The monomial representative `t^s e_i`.
    Canonical,
    /// The monomial representative plus a seeded pseudo-random element of
    /// `F`. The resulting system must not depend on the choice.
    Perturbed(u64),
}

fn per_point_quotients(q: &QuotPoint) -> Result<Vec<LatticeQuotient>> {
    q.models()
        .iter()
        .map(|m| LatticeQuotient::new(&m.matrix))
        .collect()
}

/// Dimension of `Hom(F, E_0/F)` as the number of coordinates of the
/// images of the free generators of `F` in the quotient.
pub fn hom_space_dimension(q: &QuotPoint) -> Result<usize> {
    if !q.is_in_tilde_q() {
        return Err(Error::NotMember("Q~"));
    }
    let n = 2 * q.r();
    Ok(per_point_quotients(q)?
        .iter()
        .map(|lq| n * lq.basis().len())
        .sum())
}

#[derive(Clone, Debug)]
pub struct TangentSystem {
    pub base: QuotPoint,
    /// Dimension of the hom space; the columns of every matrix below start
    /// with these coordinates.
    pub ambient_dimension: usize,
    /// Symmetry equations including the divisor-motion unknowns, one row per
    /// point, generator pair `i < j` and level `l < m_p`.
    pub raw_matrix: ScalarMatrix,
    /// Number of divisor-motion unknowns (trailing columns of `raw_matrix`).
    pub divisor_unknowns: usize,
    /// Constraints on the hom-space coordinates alone, with the divisor
    /// motion eliminated. Its kernel is the tangent space of the symplectic
    /// Quot scheme.
    pub constraint_matrix: ScalarMatrix,
}

impl TangentSystem {
    pub fn tangent_dimension(&self) -> usize {
        self.ambient_dimension - self.constraint_matrix.rank()
    }

    /// Tangent dimension of the fiber of the divisor map: the symmetry
    /// equations with the divisor held fixed.
    pub fn fiber_tangent_dimension(&self) -> usize {
        self.ambient_dimension - self.fiber_matrix().rank()
    }

    pub fn fiber_matrix(&self) -> ScalarMatrix {
        self.raw_matrix
            .block(0..self.raw_matrix.rows(), 0..self.ambient_dimension)
    }

    /// Basis of the tangent space, as columns in hom-space coordinates.
    pub fn tangent_basis(&self) -> ScalarMatrix {
        self.constraint_matrix.kernel_basis()
    }
}

pub fn build_tangent_system(q: &QuotPoint) -> Result<TangentSystem> {
    build_tangent_system_with(q, LiftRule::Canonical)
}

pub fn build_tangent_system_with(q: &QuotPoint, lift_rule: LiftRule) -> Result<TangentSystem> {
    if !q.is_in_q() {
        return Err(Error::NotMember("Q"));
    }
    let space = q.space();
    let n = space.dim();
    let quotients = per_point_quotients(q)?;

    let ambient: usize = quotients.iter().map(|lq| n * lq.basis().len()).sum();
    let multiplicities = q.local_multiplicities();
    let divisor_unknowns: usize = multiplicities.iter().sum();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();

    let mut hom_offset = 0;
    let mut div_offset = ambient;
    for ((model, lq), &m) in q.models().iter().zip(&quotients).zip(&multiplicities) {
        let dim_q = lq.basis().len();
        if m == 0 {
            hom_offset += n * dim_q;
            continue;
        }
        // only levels below m are read, and the Gram matrix is divided by t^m
        let k = (2 * m).min(q.order());
        let a = &model.matrix.truncate(k);
        let form = JetMatrix::from_scalar(space.form(), k);
        // row vectors v_i^T J, so that omega(v_i, x) = sum_k w_i[k] x[k]
        let w = a.transpose().mul(&form)?;
        let lifts = basis_lifts(lq, a, lift_rule);
        // pairing[i][b] = omega(v_i, lift(b))
        let pairing: Vec<Vec<Jet>> = (0..n)
            .map(|i| {
                lifts
                    .iter()
                    .map(|lift| (0..n).fold(Jet::zero(k), |acc, c| &acc + &(&w[(i, c)] * &lift[c])))
                    .collect()
            })
            .collect();
        let g = model.gram_to_order(&space, k).shift_down(m);
        let coord = |j: usize, b: usize| hom_offset + j * dim_q + b;
        for i in 0..n {
            for j in i + 1..n {
                for level in 0..m {
                    let mut row = vec![Scalar::zero(); ambient + divisor_unknowns];
                    for b in 0..dim_q {
                        row[coord(j, b)] += pairing[i][b].coeff(level);
                        row[coord(i, b)] -= pairing[j][b].coeff(level);
                    }
                    for s in 0..=level {
                        row[div_offset + s] -= g[(i, j)].coeff(level - s);
                    }
                    rows.push(row);
                }
            }
        }
        hom_offset += n * dim_q;
        div_offset += m;
    }

    let width = ambient + divisor_unknowns;
    let raw_matrix = if rows.is_empty() {
        ScalarMatrix::zeros(0, width)
    } else {
        ScalarMatrix::from_rows(rows)?
    };
    let constraint_matrix = eliminate_trailing(&raw_matrix, ambient);
    Ok(TangentSystem {
        base: q.clone(),
        ambient_dimension: ambient,
        raw_matrix,
        divisor_unknowns,
        constraint_matrix,
    })
}

/// Projects out the columns from `keep` onward: returns `Y M_keep`, where
/// the rows of `Y` span the left kernel of the trailing block.
fn eliminate_trailing(m: &ScalarMatrix, keep: usize) -> ScalarMatrix {
    let rows = m.rows();
    if rows == 0 {
        return ScalarMatrix::zeros(0, keep);
    }
    let head = m.block(0..rows, 0..keep);
    if keep == m.cols() {
        return head;
    }
    let tail = m.block(0..rows, keep..m.cols());
    let left_kernel = tail.transpose().kernel_basis().transpose();
    if left_kernel.rows() == 0 {
        return ScalarMatrix::zeros(0, keep);
    }
    left_kernel.mul(&head).expect("shapes agree")
}

fn basis_lifts(lq: &LatticeQuotient, a: &JetMatrix, rule: LiftRule) -> Vec<Vec<Jet>> {
    let k = a.order();
    let n = a.rows();
    let mut rng = match rule {
        LiftRule::Canonical => None,
        LiftRule::Perturbed(seed) => Some(seeded(seed)),
    };
    lq.basis()
        .iter()
        .map(|&(i, s)| {
            let mut lift = vec![Jet::zero(k); n];
            lift[i] = Jet::monomial(Scalar::one(), s, k);
            if let Some(rng) = rng.as_mut() {
                for j in 0..n {
                    let c = small_int(rng);
                    let power = rng.gen_range(0..3);
                    let factor = Jet::monomial(c, power, k);
                    for (row, entry) in lift.iter_mut().enumerate() {
                        *entry = &*entry + &(&factor * &a[(row, j)]);
                    }
                }
            }
            lift
        })
        .collect()
}

pub fn symplectic_tangent_dimension(q: &QuotPoint) -> Result<usize> {
    Ok(build_tangent_system(q)?.tangent_dimension())
}

pub fn fiber_tangent_dimension(q: &QuotPoint) -> Result<usize> {
    Ok(build_tangent_system(q)?.fiber_tangent_dimension())
}

/// `2 r^2 d`.
pub fn expected_hom_dimension(r: usize, d: usize) -> usize {
    2 * r * r * d
}

/// `d (r^2 + r + 2) / 2`.
pub fn expected_tangent_dimension(r: usize, d: usize) -> usize {
    d * (r * r + r + 2) / 2
}

/// `r (r + 1) / 2`.
pub fn lagrangian_grassmannian_dimension(r: usize) -> usize {
    r * (r + 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorType {
    Reduced,
    NonReduced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub r: usize,
    pub d: usize,
    pub sample_seed: u64,
    pub divisor_type: DivisorType,
    pub hom_dim: usize,
    pub hom_expected: usize,
    pub tangent_dim: usize,
    /// Absent over non-reduced divisors, where no value is asserted.
    pub tangent_expected: Option<usize>,
    pub fiber_dim: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub grid: Vec<ReportRow>,
}

impl DimensionReport {
    /// Whether every row over a reduced divisor matches both formulas.
    pub fn all_reduced_match(&self) -> bool {
        self.grid.iter().all(|row| row.matches)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:>3} {:>3} {:>20} {:>12} {:>8} {:>8} {:>8} {:>8} {:>6} {:>6}\n",
            "r",
            "d",
            "sample_seed",
            "divisor",
            "hom",
            "hom_exp",
            "tangent",
            "tan_exp",
            "fiber",
            "match"
        );
        for row in &self.grid {
            let divisor = match row.divisor_type {
                DivisorType::Reduced => "reduced",
                DivisorType::NonReduced => "non-reduced",
            };
            let expected = row
                .tangent_expected
                .map_or("-".to_string(), |e| e.to_string());
            out.push_str(&format!(
                "{:>3} {:>3} {:>20} {:>12} {:>8} {:>8} {:>8} {:>8} {:>6} {:>6}\n",
                row.r,
                row.d,
                row.sample_seed,
                divisor,
                row.hom_dim,
                row.hom_expected,
                row.tangent_dim,
                expected,
                row.fiber_dim,
                row.matches
            ));
        }
        out
    }
}

/// Seed of sample `index` in cell `(r, d)` of a report seeded with `seed`.
pub fn cell_seed(seed: u64, r: usize, d: usize, index: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(((r as u64) << 40) | ((d as u64) << 20) | index as u64)
}

/// Dimension row for one point of the symplectic Quot scheme.
pub fn report_row(q: &QuotPoint, sample_seed: u64) -> Result<ReportRow> {
    let (r, d) = (q.r(), q.d());
    let hom_dim = hom_space_dimension(q)?;
    let system = build_tangent_system(q)?;
    let reduced = q.divisor_map().is_reduced();
    let tangent_dim = system.tangent_dimension();
    let tangent_expected = reduced.then(|| expected_tangent_dimension(r, d));
    let hom_expected = expected_hom_dimension(r, d);
    Ok(ReportRow {
        r,
        d,
        sample_seed,
        divisor_type: if reduced {
            DivisorType::Reduced
        } else {
            DivisorType::NonReduced
        },
        hom_dim,
        hom_expected,
        tangent_dim,
        tangent_expected,
        fiber_dim: system.fiber_tangent_dimension(),
        matches: hom_dim == hom_expected && tangent_expected.is_none_or(|e| e == tangent_dim),
    })
}

/// Samples points over the grid `1..=r_max x 1..=d_max`. Even-indexed
/// samples lie over reduced divisors; odd-indexed ones have random
/// multiplicities.
pub fn dimension_report(
    r_max: usize,
    d_max: usize,
    samples: usize,
    seed: u64,
) -> Result<DimensionReport> {
    dimension_report_with_order(r_max, d_max, samples, seed, |r, d| {
        crate::local_model::default_order(r, d)
    })
}

pub fn dimension_report_with_order(
    r_max: usize,
    d_max: usize,
    samples: usize,
    seed: u64,
    order: impl Fn(usize, usize) -> usize,
) -> Result<DimensionReport> {
    if r_max == 0 || d_max == 0 || samples == 0 {
        return Err(Error::InvalidParameter(
            "grid bounds and samples must be at least 1".into(),
        ));
    }
    let mut grid = Vec::new();
    for r in 1..=r_max {
        let space = crate::symplectic::SymplecticSpace::standard(r)?;
        for d in 1..=d_max {
            for index in 0..samples {
                let sample_seed = cell_seed(seed, r, d, index);
                let mut rng = seeded(sample_seed);
                let kind = if index % 2 == 0 {
                    SampleKind::Reduced
                } else {
                    SampleKind::Member
                };
                let q = kind.sample(&mut rng, &space, d, Some(order(r, d)))?;
                grid.push(report_row(&q, sample_seed)?);
            }
        }
    }
    Ok(DimensionReport { grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::JetMatrix;
    use crate::local_model::{default_order, LocalModel, SupportPoint};
    use crate::symplectic::SymplecticSpace;

    fn at_origin(r: usize, d: usize, exps: &[usize]) -> QuotPoint {
        let k = default_order(r, d);
        let model = LocalModel::new(
            SupportPoint(Scalar::zero()),
            JetMatrix::diag_powers(exps, k),
        );
        QuotPoint::new(r, d, k, vec![model]).unwrap()
    }

    #[test]
    fn rank_one_point_by_hand() {
        // F = span(t e_1, e_2); alpha(t e_1) = a [e_1], alpha(e_2) = b [e_1].
        // omega(t e_1, b e_1) - omega(e_2, a e_1) = a must equal u * 1.
        let q = at_origin(1, 1, &[1, 0]);
        let sys = build_tangent_system(&q).unwrap();
        assert_eq!(sys.ambient_dimension, 2);
        assert_eq!(sys.raw_matrix.rows(), 1);
        assert_eq!(sys.raw_matrix, ScalarMatrix::from_ints(&[&[1, 0, -1]]));
        assert!(sys.constraint_matrix.is_zero());
        assert_eq!(sys.tangent_dimension(), 2);
        assert_eq!(sys.fiber_tangent_dimension(), 1);
    }

    #[test]
    fn hom_dimension_examples() {
        assert_eq!(hom_space_dimension(&at_origin(1, 1, &[1, 0])).unwrap(), 2);
        assert_eq!(
            hom_space_dimension(&at_origin(2, 1, &[1, 1, 0, 0])).unwrap(),
            8
        );
        let space = SymplecticSpace::standard(2).unwrap();
        let q = SampleKind::Tilde
            .sample(&mut seeded(1), &space, 3, None)
            .unwrap();
        assert_eq!(hom_space_dimension(&q).unwrap(), 24);
    }

    #[test]
    fn non_members_rejected() {
        let q = at_origin(2, 1, &[1, 0, 0, 0]);
        assert_eq!(hom_space_dimension(&q), Err(Error::NotMember("Q~")));
        assert!(matches!(
            build_tangent_system(&q),
            Err(Error::NotMember("Q"))
        ));
    }

    #[test]
    fn reduced_dimensions() {
        for (r, d, expected) in [(1, 1, 2), (2, 1, 4), (2, 2, 8)] {
            let space = SymplecticSpace::standard(r).unwrap();
            let q = SampleKind::Reduced
                .sample(&mut seeded(9), &space, d, None)
                .unwrap();
            assert_eq!(symplectic_tangent_dimension(&q).unwrap(), expected);
            assert_eq!(
                fiber_tangent_dimension(&q).unwrap(),
                d * lagrangian_grassmannian_dimension(r)
            );
        }
    }

    #[test]
    fn zero_map_is_tangent() {
        let space = SymplecticSpace::standard(2).unwrap();
        let q = SampleKind::Member
            .sample(&mut seeded(3), &space, 2, None)
            .unwrap();
        let sys = build_tangent_system(&q).unwrap();
        let zero = ScalarMatrix::zeros(sys.ambient_dimension, 1);
        assert!(sys.constraint_matrix.mul(&zero).unwrap().is_zero());
    }

    #[test]
    fn lift_independence() {
        let space = SymplecticSpace::standard(2).unwrap();
        for seed in 0..4 {
            let q = SampleKind::Member
                .sample(&mut seeded(seed), &space, 2, None)
                .unwrap();
            let a = build_tangent_system_with(&q, LiftRule::Canonical).unwrap();
            let b = build_tangent_system_with(&q, LiftRule::Perturbed(seed + 100)).unwrap();
            assert_eq!(a.tangent_basis(), b.tangent_basis());
            assert_eq!(
                a.fiber_matrix().kernel_basis(),
                b.fiber_matrix().kernel_basis()
            );
        }
    }

    #[test]
    fn report_rejects_empty_grid() {
        assert!(dimension_report(0, 1, 1, 0).is_err());
    }

    #[test]
    fn non_reduced_rows_carry_no_expectation() {
        let q = at_origin(1, 2, &[2, 0]);
        let row = report_row(&q, 0).unwrap();
        assert_eq!(row.divisor_type, DivisorType::NonReduced);
        assert_eq!(row.tangent_expected, None);
        assert!(row.matches);
    }

    #[test]
    fn small_report_matches() {
        let report = dimension_report(2, 2, 3, 7).unwrap();
        assert_eq!(report.grid.len(), 12);
        assert!(report.all_reduced_match());
        assert!(report.to_text().lines().count() == 13);
    }
}
