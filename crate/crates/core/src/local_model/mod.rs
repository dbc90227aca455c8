//! Points of the Quot schemes as finite families of local models.
//!
//! A subsheaf `F` of the trivial rank-`2r` bundle with torsion quotient is
//! determined by its stalks at the finitely many support points of the
//! quotient. At a support point `p` with local coordinate `t = x - p` the
//! stalk is the column span of a full-rank `2r x 2r` [`JetMatrix`] `A_p`.
//! Only these local rings ever enter a computation, so the curve itself is
//! modelled as an affine chart with rational coordinates.
//!
//! The restricted form `omega|_F` is the Gram matrix `A_p^T J A_p`. Its
//! minimal entry valuation `m_p` is the largest order of vanishing through
//! which the form factors at `p`, and the divisor map collects these.

pub mod format;
pub mod sample;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{format_scalar, Scalar};
use crate::linalg::{same_span, DetValuation, JetMatrix, ScalarMatrix};
use crate::symplectic::{LagrangianSubspace, SymplecticMatrix, SymplecticSpace};

/// Truncation order used for points of degree `d` and rank parameter `r`.
pub fn default_order(r: usize, d: usize) -> usize {
    2 * r * d + 1
}

/// A point of the affine coordinate chart of the curve.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportPoint(pub Scalar);

impl SupportPoint {
    pub fn coordinate(&self) -> &Scalar {
        &self.0
    }
}

impl fmt::Display for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(&self.0))
    }
}

impl fmt::Debug for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModel {
    pub point: SupportPoint,
    pub matrix: JetMatrix,
}

impl LocalModel {
    pub fn new(point: SupportPoint, matrix: JetMatrix) -> Self {
        LocalModel { point, matrix }
    }

    pub fn colength(&self) -> DetValuation {
        self.matrix.det_valuation().expect("square local matrix")
    }

    /// Gram matrix `A^T J A` of the restricted form.
    pub fn gram(&self, space: &SymplecticSpace) -> JetMatrix {
        let a = &self.matrix;
        a.transpose()
            .mul(&JetMatrix::from_scalar(space.form(), a.order()))
            .and_then(|x| x.mul(a))
            .expect("2r x 2r local matrix")
    }

    /// Gram matrix modulo `t^order`, for `order <= K`.
    pub fn gram_to_order(&self, space: &SymplecticSpace, order: usize) -> JetMatrix {
        LocalModel::new(self.point.clone(), self.matrix.truncate(order)).gram(space)
    }

    /// Order `m_p` to which the restricted form vanishes, capped at `K`.
    pub fn multiplicity(&self, space: &SymplecticSpace) -> usize {
        let k = self.matrix.order();
        let mut order = 1;
        while order < k {
            let m = self.gram_to_order(space, order).min_valuation();
            if m < order {
                return m;
            }
            order *= 2;
        }
        self.gram(space).min_valuation()
    }
}

/// An effective divisor: support points with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DivisorMultiset {
    entries: Vec<(SupportPoint, usize)>,
}

impl DivisorMultiset {
    pub fn entries(&self) -> &[(SupportPoint, usize)] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    pub fn multiplicity_at(&self, p: &SupportPoint) -> usize {
        self.entries
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, m)| *m)
    }

    /// Same divisor regardless of listing order.
    pub fn same_as(&self, other: &DivisorMultiset) -> bool {
        let mut a = self.entries.clone();
        let mut b = other.entries.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// A candidate point of the Quot scheme of torsion quotients of degree
/// `r d`, given by local models at distinct support points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotPoint {
    r: usize,
    d: usize,
    order: usize,
    models: Vec<LocalModel>,
}

impl QuotPoint {
    /// Validates shapes, the shared truncation order (at least `2rd + 1`)
    /// and distinctness of the support.
    pub fn new(r: usize, d: usize, order: usize, models: Vec<LocalModel>) -> Result<Self> {
        if r == 0 || d == 0 {
            return Err(Error::InvalidParameter("r and d must be at least 1".into()));
        }
        let required = default_order(r, d);
        if order < required {
            return Err(Error::TruncationTooLow {
                found: order,
                required,
            });
        }
        for (i, m) in models.iter().enumerate() {
            if m.matrix.rows() != 2 * r || m.matrix.cols() != 2 * r {
                return Err(Error::Shape(format!(
                    "local model {i} is {}x{}, expected {}x{}",
                    m.matrix.rows(),
                    m.matrix.cols(),
                    2 * r,
                    2 * r
                )));
            }
            if m.matrix.order() != order {
                return Err(Error::TruncationMismatch(order, m.matrix.order()));
            }
            if models[..i].iter().any(|o| o.point == m.point) {
                return Err(Error::RepeatedSupportPoint(m.point.to_string()));
            }
        }
        Ok(QuotPoint {
            r,
            d,
            order,
            models,
        })
    }

    /// The point of the fiber over `x_1 + ... + x_d` attached to Lagrangians
    /// `V_1, ..., V_d`: at `x_i` the local model is `[B_i | t C_i]`, with
    /// `B_i` a basis of `V_i` and `C_i` its completion by standard vectors.
    pub fn from_lagrangians(
        space: &SymplecticSpace,
        points: &[SupportPoint],
        subspaces: &[LagrangianSubspace],
    ) -> Result<Self> {
        Self::from_lagrangians_with_order(
            space,
            points,
            subspaces,
            default_order(space.r(), points.len()),
        )
    }

    pub fn from_lagrangians_with_order(
        space: &SymplecticSpace,
        points: &[SupportPoint],
        subspaces: &[LagrangianSubspace],
        order: usize,
    ) -> Result<Self> {
        if points.len() != subspaces.len() {
            return Err(Error::InvalidParameter(format!(
                "{} support points but {} Lagrangians",
                points.len(),
                subspaces.len()
            )));
        }
        let r = space.r();
        let mut models = Vec::with_capacity(points.len());
        for (index, (p, v)) in points.iter().zip(subspaces).enumerate() {
            if v.r() != r || !space.is_lagrangian(v.basis()) {
                return Err(Error::NotLagrangian { index });
            }
            let complement = complete_basis(v.basis());
            let k = order;
            let b = JetMatrix::from_scalar(v.basis(), k);
            let c = JetMatrix::from_scalar(&complement, k);
            let tc = c.mul(&JetMatrix::diag_powers(&vec![1; r], k))?;
            models.push(LocalModel::new(p.clone(), b.hstack(&tc)?));
        }
        QuotPoint::new(r, points.len(), order, models)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Truncation order `K` shared by every local model.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn models(&self) -> &[LocalModel] {
        &self.models
    }

    pub fn space(&self) -> SymplecticSpace {
        SymplecticSpace::standard(self.r).expect("r >= 1")
    }

    pub fn support(&self) -> Vec<SupportPoint> {
        self.models.iter().map(|m| m.point.clone()).collect()
    }

    pub fn local_colengths(&self) -> Vec<DetValuation> {
        self.models.iter().map(LocalModel::colength).collect()
    }

    /// Total length of the torsion quotient, or `None` when some local
    /// matrix is rank deficient in the model.
    pub fn total_colength(&self) -> Option<usize> {
        self.local_colengths()
            .into_iter()
            .map(DetValuation::finite)
            .sum()
    }

    pub fn local_multiplicities(&self) -> Vec<usize> {
        let space = self.space();
        self.models.iter().map(|m| m.multiplicity(&space)).collect()
    }

    /// The divisor through which the restricted form factors. Points where
    /// the form does not vanish are omitted.
    pub fn divisor_map(&self) -> DivisorMultiset {
        let entries = self
            .models
            .iter()
            .zip(self.local_multiplicities())
            .filter(|(_, m)| *m > 0)
            .map(|(model, m)| (model.point.clone(), m))
            .collect();
        DivisorMultiset { entries }
    }

    /// Membership in the Quot scheme of all torsion quotients of degree `rd`.
    pub fn is_in_tilde_q(&self) -> bool {
        self.total_colength() == Some(self.r * self.d)
    }

    /// Membership in the symplectic Quot scheme: the restricted form factors
    /// through `O(-D)` for an effective `D` of degree `d`, which is possible
    /// exactly when the local vanishing orders add up to at least `d`.
    pub fn is_in_q(&self) -> bool {
        self.is_in_tilde_q() && self.local_multiplicities().iter().sum::<usize>() >= self.d
    }

    /// Whether `(A_p^T J A_p) / t^{m_p}` is invertible over the local ring at
    /// every support point, i.e. the pairing `F x F -> O(-D)` is perfect.
    pub fn perfect_pairing_check(&self) -> Result<bool> {
        if !self.is_in_q() {
            return Err(Error::NotMember("Q"));
        }
        let space = self.space();
        for model in &self.models {
            let m = model.multiplicity(&space);
            let gram = model.gram_to_order(&space, (m + 1).min(model.matrix.order()));
            let reduced = gram.shift_down(m).constant_term();
            if reduced.rank() != 2 * self.r {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Recovers the Lagrangians of a point over a reduced divisor: at each
    /// support point, the span of `A_p` evaluated at `t = 0`.
    pub fn lagrangians_from_fiber(&self) -> Result<(Vec<SupportPoint>, Vec<LagrangianSubspace>)> {
        if !self.is_in_q() {
            return Err(Error::NotMember("Q"));
        }
        let space = self.space();
        let mut points = Vec::new();
        let mut subspaces = Vec::new();
        for (index, model) in self.models.iter().enumerate() {
            let m = model.multiplicity(&space);
            match m {
                0 => continue,
                1 => {}
                _ => return Err(Error::NonReducedDivisor(model.point.to_string())),
            }
            let fiber = model.matrix.constant_term();
            let v = LagrangianSubspace::new(&space, &fiber)
                .map_err(|_| Error::NotLagrangian { index })?;
            points.push(model.point.clone());
            subspaces.push(v);
        }
        Ok((points, subspaces))
    }

    /// Action of a symplectic matrix: `A_p -> g A_p` at every point.
    pub fn apply_group(&self, g: &SymplecticMatrix) -> Result<QuotPoint> {
        if g.r() != self.r {
            return Err(Error::RankParameter {
                expected: self.r,
                found: g.r(),
            });
        }
        let models = self
            .models
            .iter()
            .map(|m| {
                Ok(LocalModel::new(
                    m.point.clone(),
                    m.matrix.left_mul_scalar(g.matrix())?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(QuotPoint {
            r: self.r,
            d: self.d,
            order: self.order,
            models,
        })
    }

    /// Replaces every local matrix by its canonical column form. Models whose
    /// matrix is invertible describe nothing and are dropped.
    pub fn canonical(&self) -> Result<QuotPoint> {
        let mut models = Vec::new();
        for m in &self.models {
            if m.colength() == DetValuation::Finite(0) {
                continue;
            }
            models.push(LocalModel::new(m.point.clone(), m.matrix.hermite_form()?));
        }
        models.sort_by(|a, b| a.point.cmp(&b.point));
        Ok(QuotPoint {
            r: self.r,
            d: self.d,
            order: self.order,
            models,
        })
    }

    /// Equality of the underlying subsheaves.
    pub fn same_subsheaf(&self, other: &QuotPoint) -> Result<bool> {
        if self.r != other.r || self.order != other.order {
            return Ok(false);
        }
        Ok(self.canonical()?.models == other.canonical()?.models)
    }

    /// Re-embeds every local model at a larger truncation order.
    pub fn with_order(&self, order: usize) -> Result<QuotPoint> {
        if order < self.order {
            return Err(Error::TruncationTooLow {
                found: order,
                required: self.order,
            });
        }
        let models = self
            .models
            .iter()
            .map(|m| LocalModel::new(m.point.clone(), m.matrix.extend(order)))
            .collect();
        QuotPoint::new(self.r, self.d, order, models)
    }

    /// One point per support point carrying that local model alone, with
    /// `d` set to the local multiplicity.
    pub fn split(&self) -> Vec<QuotPoint> {
        let space = self.space();
        self.models
            .iter()
            .filter_map(|m| {
                let mult = m.multiplicity(&space);
                (mult > 0 && mult < self.order).then(|| QuotPoint {
                    r: self.r,
                    d: mult,
                    order: self.order,
                    models: vec![m.clone()],
                })
            })
            .collect()
    }
}

/// Extends an independent set of columns to a basis of the whole space with
/// standard basis vectors, returning only the added columns.
fn complete_basis(basis: &ScalarMatrix) -> ScalarMatrix {
    let n = basis.rows();
    let mut current = basis.clone();
    let mut added = Vec::new();
    let id = ScalarMatrix::identity(n);
    for i in 0..n {
        if current.cols() == n {
            break;
        }
        let e = id.block(0..n, i..i + 1);
        let trial = current.hstack(&e).expect("same rows");
        if trial.rank() == trial.cols() {
            current = trial;
            added.push(e.column(0));
        }
    }
    ScalarMatrix::from_columns(n, &added)
}

/// Whether two Lagrangian tuples agree pointwise as spans.
pub fn same_fiber_data(
    a: &(Vec<SupportPoint>, Vec<LagrangianSubspace>),
    b: &(Vec<SupportPoint>, Vec<LagrangianSubspace>),
) -> bool {
    a.0 == b.0
        && a.1.len() == b.1.len()
        && a.1
            .iter()
            .zip(&b.1)
            .all(|(x, y)| same_span(x.basis(), y.basis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{scalar, Jet};
    use num_traits::Zero;

    fn origin() -> SupportPoint {
        SupportPoint(Scalar::zero())
    }

    fn single(r: usize, d: usize, exponents: &[usize]) -> QuotPoint {
        let k = default_order(r, d);
        let a = JetMatrix::diag_powers(exponents, k);
        QuotPoint::new(r, d, k, vec![LocalModel::new(origin(), a)]).unwrap()
    }

    fn coordinate_lagrangian(space: &SymplecticSpace, cols: &[usize]) -> LagrangianSubspace {
        let n = space.dim();
        let id = ScalarMatrix::identity(n);
        let b =
            ScalarMatrix::from_columns(n, &cols.iter().map(|&c| id.column(c)).collect::<Vec<_>>());
        LagrangianSubspace::new(space, &b).unwrap()
    }

    #[test]
    fn fiber_point_rank_one() {
        let space = SymplecticSpace::standard(1).unwrap();
        let v = coordinate_lagrangian(&space, &[1]);
        let q = QuotPoint::from_lagrangians(&space, &[origin()], std::slice::from_ref(&v)).unwrap();
        let canon = q.canonical().unwrap();
        assert_eq!(canon.models()[0].matrix, JetMatrix::diag_powers(&[1, 0], 3));
        assert_eq!(q.total_colength(), Some(1));
        assert!(q.is_in_q());
        let (pts, vs) = q.lagrangians_from_fiber().unwrap();
        assert_eq!(pts, vec![origin()]);
        assert_eq!(vs, vec![v]);
    }

    #[test]
    fn fiber_point_rank_two() {
        let space = SymplecticSpace::standard(2).unwrap();
        let v = coordinate_lagrangian(&space, &[2, 3]);
        let q = QuotPoint::from_lagrangians(&space, &[origin()], &[v]).unwrap();
        assert!(q.is_in_q());
        assert_eq!(q.total_colength(), Some(2));
        let div = q.divisor_map();
        assert_eq!(div.entries(), &[(origin(), 1)]);
    }

    #[test]
    fn non_lagrangian_rejected() {
        let space = SymplecticSpace::standard(2).unwrap();
        let id = ScalarMatrix::identity(4);
        let bad = ScalarMatrix::from_columns(4, &[id.column(0), id.column(2)]);
        assert!(LagrangianSubspace::new(&space, &bad).is_err());
    }

    #[test]
    fn repeated_points_rejected() {
        let space = SymplecticSpace::standard(1).unwrap();
        let v = coordinate_lagrangian(&space, &[1]);
        let err = QuotPoint::from_lagrangians(&space, &[origin(), origin()], &[v.clone(), v]);
        assert_eq!(err, Err(Error::RepeatedSupportPoint("0".into())));
    }

    #[test]
    fn divisor_examples() {
        let q = single(1, 1, &[1, 0]);
        assert_eq!(q.divisor_map().entries(), &[(origin(), 1)]);
        let q = single(1, 2, &[1, 1]);
        assert_eq!(q.divisor_map().entries(), &[(origin(), 2)]);
    }

    /// Columns e_2, e_4, t e_1, t e_3: the quotient by the non-Lagrangian
    /// span(e_1, e_3).
    fn non_lagrangian_quotient() -> QuotPoint {
        let k = default_order(2, 1);
        let id = ScalarMatrix::identity(4);
        let cols = [id.column(1), id.column(3), id.column(0), id.column(2)];
        let c = JetMatrix::from_scalar(&ScalarMatrix::from_columns(4, &cols), k);
        let a = c.mul(&JetMatrix::diag_powers(&[0, 0, 1, 1], k)).unwrap();
        QuotPoint::new(2, 1, k, vec![LocalModel::new(origin(), a)]).unwrap()
    }

    #[test]
    fn non_lagrangian_quotient_is_not_symplectic() {
        let q = non_lagrangian_quotient();
        assert!(q.is_in_tilde_q());
        assert!(q.divisor_map().entries().is_empty());
        assert!(!q.is_in_q());
        assert_eq!(q.perfect_pairing_check(), Err(Error::NotMember("Q")));
    }

    #[test]
    fn tilde_membership() {
        assert!(!single(2, 1, &[1, 0, 0, 0]).is_in_tilde_q());
        let k = default_order(1, 1);
        let empty = QuotPoint::new(1, 1, k, vec![]).unwrap();
        assert!(!empty.is_in_tilde_q());
        assert!(!empty.is_in_q());
    }

    #[test]
    fn double_point_rank_one() {
        let q = single(1, 2, &[2, 0]);
        assert!(q.is_in_q());
        assert!(q.perfect_pairing_check().unwrap());
        assert_eq!(q.divisor_map().entries(), &[(origin(), 2)]);
        let err = single(1, 2, &[1, 1]).lagrangians_from_fiber();
        assert_eq!(err, Err(Error::NonReducedDivisor("0".into())));
    }

    #[test]
    fn fiber_recovery_from_evaluation() {
        let q = single(1, 1, &[1, 0]);
        let (_, vs) = q.lagrangians_from_fiber().unwrap();
        let e2 = ScalarMatrix::from_ints(&[&[0], &[1]]);
        assert!(same_span(vs[0].basis(), &e2));
    }

    #[test]
    fn truncation_floor() {
        let a = JetMatrix::diag_powers(&[1, 0], 2);
        let err = QuotPoint::new(1, 1, 2, vec![LocalModel::new(origin(), a)]);
        assert_eq!(
            err,
            Err(Error::TruncationTooLow {
                found: 2,
                required: 3
            })
        );
    }

    #[test]
    fn group_action_identity() {
        let q = single(2, 1, &[1, 1, 0, 0]);
        let space = q.space();
        let moved = q.apply_group(&SymplecticMatrix::identity(&space)).unwrap();
        assert!(moved.same_subsheaf(&q).unwrap());
        let g = space.random_symplectic(3);
        let back = moved
            .apply_group(&g)
            .unwrap()
            .apply_group(&g.inverse())
            .unwrap();
        assert!(back.same_subsheaf(&q).unwrap());
    }

    #[test]
    fn presentations_compare_equal() {
        let k = default_order(1, 1);
        let a = JetMatrix::from_rows(vec![
            vec![
                Jet::monomial(scalar(1), 1, k),
                Jet::monomial(scalar(1), 1, k),
            ],
            vec![Jet::zero(k), Jet::one(k)],
        ])
        .unwrap();
        let q = QuotPoint::new(1, 1, k, vec![LocalModel::new(origin(), a)]).unwrap();
        assert!(q.same_subsheaf(&single(1, 1, &[1, 0])).unwrap());
    }

    #[test]
    fn split_constituents() {
        let space = SymplecticSpace::standard(2).unwrap();
        let pts = vec![SupportPoint(scalar(0)), SupportPoint(scalar(3))];
        let vs = vec![space.random_lagrangian(1), space.random_lagrangian(2)];
        let q = QuotPoint::from_lagrangians(&space, &pts, &vs).unwrap();
        let parts = q.split();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.d() == 1 && p.is_in_q()));
    }
}
