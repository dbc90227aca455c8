//! Seeded samplers for points of the two Quot schemes.
//!
//! * [`sample_tilde_member`]: `A = U diag(t^{a_1}, ..., t^{a_{2r}}) W` with
//!   `U`, `W` unimodular, at a random number of support points.
//! * [`sample_member`]: at a point of multiplicity `m`,
//!   `A = M diag(t^{b_1}, ..., t^{b_r}, t^{m-b_1}, ..., t^{m-b_r}) W` with
//!   `M` symplectic over the local ring, so the form restricted to the span
//!   is `t^m` times a perfect pairing.
//! * [`sample_reduced_member`]: the fiber constructor on random Lagrangians,
//!   re-presented by random jet-symplectic and unimodular factors.

use rand::Rng;

use crate::error::Result;
use crate::linalg::JetMatrix;
use crate::local_model::{default_order, LocalModel, QuotPoint, SupportPoint};
use crate::rng::{random_points, random_symmetric_jets, random_unimodular};
use crate::symplectic::SymplecticSpace;

/// Random composition of `total` into `parts` non-negative integers.
fn composition<R: Rng + ?Sized>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// Random composition of `total` into `parts` positive integers.
fn positive_composition<R: Rng + ?Sized>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut out = composition(rng, total - parts, parts);
    out.iter_mut().for_each(|x| *x += 1);
    out
}

/// Random multiplicities summing to `d` over a random number of points.
pub fn random_multiplicities<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<usize> {
    let points = rng.gen_range(1..=d);
    positive_composition(rng, d, points)
}

/// Random symplectic matrix over the local ring, as a product of
/// generators with jet entries.
pub fn random_jet_symplectic<R: Rng + ?Sized>(
    rng: &mut R,
    space: &SymplecticSpace,
    order: usize,
) -> JetMatrix {
    let r = space.r();
    let zero = JetMatrix::zeros(r, r, order);
    let id = JetMatrix::identity(r, order);
    let blocks = |a: &JetMatrix, b: &JetMatrix, c: &JetMatrix, d: &JetMatrix| {
        let top = a.hstack(b)?;
        let bottom = c.hstack(d)?;
        top.transpose()
            .hstack(&bottom.transpose())
            .map(|m| m.transpose())
    };
    let mut m = JetMatrix::identity(2 * r, order);
    for _ in 0..3 {
        let g = match rng.gen_range(0..4) {
            0 => {
                let a = random_unimodular(rng, r, order);
                let inv_t = a.unit_inverse().expect("unimodular").transpose();
                blocks(&a, &zero, &zero, &inv_t)
            }
            1 => blocks(&id, &random_symmetric_jets(rng, r, order), &zero, &id),
            2 => blocks(&id, &zero, &random_symmetric_jets(rng, r, order), &id),
            _ => Ok(JetMatrix::from_scalar(space.form(), order)),
        }
        .expect("block shapes");
        m = m.mul(&g).expect("same size");
    }
    m
}

pub fn sample_tilde_member<R: Rng + ?Sized>(
    rng: &mut R,
    space: &SymplecticSpace,
    d: usize,
    order: usize,
) -> Result<QuotPoint> {
    let r = space.r();
    let n = 2 * r;
    let total = r * d;
    let count = rng.gen_range(1..=total);
    let colengths = positive_composition(rng, total, count);
    let points = random_points(rng, count);
    let mut models = Vec::with_capacity(count);
    for (p, c) in points.into_iter().zip(colengths) {
        let exps = composition(rng, c, n);
        let u = random_unimodular(rng, n, order);
        let w = random_unimodular(rng, n, order);
        let a = u.mul(&JetMatrix::diag_powers(&exps, order))?.mul(&w)?;
        models.push(LocalModel::new(SupportPoint(p), a));
    }
    QuotPoint::new(r, d, order, models)
}

pub fn sample_member<R: Rng + ?Sized>(
    rng: &mut R,
    space: &SymplecticSpace,
    d: usize,
    order: usize,
) -> Result<QuotPoint> {
    let mults = random_multiplicities(rng, d);
    sample_member_with(rng, space, d, order, &mults)
}

/// A member of the symplectic Quot scheme with the given local
/// multiplicities at random distinct points.
pub fn sample_member_with<R: Rng + ?Sized>(
    rng: &mut R,
    space: &SymplecticSpace,
    d: usize,
    order: usize,
    multiplicities: &[usize],
) -> Result<QuotPoint> {
    let r = space.r();
    let points = random_points(rng, multiplicities.len());
    let mut models = Vec::with_capacity(points.len());
    for (p, &m) in points.into_iter().zip(multiplicities) {
        let lower: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=m)).collect();
        let exps: Vec<usize> = lower
            .iter()
            .copied()
            .chain(lower.iter().map(|b| m - b))
            .collect();
        let sym = random_jet_symplectic(rng, space, order);
        let w = random_unimodular(rng, 2 * r, order);
        let a = sym.mul(&JetMatrix::diag_powers(&exps, order))?.mul(&w)?;
        models.push(LocalModel::new(SupportPoint(p), a));
    }
    QuotPoint::new(r, d, order, models)
}

pub fn sample_reduced_member<R: Rng + ?Sized>(
    rng: &mut R,
    space: &SymplecticSpace,
    d: usize,
    order: usize,
) -> Result<QuotPoint> {
    let points: Vec<SupportPoint> = random_points(rng, d)
        .into_iter()
        .map(SupportPoint)
        .collect();
    let subspaces: Vec<_> = (0..d).map(|_| space.sample_lagrangian(rng)).collect();
    let base = QuotPoint::from_lagrangians_with_order(space, &points, &subspaces, order)?;
    let n = space.dim();
    let models = base
        .models()
        .iter()
        .map(|m| {
            let sym = random_jet_symplectic(rng, space, order);
            let w = random_unimodular(rng, n, order);
            Ok(LocalModel::new(
                m.point.clone(),
                sym.mul(&m.matrix)?.mul(&w)?,
            ))
        })
        .collect::<Result<_>>()?;
    QuotPoint::new(space.r(), d, order, models)
}

/// Which sampler to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Tilde,
    Member,
    Reduced,
}

impl SampleKind {
    pub fn sample<R: Rng + ?Sized>(
        self,
        rng: &mut R,
        space: &SymplecticSpace,
        d: usize,
        order: Option<usize>,
    ) -> Result<QuotPoint> {
        let order = order.unwrap_or_else(|| default_order(space.r(), d));
        match self {
            SampleKind::Tilde => sample_tilde_member(rng, space, d, order),
            SampleKind::Member => sample_member(rng, space, d, order),
            SampleKind::Reduced => sample_reduced_member(rng, space, d, order),
        }
    }
}
