//! The standard symplectic space `(Q^{2r}, J)`, its Lagrangian subspaces,
//! the symplectic group and its action on Lagrangians.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::linalg::{canonical_span, ScalarMatrix};
use crate::rng::{random_invertible, random_symmetric, seeded};

/// The standard form `J = [[0, I], [-I, 0]]` on `Q^{2r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    r: usize,
    form: ScalarMatrix,
}

impl SymplecticSpace {
    pub fn standard(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        let mut form = ScalarMatrix::zeros(2 * r, 2 * r);
        for i in 0..r {
            form[(i, i + r)] = Scalar::one();
            form[(i + r, i)] = -Scalar::one();
        }
        Ok(SymplecticSpace { r, form })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        2 * self.r
    }

    pub fn form(&self) -> &ScalarMatrix {
        &self.form
    }

    /// `omega(x, y) = x^T J y`.
    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let n = self.dim();
        let mut acc = Scalar::zero();
        for i in 0..self.r {
            acc += &x[i] * &y[i + self.r] - &x[i + self.r] * &y[i];
        }
        debug_assert_eq!(x.len(), n);
        acc
    }

    /// Gram matrix `V^T J W`.
    pub fn gram(&self, v: &ScalarMatrix, w: &ScalarMatrix) -> Result<ScalarMatrix> {
        v.transpose().mul(&self.form)?.mul(w)
    }

    pub fn is_lagrangian(&self, v: &ScalarMatrix) -> bool {
        v.rows() == self.dim() && v.rank() == self.r && self.gram(v, v).is_ok_and(|g| g.is_zero())
    }

    /// `span(e_1, ..., e_r)`.
    pub fn standard_lagrangian(&self) -> LagrangianSubspace {
        let b = ScalarMatrix::identity(self.dim()).block(0..self.dim(), 0..self.r);
        LagrangianSubspace::new(self, &b).expect("coordinate Lagrangian")
    }

    /// Graph `{(x, S x)}` of an `r x r` matrix, as a `2r x r` basis.
    pub fn graph(&self, s: &ScalarMatrix) -> Result<ScalarMatrix> {
        if s.rows() != self.r || s.cols() != self.r {
            return Err(Error::Shape("graph chart needs an r x r matrix".into()));
        }
        ScalarMatrix::identity(self.r).vstack(s)
    }

    pub fn sample_lagrangian<R: Rng + ?Sized>(&self, rng: &mut R) -> LagrangianSubspace {
        // graph chart moved by a random symplectic matrix reaches every chart
        let s = random_symmetric(rng, self.r);
        let g = self.sample_symplectic(rng);
        let basis = g
            .matrix()
            .mul(&self.graph(&s).expect("square"))
            .expect("shapes");
        LagrangianSubspace::new(self, &basis).expect("symplectic image of a Lagrangian")
    }

    pub fn random_lagrangian(&self, seed: u64) -> LagrangianSubspace {
        self.sample_lagrangian(&mut seeded(seed))
    }

    /// Dimension of the Lagrangian Grassmannian measured as the rank of the
    /// differential of the symmetric-matrix graph chart, moved by a random
    /// symplectic matrix, at a random point.
    pub fn lagrangian_chart_dimension(&self) -> usize {
        let r = self.r;
        let n = self.dim();
        let mut rng = seeded(0x1a6);
        let s = random_symmetric(&mut rng, r);
        let g = self.sample_symplectic(&mut rng);
        let base = g
            .matrix()
            .mul(&self.graph(&s).expect("square"))
            .expect("shapes");
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        // chart directions g [0; E_ab] for symmetric unit matrices E_ab
        for a in 0..r {
            for b in a..r {
                let mut e = ScalarMatrix::zeros(r, r);
                e[(a, b)] = Scalar::one();
                e[(b, a)] = Scalar::one();
                let x = ScalarMatrix::zeros(r, r).vstack(&e).expect("shapes");
                let gx = g.matrix().mul(&x).expect("shapes");
                rows.push(flatten(&gx));
            }
        }
        // reparametrisations of the frame, which are zero on the Grassmannian
        for a in 0..r {
            for b in 0..r {
                let mut e = ScalarMatrix::zeros(r, r);
                e[(a, b)] = Scalar::one();
                rows.push(flatten(&base.mul(&e).expect("shapes")));
            }
        }
        let m = ScalarMatrix::from_rows(rows).expect("rectangular");
        debug_assert_eq!(m.cols(), n * r);
        m.rank() - r * r
    }

    /// Dimension of the Lie algebra `{X : X^T J + J X = 0}`, computed as a
    /// kernel dimension.
    pub fn lie_algebra_dimension(&self) -> usize {
        let n = self.dim();
        let mut columns = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut x = ScalarMatrix::zeros(n, n);
                x[(a, b)] = Scalar::one();
                let img = x
                    .transpose()
                    .mul(&self.form)
                    .and_then(|p| p.add(&self.form.mul(&x)?))
                    .expect("shapes");
                columns.push(flatten(&img));
            }
        }
        ScalarMatrix::from_columns(n * n, &columns)
            .kernel_basis()
            .cols()
    }

    /// Free parameters of the generator parametrisation: `A` in `GL(r)` and
    /// two symmetric shears.
    pub fn generator_parameter_count(&self) -> usize {
        self.r * self.r + self.r * (self.r + 1)
    }

    pub fn generator_matrix(&self, g: &SymplecticGenerator) -> Result<ScalarMatrix> {
        let r = self.r;
        let zero = ScalarMatrix::zeros(r, r);
        let id = ScalarMatrix::identity(r);
        let blocks = |a: &ScalarMatrix, b: &ScalarMatrix, c: &ScalarMatrix, d: &ScalarMatrix| {
            a.hstack(b)?.vstack(&c.hstack(d)?)
        };
        match g {
            SymplecticGenerator::Block(a) => {
                let inv_t = a.inverse()?.transpose();
                blocks(a, &zero, &zero, &inv_t)
            }
            SymplecticGenerator::UpperShear(s) => {
                check_symmetric(s, r)?;
                blocks(&id, s, &zero, &id)
            }
            SymplecticGenerator::LowerShear(s) => {
                check_symmetric(s, r)?;
                blocks(&id, &zero, s, &id)
            }
            SymplecticGenerator::Form => Ok(self.form.clone()),
        }
    }

    /// Product of generators, leftmost first.
    pub fn from_generators(&self, gens: &[SymplecticGenerator]) -> Result<SymplecticMatrix> {
        let mut m = ScalarMatrix::identity(self.dim());
        for g in gens {
            m = m.mul(&self.generator_matrix(g)?)?;
        }
        SymplecticMatrix::new(self, m)
    }

    pub fn sample_symplectic<R: Rng + ?Sized>(&self, rng: &mut R) -> SymplecticMatrix {
        let r = self.r;
        let mut gens = Vec::new();
        for _ in 0..4 {
            let g = match rng.gen_range(0..4) {
                0 => SymplecticGenerator::Block(random_invertible(rng, r)),
                1 => SymplecticGenerator::UpperShear(random_symmetric(rng, r)),
                2 => SymplecticGenerator::LowerShear(random_symmetric(rng, r)),
                _ => SymplecticGenerator::Form,
            };
            gens.push(g);
        }
        self.from_generators(&gens)
            .expect("generators are symplectic")
    }

    pub fn random_symplectic(&self, seed: u64) -> SymplecticMatrix {
        self.sample_symplectic(&mut seeded(seed))
    }

    /// Samples a symplectic matrix that is not `+-I`.
    pub fn sample_noncentral<R: Rng + ?Sized>(&self, rng: &mut R) -> SymplecticMatrix {
        loop {
            let m = self.sample_symplectic(rng);
            if !m.is_central() {
                return m;
            }
        }
    }

    /// A sampled Lagrangian moved by `m`, if one turns up within `trials`
    /// draws. Central elements act trivially and never get a witness.
    pub fn effectiveness_witness(
        &self,
        m: &SymplecticMatrix,
        trials: usize,
        seed: u64,
    ) -> Result<Option<LagrangianSubspace>> {
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if m.r() != self.r {
            return Err(Error::RankParameter {
                expected: self.r,
                found: m.r(),
            });
        }
        if m.is_central() {
            return Ok(None);
        }
        let mut rng = seeded(seed);
        for _ in 0..trials {
            let v = self.sample_lagrangian(&mut rng);
            if m.act(&v)? != v {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Samples Lagrangians and reports whether any of them is moved, without
    /// the central shortcut. Used to confirm that `+-I` really fix them.
    pub fn moved_count(&self, m: &SymplecticMatrix, trials: usize, seed: u64) -> Result<usize> {
        let mut rng = seeded(seed);
        let mut moved = 0;
        for _ in 0..trials {
            let v = self.sample_lagrangian(&mut rng);
            if m.act(&v)? != v {
                moved += 1;
            }
        }
        Ok(moved)
    }
}

fn check_symmetric(s: &ScalarMatrix, r: usize) -> Result<()> {
    if s.rows() != r || !s.is_symmetric() {
        return Err(Error::InvalidParameter(
            "shear block must be symmetric r x r".into(),
        ));
    }
    Ok(())
}

fn flatten(m: &ScalarMatrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

#[derive(Clone, Debug)]
pub enum SymplecticGenerator {
    /// `diag(A, A^{-T})`.
    Block(ScalarMatrix),
    /// `[[I, S], [0, I]]`, `S` symmetric.
    UpperShear(ScalarMatrix),
    /// `[[I, 0], [S, I]]`, `S` symmetric.
    LowerShear(ScalarMatrix),
    Form,
}

/// An `r`-dimensional isotropic subspace, stored by its canonical basis so
/// that equality is equality of spans.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LagrangianSubspace {
    r: usize,
    basis: ScalarMatrix,
}

impl LagrangianSubspace {
    pub fn new(space: &SymplecticSpace, basis: &ScalarMatrix) -> Result<Self> {
        if !space.is_lagrangian(basis) {
            return Err(Error::NotLagrangian { index: 0 });
        }
        Ok(LagrangianSubspace {
            r: space.r(),
            basis: canonical_span(basis),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn basis(&self) -> &ScalarMatrix {
        &self.basis
    }
}

/// An element of `Sp(2r)`: `m^T J m = J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    r: usize,
    m: ScalarMatrix,
}

impl SymplecticMatrix {
    pub fn new(space: &SymplecticSpace, m: ScalarMatrix) -> Result<Self> {
        if m.rows() != space.dim() || m.cols() != space.dim() {
            return Err(Error::Shape("symplectic matrix must be 2r x 2r".into()));
        }
        if space.gram(&m, &m)? != *space.form() {
            return Err(Error::InvalidParameter(
                "matrix does not preserve the form".into(),
            ));
        }
        Ok(SymplecticMatrix { r: space.r(), m })
    }

    pub fn identity(space: &SymplecticSpace) -> Self {
        SymplecticMatrix {
            r: space.r(),
            m: ScalarMatrix::identity(space.dim()),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.m
    }

    pub fn is_central(&self) -> bool {
        let id = ScalarMatrix::identity(2 * self.r);
        self.m == id || self.m == id.neg()
    }

    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix {
            r: self.r,
            m: self.m.mul(&other.m).expect("same size"),
        }
    }

    /// `m^{-1} = -J m^T J`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let j = SymplecticSpace::standard(self.r).expect("r >= 1");
        let inv = j
            .form()
            .mul(&self.m.transpose())
            .and_then(|x| x.mul(j.form()))
            .expect("size");
        SymplecticMatrix {
            r: self.r,
            m: inv.neg(),
        }
    }

    pub fn act(&self, v: &LagrangianSubspace) -> Result<LagrangianSubspace> {
        if v.r() != self.r {
            return Err(Error::RankParameter {
                expected: self.r,
                found: v.r(),
            });
        }
        let image = self.m.mul(v.basis())?;
        Ok(LagrangianSubspace {
            r: self.r,
            basis: canonical_span(&image),
        })
    }
}
