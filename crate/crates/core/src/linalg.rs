//! Dense exact linear algebra over [`Scalar`] and over [`Jet`].
//!
//! Scalar elimination pivots on the first nonzero entry (lowest row, then
//! column). Jet elimination pivots on an entry of minimal valuation with the
//! same tie-break, which keeps every intermediate entry exact modulo `t^K`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Jet, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ScalarMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(n, m, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::exactnum::scalar(x)).collect())
            .collect();
        Self::from_rows(data).expect("rectangular integer matrix")
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition of unequal shapes".into()));
        }
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn hstack(&self, other: &ScalarMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack of unequal row counts".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &ScalarMatrix) -> Result<Self> {
        Ok(self.transpose().hstack(&other.transpose())?.transpose())
    }

    /// Submatrix with the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ScalarMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a[(row, col)].recip();
            for j in col..a.cols {
                let v = &a[(row, j)] * &inv;
                a[(row, j)] = v;
            }
            for i in 0..a.rows {
                if i == row || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in col..a.cols {
                    if a[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &a[(row, j)];
                    a[(i, j)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, in canonical column echelon form.
    pub fn kernel_basis(&self) -> ScalarMatrix {
        let (r, pivots) = self.rref();
        let mut columns = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            columns.push(v);
        }
        canonical_span(&ScalarMatrix::from_columns(self.cols, &columns))
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let mut a = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[(i, col)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for i in col + 1..n {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] / &pivot;
                for j in col..n {
                    let v = &f * &a[(col, j)];
                    a[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<ScalarMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&ScalarMatrix::identity(n))?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0..n, n..2 * n))
    }
}

/// Canonical basis of the column span: the transpose of the nonzero rows of
/// the reduced row echelon form of `m^T`. Two matrices span the same
/// subspace iff their canonical spans are equal.
pub fn canonical_span(m: &ScalarMatrix) -> ScalarMatrix {
    let (r, pivots) = m.transpose().rref();
    r.block(0..pivots.len(), 0..m.rows()).transpose()
}

pub fn same_span(a: &ScalarMatrix, b: &ScalarMatrix) -> bool {
    a.rows() == b.rows() && canonical_span(a) == canonical_span(b)
}

impl Index<(usize, usize)> for ScalarMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ScalarMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix over `Q[[t]]/(t^K)` with one shared truncation order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JetMatrix {
    rows: usize,
    cols: usize,
    order: usize,
    data: Vec<Jet>,
}

/// Valuation of a determinant, which may exceed what the model can see.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetValuation {
    Finite(usize),
    AtLeast(usize),
}

impl DetValuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            DetValuation::Finite(v) => Some(v),
            DetValuation::AtLeast(_) => None,
        }
    }
}

impl JetMatrix {
    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        JetMatrix {
            rows,
            cols,
            order,
            data: vec![Jet::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        Self::from_scalar(&ScalarMatrix::identity(n), order)
    }

    pub fn from_jets(rows: usize, cols: usize, data: Vec<Jet>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let order = data.first().map_or(1, Jet::order);
        if let Some(bad) = data.iter().find(|j| j.order() != order) {
            return Err(Error::TruncationMismatch(order, bad.order()));
        }
        Ok(JetMatrix {
            rows,
            cols,
            order,
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Jet>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_jets(n, m, rows.into_iter().flatten().collect())
    }

    /// Constant matrix embedded in the jet ring.
    pub fn from_scalar(m: &ScalarMatrix, order: usize) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| Jet::constant(m[(i, j)].clone(), order))
            .collect();
        JetMatrix {
            rows: m.rows(),
            cols: m.cols(),
            order,
            data,
        }
    }

    /// `diag(t^{e_0}, t^{e_1}, ...)`.
    pub fn diag_powers(exponents: &[usize], order: usize) -> Self {
        let n = exponents.len();
        let mut m = Self::zeros(n, n, order);
        for (i, &e) in exponents.iter().enumerate() {
            m[(i, i)] = Jet::monomial(Scalar::one(), e, order);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Jet> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &JetMatrix) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::TruncationMismatch(self.order, other.order));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul_scalar(&self, m: &ScalarMatrix) -> Result<Self> {
        JetMatrix::from_scalar(m, self.order).mul(self)
    }

    /// Evaluation at `t = 0`.
    pub fn constant_term(&self) -> ScalarMatrix {
        let data = self
            .data
            .iter()
            .map(|j| j.constant_term().clone())
            .collect();
        ScalarMatrix::from_vec(self.rows, self.cols, data).expect("consistent shape")
    }

    /// Coefficient matrix of `t^power`.
    pub fn coefficient(&self, power: usize) -> ScalarMatrix {
        let data = self.data.iter().map(|j| j.coeff(power).clone()).collect();
        ScalarMatrix::from_vec(self.rows, self.cols, data).expect("consistent shape")
    }

    /// Minimum valuation over all entries (`K` for the zero matrix).
    pub fn min_valuation(&self) -> usize {
        self.data
            .iter()
            .map(Jet::valuation)
            .min()
            .unwrap_or(self.order)
    }

    /// Divides every entry by `t^power`; only meaningful when
    /// `power <= min_valuation()`.
    pub fn shift_down(&self, power: usize) -> Self {
        JetMatrix {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().map(|j| j.shift_down(power)).collect(),
        }
    }

    /// Zero-pads every entry to a larger truncation order.
    pub fn extend(&self, order: usize) -> Self {
        JetMatrix {
            rows: self.rows,
            cols: self.cols,
            order,
            data: self.data.iter().map(|j| j.extend(order)).collect(),
        }
    }

    /// Reduces every entry modulo `t^order`.
    pub fn truncate(&self, order: usize) -> Self {
        JetMatrix {
            rows: self.rows,
            cols: self.cols,
            order,
            data: self.data.iter().map(|j| j.truncate(order)).collect(),
        }
    }

    pub fn hstack(&self, other: &JetMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack of unequal row counts".into()));
        }
        if self.order != other.order {
            return Err(Error::TruncationMismatch(self.order, other.order));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Inverse of a matrix whose determinant is a unit.
    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let k = self.order;
        let mut a = self.hstack(&JetMatrix::identity(n, k))?;
        for col in 0..n {
            let p = (col..n)
                .find(|&i| a[(i, col)].is_unit())
                .ok_or(Error::Singular)?;
            for j in 0..2 * n {
                a.data.swap(p * 2 * n + j, col * 2 * n + j);
            }
            let inv = a[(col, col)].unit_inverse()?;
            for j in 0..2 * n {
                a[(col, j)] = &a[(col, j)] * &inv;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..2 * n {
                    let v = &f * &a[(col, j)];
                    a[(i, j)] = &a[(i, j)] - &v;
                }
            }
        }
        let mut out = Self::zeros(n, n, k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = a[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    /// Valuation of the determinant, by elimination on a minimal-valuation
    /// pivot. Equals the colength of the column span in the free module.
    ///
    /// Runs on truncations of doubling order: a finite valuation `v` found
    /// modulo `t^k` with `v < k` is already exact.
    pub fn det_valuation(&self) -> Result<DetValuation> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let mut k = 1;
        while k < self.order {
            if let DetValuation::Finite(v) = self.truncate(k).det_valuation_exact()? {
                return Ok(DetValuation::Finite(v));
            }
            k *= 2;
        }
        self.det_valuation_exact()
    }

    fn det_valuation_exact(&self) -> Result<DetValuation> {
        let k = self.order;
        let mut a = self.clone();
        let mut live_rows: Vec<usize> = (0..self.rows).collect();
        let mut live_cols: Vec<usize> = (0..self.cols).collect();
        let mut total = 0;
        while !live_rows.is_empty() {
            let mut best: Option<(usize, usize, usize)> = None;
            for (ri, &i) in live_rows.iter().enumerate() {
                for (ci, &j) in live_cols.iter().enumerate() {
                    let v = a[(i, j)].valuation();
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, ri, ci));
                    }
                }
            }
            let (v, ri, ci) = best.expect("non-empty minor");
            total += v;
            if v >= k || total >= k {
                return Ok(DetValuation::AtLeast(k));
            }
            let pi = live_rows.remove(ri);
            let pj = live_cols.remove(ci);
            // pivot = t^v * u with u a unit; every live entry is divisible by t^v
            let unit_inv = a[(pi, pj)].shift_down(v).unit_inverse()?;
            for &i in &live_rows {
                if a[(i, pj)].is_zero() {
                    continue;
                }
                let q = &a[(i, pj)].shift_down(v) * &unit_inv;
                for &j in &live_cols {
                    let sub = &q * &a[(pi, j)];
                    a[(i, j)] = &a[(i, j)] - &sub;
                }
            }
        }
        Ok(DetValuation::Finite(total))
    }

    /// Canonical column form of a full-rank square matrix: an upper
    /// triangular generator matrix of the same column span over the local
    /// ring, with diagonal `t^{a_i}` and entries in row `i` right of the
    /// diagonal reduced to polynomials of degree `< a_i`.
    pub fn hermite_form(&self) -> Result<JetMatrix> {
        Ok(LatticeQuotient::new(self)?.hermite_form())
    }
}

/// The finite-length quotient `R^n / span(A)` of a full-rank square
/// [`JetMatrix`] `A`, realised as linear algebra over the rationals.
///
/// With `v` the determinant valuation, `t^v R^n` lies inside the span, so the
/// span is determined by its image in `(R/t^v)^n = Q^{n v}`. Coordinates are
/// pairs `(row, power)`; elimination runs over rows in descending order and
/// powers in ascending order, which makes the echelon pivots of the span the
/// pairs `(i, s)` with `s >= a_i`. The remaining pairs `(i, s)` with
/// `s < a_i` are the monomial basis `t^s e_i` of the quotient.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    n: usize,
    order: usize,
    colength: usize,
    echelon: ScalarMatrix,
    pivot_of_coord: Vec<Option<usize>>,
    exponents: Vec<usize>,
    basis: Vec<(usize, usize)>,
}

impl LatticeQuotient {
    pub fn new(a: &JetMatrix) -> Result<Self> {
        let v = a
            .det_valuation()?
            .finite()
            .ok_or(Error::RankDeficient(a.order()))?;
        let n = a.rows();
        let dim = n * v;
        let coord = |i: usize, s: usize| (n - 1 - i) * v + s;
        let mut spanning = Vec::with_capacity(dim);
        for j in 0..n {
            let col = a.column(j);
            for shift in 0..v {
                let mut vec = vec![Scalar::zero(); dim];
                for (i, entry) in col.iter().enumerate() {
                    for s in shift..v {
                        vec[coord(i, s)] = entry.coeff(s - shift).clone();
                    }
                }
                spanning.push(vec);
            }
        }
        let (echelon, pivots) = if dim == 0 {
            (ScalarMatrix::zeros(0, 0), Vec::new())
        } else {
            let (r, p) = ScalarMatrix::from_rows(spanning)?.rref();
            (r.block(0..p.len(), 0..dim), p)
        };
        let mut pivot_of_coord = vec![None; dim];
        for (row, &c) in pivots.iter().enumerate() {
            pivot_of_coord[c] = Some(row);
        }
        let mut exponents = vec![v; n];
        let mut basis = Vec::new();
        for (i, e) in exponents.iter_mut().enumerate() {
            for s in 0..v {
                if pivot_of_coord[coord(i, s)].is_some() {
                    *e = s;
                    break;
                }
                basis.push((i, s));
            }
        }
        debug_assert_eq!(basis.len(), v);
        Ok(LatticeQuotient {
            n,
            order: a.order(),
            colength: v,
            echelon,
            pivot_of_coord,
            exponents,
            basis,
        })
    }

    fn coord(&self, i: usize, s: usize) -> usize {
        (self.n - 1 - i) * self.colength + s
    }

    /// Length of the quotient module.
    pub fn colength(&self) -> usize {
        self.colength
    }

    /// Exponents `a_i` of the diagonal of the canonical form.
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// Monomial basis of the quotient: pairs `(row, power)` for `t^power e_row`.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    /// Coordinates of the class of `x` in the monomial basis.
    pub fn reduce(&self, x: &[Jet]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.n);
        let v = self.colength;
        let mut vec = vec![Scalar::zero(); self.n * v];
        for (i, jet) in x.iter().enumerate() {
            for s in 0..v {
                vec[self.coord(i, s)] = jet.coeff(s).clone();
            }
        }
        for c in 0..vec.len() {
            if vec[c].is_zero() {
                continue;
            }
            if let Some(row) = self.pivot_of_coord[c] {
                let f = vec[c].clone();
                for (dst, e) in vec.iter_mut().zip(self.echelon.row(row)) {
                    if !e.is_zero() {
                        *dst -= &f * e;
                    }
                }
            }
        }
        self.basis
            .iter()
            .map(|&(i, s)| vec[self.coord(i, s)].clone())
            .collect()
    }

    /// The canonical lift `sum c_k t^{s_k} e_{i_k}` of quotient coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Jet> {
        let mut out = vec![Jet::zero(self.order); self.n];
        for (c, &(i, s)) in coords.iter().zip(&self.basis) {
            out[i] = &out[i] + &Jet::monomial(c.clone(), s, self.order);
        }
        out
    }

    pub fn hermite_form(&self) -> JetMatrix {
        let k = self.order;
        let mut h = JetMatrix::zeros(self.n, self.n, k);
        for j in 0..self.n {
            let a = self.exponents[j];
            if a == self.colength {
                h[(j, j)] = Jet::monomial(Scalar::one(), a, k);
                continue;
            }
            let row = self.pivot_of_coord[self.coord(j, a)].expect("pivot present");
            let r = self.echelon.row(row);
            for i in 0..self.n {
                let coeffs = (0..self.colength)
                    .map(|s| r[self.coord(i, s)].clone())
                    .collect();
                h[(i, j)] = Jet::from_coeffs(coeffs, k);
            }
        }
        h
    }
}

impl Index<(usize, usize)> for JetMatrix {
    type Output = Jet;
    fn index(&self, (i, j): (usize, usize)) -> &Jet {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for JetMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Jet {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for JetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "JetMatrix {}x{} (mod t^{})",
            self.rows, self.cols, self.order
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self[(i, j)]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
