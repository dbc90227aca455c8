//! Independent oracles for the integration tests.
//!
//! Nothing here calls into the library's linear algebra: ranks are computed
//! by a separate elimination over `BigRational`, and colengths by counting
//! dimensions of truncated modules instead of determinant valuations.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;

use sympquot::linalg::{JetMatrix, ScalarMatrix};
use sympquot::local_model::QuotPoint;

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rows_of(m: &ScalarMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Columns of `a` and `b` span the same subspace.
pub fn same_column_span(a: &ScalarMatrix, b: &ScalarMatrix) -> bool {
    let ra = rank(rows_of(&a.transpose()));
    let rb = rank(rows_of(&b.transpose()));
    let mut both = rows_of(&a.transpose());
    both.extend(rows_of(&b.transpose()));
    ra == rb && rank(both) == ra
}

/// `dim_Q (R/t^k)^n / image(A)`, counted from the span of `t^s A e_j`.
pub fn truncated_cokernel_dimension(a: &JetMatrix, k: usize) -> usize {
    let n = a.rows();
    let k = k.min(a.order());
    let mut vectors = Vec::new();
    for j in 0..a.cols() {
        for shift in 0..k {
            let mut v = vec![BigRational::zero(); n * k];
            for i in 0..n {
                let entry = &a[(i, j)];
                for s in shift..k {
                    v[i * k + s] = entry.coeff(s - shift).clone();
                }
            }
            vectors.push(v);
        }
    }
    n * k - rank(vectors)
}

/// Colength of the column span, or `None` if the count has not stabilised
/// by `t^bound` (rank deficient or colength above `bound`).
pub fn colength(a: &JetMatrix, bound: usize) -> Option<usize> {
    let lo = truncated_cokernel_dimension(a, bound + 1);
    let hi = truncated_cokernel_dimension(a, bound + 2);
    (lo == hi && bound + 2 <= a.order()).then_some(lo)
}

/// Hom-space dimension as `2r` times the total colength.
pub fn hom_dimension(q: &QuotPoint) -> Option<usize> {
    let n = 2 * q.r();
    let bound = q.r() * q.d();
    q.models()
        .iter()
        .map(|m| colength(&m.matrix, bound).map(|c| n * c))
        .sum()
}

/// Number of entries on or above the diagonal of an `r x r` matrix.
pub fn symmetric_entries(r: usize) -> usize {
    (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).count()
}

/// `d` points moving on the line, each with a Lagrangian choice.
pub fn symplectic_quot_dimension(r: usize, d: usize) -> usize {
    d * (symmetric_entries(r) + 1)
}

/// Free generators times quotient length, with the quotient length `rd`.
pub fn classical_quot_dimension(r: usize, d: usize) -> usize {
    (0..2 * r).map(|_| r * d).sum()
}

/// `g` moves the column span of `b`.
pub fn moves(g: &ScalarMatrix, b: &ScalarMatrix) -> bool {
    let image = g.mul(b).expect("shapes agree");
    !same_column_span(&image, b)
}

pub fn scalar_identity(n: usize, sign: i64) -> ScalarMatrix {
    let mut m = ScalarMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = BigRational::from_integer(sign.into());
    }
    m
}
