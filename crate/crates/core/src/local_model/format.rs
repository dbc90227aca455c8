//! JSON documents for points and Lagrangian tuples.
//!
//! Scalars are always strings of the form `"p/q"` or `"p"`. A jet is an
//! array of coefficient strings, lowest order first; arrays shorter than `K`
//! are padded with zeros.
//!
//! ```json
//! {"r": 1, "d": 1, "K": 3,
//!  "models": [{"point": "0", "matrix": [[["0","1"], ["0"]], [["0"], ["1"]]]}]}
//! ```

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_scalar, parse_scalar, Jet, Scalar};
use crate::linalg::{JetMatrix, ScalarMatrix};
use crate::local_model::{LocalModel, QuotPoint, SupportPoint};
use crate::symplectic::{LagrangianSubspace, SymplecticSpace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotPointDoc {
    pub r: usize,
    pub d: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tool_version: Option<String>,
    pub models: Vec<ModelDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub point: String,
    pub matrix: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianTupleDoc {
    pub points: Vec<String>,
    pub lagrangians: Vec<Vec<Vec<String>>>,
}

fn format_err(path: impl Into<String>, message: impl ToString) -> Error {
    Error::Format {
        path: path.into(),
        message: message.to_string(),
    }
}

fn scalar_at(path: &str, text: &str) -> Result<Scalar> {
    parse_scalar(text).map_err(|e| format_err(path, e))
}

pub fn jet_to_doc(j: &Jet) -> Vec<String> {
    // trailing zeros are implied by the truncation order
    let last = j.coeffs().iter().rposition(|c| !c.is_zero());
    let keep = last.map_or(1, |i| i + 1);
    j.coeffs()[..keep].iter().map(format_scalar).collect()
}

pub fn scalar_matrix_to_doc(m: &ScalarMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_scalar).collect())
        .collect()
}

pub fn scalar_matrix_from_doc(path: &str, rows: &[Vec<String>]) -> Result<ScalarMatrix> {
    let data = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| scalar_at(&format!("{path}[{i}][{j}]"), x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ScalarMatrix::from_rows(data).map_err(|e| format_err(path, e))
}

impl QuotPointDoc {
    pub fn from_point(q: &QuotPoint) -> Self {
        let models = q
            .models()
            .iter()
            .map(|m| ModelDoc {
                point: m.point.to_string(),
                matrix: (0..m.matrix.rows())
                    .map(|i| {
                        (0..m.matrix.cols())
                            .map(|j| jet_to_doc(&m.matrix[(i, j)]))
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        QuotPointDoc {
            r: q.r(),
            d: q.d(),
            k: q.order(),
            seed: None,
            tool_version: None,
            models,
        }
    }

    pub fn to_point(&self) -> Result<QuotPoint> {
        let n = 2 * self.r;
        let mut models = Vec::with_capacity(self.models.len());
        for (mi, model) in self.models.iter().enumerate() {
            let base = format!("models[{mi}]");
            let point = SupportPoint(scalar_at(&format!("{base}.point"), &model.point)?);
            if model.matrix.len() != n {
                return Err(format_err(
                    format!("{base}.matrix"),
                    format!("expected {n} rows, found {}", model.matrix.len()),
                ));
            }
            let mut jets = Vec::with_capacity(n * n);
            for (i, row) in model.matrix.iter().enumerate() {
                if row.len() != n {
                    return Err(format_err(
                        format!("{base}.matrix[{i}]"),
                        format!("expected {n} entries, found {}", row.len()),
                    ));
                }
                for (j, coeffs) in row.iter().enumerate() {
                    let path = format!("{base}.matrix[{i}][{j}]");
                    if coeffs.len() > self.k {
                        return Err(format_err(
                            path,
                            format!(
                                "{} coefficients exceed truncation order {}",
                                coeffs.len(),
                                self.k
                            ),
                        ));
                    }
                    let cs = coeffs
                        .iter()
                        .enumerate()
                        .map(|(s, c)| scalar_at(&format!("{path}[{s}]"), c))
                        .collect::<Result<Vec<_>>>()?;
                    jets.push(Jet::from_coeffs(cs, self.k.max(1)));
                }
            }
            let matrix = JetMatrix::from_jets(n, n, jets)?;
            models.push(LocalModel::new(point, matrix));
        }
        QuotPoint::new(self.r, self.d, self.k, models)
    }
}

impl LagrangianTupleDoc {
    /// Parses and validates the tuple. `r` is read off the matrix shapes.
    pub fn to_tuple(
        &self,
    ) -> Result<(SymplecticSpace, Vec<SupportPoint>, Vec<LagrangianSubspace>)> {
        if self.points.len() != self.lagrangians.len() {
            return Err(format_err(
                "lagrangians",
                format!(
                    "{} points but {} Lagrangians",
                    self.points.len(),
                    self.lagrangians.len()
                ),
            ));
        }
        if self.points.is_empty() {
            return Err(format_err(
                "points",
                "at least one support point is required",
            ));
        }
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| scalar_at(&format!("points[{i}]"), p).map(SupportPoint))
            .collect::<Result<Vec<_>>>()?;
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::RepeatedSupportPoint(p.to_string()));
            }
        }
        let first = scalar_matrix_from_doc("lagrangians[0]", &self.lagrangians[0])?;
        if first.rows() == 0 || first.rows() % 2 != 0 {
            return Err(format_err("lagrangians[0]", "expected a 2r x r matrix"));
        }
        let space = SymplecticSpace::standard(first.rows() / 2)?;
        let mut subspaces = Vec::with_capacity(points.len());
        for (index, m) in self.lagrangians.iter().enumerate() {
            let path = format!("lagrangians[{index}]");
            let basis = scalar_matrix_from_doc(&path, m)?;
            if basis.rows() != space.dim() || basis.cols() != space.r() {
                return Err(format_err(
                    path,
                    format!("expected {}x{}", space.dim(), space.r()),
                ));
            }
            let v = LagrangianSubspace::new(&space, &basis)
                .map_err(|_| Error::NotLagrangian { index })?;
            subspaces.push(v);
        }
        Ok((space, points, subspaces))
    }

    pub fn from_tuple(points: &[SupportPoint], subspaces: &[LagrangianSubspace]) -> Self {
        LagrangianTupleDoc {
            points: points.iter().map(ToString::to_string).collect(),
            lagrangians: subspaces
                .iter()
                .map(|v| scalar_matrix_to_doc(v.basis()))
                .collect(),
        }
    }
}
