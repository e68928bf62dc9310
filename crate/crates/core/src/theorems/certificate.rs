use std::fmt;

use serde::Serialize;

use crate::algebra::{Domain, ExactMatrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Technique {
    RankArgument,
    LinearBound,
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Technique::RankArgument => "rank-argument",
            Technique::LinearBound => "linear-bound",
        })
    }
}

/// `lhs <= rhs`, with the names of the two quantities (`"v"`, `"b"`, …).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs_name: &'static str,
    pub lhs: usize,
    pub rhs_name: &'static str,
    pub rhs: usize,
}

impl Inequality {
    pub fn new(lhs_name: &'static str, lhs: usize, rhs_name: &'static str, rhs: usize) -> Self {
        Inequality { lhs_name, lhs, rhs_name, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    /// Same numbers, ignoring names.
    pub fn same_values(&self, other: &Inequality) -> bool {
        (self.lhs, self.rhs) == (other.lhs, other.rhs)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≤ {} ({} ≤ {})", self.lhs, self.rhs, self.lhs_name, self.rhs_name)
    }
}

/// Evidence for a bound, checkable against the matrix it was derived
/// from.
///
/// For the rank argument the matrix is `N` itself and `square_det` is
/// `det(N·Nᵀ)`; for the linear bound the matrix has the vectors as its
/// columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub technique: Technique,
    pub matrix_dims: (usize, usize),
    pub square_det: Option<Scalar>,
    pub rank_value: usize,
    pub domain: Domain,
    pub inequality: Inequality,
}

impl BoundCertificate {
    /// Recomputes determinant and rank from `mat` and compares them with
    /// the stored values.
    pub fn verify(&self, mat: &ExactMatrix) -> Result<(), String> {
        if mat.dims() != self.matrix_dims {
            return Err(format!("matrix is {:?}, certificate says {:?}", mat.dims(), self.matrix_dims));
        }
        if mat.domain() != self.domain {
            return Err(format!("matrix is over {}, certificate says {}", mat.domain(), self.domain));
        }
        let (rows, cols) = mat.dims();
        let rank = mat.rank_field().map_err(|e| e.to_string())?;
        match self.technique {
            Technique::RankArgument => {
                let gram = mat.mul(&mat.transpose()).map_err(|e| e.to_string())?;
                let det = gram.det_field().map_err(|e| e.to_string())?;
                if self.square_det.as_ref() != Some(&det) {
                    return Err(format!("det(N·Nᵀ) recomputes to {det}"));
                }
                if det.is_zero() {
                    return Err("det(N·Nᵀ) is zero".into());
                }
                if rank != rows || self.rank_value != rows {
                    return Err(format!("rank {rank} does not equal row count {rows}"));
                }
                if (self.inequality.lhs, self.inequality.rhs) != (rows, cols) {
                    return Err(format!("inequality {} is not rows ≤ cols", self.inequality));
                }
            }
            Technique::LinearBound => {
                if self.square_det.is_some() {
                    return Err("linear bound carries a determinant".into());
                }
                if rank != cols || self.rank_value != cols {
                    return Err(format!("rank {rank} does not equal vector count {cols}"));
                }
                if (self.inequality.lhs, self.inequality.rhs) != (cols, rows) {
                    return Err(format!("inequality {} is not count ≤ dimension", self.inequality));
                }
            }
        }
        if !self.inequality.holds() {
            return Err(format!("inequality {} is false", self.inequality));
        }
        Ok(())
    }
}
