use crate::algebra::{Domain, ExactMatrix};

use super::{Block, IncidenceError, IncidenceSystem};

/// A matrix whose entries are all 0 or 1, in any domain. Rows are points,
/// columns are blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix01 {
    mat: ExactMatrix,
}

impl IncidenceMatrix01 {
    pub fn new(mat: ExactMatrix) -> Result<Self, IncidenceError> {
        for i in 0..mat.rows() {
            for (j, e) in mat.row(i).iter().enumerate() {
                if !e.is_zero() && !e.is_one() {
                    return Err(IncidenceError::NotZeroOne { row: i, col: j, value: e.to_string() });
                }
            }
        }
        Ok(IncidenceMatrix01 { mat })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.mat
    }

    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    pub fn domain(&self) -> Domain {
        self.mat.domain()
    }

    fn is_set(&self, i: usize, j: usize) -> bool {
        self.mat.get(i, j).is_one()
    }

    /// Block `j` is the set of rows with a 1 in column `j`.
    pub fn to_system(&self) -> IncidenceSystem {
        let blocks = (0..self.cols())
            .map(|j| Block::from_sorted((0..self.rows()).filter(|&i| self.is_set(i, j)).collect()))
            .collect();
        IncidenceSystem::new(self.rows(), blocks).expect("rows index the points")
    }

    /// Copies the 0-1 pattern into `domain`: zero to zero, one to one.
    pub fn lift(&self, domain: Domain) -> Self {
        let mat = ExactMatrix::build(self.rows(), self.cols(), domain, |i, j| u32::from(self.is_set(i, j)))
            .expect("0 and 1 exist in every domain");
        IncidenceMatrix01 { mat }
    }

    fn check(&self, what: &'static str, index: usize, bound: usize) -> Result<(), IncidenceError> {
        if index >= bound {
            return Err(IncidenceError::IndexOutOfRange { what, index, bound });
        }
        Ok(())
    }

    /// Ones in row `i`.
    pub fn mat_rep_num(&self, i: usize) -> Result<usize, IncidenceError> {
        self.check("row", i, self.rows())?;
        Ok((0..self.cols()).filter(|&j| self.is_set(i, j)).count())
    }

    /// Ones in column `j`.
    pub fn mat_block_size(&self, j: usize) -> Result<usize, IncidenceError> {
        self.check("column", j, self.cols())?;
        Ok((0..self.rows()).filter(|&i| self.is_set(i, j)).count())
    }

    /// Dot product of columns `i` and `j`, counted over the naturals.
    pub fn mat_inter_num(&self, i: usize, j: usize) -> Result<usize, IncidenceError> {
        self.check("column", i, self.cols())?;
        self.check("column", j, self.cols())?;
        Ok((0..self.rows()).filter(|&r| self.is_set(r, i) && self.is_set(r, j)).count())
    }

    /// Number of columns with a 1 in every row of `rows`.
    pub fn mat_point_index(&self, rows: &[usize]) -> Result<usize, IncidenceError> {
        for &r in rows {
            self.check("row", r, self.rows())?;
        }
        Ok((0..self.cols()).filter(|&j| rows.iter().all(|&r| self.is_set(r, j))).count())
    }
}

impl IncidenceSystem {
    /// The `v x b` incidence matrix: entry `(i, j)` is 1 iff point `i`
    /// lies in block `j`.
    pub fn incidence_matrix(&self, domain: Domain) -> IncidenceMatrix01 {
        let mat = ExactMatrix::build(self.v(), self.b(), domain, |i, j| u32::from(self.blocks()[j].contains(i)))
            .expect("0 and 1 exist in every domain");
        IncidenceMatrix01 { mat }
    }
}
