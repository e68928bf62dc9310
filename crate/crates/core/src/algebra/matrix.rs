use std::collections::HashSet;
use std::fmt;

use super::{AlgebraError, Domain, Scalar, Value};

/// Dense row-major matrix over a single scalar domain. Empty dimensions
/// are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    /// Entry `(i, j)` is `gen(i, j)` normalized into `domain`.
    pub fn build<V, F>(rows: usize, cols: usize, domain: Domain, mut gen: F) -> Result<Self, AlgebraError>
    where
        V: Into<Value>,
        F: FnMut(usize, usize) -> V,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(domain.element(gen(i, j))?);
            }
        }
        Ok(ExactMatrix { rows, cols, domain, entries })
    }

    /// Builds from nested rows. An empty outer list gives a `0 x 0`
    /// matrix.
    pub fn from_rows<V: Into<Value> + Clone>(domain: Domain, rows: &[Vec<V>]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(AlgebraError::RaggedRows { row, len: r.len(), expected: cols });
            }
        }
        Self::build(rows.len(), cols, domain, |i, j| rows[i][j].clone())
    }

    pub(crate) fn from_entries(rows: usize, cols: usize, domain: Domain, entries: Vec<Scalar>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|e| e.domain() == domain));
        ExactMatrix { rows, cols, domain, entries }
    }

    pub fn zeros(rows: usize, cols: usize, domain: Domain) -> Self {
        Self::from_entries(rows, cols, domain, vec![domain.zero(); rows * cols])
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize, domain: Domain) -> Self {
        Self::from_entries(rows, cols, domain, vec![domain.one(); rows * cols])
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        let mut m = Self::zeros(n, n, domain);
        for i in 0..n {
            m.entries[i * n + i] = domain.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Panics when `(i, j)` is out of range.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) outside {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ExactVector {
        ExactVector {
            domain: self.domain,
            entries: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<ExactVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self::from_entries(self.cols, self.rows, self.domain, entries)
    }

    fn same_domain(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch { left: self.domain, right: other.domain });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_domain(rhs)?;
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch { op: "mul", left: self.dims(), right: rhs.dims() });
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..rhs.cols {
                let mut acc = self.domain.zero();
                for (l, a) in row.iter().enumerate() {
                    if !a.is_zero() {
                        acc = &acc + &(a * rhs.get(l, j));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self::from_entries(self.rows, rhs.cols, self.domain, entries))
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self, AlgebraError> {
        self.same_domain(rhs)?;
        if self.dims() != rhs.dims() {
            return Err(AlgebraError::DimensionMismatch { op, left: self.dims(), right: rhs.dims() });
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self::from_entries(self.rows, self.cols, self.domain, entries))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn scale(&self, c: impl Into<Value>) -> Result<Self, AlgebraError> {
        let c = self.domain.element(c)?;
        let entries = self.entries.iter().map(|e| e * &c).collect();
        Ok(Self::from_entries(self.rows, self.cols, self.domain, entries))
    }

    /// Re-reads every entry in another domain (ℤ → ℚ, ℤ → GF(p), …).
    pub fn to_domain(&self, domain: Domain) -> Result<Self, AlgebraError> {
        Self::build(self.rows, self.cols, domain, |i, j| self.get(i, j))
    }

    fn check_index(index: usize, bound: usize) -> Result<(), AlgebraError> {
        if index >= bound {
            return Err(AlgebraError::IndexOutOfRange { index, bound });
        }
        Ok(())
    }

    /// Row `k` becomes `row_k + c * Σ_{l ∈ sources} row_l`. Rejects
    /// `k ∈ sources`, which would break determinant invariance.
    pub fn add_multiple_rows(&self, c: impl Into<Value>, k: usize, sources: &[usize]) -> Result<Self, AlgebraError> {
        let c = self.domain.element(c)?;
        Self::check_index(k, self.rows)?;
        for &l in sources {
            Self::check_index(l, self.rows)?;
            if l == k {
                return Err(AlgebraError::SourceIsTarget(k));
            }
        }
        let mut out = self.clone();
        for j in 0..self.cols {
            let mut sum = self.domain.zero();
            for &l in sources {
                sum = &sum + self.get(l, j);
            }
            let idx = k * self.cols + j;
            out.entries[idx] = &out.entries[idx] + &(&c * &sum);
        }
        Ok(out)
    }

    /// For each `k ∈ targets`, row `k` becomes `row_k + c * row_l`.
    pub fn add_row_to_multiple(&self, c: impl Into<Value>, targets: &[usize], l: usize) -> Result<Self, AlgebraError> {
        let c = self.domain.element(c)?;
        Self::check_index(l, self.rows)?;
        let mut seen = HashSet::new();
        for &k in targets {
            Self::check_index(k, self.rows)?;
            if k == l {
                return Err(AlgebraError::SourceIsTarget(l));
            }
            if !seen.insert(k) {
                return Err(AlgebraError::DuplicateTarget(k));
            }
        }
        let mut out = self.clone();
        for &k in targets {
            for j in 0..self.cols {
                let idx = k * self.cols + j;
                out.entries[idx] = &out.entries[idx] + &(&c * self.get(l, j));
            }
        }
        Ok(out)
    }

    /// Column mirror of [`ExactMatrix::add_multiple_rows`].
    pub fn add_multiple_cols(&self, c: impl Into<Value>, k: usize, sources: &[usize]) -> Result<Self, AlgebraError> {
        Ok(self.transpose().add_multiple_rows(c, k, sources)?.transpose())
    }

    /// Column mirror of [`ExactMatrix::add_row_to_multiple`].
    pub fn add_col_to_multiple(&self, c: impl Into<Value>, targets: &[usize], l: usize) -> Result<Self, AlgebraError> {
        Ok(self.transpose().add_row_to_multiple(c, targets, l)?.transpose())
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<Scalar>> {
        let cols = self.cols;
        if cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        let mut rows = Vec::with_capacity(self.rows);
        let mut it = self.entries.into_iter();
        for _ in 0..self.rows {
            rows.push(it.by_ref().take(cols).collect());
        }
        rows
    }
}

/// Rows of space-separated entries in canonical form (`p/q` for
/// non-integral rationals).
impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactVector {
    domain: Domain,
    entries: Vec<Scalar>,
}

impl ExactVector {
    pub fn new<V: Into<Value>>(domain: Domain, values: impl IntoIterator<Item = V>) -> Result<Self, AlgebraError> {
        let entries = values.into_iter().map(|v| domain.element(v)).collect::<Result<_, _>>()?;
        Ok(ExactVector { domain, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn dot(&self, other: &Self) -> Result<Scalar, AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch { left: self.domain, right: other.domain });
        }
        if self.dim() != other.dim() {
            return Err(AlgebraError::DimensionMismatch {
                op: "dot",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(self.domain.zero(), |acc, (a, b)| &acc + &(a * b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows(Domain::Integer, rows).unwrap()
    }

    #[test]
    fn build_identity_and_ones() {
        let id = ExactMatrix::build(2, 2, Domain::Integer, |i, j| (i == j) as i64).unwrap();
        assert_eq!(id, int(&[vec![1, 0], vec![0, 1]]));
        assert_eq!(id, ExactMatrix::identity(2, Domain::Integer));
        let j = ExactMatrix::build(2, 3, Domain::Integer, |_, _| 1).unwrap();
        assert_eq!(j, ExactMatrix::ones(2, 3, Domain::Integer));
    }

    #[test]
    fn build_reduces_mod_p() {
        let gf5 = Domain::prime_field(5).unwrap();
        let m = ExactMatrix::build(1, 1, gf5, |_, _| 7).unwrap();
        assert_eq!(m.to_string(), "2\n");
    }

    #[test]
    fn build_rejects_zero_denominator() {
        let err = ExactMatrix::build(1, 2, Domain::Rational, |_, j| (1, j as i64)).unwrap_err();
        assert_eq!(err, AlgebraError::ZeroDenominator);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = ExactMatrix::from_rows(Domain::Integer, &[vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, AlgebraError::RaggedRows { row: 1, .. }));
    }

    #[test]
    fn transpose_row_vector() {
        let t = int(&[vec![1, 0, 1]]).transpose();
        assert_eq!(t, int(&[vec![1], vec![0], vec![1]]));
        let id = ExactMatrix::identity(3, Domain::Integer);
        assert_eq!(id.transpose(), id);
    }

    #[test]
    fn mul_checks_shapes_and_domains() {
        let a = int(&[vec![1, 2]]);
        assert!(matches!(a.mul(&a), Err(AlgebraError::DimensionMismatch { .. })));
        let b = ExactMatrix::identity(2, Domain::Rational);
        assert!(matches!(a.mul(&b), Err(AlgebraError::DomainMismatch { .. })));
    }

    #[test]
    fn mul_over_gf2_wraps() {
        let gf2 = Domain::gf2();
        let a = ExactMatrix::from_rows(gf2, &[vec![1, 1]]).unwrap();
        let b = ExactMatrix::from_rows(gf2, &[vec![1], vec![1]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), ExactMatrix::zeros(1, 1, gf2));
    }

    #[test]
    fn identity_is_neutral() {
        let a = int(&[vec![1, -2, 3], vec![0, 4, 5], vec![7, 8, -9]]);
        assert_eq!(ExactMatrix::identity(3, Domain::Integer).mul(&a).unwrap(), a);
    }

    #[test]
    fn add_multiple_rows_examples() {
        let a = int(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.add_multiple_rows(1, 0, &[1]).unwrap(), int(&[vec![4, 6], vec![3, 4]]));
        assert_eq!(a.add_multiple_rows(0, 0, &[1]).unwrap(), a);
        assert_eq!(a.add_multiple_rows(1, 0, &[0]), Err(AlgebraError::SourceIsTarget(0)));
        assert!(matches!(a.add_multiple_rows(1, 2, &[0]), Err(AlgebraError::IndexOutOfRange { .. })));
    }

    #[test]
    fn add_row_to_multiple_examples() {
        let id = ExactMatrix::identity(3, Domain::Integer);
        let out = id.add_row_to_multiple(1, &[1, 2], 0).unwrap();
        assert_eq!(out, int(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]));
        assert_eq!(id.add_row_to_multiple(5, &[], 0).unwrap(), id);
        assert_eq!(id.add_row_to_multiple(1, &[1, 1], 0), Err(AlgebraError::DuplicateTarget(1)));
        assert_eq!(id.add_row_to_multiple(1, &[0], 0), Err(AlgebraError::SourceIsTarget(0)));
    }

    #[test]
    fn add_multiple_cols_example() {
        let a = int(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.add_multiple_cols(-1, 1, &[0]).unwrap(), int(&[vec![1, 1], vec![3, 1]]));
    }

    #[test]
    fn empty_matrices_are_legal() {
        let m = ExactMatrix::zeros(3, 0, Domain::Integer);
        assert_eq!(m.dims(), (3, 0));
        assert_eq!(m.transpose().dims(), (0, 3));
        let p = m.mul(&m.transpose()).unwrap();
        assert_eq!(p, ExactMatrix::zeros(3, 3, Domain::Integer));
    }

    #[test]
    fn rational_display() {
        let m = ExactMatrix::from_rows(Domain::Rational, &[vec![(1i64, 2i64), (4, 2)]]).unwrap();
        assert_eq!(m.to_string(), "1/2 2\n");
    }

    #[test]
    fn vector_dot() {
        let a = ExactVector::new(Domain::Integer, [1, 1, 0]).unwrap();
        let b = ExactVector::new(Domain::Integer, [1, 0, 1]).unwrap();
        assert_eq!(a.dot(&b).unwrap(), Domain::Integer.one());
        assert_eq!(a.dim(), 3);
    }
}
