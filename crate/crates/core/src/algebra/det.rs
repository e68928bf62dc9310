use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, Domain, ExactMatrix, Scalar};

impl ExactMatrix {
    fn require_square(&self) -> Result<(), AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        Ok(())
    }

    /// Exact determinant over ℤ or ℚ by fraction-free Bareiss elimination.
    /// Rational rows are first cleared of denominators, so all
    /// intermediate values are integers. The `0 x 0` determinant is 1.
    pub fn det_bareiss(&self) -> Result<Scalar, AlgebraError> {
        self.require_square()?;
        match self.domain() {
            Domain::Integer => {
                let rows = self
                    .clone()
                    .into_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|s| s.to_bigint().expect("integer entry")).collect())
                    .collect();
                Ok(Scalar::Integer(bareiss(rows)))
            }
            Domain::Rational => {
                let mut scale = BigInt::one();
                let mut rows = Vec::with_capacity(self.rows());
                for i in 0..self.rows() {
                    let row: Vec<&BigRational> = self
                        .row(i)
                        .iter()
                        .map(|s| match s {
                            Scalar::Rational(q) => q,
                            _ => unreachable!("rational matrix holds rationals"),
                        })
                        .collect();
                    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    rows.push(row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
                    scale *= lcm;
                }
                Ok(Scalar::Rational(BigRational::new(bareiss(rows), scale)))
            }
            domain => Err(AlgebraError::UnsupportedDomain { op: "det_bareiss", domain }),
        }
    }

    /// Determinant over ℚ or GF(p) by Gaussian elimination with pivoting.
    pub fn det_field(&self) -> Result<Scalar, AlgebraError> {
        self.require_square()?;
        let domain = self.domain();
        if !domain.is_field() {
            return Err(AlgebraError::UnsupportedDomain { op: "det_field", domain });
        }
        let n = self.rows();
        let mut rows = self.clone().into_rows();
        let mut det = domain.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Ok(domain.zero());
            };
            if pivot != col {
                rows.swap(pivot, col);
                det = -&det;
            }
            det = &det * &rows[col][col];
            eliminate_below(&mut rows, col, col);
        }
        Ok(det)
    }

    /// Number of pivots in a row-echelon form over ℚ or GF(p). Integer
    /// matrices must be lifted to ℚ first.
    pub fn rank_field(&self) -> Result<usize, AlgebraError> {
        let domain = self.domain();
        if !domain.is_field() {
            return Err(AlgebraError::UnsupportedDomain { op: "rank_field", domain });
        }
        let (m, n) = self.dims();
        let mut rows = self.clone().into_rows();
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(pivot) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot, rank);
            eliminate_below(&mut rows, rank, col);
            rank += 1;
        }
        Ok(rank)
    }
}

/// Clears column `col` below row `pivot_row`, whose entry in `col` is
/// non-zero.
fn eliminate_below(rows: &mut [Vec<Scalar>], pivot_row: usize, col: usize) {
    let inv = rows[pivot_row][col].inverse().expect("non-zero pivot in a field");
    let (top, bottom) = rows.split_at_mut(pivot_row + 1);
    let pivot = &top[pivot_row];
    for row in bottom {
        if row[col].is_zero() {
            continue;
        }
        let factor = &row[col] * &inv;
        for j in col..pivot.len() {
            row[j] = &row[j] - &(&factor * &pivot[j]);
        }
    }
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of `a·I_v + b·J_v` in closed form: `a^(v-1) · (a + v·b)`.
pub fn det_ai_bj(a: &Scalar, b: &Scalar, v: usize) -> Result<Scalar, AlgebraError> {
    let domain = a.domain();
    if b.domain() != domain {
        return Err(AlgebraError::DomainMismatch { left: domain, right: b.domain() });
    }
    if domain.is_field() && domain != Domain::Rational {
        return Err(AlgebraError::UnsupportedDomain { op: "det_ai_bj", domain });
    }
    if v == 0 {
        return Err(AlgebraError::EmptyDimension);
    }
    let v_scalar = domain.element(v)?;
    let exp = u32::try_from(v - 1).expect("dimension fits in u32");
    Ok(&a.pow(exp) * &(a + &(&v_scalar * b)))
}
