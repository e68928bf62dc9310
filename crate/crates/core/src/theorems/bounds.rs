use std::collections::HashMap;

use crate::algebra::{AlgebraError, Domain, ExactMatrix, ExactVector};

use super::{BoundCertificate, Inequality, Technique, TheoremError};

/// Rank argument: if `det(N·Nᵀ) != 0` then `rank(N) = rows(N)`, and since
/// `rank(N·Nᵀ) <= min(rank N, rank Nᵀ) <= cols(N)` we get
/// `rows(N) <= cols(N)`.
pub fn rank_argument(n: &ExactMatrix) -> Result<BoundCertificate, TheoremError> {
    let domain = n.domain();
    if !domain.is_field() {
        return Err(AlgebraError::UnsupportedDomain { op: "rank_argument", domain }.into());
    }
    let gram = n.mul(&n.transpose())?;
    let det = match domain {
        Domain::Rational => gram.det_bareiss()?,
        _ => gram.det_field()?,
    };
    if det.is_zero() {
        return Err(TheoremError::RankArgumentInapplicable);
    }
    let (rows, cols) = n.dims();
    let rank = n.rank_field()?;
    if rank != rows {
        return Err(TheoremError::Inconsistent(format!(
            "det(N·Nᵀ) = {det} is non-zero but rank(N) = {rank} < {rows}"
        )));
    }
    let inequality = Inequality::new("rows", rows, "cols", cols);
    if !inequality.holds() {
        return Err(TheoremError::Inconsistent(format!("rank {rank} exceeds column count {cols}")));
    }
    Ok(BoundCertificate {
        technique: Technique::RankArgument,
        matrix_dims: (rows, cols),
        square_det: Some(det),
        rank_value: rank,
        domain,
        inequality,
    })
}

/// Linear algebra bound: `vectors` must be pairwise distinct and linearly
/// independent in `domain^dim`; then their count is at most `dim`.
/// Independence is certified by the rank of the matrix with the vectors as
/// columns.
pub fn linear_bound(domain: Domain, dim: usize, vectors: &[ExactVector]) -> Result<BoundCertificate, TheoremError> {
    if !domain.is_field() {
        return Err(AlgebraError::UnsupportedDomain { op: "linear_bound", domain }.into());
    }
    let mut seen: HashMap<&ExactVector, usize> = HashMap::new();
    for (idx, vec) in vectors.iter().enumerate() {
        if vec.domain() != domain {
            return Err(AlgebraError::DomainMismatch { left: domain, right: vec.domain() }.into());
        }
        if vec.dim() != dim {
            return Err(AlgebraError::DimensionMismatch {
                op: "linear_bound",
                left: (dim, 1),
                right: (vec.dim(), 1),
            }
            .into());
        }
        if let Some(&first) = seen.get(vec) {
            return Err(TheoremError::DistinctnessViolated { first, second: idx });
        }
        seen.insert(vec, idx);
    }
    let count = vectors.len();
    let mat = ExactMatrix::build(dim, count, domain, |i, j| &vectors[j].entries()[i])?;
    let rank = mat.rank_field()?;
    if rank < count {
        return Err(TheoremError::LinearlyDependent { rank, count });
    }
    Ok(BoundCertificate {
        technique: Technique::LinearBound,
        matrix_dims: (dim, count),
        square_det: None,
        rank_value: rank,
        domain,
        inequality: Inequality::new("vectors", count, "dimension", dim),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::IncidenceSystem;

    #[test]
    fn identity_rank_argument() {
        let cert = rank_argument(&ExactMatrix::identity(3, Domain::Rational)).unwrap();
        assert_eq!(cert.square_det, Some(Domain::Rational.one()));
        assert_eq!((cert.inequality.lhs, cert.inequality.rhs), (3, 3));
    }

    #[test]
    fn wide_rank_argument() {
        let n = ExactMatrix::from_rows(Domain::Rational, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let cert = rank_argument(&n).unwrap();
        assert_eq!((cert.inequality.lhs, cert.inequality.rhs), (2, 3));
        cert.verify(&n).unwrap();
    }

    #[test]
    fn fano_rank_argument() {
        let n = IncidenceSystem::fano_plane().incidence_matrix(Domain::Rational).into_matrix();
        let cert = rank_argument(&n).unwrap();
        assert_eq!(cert.square_det, Some(Domain::Rational.element(576).unwrap()));
        assert_eq!(cert.rank_value, 7);
        cert.verify(&n).unwrap();
    }

    #[test]
    fn singular_gram_is_inapplicable() {
        let n = ExactMatrix::ones(2, 3, Domain::Rational);
        assert_eq!(rank_argument(&n), Err(TheoremError::RankArgumentInapplicable));
        let id = ExactMatrix::identity(2, Domain::Integer);
        assert!(matches!(rank_argument(&id), Err(TheoremError::Algebra(_))));
    }

    #[test]
    fn standard_basis_bound() {
        let q = Domain::Rational;
        let basis: Vec<ExactVector> =
            (0..4).map(|i| ExactVector::new(q, (0..4).map(|j| (i == j) as i64)).unwrap()).collect();
        let cert = linear_bound(q, 4, &basis).unwrap();
        assert_eq!((cert.inequality.lhs, cert.inequality.rhs), (4, 4));
    }

    #[test]
    fn empty_family_bound() {
        let cert = linear_bound(Domain::Rational, 5, &[]).unwrap();
        assert_eq!((cert.inequality.lhs, cert.inequality.rhs), (0, 5));
        assert_eq!(cert.matrix_dims, (5, 0));
    }

    #[test]
    fn fano_columns_bound() {
        let n = IncidenceSystem::fano_plane().incidence_matrix(Domain::Rational).into_matrix();
        let cert = linear_bound(Domain::Rational, 7, &n.columns()).unwrap();
        assert_eq!(cert.rank_value, 7);
        cert.verify(&n).unwrap();
    }

    #[test]
    fn duplicates_and_dependence_rejected() {
        let q = Domain::Rational;
        let a = ExactVector::new(q, [1, 0]).unwrap();
        let b = ExactVector::new(q, [2, 0]).unwrap();
        assert_eq!(
            linear_bound(q, 2, &[a.clone(), a.clone()]),
            Err(TheoremError::DistinctnessViolated { first: 0, second: 1 })
        );
        assert_eq!(linear_bound(q, 2, &[a, b]), Err(TheoremError::LinearlyDependent { rank: 1, count: 2 }));
    }

    #[test]
    fn dimension_checked() {
        let q = Domain::Rational;
        let a = ExactVector::new(q, [1, 0, 0]).unwrap();
        assert!(matches!(linear_bound(q, 2, &[a]), Err(TheoremError::Algebra(_))));
    }
}
