//! Certified bound arguments and the Fisher-type inequalities built on
//! them.
//!
//! The two techniques are the rank argument (a non-singular `N·Nᵀ` forces
//! `rows(N) <= cols(N)`) and the linear algebra bound (`k` linearly
//! independent vectors in dimension `m` force `k <= m`). Both produce a
//! [`BoundCertificate`] that can be re-checked from the matrix alone.
//! The Fisher checkers never fail on bad input: hypotheses that do not
//! hold end up in the [`FisherReport`].

mod bounds;
mod certificate;
mod fisher;
mod pbd;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::incidence::IncidenceError;

pub use bounds::{linear_bound, rank_argument};
pub use certificate::{BoundCertificate, Inequality, Technique};
pub use fisher::{fisher_dual, general_fisher, odd_town, uniform_fisher, FisherReport, FisherVariant, Hypothesis, Verdict};
pub use pbd::{pbd_characterization_forward, pbd_characterization_reverse};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("rank argument inapplicable: det(N·Nᵀ) = 0")]
    RankArgumentInapplicable,
    #[error("distinctness violated: vectors {first} and {second} are equal")]
    DistinctnessViolated { first: usize, second: usize },
    #[error("linearly dependent: rank {rank} < {count} vectors")]
    LinearlyDependent { rank: usize, count: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("N·Nᵀ differs from λJ + (r-λ)I at ({row},{col}): expected {expected}, found {found}")]
    IdentityViolated { row: usize, col: usize, expected: String, found: String },
    #[error("matrix is not a regular-PBD incidence matrix: {0}")]
    NotRegularPbdMatrix(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}
