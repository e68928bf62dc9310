//! Incidence set systems, their classification, the complement and dual
//! constructions, and the bridge to 0-1 incidence matrices.

mod classify;
mod iso;
mod matrix01;
mod system;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use classify::{DesignClass, Intersection};
pub use iso::are_isomorphic;
pub use matrix01::IncidenceMatrix01;
pub use system::{Block, IncidenceSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("point {point} is outside 0..{v}")]
    PointOutOfRange { point: usize, v: usize },
    #[error("point {point} repeated within a block")]
    DuplicatePoint { point: usize },
    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },
    #[error("entry ({row},{col}) = {value} is not 0 or 1")]
    NotZeroOne { row: usize, col: usize, value: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
