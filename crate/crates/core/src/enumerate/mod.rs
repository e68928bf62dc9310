//! Brute-force generators for small set families and designs, and the
//! exhaustive verifiers that run the theorem checkers over them.

mod bibd;
mod families;
mod verify;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use bibd::enum_bibd;
pub use families::{enum_const_intersect, enum_odd_town, FamilyStream};
pub use verify::{verify_exhaustive, EnumerationReport, Theorem};

/// Largest `v` for odd-town enumeration.
pub const MAX_ODD_TOWN_V: usize = 6;
/// Largest `v` for constant-intersect enumeration.
pub const MAX_CONST_INTERSECT_V: usize = 5;
/// Largest `v` for BIBD search.
pub const MAX_BIBD_V: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    OddTown,
    ConstIntersect,
    Bibd,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::OddTown => "odd-town",
            FamilyKind::ConstIntersect => "const-intersect",
            FamilyKind::Bibd => "bibd",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("{kind} enumeration supports v <= {max}, got {v}")]
    VTooLarge { kind: FamilyKind, v: usize, max: usize },
    #[error("invalid BIBD parameters (v={v}, k={k}, λ={lambda}): need 2 <= k < v <= 9 and λ >= 1")]
    BibdParameters { v: usize, k: usize, lambda: usize },
}
