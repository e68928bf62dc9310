//! Design-theory workbench: incidence set systems, their 0-1 incidence
//! matrices, exact linear algebra over ℤ, ℚ and GF(p), and certified
//! checkers for the rank argument, the linear algebra bound and the four
//! variants of Fisher's inequality.
//!
//! Points of a system are always the indices `0..v`; blocks are kept in
//! order and may repeat.

pub mod algebra;
pub mod enumerate;
pub mod incidence;
pub mod theorems;

pub use algebra::{AlgebraError, Domain, ExactMatrix, ExactVector, Modulus, Scalar, Value};
pub use incidence::{Block, DesignClass, IncidenceError, IncidenceMatrix01, IncidenceSystem};
pub use theorems::{BoundCertificate, FisherReport, FisherVariant, Technique, Verdict};
