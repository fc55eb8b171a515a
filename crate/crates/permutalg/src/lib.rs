//! An exact-arithmetic workbench for finite-dimensional, not necessarily
//! associative algebras over the rationals.
//!
//! The crate builds algebras from structure-constant cubes, solves for all
//! bilinear forms that associate with a given multiplication, permutes the
//! three tensor slots of the multiplication under two documented
//! conventions, and runs a battery of nonassociativity diagnostics:
//! associators, nuclei, flexibility, cube association, identity elements,
//! square-to-scalar forms, trace tests, and unitalization isotopes.
//!
//! Every computation is exact. Scalars are arbitrary-precision rationals,
//! all decisions are equality tests, and all search routines are
//! deterministic, so identical inputs produce identical outputs byte for
//! byte. All values are immutable after construction and every operation is
//! a pure function, so everything here can be shared freely across threads.

pub mod algebra;
pub mod cli;
pub mod clifford;
pub mod detrand;
pub mod diagnostics;
pub mod error;
pub mod frobenius;
pub mod io;
pub mod linalg;
pub mod permute;

pub use algebra::{AlgebraDescriptor, Element, LinearMap, Side, StructureCube};
pub use clifford::CliffordSignature;
pub use error::Error;
pub use frobenius::{BilinearForm, FormSpace, FrobeniusPair, TernaryTensor, TraceVerdict};
pub use linalg::{Matrix, Rational};
pub use permute::{Convention, PermutedFamily, S3};
