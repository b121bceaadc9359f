//! Exact arithmetic for super Cardy-Frobenius algebras and the Cardy-Frobenius
//! data of Landau-Ginzburg matrix factorizations.
//!
//! All routines are generic over an exact [`Field`]; the aliases below fix it
//! to arbitrary-precision rationals, which is what the CLI uses.

pub mod cardy;
pub mod classifier;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod mf;
pub mod scalar;
pub mod superalgebra;
pub mod upoly;

pub use cardy::{
    build_elementary, direct_sum_cf, verify_all, CFData, CheckKind, CheckReport, ElementaryKind,
    ElementaryParams, SignRule, Verdict, Witness,
};
pub use classifier::{classify, Classification, ClassificationReport, ElementarySummand};
pub use error::{Error, Result};
pub use graded::{supertrace, GradedDim, GradedMatrix};
pub use linalg::{kernel_basis, solve_linear, Matrix};
pub use mf::{
    check_dao, end_cohomology, mf_to_cf, milnor_ring, tensor_mf, validate_mf, MatrixFactorization,
    Poly, PolyMatrix,
};
pub use scalar::{ExactRational, Field, Parity};
pub use superalgebra::{
    build_mat, build_q, direct_sum_algebras, random_graded_basis_change, AlgebraElement,
    SuperAlgebra,
};

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;
pub type RationalCFData = CFData<Rational>;
pub type RationalPoly = Poly<Rational>;
pub type RationalMF = MatrixFactorization<Rational>;
