//! Cardy-Frobenius data of Landau-Ginzburg models: matrix factorizations of
//! univariate and Fermat-type potentials.

mod cohomology;
mod factorization;
mod milnor;
mod model;
mod poly;

pub use cohomology::{
    cohomology_dims_at, end_cohomology, end_dims, euler_characteristic, graded_commutator,
    MFCohomology,
};
pub use factorization::{tensor_mf, validate_mf, FactorizationViolation, MatrixFactorization};
pub use milnor::{milnor_ring, MilnorRing};
pub use model::{boundary_bulk_sign, check_dao, mf_to_cf, DaoReport, LandauGinzburg, ThetaBSign};
pub use poly::{Exponent, Poly, PolyMatrix};
