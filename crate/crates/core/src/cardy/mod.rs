//! Cardy-Frobenius data: a supercommutative bulk algebra `A`, a boundary
//! algebra `B`, trace forms on both, the bulk-boundary map `A -> B` and the
//! boundary-bulk map `B -> A`, plus one checker per axiom.

mod check;
mod elementary;

pub use check::{
    cardy_sides, check_adjoint, check_bulk_boundary, check_bulk_boundary_central,
    check_bulk_boundary_multiplicative, check_bulk_boundary_parity, check_bulk_boundary_unit,
    check_cardy, check_cardy_with, check_nondegenerate, check_supercommutative, check_symmetry,
    derive_adjoint, multiplication_operator, pairing, verify_all, verify_all_with, CheckKind,
    CheckOutcome, CheckReport, SignRule, Verdict, Witness,
};
pub use elementary::{build_elementary, direct_sum_cf, ElementaryKind, ElementaryParams};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::superalgebra::{random_graded_matrix, SuperAlgebra};

/// Candidate Cardy-Frobenius data in coordinates. Nothing here is assumed to
/// satisfy the axioms; that is what [`verify_all`] decides.
#[derive(Clone, Debug, PartialEq)]
pub struct CFData<F: std::fmt::Display> {
    pub bulk: SuperAlgebra<F>,
    pub boundary: SuperAlgebra<F>,
    /// `theta_A` on the basis of the bulk algebra
    pub theta_bulk: Vec<F>,
    /// `theta_B` on the basis of the boundary algebra
    pub theta_boundary: Vec<F>,
    /// bulk-boundary map `tau_*`, `dim B x dim A`; column `i` is the image of `a_i`
    pub tau_lower: Matrix<F>,
    /// boundary-bulk map `tau^*`, `dim A x dim B`; derived by adjointness when absent
    pub tau_upper: Option<Matrix<F>>,
}

impl<F: Field> CFData<F> {
    pub fn new(
        bulk: SuperAlgebra<F>,
        boundary: SuperAlgebra<F>,
        theta_bulk: Vec<F>,
        theta_boundary: Vec<F>,
        tau_lower: Matrix<F>,
        tau_upper: Option<Matrix<F>>,
    ) -> Result<Self> {
        let (da, db) = (bulk.dim(), boundary.dim());
        if theta_bulk.len() != da || theta_boundary.len() != db {
            return Err(Error::Dimension(
                "trace form length differs from algebra dimension".into(),
            ));
        }
        if tau_lower.rows() != db || tau_lower.cols() != da {
            return Err(Error::Dimension(format!(
                "bulk-boundary map must be {db}x{da}, got {}x{}",
                tau_lower.rows(),
                tau_lower.cols()
            )));
        }
        if let Some(t) = &tau_upper {
            if t.rows() != da || t.cols() != db {
                return Err(Error::Dimension(format!(
                    "boundary-bulk map must be {da}x{db}, got {}x{}",
                    t.rows(),
                    t.cols()
                )));
            }
        }
        Ok(CFData {
            bulk,
            boundary,
            theta_bulk,
            theta_boundary,
            tau_lower,
            tau_upper,
        })
    }

    /// The stored boundary-bulk map, or the one forced by adjointness.
    pub fn resolved_tau_upper(&self) -> Result<Matrix<F>> {
        match &self.tau_upper {
            Some(t) => Ok(t.clone()),
            None => derive_adjoint(self),
        }
    }

    /// Fills in `tau_upper` by adjointness if it is missing.
    pub fn with_derived_tau_upper(mut self) -> Result<Self> {
        if self.tau_upper.is_none() {
            self.tau_upper = Some(derive_adjoint(&self)?);
        }
        Ok(self)
    }

    /// Re-expresses everything in new bases of `A` and `B`, given as the
    /// columns of `pa` and `pb` (parity preserving, invertible).
    pub fn change_basis(&self, pa: &Matrix<F>, pb: &Matrix<F>) -> Result<Self> {
        let bulk = self.bulk.change_basis(pa)?;
        let boundary = self.boundary.change_basis(pb)?;
        let singular = || Error::InvalidParams("basis change matrix is singular".into());
        let pa_inv = pa.inverse().ok_or_else(singular)?;
        let pb_inv = pb.inverse().ok_or_else(singular)?;
        Ok(CFData {
            bulk,
            boundary,
            theta_bulk: pa.transpose().mul_vec(&self.theta_bulk),
            theta_boundary: pb.transpose().mul_vec(&self.theta_boundary),
            tau_lower: pb_inv.mul(&self.tau_lower).mul(pa),
            tau_upper: self.tau_upper.as_ref().map(|t| pa_inv.mul(t).mul(pb)),
        })
    }

    /// [`Self::change_basis`] with seeded random graded matrices.
    pub fn scramble(&self, seed: u64) -> Self {
        let pa = random_graded_matrix(self.bulk.parities(), seed);
        let pb = random_graded_matrix(self.boundary.parities(), seed.wrapping_add(1));
        self.change_basis(&pa, &pb)
            .expect("random graded matrices are invertible")
    }

    /// Image of a bulk element under `tau_*`.
    pub fn bulk_to_boundary(&self, a: &[F]) -> Vec<F> {
        self.tau_lower.mul_vec(a)
    }
}
