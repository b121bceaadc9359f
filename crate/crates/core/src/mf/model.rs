use crate::cardy::CFData;
use crate::error::{Error, Result};
use crate::graded::GradedDim;
use crate::linalg::Matrix;
use crate::scalar::Field;

use super::cohomology::{end_cohomology, end_dims, MFCohomology};
use super::factorization::MatrixFactorization;
use super::milnor::MilnorRing;
use super::poly::{Poly, PolyMatrix};

/// Sign convention for `theta_B`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThetaBSign {
    /// `theta_B = theta_A o tau^*`, i.e. with the `(-1)^{binom(n+1,2)}` of `tau^*`.
    /// Adjointness at `a = 1` forces this.
    #[default]
    AsBoundaryBulk,
    /// the residue of `str(Y d_1 d_R ... d_n d_R)` with no sign
    Unsigned,
}

/// Milnor ring, End-cohomology and the maps between them for one
/// factorization.
#[derive(Clone, Debug)]
pub struct LandauGinzburg<F: Field> {
    pub mf: MatrixFactorization<F>,
    pub ring: MilnorRing<F>,
    pub cohomology: MFCohomology<F>,
    /// `d_1 d_R ... d_n d_R`
    derivative_product: PolyMatrix<F>,
}

/// `(-1)^{binom(n+1, 2)}`.
pub fn boundary_bulk_sign(n: usize) -> i64 {
    if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl<F: Field> LandauGinzburg<F> {
    pub fn new(mf: &MatrixFactorization<F>) -> Result<Self> {
        let ring = MilnorRing::new(&mf.w)?;
        let cohomology = end_cohomology(mf)?;
        let d = mf.differential();
        let derivative_product = (0..mf.nvars()).fold(
            PolyMatrix::identity(mf.vars().to_vec(), 2 * mf.rank()),
            |acc, i| acc.mul(&d.derivative(i)),
        );
        Ok(LandauGinzburg {
            mf: mf.clone(),
            ring,
            cohomology,
            derivative_product,
        })
    }

    /// `str(Y d_1 d_R ... d_n d_R)` as a polynomial.
    pub fn supertrace_integrand(&self, y: &PolyMatrix<F>) -> Poly<F> {
        y.mul(&self.derivative_product).supertrace(self.mf.rank())
    }

    /// `tau^*(Y)` in Milnor coordinates.
    pub fn boundary_bulk(&self, y: &PolyMatrix<F>) -> Vec<F> {
        let sign = F::from_i64(boundary_bulk_sign(self.mf.nvars()));
        self.ring
            .normal_form(&self.supertrace_integrand(y).scale(&sign))
    }

    /// `tau_*(X) = X 1_R` in cohomology coordinates.
    pub fn bulk_boundary(&self, x: &Poly<F>) -> Result<Vec<F>> {
        let id = PolyMatrix::identity(self.mf.vars().to_vec(), 2 * self.mf.rank());
        self.cohomology.coordinates(&id.scale_poly(x))
    }

    pub fn theta_a(&self, x: &Poly<F>) -> F {
        self.ring.residue(x)
    }

    pub fn theta_b(&self, y: &PolyMatrix<F>, sign: ThetaBSign) -> F {
        let res = self.ring.residue(&self.supertrace_integrand(y));
        match sign {
            ThetaBSign::Unsigned => res,
            ThetaBSign::AsBoundaryBulk => res * &F::from_i64(boundary_bulk_sign(self.mf.nvars())),
        }
    }

    pub fn to_cf(&self) -> Result<CFData<F>> {
        self.to_cf_with(ThetaBSign::default())
    }

    pub fn to_cf_with(&self, sign: ThetaBSign) -> Result<CFData<F>> {
        let bulk = self.ring.algebra()?;
        let boundary = self.cohomology.algebra().clone();
        let (da, db) = (bulk.dim(), boundary.dim());
        let theta_bulk = (0..da)
            .map(|i| self.theta_a(&self.ring.basis_poly(i)))
            .collect();
        let reps: Vec<&PolyMatrix<F>> = self.cohomology.basis().collect();
        let theta_boundary = reps.iter().map(|y| self.theta_b(y, sign)).collect();
        let lower: Vec<Vec<F>> = (0..da)
            .map(|i| self.bulk_boundary(&self.ring.basis_poly(i)))
            .collect::<Result<_>>()?;
        let upper: Vec<Vec<F>> = reps.iter().map(|y| self.boundary_bulk(y)).collect();
        CFData::new(
            bulk,
            boundary,
            theta_bulk,
            theta_boundary,
            Matrix::from_columns(db, &lower),
            Some(Matrix::from_columns(da, &upper)),
        )
    }
}

/// Cardy-Frobenius data of a matrix factorization.
pub fn mf_to_cf<F: Field>(mf: &MatrixFactorization<F>) -> Result<CFData<F>> {
    LandauGinzburg::new(mf)?.to_cf()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DaoReport {
    pub nvars: usize,
    pub dims: GradedDim,
    pub chi: i64,
}

impl DaoReport {
    pub fn holds(&self) -> bool {
        self.chi == 0
    }
}

/// `chi(End R)` for an odd number of variables, where it must vanish.
pub fn check_dao<F: Field>(mf: &MatrixFactorization<F>) -> Result<DaoReport> {
    let n = mf.nvars();
    if n.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!(
            "the vanishing of chi(End R) needs an odd number of variables, got {n}"
        )));
    }
    let dims = end_dims(mf)?;
    Ok(DaoReport {
        nvars: n,
        dims,
        chi: dims.euler_characteristic(),
    })
}
