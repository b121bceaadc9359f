use super::CFData;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Parity};
use crate::superalgebra::{
    build_mat, build_q, direct_sum_algebras, mat_basis, q_index, SuperAlgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementaryKind {
    Triv,
    Mat,
    Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementaryParams<F> {
    pub kind: ElementaryKind,
    pub n: usize,
    /// only used by `Mat`
    pub m: usize,
    pub lambda: F,
    /// unused by `Triv`
    pub mu: F,
}

impl<F: Field> ElementaryParams<F> {
    pub fn triv(lambda: F) -> Self {
        ElementaryParams {
            kind: ElementaryKind::Triv,
            n: 0,
            m: 0,
            lambda,
            mu: F::zero(),
        }
    }

    pub fn mat(n: usize, m: usize, lambda: F, mu: F) -> Self {
        ElementaryParams {
            kind: ElementaryKind::Mat,
            n,
            m,
            lambda,
            mu,
        }
    }

    pub fn q(n: usize, lambda: F, mu: F) -> Self {
        ElementaryParams {
            kind: ElementaryKind::Q,
            n,
            m: 0,
            lambda,
            mu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda.is_zero() {
            return Err(Error::InvalidParams("lambda must be nonzero".into()));
        }
        match self.kind {
            ElementaryKind::Triv => Ok(()),
            _ if self.mu.is_zero() => Err(Error::InvalidParams("mu must be nonzero".into())),
            ElementaryKind::Mat if self.n + self.m == 0 => {
                Err(Error::InvalidParams("Mat(n|m) needs n + m >= 1".into()))
            }
            ElementaryKind::Q if self.n == 0 => {
                Err(Error::InvalidParams("Q(n) needs n >= 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// The one-dimensional bulk algebra `K`.
fn ground_field<F: Field>() -> SuperAlgebra<F> {
    SuperAlgebra::from_products(vec![Parity::Even], [(0, 0, 0, F::one())], vec![F::one()])
        .expect("K is a valid algebra")
}

/// `A = K` with `theta_A(1) = lambda` and, for `Mat`/`Q`, the boundary
/// algebra with its standard form scaled by `mu`. The maps are
/// `tau_*(x) = x 1_B` and `tau^* = theta_B / lambda`. No relation between
/// `lambda` and `mu` is imposed.
pub fn build_elementary<F: Field>(p: &ElementaryParams<F>) -> Result<CFData<F>> {
    p.validate()?;
    let bulk = ground_field::<F>();
    let theta_bulk = vec![p.lambda.clone()];
    let (boundary, theta_boundary) = match p.kind {
        ElementaryKind::Triv => (SuperAlgebra::zero(), Vec::new()),
        ElementaryKind::Mat => {
            let alg = build_mat::<F>(p.n, p.m)?;
            // theta_B = mu * str
            let theta = mat_basis(p.n, p.m)
                .into_iter()
                .map(|(i, j)| match (i == j, i < p.n) {
                    (false, _) => F::zero(),
                    (true, true) => p.mu.clone(),
                    (true, false) => -p.mu.clone(),
                })
                .collect();
            (alg, theta)
        }
        ElementaryKind::Q => {
            let alg = build_q::<F>(p.n)?;
            // theta_B(X + Y xi) = mu * tr(Y)
            let mut theta = vec![F::zero(); alg.dim()];
            for i in 0..p.n {
                theta[q_index(p.n, i, i, true)] = p.mu.clone();
            }
            (alg, theta)
        }
    };
    let tau_lower = Matrix::from_columns(boundary.dim(), &[boundary.unit().to_vec()]);
    let inv = p.lambda.inv();
    let tau_upper = Matrix::from_fn(1, boundary.dim(), |_, k| theta_boundary[k].clone() * &inv);
    CFData::new(
        bulk,
        boundary,
        theta_bulk,
        theta_boundary,
        tau_lower,
        Some(tau_upper),
    )
}

/// Blockwise direct sum. Bases of both algebras are ordered as in
/// [`direct_sum_algebras`]. The boundary-bulk map is kept only when both
/// summands carry one.
pub fn direct_sum_cf<F: Field>(c1: &CFData<F>, c2: &CFData<F>) -> CFData<F> {
    let a = direct_sum_algebras(&c1.bulk, &c2.bulk);
    let b = direct_sum_algebras(&c1.boundary, &c2.boundary);
    let (da, db) = (a.algebra.dim(), b.algebra.dim());
    let mut theta_bulk = vec![F::zero(); da];
    let mut theta_boundary = vec![F::zero(); db];
    let mut tau_lower = Matrix::zeros(db, da);
    let mut tau_upper = Matrix::zeros(da, db);
    for (s, c) in [c1, c2].into_iter().enumerate() {
        let (ea, eb) = (&a.embeddings[s], &b.embeddings[s]);
        for (i, t) in c.theta_bulk.iter().enumerate() {
            theta_bulk[ea[i]] = t.clone();
        }
        for (k, t) in c.theta_boundary.iter().enumerate() {
            theta_boundary[eb[k]] = t.clone();
        }
        for k in 0..c.boundary.dim() {
            for i in 0..c.bulk.dim() {
                tau_lower[(eb[k], ea[i])] = c.tau_lower[(k, i)].clone();
            }
        }
        if let Some(tu) = &c.tau_upper {
            for i in 0..c.bulk.dim() {
                for k in 0..c.boundary.dim() {
                    tau_upper[(ea[i], eb[k])] = tu[(i, k)].clone();
                }
            }
        }
    }
    let tau_upper = (c1.tau_upper.is_some() && c2.tau_upper.is_some()).then_some(tau_upper);
    CFData {
        bulk: a.algebra,
        boundary: b.algebra,
        theta_bulk,
        theta_boundary,
        tau_lower,
        tau_upper,
    }
}
