use crate::error::{Error, Result};
use crate::scalar::{Field, Parity};
use crate::superalgebra::SuperAlgebra;
use crate::upoly::UniPoly;

use super::poly::{Exponent, Poly};

#[derive(Clone, Debug, PartialEq)]
enum Shape<F: Field> {
    /// remainder modulo `W'`
    Univariate { derivative: UniPoly<F> },
    /// `W = sum c_i x_i^{a_i}`; the Jacobian ideal is `(x_i^{a_i - 1})`
    Fermat { powers: Vec<u32>, coeffs: Vec<F> },
}

/// `K[x]/(dW/dx_1, ..., dW/dx_n)` for univariate or Fermat-type `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorRing<F: Field> {
    w: Poly<F>,
    shape: Shape<F>,
    basis: Vec<Exponent>,
    socle: usize,
    /// `theta_A(socle monomial)`
    socle_residue: F,
}

const SUPPORTED: &str =
    "supported: univariate W of degree >= 2, or W = sum_i c_i x_i^{a_i} with every variable in exactly one term and a_i >= 2";

impl<F: Field> MilnorRing<F> {
    pub fn new(w: &Poly<F>) -> Result<Self> {
        let n = w.nvars();
        if n == 1 {
            let s = w.degree().unwrap_or(0) as usize;
            if s < 2 {
                return Err(Error::UnsupportedShape(format!(
                    "deg W = {s} < 2; {SUPPORTED}"
                )));
            }
            let mut coeffs = vec![F::zero(); s + 1];
            for (e, c) in w.terms() {
                coeffs[e[0] as usize] = c.clone();
            }
            let derivative = UniPoly::new(coeffs).derivative();
            let socle_residue = derivative.leading().inv();
            return Ok(MilnorRing {
                w: w.clone(),
                shape: Shape::Univariate { derivative },
                basis: (0..s as u32 - 1).map(|k| vec![k]).collect(),
                socle: s - 2,
                socle_residue,
            });
        }
        let mut powers = vec![0u32; n];
        let mut coeffs = vec![F::zero(); n];
        for (e, c) in w.terms() {
            let support: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            let [i] = support[..] else {
                return Err(Error::UnsupportedShape(format!(
                    "term {e:?} of W; {SUPPORTED}"
                )));
            };
            if powers[i] != 0 || e[i] < 2 {
                return Err(Error::UnsupportedShape(format!(
                    "variable {} in W; {SUPPORTED}",
                    w.vars()[i]
                )));
            }
            powers[i] = e[i];
            coeffs[i] = c.clone();
        }
        if let Some(i) = powers.iter().position(|&a| a == 0) {
            return Err(Error::UnsupportedShape(format!(
                "variable {} does not occur in W; {SUPPORTED}",
                w.vars()[i]
            )));
        }
        // first variable varies fastest: 1, x, y, xy for x^3 + y^3
        let mut basis = vec![Vec::new()];
        for &a in &powers {
            basis = (0..a - 1)
                .flat_map(|k| {
                    basis.iter().map(move |e: &Exponent| {
                        let mut f = e.clone();
                        f.push(k);
                        f
                    })
                })
                .collect();
        }
        basis.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        let top: Exponent = powers.iter().map(|a| a - 2).collect();
        let socle = basis
            .iter()
            .position(|e| *e == top)
            .expect("socle in basis");
        let socle_residue = powers.iter().zip(&coeffs).fold(F::one(), |acc, (&a, c)| {
            acc * (F::from_i64(i64::from(a)) * c).inv()
        });
        Ok(MilnorRing {
            w: w.clone(),
            shape: Shape::Fermat { powers, coeffs },
            basis,
            socle,
            socle_residue,
        })
    }

    pub fn w(&self) -> &Poly<F> {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponent] {
        &self.basis
    }

    pub fn basis_poly(&self, i: usize) -> Poly<F> {
        Poly::monomial(self.w.vars().to_vec(), self.basis[i].clone(), F::one())
    }

    /// Coordinates of `p` modulo the Jacobian ideal.
    pub fn normal_form(&self, p: &Poly<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        match &self.shape {
            Shape::Univariate { derivative } => {
                let deg = p.degree().unwrap_or(0) as usize;
                let mut coeffs = vec![F::zero(); deg + 1];
                for (e, c) in p.terms() {
                    coeffs[e[0] as usize] = c.clone();
                }
                let rem = UniPoly::new(coeffs).rem(derivative);
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = rem.coeff(k);
                }
            }
            Shape::Fermat { powers, .. } => {
                for (e, c) in p.terms() {
                    if e.iter().zip(powers).all(|(k, a)| k + 1 < *a) {
                        let i = self
                            .basis
                            .binary_search_by(|b| b.iter().rev().cmp(e.iter().rev()));
                        out[i.expect("reduced monomial is a basis monomial")] += c;
                    }
                }
            }
        }
        out
    }

    pub fn to_poly(&self, coords: &[F]) -> Poly<F> {
        let mut p = Poly::zero(self.w.vars().to_vec());
        for (e, c) in self.basis.iter().zip(coords) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    /// Grothendieck residue `Res[X dx / (dW/dx_1, ..., dW/dx_n)]` of a
    /// reduced element: its socle coefficient over the Jacobian determinant's
    /// leading coefficient.
    pub fn theta(&self, coords: &[F]) -> F {
        coords[self.socle].clone() * &self.socle_residue
    }

    pub fn residue(&self, p: &Poly<F>) -> F {
        self.theta(&self.normal_form(p))
    }

    /// The Milnor ring as a purely even superalgebra on its monomial basis.
    pub fn algebra(&self) -> Result<SuperAlgebra<F>> {
        let d = self.dim();
        let mut products = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let prod = self.basis_poly(i).mul(&self.basis_poly(j));
                for (k, c) in self.normal_form(&prod).into_iter().enumerate() {
                    if !c.is_zero() {
                        products.push((i, j, k, c));
                    }
                }
            }
        }
        let mut unit = vec![F::zero(); d];
        unit[0] = F::one();
        SuperAlgebra::from_products(vec![Parity::Even; d], products, unit)
    }
}

/// Convenience: `milnor_ring(W)`.
pub fn milnor_ring<F: Field>(w: &Poly<F>) -> Result<MilnorRing<F>> {
    MilnorRing::new(w)
}
