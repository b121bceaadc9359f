//! `H(End(R))` by exact linear algebra on morphisms with entries of bounded
//! total degree.
//!
//! A morphism is a `2r x 2r` polynomial matrix; even ones are block diagonal,
//! odd ones block off-diagonal. The differential is the graded commutator
//! `D(phi) = d_R phi - (-1)^{|phi|} phi d_R`. At cutoff `N` we take closed
//! morphisms of degree `<= N` modulo `D` of morphisms of degree `<= N` that
//! land in degree `<= N`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graded::GradedDim;
use crate::linalg::{EchelonSpan, Matrix};
use crate::scalar::{Field, Parity};
use crate::superalgebra::SuperAlgebra;

use super::factorization::{validate_mf, MatrixFactorization};
use super::poly::{Exponent, Poly, PolyMatrix};

/// Coordinates of morphisms of one parity with entries of degree `<= cutoff`.
/// Sorted by descending degree, so echelon pivots sit in the highest degree
/// and reduced representatives come out in low degree.
#[derive(Clone, Debug)]
struct Layout {
    keys: Vec<(u32, usize, usize, Exponent)>,
    index: HashMap<(usize, usize, Exponent), usize>,
}

fn monomials(nvars: usize, max_degree: u32) -> Vec<Exponent> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e: Exponent| {
                let used: u32 = e.iter().sum();
                (0..=max_degree - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

fn block_parity(r: usize, i: usize, j: usize) -> Parity {
    if (i < r) == (j < r) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl Layout {
    fn new(r: usize, nvars: usize, parity: Parity, cutoff: u32) -> Self {
        let monos = monomials(nvars, cutoff);
        let mut keys = Vec::new();
        for i in 0..2 * r {
            for j in 0..2 * r {
                if block_parity(r, i, j) != parity {
                    continue;
                }
                for e in &monos {
                    keys.push((e.iter().sum::<u32>(), i, j, e.clone()));
                }
            }
        }
        keys.sort_by(|a, b| {
            b.0.cmp(&a.0)
                .then_with(|| (a.1, a.2, &a.3).cmp(&(b.1, b.2, &b.3)))
        });
        let index = keys
            .iter()
            .enumerate()
            .map(|(n, (_, i, j, e))| ((*i, *j, e.clone()), n))
            .collect();
        Layout { keys, index }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    /// `None` if `m` has an entry outside the layout (wrong block or degree).
    fn coords<F: Field>(&self, m: &PolyMatrix<F>) -> Option<Vec<F>> {
        let mut v = vec![F::zero(); self.len()];
        for (i, j, p) in m.entries() {
            for (e, c) in p.terms() {
                v[*self.index.get(&(i, j, e.clone()))?] += c;
            }
        }
        Some(v)
    }

    fn matrix<F: Field>(&self, vars: &[String], size: usize, v: &[F]) -> PolyMatrix<F> {
        let mut entries = vec![vec![Poly::zero(vars.to_vec()); size]; size];
        for ((_, i, j, e), c) in self.keys.iter().zip(v) {
            entries[*i][*j].add_term(e.clone(), c.clone());
        }
        PolyMatrix::from_rows(vars.to_vec(), entries).expect("square layout")
    }
}

/// `D(phi) = d phi - (-1)^{|phi|} phi d`.
pub fn graded_commutator<F: Field>(
    d: &PolyMatrix<F>,
    phi: &PolyMatrix<F>,
    parity: Parity,
) -> PolyMatrix<F> {
    let left = d.mul(phi);
    let right = phi.mul(d);
    if parity.is_odd() {
        left.add(&right)
    } else {
        left.sub(&right)
    }
}

/// Matrix of `D` from `src` (parity `p`) to `tgt` (parity `p + 1`).
fn differential_matrix<F: Field>(
    d: &PolyMatrix<F>,
    src: &Layout,
    parity: Parity,
    tgt: &Layout,
) -> Matrix<F> {
    let mut m = Matrix::zeros(tgt.len(), src.len());
    let size = d.rows();
    let right_sign = if parity.is_odd() { F::one() } else { -F::one() };
    let put = |m: &mut Matrix<F>, col: usize, i: usize, j: usize, p: &Poly<F>, e: &[u32], c: &F| {
        for (f, x) in p.terms() {
            let sum: Exponent = f.iter().zip(e).map(|(a, b)| a + b).collect();
            let row = tgt.index[&(i, j, sum)];
            m[(row, col)] += x.clone() * c;
        }
    };
    for (col, (_, i, j, e)) in src.keys.iter().enumerate() {
        // d E_ij x^e contributes d[k][i] x^e at (k, j); E_ij d contributes x^e d[j][l] at (i, l)
        for k in 0..size {
            put(&mut m, col, k, *j, d.get(k, *i), e, &F::one());
        }
        for l in 0..size {
            put(&mut m, col, *i, l, d.get(*j, l), e, &right_sign);
        }
    }
    m
}

/// Reduction of closed morphisms of one parity to cohomology coordinates.
#[derive(Clone, Debug)]
struct Reducer<F: Field> {
    layout: Layout,
    exact: EchelonSpan<F>,
    /// representatives reduced modulo `exact` and against each other,
    /// normalised to 1 at their pivot
    reps: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Reducer<F> {
    fn build(mf: &MatrixFactorization<F>, parity: Parity, cutoff: u32) -> Self {
        let r = mf.rank();
        let n = mf.nvars();
        let d = mf.differential();
        let delta = d.degree().unwrap_or(0);
        let layout = Layout::new(r, n, parity, cutoff);

        let closed = if layout.len() == 0 {
            Vec::new()
        } else {
            let tgt = Layout::new(r, n, parity.flip(), cutoff + delta);
            differential_matrix(&d, &layout, parity, &tgt).kernel_basis()
        };

        let mut exact = EchelonSpan::new(layout.len());
        let src = Layout::new(r, n, parity.flip(), cutoff);
        if src.len() > 0 && layout.len() > 0 {
            let big = Layout::new(r, n, parity, cutoff + delta);
            let m = differential_matrix(&d, &src, parity.flip(), &big);
            let (high, low): (Vec<usize>, Vec<usize>) =
                (0..big.len()).partition(|&row| big.keys[row].0 > cutoff);
            let primitives = if high.is_empty() {
                (0..src.len())
                    .map(|c| {
                        (0..src.len())
                            .map(|k| if k == c { F::one() } else { F::zero() })
                            .collect()
                    })
                    .collect()
            } else {
                Matrix::from_rows(high.iter().map(|&row| m.row(row).to_vec()).collect())
                    .kernel_basis()
            };
            // column c of D restricted to degree <= cutoff, as (layout index, value)
            let columns: Vec<Vec<(usize, F)>> = (0..src.len())
                .map(|c| {
                    low.iter()
                        .filter(|&&row| !m[(row, c)].is_zero())
                        .map(|&row| {
                            let (_, i, j, e) = &big.keys[row];
                            (layout.index[&(*i, *j, e.clone())], m[(row, c)].clone())
                        })
                        .collect()
                })
                .collect();
            for k in primitives {
                let mut v = vec![F::zero(); layout.len()];
                for (c, kc) in k.iter().enumerate() {
                    if kc.is_zero() {
                        continue;
                    }
                    for (idx, x) in &columns[c] {
                        v[*idx] += x.clone() * kc;
                    }
                }
                exact.insert(&v);
            }
        }

        let mut reducer = Reducer {
            layout,
            exact,
            reps: Vec::new(),
        };
        for z in closed {
            reducer.add_representative(&z);
        }
        let keys = &reducer.layout.keys;
        reducer.reps.sort_by(|a, b| {
            (keys[a.0].0, keys[a.0].1, keys[a.0].2, &keys[a.0].3).cmp(&(
                keys[b.0].0,
                keys[b.0].1,
                keys[b.0].2,
                &keys[b.0].3,
            ))
        });
        reducer
    }

    fn reduce_reps(&self, mut v: Vec<F>) -> Vec<F> {
        for (pivot, rep) in &self.reps {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(rep) {
                if !y.is_zero() {
                    *x -= f.clone() * y;
                }
            }
        }
        v
    }

    fn add_representative(&mut self, z: &[F]) {
        let v = self.reduce_reps(self.exact.reduce(z));
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inv = v[pivot].inv();
        let v: Vec<F> = v.into_iter().map(|x| x * &inv).collect();
        for (_, rep) in self.reps.iter_mut() {
            if rep[pivot].is_zero() {
                continue;
            }
            let f = rep[pivot].clone();
            for (x, y) in rep.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= f.clone() * y;
                }
            }
        }
        self.reps.push((pivot, v));
    }

    /// Cohomology coordinates of a closed morphism of this parity.
    fn coordinates(&self, m: &PolyMatrix<F>) -> Result<Vec<F>> {
        let v = self.layout.coords(m).ok_or_else(|| {
            Error::CutoffInstability(format!(
                "morphism of degree {:?} exceeds the working cutoff",
                m.degree()
            ))
        })?;
        let v = self.exact.reduce(&v);
        let coeffs: Vec<F> = self.reps.iter().map(|(p, _)| v[*p].clone()).collect();
        if self.reduce_reps(v).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotClosed(format!("{m:?}")));
        }
        Ok(coeffs)
    }
}

/// `H(End(R))` with chosen representatives and the induced algebra, basis
/// ordered even first.
#[derive(Clone, Debug)]
pub struct MFCohomology<F: Field> {
    vars: Vec<String>,
    rank: usize,
    cutoff: u32,
    even_basis: Vec<PolyMatrix<F>>,
    odd_basis: Vec<PolyMatrix<F>>,
    algebra: SuperAlgebra<F>,
    reducers: [Reducer<F>; 2],
}

fn split<F: Field>(m: &PolyMatrix<F>, r: usize) -> (PolyMatrix<F>, PolyMatrix<F>) {
    let mut even = PolyMatrix::zeros(m.vars().to_vec(), 2 * r, 2 * r);
    let mut odd = even.clone();
    for (i, j, p) in m.entries() {
        if block_parity(r, i, j).is_odd() {
            odd.set(i, j, p.clone());
        } else {
            even.set(i, j, p.clone());
        }
    }
    (even, odd)
}

/// Graded dimensions of `H(End(R))` at one cutoff, without representatives.
pub fn cohomology_dims_at<F: Field>(mf: &MatrixFactorization<F>, cutoff: u32) -> GradedDim {
    let e = Reducer::build(mf, Parity::Even, cutoff).reps.len();
    let o = Reducer::build(mf, Parity::Odd, cutoff).reps.len();
    GradedDim::new(e, o)
}

impl<F: Field> MFCohomology<F> {
    fn at_cutoff(mf: &MatrixFactorization<F>, cutoff: u32) -> Result<Self> {
        let r = mf.rank();
        let vars = mf.vars().to_vec();
        let reducers = [
            Reducer::build(mf, Parity::Even, cutoff),
            Reducer::build(mf, Parity::Odd, cutoff),
        ];
        let basis = |red: &Reducer<F>| -> Vec<PolyMatrix<F>> {
            red.reps
                .iter()
                .map(|(_, v)| red.layout.matrix(&vars, 2 * r, v))
                .collect()
        };
        let even_basis = basis(&reducers[0]);
        let odd_basis = basis(&reducers[1]);
        let mut coh = MFCohomology {
            vars,
            rank: r,
            cutoff,
            even_basis,
            odd_basis,
            algebra: SuperAlgebra::zero(),
            reducers,
        };
        let reps: Vec<PolyMatrix<F>> = coh.basis().cloned().collect();
        let max_deg = reps
            .iter()
            .filter_map(PolyMatrix::degree)
            .max()
            .unwrap_or(0);
        if 2 * max_deg > cutoff {
            return Err(Error::CutoffInstability(format!(
                "representatives of degree {max_deg} need cutoff {} for products, have {cutoff}",
                2 * max_deg
            )));
        }
        let d = reps.len();
        let mut table = Vec::with_capacity(d * d * d);
        for a in &reps {
            for b in &reps {
                table.extend(coh.coordinates(&a.mul(b))?);
            }
        }
        let unit = if r == 0 {
            Vec::new()
        } else {
            coh.coordinates(&PolyMatrix::identity(coh.vars.clone(), 2 * r))?
        };
        coh.algebra = SuperAlgebra::new(coh.grading().parities(), table, unit)?;
        Ok(coh)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Degree cutoff the representatives and reductions were computed at.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn even_basis(&self) -> &[PolyMatrix<F>] {
        &self.even_basis
    }

    pub fn odd_basis(&self) -> &[PolyMatrix<F>] {
        &self.odd_basis
    }

    /// All representatives, even first; the basis of [`Self::algebra`].
    pub fn basis(&self) -> impl Iterator<Item = &PolyMatrix<F>> {
        self.even_basis.iter().chain(&self.odd_basis)
    }

    pub fn grading(&self) -> GradedDim {
        GradedDim::new(self.even_basis.len(), self.odd_basis.len())
    }

    pub fn dim(&self) -> usize {
        self.even_basis.len() + self.odd_basis.len()
    }

    /// Composition algebra on cohomology.
    pub fn algebra(&self) -> &SuperAlgebra<F> {
        &self.algebra
    }

    /// Coordinates of a closed (not necessarily homogeneous) morphism in the
    /// representative basis.
    pub fn coordinates(&self, m: &PolyMatrix<F>) -> Result<Vec<F>> {
        let (even, odd) = split(m, self.rank);
        let mut out = self.reducers[0].coordinates(&even)?;
        out.extend(self.reducers[1].coordinates(&odd)?);
        Ok(out)
    }

    /// The morphism with the given cohomology coordinates.
    pub fn morphism(&self, coords: &[F]) -> PolyMatrix<F> {
        let size = 2 * self.rank;
        self.basis().zip(coords).fold(
            PolyMatrix::zeros(self.vars.clone(), size, size),
            |acc, (m, c)| acc.add(&m.scale(c)),
        )
    }
}

/// `H(End(R))` at cutoff `3 deg W`, checked against `4 deg W`; the structure
/// is taken from the larger cutoff.
pub fn end_cohomology<F: Field>(mf: &MatrixFactorization<F>) -> Result<MFCohomology<F>> {
    if let Err(v) = validate_mf(mf) {
        return Err(Error::InvalidFactorization(v.to_string()));
    }
    let deg = mf.w.degree().unwrap_or(0);
    let low = cohomology_dims_at(mf, 3 * deg);
    let coh = MFCohomology::at_cutoff(mf, 4 * deg)?;
    if coh.grading() != low {
        return Err(Error::CutoffInstability(format!(
            "dimensions {low:?} at cutoff {} but {:?} at cutoff {}",
            3 * deg,
            coh.grading(),
            4 * deg
        )));
    }
    Ok(coh)
}

/// `chi(V) = dim V_0 - dim V_1`.
pub fn euler_characteristic<F: Field>(coh: &MFCohomology<F>) -> i64 {
    coh.grading().euler_characteristic()
}

/// Graded dimensions of `H(End(R))`: Kunneth over the recorded tensor factors
/// when there are any, direct computation otherwise.
pub fn end_dims<F: Field>(mf: &MatrixFactorization<F>) -> Result<GradedDim> {
    if mf.factors().is_empty() {
        return Ok(end_cohomology(mf)?.grading());
    }
    let mut total = GradedDim::new(1, 0);
    for f in mf.factors() {
        total = total.tensor(&end_cohomology(f)?.grading());
    }
    Ok(total)
}
