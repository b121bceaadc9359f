//! Finite-dimensional Z2-graded algebras presented by structure constants.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graded::GradedDim;
use crate::linalg::Matrix;
use crate::scalar::{mul_add, Field, Parity};

/// `b_i b_j = sum_k c[i][j][k] b_k` over a homogeneous basis.
///
/// Constructors put even basis vectors first; the type itself accepts any
/// parity table.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperAlgebra<F> {
    parity: Vec<Parity>,
    table: Vec<F>,
    unit: Vec<F>,
}

/// Coordinates of an element in the basis of some algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<F> {
    pub coords: Vec<F>,
    /// Set when all coordinates on one parity vanish.
    pub parity: Option<Parity>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// First violation found by [`SuperAlgebra::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraDefect {
    Grading { i: usize, j: usize, k: usize },
    Unit { i: usize },
    Associativity { i: usize, j: usize, k: usize },
}

impl<F: Field> SuperAlgebra<F> {
    /// Checks shapes, the grading rule and the unit law. Associativity is
    /// `O(dim^5)` and left to [`Self::validate`].
    pub fn new(parity: Vec<Parity>, table: Vec<F>, unit: Vec<F>) -> Result<Self> {
        let d = parity.len();
        if table.len() != d * d * d || unit.len() != d {
            return Err(Error::Dimension(format!(
                "dimension {d} needs {} structure constants and a unit of length {d}",
                d * d * d
            )));
        }
        let alg = SuperAlgebra {
            parity,
            table,
            unit,
        };
        if let Some(defect) = alg.grading_defect().or_else(|| alg.unit_defect()) {
            return Err(Error::InvalidAlgebra(format!("{defect:?}")));
        }
        Ok(alg)
    }

    /// Builds from sparse `(i, j, k, c)` entries.
    pub fn from_products(
        parity: Vec<Parity>,
        products: impl IntoIterator<Item = (usize, usize, usize, F)>,
        unit: Vec<F>,
    ) -> Result<Self> {
        let d = parity.len();
        let mut table = vec![F::zero(); d * d * d];
        for (i, j, k, c) in products {
            if i >= d || j >= d || k >= d {
                return Err(Error::Dimension(format!(
                    "product index ({i},{j},{k}) out of range for dimension {d}"
                )));
            }
            table[(i * d + j) * d + k] += c;
        }
        Self::new(parity, table, unit)
    }

    /// The zero algebra (`B = 0`).
    pub fn zero() -> Self {
        SuperAlgebra {
            parity: Vec::new(),
            table: Vec::new(),
            unit: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn grading(&self) -> GradedDim {
        GradedDim::of_parities(&self.parity)
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|p| !p.is_odd())
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        let d = self.dim();
        &self.table[(i * d + j) * d + k]
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        let d = self.dim();
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn structure_constants(&self) -> &[F] {
        &self.table
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn unit_element(&self) -> AlgebraElement<F> {
        self.element(self.unit.clone())
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<F> {
        let mut coords = vec![F::zero(); self.dim()];
        coords[i] = F::one();
        AlgebraElement {
            coords,
            parity: Some(self.parity[i]),
        }
    }

    /// Wraps coordinates, recording the parity if homogeneous. The zero
    /// vector is reported as even.
    pub fn element(&self, coords: Vec<F>) -> AlgebraElement<F> {
        let parity = self.homogeneous_parity(&coords);
        AlgebraElement { coords, parity }
    }

    pub fn homogeneous_parity(&self, coords: &[F]) -> Option<Parity> {
        let mut seen = None;
        for (c, p) in coords.iter().zip(&self.parity) {
            if c.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(*p),
                Some(q) if q != *p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    /// Bilinear product on raw coordinates.
    pub fn mul_coords(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.clone() * bj;
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    mul_add(&mut out[k], &ab, c);
                }
            }
        }
        out
    }

    pub fn multiply(
        &self,
        a: &AlgebraElement<F>,
        b: &AlgebraElement<F>,
    ) -> Result<AlgebraElement<F>> {
        if a.coords.len() != self.dim() || b.coords.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "elements of length {} and {} in an algebra of dimension {}",
                a.coords.len(),
                b.coords.len(),
                self.dim()
            )));
        }
        Ok(self.element(self.mul_coords(&a.coords, &b.coords)))
    }

    /// Matrix of `x -> a x`; column `j` holds `a b_j`.
    pub fn left_mul_matrix(&self, a: &[F]) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    mul_add(&mut m[(k, j)], ai, c);
                }
            }
        }
        m
    }

    /// Matrix of `x -> x a`.
    pub fn right_mul_matrix(&self, a: &[F]) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.basis_product(j, i).iter().enumerate() {
                    mul_add(&mut m[(k, j)], ai, c);
                }
            }
        }
        m
    }

    fn grading_defect(&self) -> Option<AlgebraDefect> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let p = self.parity[i] + self.parity[j];
                for k in 0..d {
                    if self.parity[k] != p && !self.constant(i, j, k).is_zero() {
                        return Some(AlgebraDefect::Grading { i, j, k });
                    }
                }
            }
        }
        None
    }

    fn unit_defect(&self) -> Option<AlgebraDefect> {
        if self.homogeneous_parity(&self.unit) != Some(Parity::Even) {
            return Some(AlgebraDefect::Unit { i: 0 });
        }
        for i in 0..self.dim() {
            let b = self.basis_element(i).coords;
            if self.mul_coords(&self.unit, &b) != b || self.mul_coords(&b, &self.unit) != b {
                return Some(AlgebraDefect::Unit { i });
            }
        }
        None
    }

    fn associativity_defect(&self) -> Option<AlgebraDefect> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul_coords(&ij, &self.basis_element(k).coords);
                    let jk = self.basis_product(j, k);
                    let right = self.mul_coords(&self.basis_element(i).coords, jk);
                    if left != right {
                        return Some(AlgebraDefect::Associativity { i, j, k });
                    }
                }
            }
        }
        None
    }

    /// Exhaustive check of grading, unit law and associativity over basis
    /// triples.
    pub fn validate(&self) -> std::result::Result<(), AlgebraDefect> {
        match self
            .grading_defect()
            .or_else(|| self.unit_defect())
            .or_else(|| self.associativity_defect())
        {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    /// First basis pair `(i, j)` with `b_i b_j != (-1)^{|i||j|} b_j b_i`.
    pub fn supercommutativity_defect(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                let negate = self.parity[i].koszul(self.parity[j]);
                for k in 0..d {
                    let a = self.constant(i, j, k);
                    let b = self.constant(j, i, k);
                    let ok = if negate { *a == -b.clone() } else { a == b };
                    if !ok {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Basis of the even part of the graded center: even `z` with
    /// `z b = b z` for every basis vector `b`.
    pub fn graded_center_even(&self) -> Vec<AlgebraElement<F>> {
        let d = self.dim();
        let even: Vec<usize> = (0..d).filter(|&i| !self.parity[i].is_odd()).collect();
        // Refine the kernel one commutation constraint block at a time; later
        // systems only see the surviving directions.
        let mut kernel: Vec<Vec<F>> = (0..even.len())
            .map(|a| {
                (0..even.len())
                    .map(|b| if a == b { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        for j in 0..d {
            if kernel.is_empty() {
                break;
            }
            let mut rows = Vec::new();
            for k in 0..d {
                let row: Vec<F> = kernel
                    .iter()
                    .map(|v| {
                        let mut acc = F::zero();
                        for (x, &i) in v.iter().zip(&even) {
                            if !x.is_zero() {
                                let c =
                                    self.constant(i, j, k).clone() - self.constant(j, i, k).clone();
                                if !c.is_zero() {
                                    acc += x.clone() * c;
                                }
                            }
                        }
                        acc
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
            if rows.is_empty() {
                continue;
            }
            let step = Matrix::from_rows(rows).kernel_basis();
            kernel = step
                .into_iter()
                .map(|w| {
                    let mut v = vec![F::zero(); even.len()];
                    for (coef, old) in w.iter().zip(&kernel) {
                        if coef.is_zero() {
                            continue;
                        }
                        for (slot, x) in v.iter_mut().zip(old) {
                            *slot += coef.clone() * x.clone();
                        }
                    }
                    v
                })
                .collect();
        }
        kernel
            .into_iter()
            .map(|v| {
                let mut coords = vec![F::zero(); d];
                for (x, &i) in v.into_iter().zip(&even) {
                    coords[i] = x;
                }
                self.element(coords)
            })
            .collect()
    }

    /// Gram matrix of the ungraded trace form `(a, b) -> tr(L_a L_b)`.
    pub fn trace_form(&self) -> Matrix<F> {
        let d = self.dim();
        // tr(L_a L_b) = tr(L_{ab}) and tr(L_{b_k}) = sum_l c[k][l][l]
        let traces: Vec<F> = (0..d)
            .map(|k| {
                let mut t = F::zero();
                for l in 0..d {
                    t += self.constant(k, l, l);
                }
                t
            })
            .collect();
        Matrix::from_fn(d, d, |i, j| {
            let mut acc = F::zero();
            for (c, t) in self.basis_product(i, j).iter().zip(&traces) {
                mul_add(&mut acc, c, t);
            }
            acc
        })
    }

    /// Semisimplicity in characteristic zero: the trace form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.trace_form().rank() == self.dim()
    }

    /// Re-expresses the algebra in the basis given by the columns of `p`,
    /// which must be invertible and parity preserving.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let d = self.dim();
        if p.rows() != d || p.cols() != d {
            return Err(Error::Dimension(
                "basis change matrix has the wrong size".into(),
            ));
        }
        for a in 0..d {
            for i in 0..d {
                if self.parity[a] != self.parity[i] && !p[(a, i)].is_zero() {
                    return Err(Error::InvalidParams("basis change mixes parities".into()));
                }
            }
        }
        let q = p
            .inverse()
            .ok_or_else(|| Error::InvalidParams("basis change matrix is singular".into()))?;
        let idx = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
        // t1[i][b][c] = sum_a p[a][i] c[a][b][c]
        let mut t1 = vec![F::zero(); d * d * d];
        for a in 0..d {
            for i in 0..d {
                let pa = &p[(a, i)];
                if pa.is_zero() {
                    continue;
                }
                for b in 0..d {
                    for c in 0..d {
                        mul_add(&mut t1[idx(i, b, c)], pa, self.constant(a, b, c));
                    }
                }
            }
        }
        // t2[i][j][c] = sum_b p[b][j] t1[i][b][c]
        let mut t2 = vec![F::zero(); d * d * d];
        for i in 0..d {
            for b in 0..d {
                for j in 0..d {
                    let pb = &p[(b, j)];
                    if pb.is_zero() {
                        continue;
                    }
                    for c in 0..d {
                        mul_add(&mut t2[idx(i, j, c)], pb, &t1[idx(i, b, c)]);
                    }
                }
            }
        }
        let mut table = vec![F::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for c in 0..d {
                    let v = &t2[idx(i, j, c)];
                    if v.is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        mul_add(&mut table[idx(i, j, k)], &q[(k, c)], v);
                    }
                }
            }
        }
        Ok(SuperAlgebra {
            parity: self.parity.clone(),
            table,
            unit: q.mul_vec(&self.unit),
        })
    }

    /// The algebra spanned by the given homogeneous, linearly independent
    /// vectors, which must be closed under multiplication and contain
    /// `unit`. Returns `None` if some product leaves the span.
    pub fn subalgebra(&self, basis: &[Vec<F>], unit: &[F]) -> Option<Self> {
        let d = self.dim();
        let k = basis.len();
        let span = Matrix::from_columns(d, basis);
        let mut parity = Vec::with_capacity(k);
        for v in basis {
            parity.push(self.homogeneous_parity(v)?);
        }
        let mut table = vec![F::zero(); k * k * k];
        for i in 0..k {
            for j in 0..k {
                let prod = self.mul_coords(&basis[i], &basis[j]);
                let c = span.solve(&prod)?;
                for (l, x) in c.into_iter().enumerate() {
                    table[(i * k + j) * k + l] = x;
                }
            }
        }
        let unit = span.solve(unit)?;
        SuperAlgebra::new(parity, table, unit).ok()
    }
}

/// Positions of the matrix units of `Mat(n|m)` in the canonical basis: even
/// units first, each group in row-major order.
pub fn mat_basis(n: usize, m: usize) -> Vec<(usize, usize)> {
    let s = n + m;
    let is_even = |i: usize, j: usize| (i < n) == (j < n);
    let all = (0..s).flat_map(|i| (0..s).map(move |j| (i, j)));
    let even = all.clone().filter(|&(i, j)| is_even(i, j));
    let odd = all.filter(|&(i, j)| !is_even(i, j));
    even.chain(odd).collect()
}

/// `End(K^{n|m})` with basis [`mat_basis`].
pub fn build_mat<F: Field>(n: usize, m: usize) -> Result<SuperAlgebra<F>> {
    if n + m == 0 {
        return Err(Error::InvalidParams("Mat(n|m) needs n + m >= 1".into()));
    }
    let units = mat_basis(n, m);
    let index = index_of(&units, n + m);
    let parity = units
        .iter()
        .map(|&(i, j)| {
            if (i < n) == (j < n) {
                Parity::Even
            } else {
                Parity::Odd
            }
        })
        .collect();
    let mut products = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                products.push((a, b, index[i][l], F::one()));
            }
        }
    }
    let mut unit = vec![F::zero(); units.len()];
    for i in 0..n + m {
        unit[index[i][i]] = F::one();
    }
    SuperAlgebra::from_products(parity, products, unit)
}

fn index_of(units: &[(usize, usize)], s: usize) -> Vec<Vec<usize>> {
    let mut index = vec![vec![0; s]; s];
    for (a, &(i, j)) in units.iter().enumerate() {
        index[i][j] = a;
    }
    index
}

/// Basis position of `E_{i,j} xi^odd` in [`build_q`]`(n)`.
pub fn q_index(n: usize, i: usize, j: usize, odd: bool) -> usize {
    usize::from(odd) * n * n + i * n + j
}

/// `Q(n) = Mat(n)[xi]` with `|xi| = 1`, `xi^2 = 1`, `xi` commuting with
/// `Mat(n)`. Basis: `E_{i,j}` then `E_{i,j} xi`, row-major.
pub fn build_q<F: Field>(n: usize) -> Result<SuperAlgebra<F>> {
    if n == 0 {
        return Err(Error::InvalidParams("Q(n) needs n >= 1".into()));
    }
    let mut parity = vec![Parity::Even; n * n];
    parity.extend(std::iter::repeat_n(Parity::Odd, n * n));
    let mut products = Vec::new();
    for a in [false, true] {
        for b in [false, true] {
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        products.push((
                            q_index(n, i, j, a),
                            q_index(n, j, l, b),
                            q_index(n, i, l, a ^ b),
                            F::one(),
                        ));
                    }
                }
            }
        }
    }
    let mut unit = vec![F::zero(); 2 * n * n];
    for i in 0..n {
        unit[q_index(n, i, i, false)] = F::one();
    }
    SuperAlgebra::from_products(parity, products, unit)
}

/// Result of [`direct_sum_algebras`]: the sum plus where each summand's basis
/// landed.
#[derive(Clone, Debug)]
pub struct DirectSum<F> {
    pub algebra: SuperAlgebra<F>,
    /// `embeddings[s][i]` is the index in the sum of basis vector `i` of summand `s`
    pub embeddings: [Vec<usize>; 2],
    pub block_units: [Vec<F>; 2],
}

/// Block-diagonal sum. The basis is ordered evens of `a1`, evens of `a2`,
/// odds of `a1`, odds of `a2`, keeping even vectors first.
pub fn direct_sum_algebras<F: Field>(a1: &SuperAlgebra<F>, a2: &SuperAlgebra<F>) -> DirectSum<F> {
    let (d1, d2) = (a1.dim(), a2.dim());
    let d = d1 + d2;
    let mut emb1 = vec![0; d1];
    let mut emb2 = vec![0; d2];
    let mut parity = Vec::with_capacity(d);
    for target in [Parity::Even, Parity::Odd] {
        for (i, p) in a1.parities().iter().enumerate() {
            if *p == target {
                emb1[i] = parity.len();
                parity.push(target);
            }
        }
        for (i, p) in a2.parities().iter().enumerate() {
            if *p == target {
                emb2[i] = parity.len();
                parity.push(target);
            }
        }
    }
    let mut table = vec![F::zero(); d * d * d];
    for (alg, emb) in [(a1, &emb1), (a2, &emb2)] {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = alg.constant(i, j, k);
                    if !c.is_zero() {
                        table[(emb[i] * d + emb[j]) * d + emb[k]] = c.clone();
                    }
                }
            }
        }
    }
    let embed = |alg: &SuperAlgebra<F>, emb: &[usize]| {
        let mut v = vec![F::zero(); d];
        for (i, c) in alg.unit().iter().enumerate() {
            v[emb[i]] = c.clone();
        }
        v
    };
    let u1 = embed(a1, &emb1);
    let u2 = embed(a2, &emb2);
    let unit = u1
        .iter()
        .zip(&u2)
        .map(|(a, b)| a.clone() + b.clone())
        .collect();
    DirectSum {
        algebra: SuperAlgebra {
            parity,
            table,
            unit,
        },
        embeddings: [emb1, emb2],
        block_units: [u1, u2],
    }
}

/// Random invertible parity-preserving matrix with entries in `[-3, 3]`,
/// deterministic per seed. Each parity block is a lower unitriangular matrix
/// with rows and columns shuffled, so the determinant is `+-1` and the
/// inverse stays integral; dense draws would drag large denominators through
/// every later computation.
pub fn random_graded_matrix<F: Field>(parity: &[Parity], seed: u64) -> Matrix<F> {
    let d = parity.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Matrix::zeros(d, d);
    for target in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = (0..d).filter(|&i| parity[i] == target).collect();
        let mut rows = idx.clone();
        let mut cols = idx.clone();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        for a in 0..idx.len() {
            p[(rows[a], cols[a])] = F::one();
            for b in 0..a {
                p[(rows[a], cols[b])] = F::from_i64(rng.random_range(-3..=3));
            }
        }
    }
    p
}

/// Conjugates the structure constants by [`random_graded_matrix`]. Returns the
/// new algebra and the change-of-basis matrix (columns are the new basis in
/// old coordinates).
pub fn random_graded_basis_change<F: Field>(
    alg: &SuperAlgebra<F>,
    seed: u64,
) -> (SuperAlgebra<F>, Matrix<F>) {
    let p = random_graded_matrix(alg.parities(), seed);
    let scrambled = alg
        .change_basis(&p)
        .expect("random matrix is invertible and graded");
    (scrambled, p)
}
