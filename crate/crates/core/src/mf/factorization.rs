use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

use super::poly::{Poly, PolyMatrix};

/// `R = K[x]^{r|r}` with odd differential `d_R = (0, d1; d0, 0)`, where
/// `d0: R_0 -> R_1` and `d1: R_1 -> R_0`.
#[derive(Clone, PartialEq)]
pub struct MatrixFactorization<F> {
    pub w: Poly<F>,
    pub d0: PolyMatrix<F>,
    pub d1: PolyMatrix<F>,
    /// Tensor factors this factorization was built from (empty if primitive).
    /// Lets cohomology dimensions be obtained by Kunneth.
    factors: Vec<MatrixFactorization<F>>,
}

/// The first entry where `d0 d1` or `d1 d0` differs from `W E`.
#[derive(Clone, PartialEq)]
pub struct FactorizationViolation<F> {
    pub product: &'static str,
    pub row: usize,
    pub col: usize,
    pub found: Poly<F>,
    pub expected: Poly<F>,
}

impl<F: Field> fmt::Debug for FactorizationViolation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})[{},{}] = {}, expected {}",
            self.product, self.row, self.col, self.found, self.expected
        )
    }
}

impl<F: Field> fmt::Display for FactorizationViolation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<F: Field> MatrixFactorization<F> {
    /// Checks shapes and variables only; see [`validate_mf`] for the
    /// factorization identity.
    pub fn new(w: Poly<F>, d0: PolyMatrix<F>, d1: PolyMatrix<F>) -> Result<Self> {
        let r = d0.rows();
        if d0.cols() != r || d1.rows() != r || d1.cols() != r {
            return Err(Error::Dimension(format!(
                "d0 is {}x{}, d1 is {}x{}; both must be square of equal size",
                d0.rows(),
                d0.cols(),
                d1.rows(),
                d1.cols()
            )));
        }
        if d0.vars() != w.vars() || d1.vars() != w.vars() {
            return Err(Error::Dimension(
                "W, d0 and d1 must use the same variable list".into(),
            ));
        }
        Ok(MatrixFactorization {
            w,
            d0,
            d1,
            factors: Vec::new(),
        })
    }

    /// Rank-one factorization `(f, g)` of `W = f g`.
    pub fn rank_one(w: Poly<F>, f: Poly<F>, g: Poly<F>) -> Result<Self> {
        let vars = w.vars().to_vec();
        Self::new(
            w,
            PolyMatrix::from_rows(vars.clone(), vec![vec![f]])?,
            PolyMatrix::from_rows(vars, vec![vec![g]])?,
        )
    }

    /// `R = (x^a, x^{s-a})` for `W = x^s` in the single variable `var`.
    pub fn monomial(var: &str, s: u32, a: u32) -> Result<Self> {
        if a == 0 || a >= s {
            return Err(Error::InvalidParams(format!(
                "need 1 <= a <= s-1, got a={a}, s={s}"
            )));
        }
        let vars = vec![var.to_string()];
        let mono = |k: u32| Poly::monomial(vars.clone(), vec![k], F::one());
        Self::rank_one(mono(s), mono(a), mono(s - a))
    }

    pub fn vars(&self) -> &[String] {
        self.w.vars()
    }

    pub fn nvars(&self) -> usize {
        self.w.nvars()
    }

    /// `r`, the rank of each graded piece.
    pub fn rank(&self) -> usize {
        self.d0.rows()
    }

    pub fn factors(&self) -> &[MatrixFactorization<F>] {
        &self.factors
    }

    /// `d_R` as a `2r x 2r` matrix, even basis first.
    pub fn differential(&self) -> PolyMatrix<F> {
        let r = self.rank();
        let mut d = PolyMatrix::zeros(self.vars().to_vec(), 2 * r, 2 * r);
        for i in 0..r {
            for j in 0..r {
                d.set(i, r + j, self.d1.get(i, j).clone());
                d.set(r + i, j, self.d0.get(i, j).clone());
            }
        }
        d
    }
}

impl<F: Field> fmt::Debug for MatrixFactorization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MF(W = {}, d0 = {:?}, d1 = {:?})",
            self.w, self.d0, self.d1
        )
    }
}

/// Exact check of `d0 d1 = d1 d0 = W E`.
pub fn validate_mf<F: Field>(
    mf: &MatrixFactorization<F>,
) -> std::result::Result<(), Box<FactorizationViolation<F>>> {
    let r = mf.rank();
    let zero = Poly::zero(mf.vars().to_vec());
    for (name, prod) in [("d0*d1", mf.d0.mul(&mf.d1)), ("d1*d0", mf.d1.mul(&mf.d0))] {
        for i in 0..r {
            for j in 0..r {
                let expected = if i == j { mf.w.clone() } else { zero.clone() };
                if *prod.get(i, j) != expected {
                    return Err(Box::new(FactorizationViolation {
                        product: name,
                        row: i,
                        col: j,
                        found: prod.get(i, j).clone(),
                        expected,
                    }));
                }
            }
        }
    }
    Ok(())
}

/// Graded tensor product over disjoint variable sets: a factorization of
/// `W1 + W2` with `d = d1 (x) 1 + gamma (x) d2`, `gamma` the grading operator.
pub fn tensor_mf<F: Field>(
    r1: &MatrixFactorization<F>,
    r2: &MatrixFactorization<F>,
) -> Result<MatrixFactorization<F>> {
    if let Some(v) = r1.vars().iter().find(|v| r2.vars().contains(v)) {
        return Err(Error::VariableClash(format!(
            "variable {v} occurs in both factors"
        )));
    }
    let vars: Vec<String> = r1.vars().iter().chain(r2.vars()).cloned().collect();
    let n1 = r1.nvars();
    let pos1: Vec<usize> = (0..n1).collect();
    let pos2: Vec<usize> = (n1..vars.len()).collect();
    let big1 = r1.differential().embed(&vars, &pos1);
    let big2 = r2.differential().embed(&vars, &pos2);
    let (s1, s2) = (2 * r1.rank(), 2 * r2.rank());
    let odd1 = |a: usize| a >= r1.rank();
    let odd2 = |b: usize| b >= r2.rank();

    let pairs: Vec<(usize, usize)> = (0..s1).flat_map(|a| (0..s2).map(move |b| (a, b))).collect();
    let even: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(a, b)| odd1(a) == odd2(b))
        .collect();
    let odd: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(a, b)| odd1(a) != odd2(b))
        .collect();

    let entry = |(a, b): (usize, usize), (c, e): (usize, usize)| -> Poly<F> {
        let mut p = Poly::zero(vars.clone());
        if b == e {
            p = p.add(big1.get(a, c));
        }
        if a == c {
            let term = big2.get(b, e);
            p = if odd1(a) { p.sub(term) } else { p.add(term) };
        }
        p
    };
    let block = |rows: &[(usize, usize)], cols: &[(usize, usize)]| {
        let data = rows
            .iter()
            .map(|&u| cols.iter().map(|&v| entry(u, v)).collect())
            .collect();
        PolyMatrix::from_rows(vars.clone(), data)
    };
    let w = r1.w.embed(&vars, &pos1).add(&r2.w.embed(&vars, &pos2));
    let mut out = MatrixFactorization::new(w, block(&odd, &even)?, block(&even, &odd)?)?;
    out.factors = [r1, r2]
        .iter()
        .flat_map(|r| {
            if r.factors.is_empty() {
                vec![(*r).clone()]
            } else {
                r.factors.clone()
            }
        })
        .collect();
    Ok(out)
}
