//! Sparse multivariate polynomials and matrices of them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

pub type Exponent = Vec<u32>;

/// A polynomial in named variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> Poly<F> {
    pub fn new(vars: Vec<String>, terms: impl IntoIterator<Item = (Exponent, F)>) -> Result<Self> {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector {e:?} for {} variables",
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn zero(vars: Vec<String>) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: F) -> Self {
        let n = vars.len();
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn monomial(vars: Vec<String>, exponent: Exponent, c: F) -> Self {
        assert_eq!(exponent.len(), vars.len());
        let mut p = Poly::zero(vars);
        p.add_term(exponent, c);
        p
    }

    /// The `i`-th variable.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Poly::monomial(vars, e, F::one())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variables"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = Poly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2);
            }
        }
        out
    }

    /// `x^e * self`.
    pub fn shift(&self, e: &[u32], c: &F) -> Self {
        let mut out = Poly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            let sum = e1.iter().zip(e).map(|(a, b)| a + b).collect();
            out.add_term(sum, c1.clone() * c);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Poly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c.clone() * &F::from_i64(i64::from(e[var])));
        }
        out
    }

    /// Re-expresses the polynomial over `vars`, sending variable `i` to
    /// `vars[position[i]]`.
    pub fn embed(&self, vars: &[String], position: &[usize]) -> Self {
        let mut out = Poly::zero(vars.to_vec());
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                f[position[i]] = k;
            }
            out.add_term(f, c.clone());
        }
        out
    }
}

impl<F: fmt::Display + Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: fmt::Display + Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dense matrix of polynomials over a common variable list.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<F> {
    vars: Vec<String>,
    rows: usize,
    cols: usize,
    data: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(vars: Vec<String>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            data: vec![Poly::zero(vars.clone()); rows * cols],
            vars,
            rows,
            cols,
        }
    }

    pub fn identity(vars: Vec<String>, n: usize) -> Self {
        Self::scalar(vars, n, F::one())
    }

    pub fn scalar(vars: Vec<String>, n: usize, c: F) -> Self {
        let mut m = Self::zeros(vars.clone(), n, n);
        for i in 0..n {
            m.data[i * n + i] = Poly::constant(vars.clone(), c.clone());
        }
        m
    }

    pub fn from_rows(vars: Vec<String>, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged polynomial matrix".into()));
            }
            for p in row {
                if p.vars() != vars.as_slice() {
                    return Err(Error::Dimension(format!(
                        "entry over {:?}, expected {:?}",
                        p.vars(),
                        vars
                    )));
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            vars,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<F>) {
        assert_eq!(p.vars(), self.vars.as_slice());
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly<F>)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, p)| (k / self.cols.max(1), k % self.cols.max(1), p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Largest total degree of an entry; `None` if all entries vanish.
    pub fn degree(&self) -> Option<u32> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, q: &Poly<F>) -> Self {
        self.map(|p| p.mul(q))
    }

    pub fn map(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        self.map(|p| p.derivative(var))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "polynomial matrix shapes");
        let mut out = Self::zeros(self.vars.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Poly<F> {
        (0..self.rows.min(self.cols)).fold(Poly::zero(self.vars.clone()), |acc, i| {
            acc.add(self.get(i, i))
        })
    }

    /// Supertrace with the first `even` rows/columns even.
    pub fn supertrace(&self, even: usize) -> Poly<F> {
        let mut acc = Poly::zero(self.vars.clone());
        for i in 0..self.rows.min(self.cols) {
            acc = if i < even {
                acc.add(self.get(i, i))
            } else {
                acc.sub(self.get(i, i))
            };
        }
        acc
    }

    pub fn embed(&self, vars: &[String], position: &[usize]) -> Self {
        PolyMatrix {
            vars: vars.to_vec(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.embed(vars, position)).collect(),
        }
    }
}

impl<F: fmt::Display + Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
