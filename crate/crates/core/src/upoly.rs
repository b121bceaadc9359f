//! Dense univariate polynomials over a field, with exact rational root
//! isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{mul_add, ExactRational, Field};

/// Coefficients from the constant term upward; never has trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: F) -> Self {
        Self::new(vec![-root, F::one()])
    }

    pub fn monomial(c: F, degree: usize) -> Self {
        let mut coeffs = vec![F::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                mul_add(&mut out[i + j], a, b);
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * &F::from_i64(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone() * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k - d + j] -= c.clone() * dc;
                }
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().inv())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<F: fmt::Display + Zero> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: fmt::Display + Zero> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Rational roots of `p` and the cofactor left after dividing them out.
#[derive(Clone, Debug)]
pub struct RationalRoots<F: fmt::Display + Zero> {
    /// distinct roots, ascending
    pub roots: Vec<F>,
    /// `p / prod (t - root)^{multiplicity}`, made monic; constant 1 iff `p` splits
    pub remainder: UniPoly<F>,
}

impl<F: Field> RationalRoots<F> {
    pub fn splits(&self) -> bool {
        self.remainder.degree() == Some(0)
    }
}

/// Finds all rational roots of a nonzero polynomial exactly.
///
/// The square-free part is scaled to a monic integer polynomial whose
/// rational roots are integers; those are isolated with Sturm sequences on
/// half-integer endpoints, so no endpoint is ever a root.
pub fn rational_roots<F: ExactRational>(p: &UniPoly<F>) -> RationalRoots<F> {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let big = p.map(|c| c.to_big_ratio());
    let squarefree = if big.degree() == Some(0) {
        big.clone()
    } else {
        big.div_rem(&big.gcd(&big.derivative())).0.monic()
    };
    let (scaled, scale) = monic_integer_form(&squarefree);
    let mut int_roots = Vec::new();
    if scaled.degree().unwrap_or(0) > 0 {
        let bound = cauchy_bound(&scaled);
        let sturm = sturm_sequence(&scaled);
        let lo = half(-(&bound) - BigInt::one());
        let hi = half(bound + BigInt::one());
        isolate_integer_roots(&scaled, &sturm, lo, hi, &mut int_roots);
    }
    let mut roots: Vec<BigRational> = int_roots
        .into_iter()
        .map(|k| BigRational::from_integer(k) / &scale)
        .collect();
    roots.sort();
    let mut remainder = big.monic();
    for r in &roots {
        loop {
            let (q, rem) = remainder.div_rem(&UniPoly::linear(r.clone()));
            if !rem.is_zero() {
                break;
            }
            remainder = q;
        }
    }
    RationalRoots {
        roots: roots.iter().map(F::from_big_ratio).collect(),
        remainder: remainder.monic().map(F::from_big_ratio),
    }
}

/// For monic rational `p(x)`, returns integer-coefficient monic `q(y)` and
/// `s` with `p(x) = 0 <=> q(s x) = 0`.
fn monic_integer_form(p: &UniPoly<BigRational>) -> (UniPoly<BigRational>, BigRational) {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let n = ints.len() - 1;
    let lead = ints[n].clone();
    // q(y) = lead^{n-1} p(y / lead) has integer coefficients and is monic.
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, c) in ints.iter().enumerate() {
        if k == n {
            coeffs.push(BigRational::one());
        } else {
            let pow = num_traits::pow(lead.clone(), n - 1 - k);
            coeffs.push(BigRational::from_integer(c * pow));
        }
    }
    (UniPoly::new(coeffs), BigRational::from_integer(lead))
}

fn cauchy_bound(monic: &UniPoly<BigRational>) -> BigInt {
    let max = monic.coeffs()[..monic.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs().ceil().to_integer())
        .max()
        .unwrap_or_else(BigInt::zero);
    max + BigInt::one()
}

fn half(k: BigInt) -> BigRational {
    BigRational::from_integer(k) - BigRational::new(BigInt::one(), BigInt::from(2))
}

fn sturm_sequence(p: &UniPoly<BigRational>) -> Vec<UniPoly<BigRational>> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-BigRational::one()));
    }
    seq
}

fn sign_changes(seq: &[UniPoly<BigRational>], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for s in seq {
        let v = s.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// `lo` and `hi` are half-integers; pushes every integer root in `(lo, hi)`.
fn isolate_integer_roots(
    p: &UniPoly<BigRational>,
    sturm: &[UniPoly<BigRational>],
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<BigInt>,
) {
    let count = sign_changes(sturm, &lo) - sign_changes(sturm, &hi);
    if count == 0 {
        return;
    }
    let width = (&hi - &lo).to_integer();
    if width == BigInt::one() {
        let k = (&lo + BigRational::new(BigInt::one(), BigInt::from(2))).to_integer();
        if p.eval(&BigRational::from_integer(k.clone())).is_zero() {
            out.push(k);
        }
        return;
    }
    let mid = &lo + BigRational::from_integer(width / BigInt::from(2));
    isolate_integer_roots(p, sturm, lo, mid.clone(), out);
    isolate_integer_roots(p, sturm, mid, hi, out);
}

/// Monic minimal polynomial of the sequence `v_0, v_1, ...` (e.g. powers of an
/// algebra element): the first linear relation `v_k = sum c_i v_i`.
/// Returns `None` if the vectors never become dependent.
pub fn minimal_relation<F: Field>(powers: &[Vec<F>]) -> Option<UniPoly<F>> {
    use crate::linalg::Matrix;
    let dim = powers.first()?.len();
    for k in 1..powers.len() {
        let basis = Matrix::from_columns(dim, &powers[..k]);
        if let Some(c) = basis.solve(&powers[k]) {
            let mut coeffs: Vec<F> = c.into_iter().map(|x| -x).collect();
            coeffs.push(F::one());
            return Some(UniPoly::new(coeffs));
        }
    }
    None
}
