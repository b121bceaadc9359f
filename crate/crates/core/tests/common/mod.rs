#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supercardy::mf::Poly;
use supercardy::{
    build_elementary, direct_sum_cf, CFData, ElementaryKind, ElementaryParams, Field, Rational,
};

pub fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    q(n) / q(d)
}

/// `lambda` making the elementary data satisfy the Cardy identity.
pub fn cardy_lambda(kind: ElementaryKind, mu: &Rational) -> Rational {
    match kind {
        ElementaryKind::Mat => mu.clone() * mu,
        ElementaryKind::Q => -(mu.clone() * mu) / q(2),
        ElementaryKind::Triv => panic!("Triv has no relation"),
    }
}

pub type Key = (ElementaryKind, usize, usize, Rational);

/// Up to five valid elementary summands with boundary dimension at most
/// `budget`, plus their sorted `(kind, n, m, lambda)` keys.
pub fn random_summands(seed: u64, budget: usize) -> (Vec<ElementaryParams<Rational>>, Vec<Key>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mus = [q(1), q(2), q(-1), frac(1, 2), q(3), frac(-2, 3)];
    let count = rng.random_range(1..=5);
    let mut left = budget;
    let mut params = Vec::new();
    while params.len() < count {
        let mu = mus[rng.random_range(0..mus.len())].clone();
        let p = match rng.random_range(0..3) {
            0 => ElementaryParams::triv(frac(rng.random_range(1..=9), rng.random_range(1..=4))),
            1 => {
                let n = rng.random_range(1..=3);
                let m = rng.random_range(0..=n.min(3 - n + 1));
                ElementaryParams::mat(n, m, cardy_lambda(ElementaryKind::Mat, &mu), mu)
            }
            _ => ElementaryParams::q(
                rng.random_range(1..=3),
                cardy_lambda(ElementaryKind::Q, &mu),
                mu,
            ),
        };
        let dim = match p.kind {
            ElementaryKind::Triv => 0,
            ElementaryKind::Mat => (p.n + p.m).pow(2),
            ElementaryKind::Q => 2 * p.n * p.n,
        };
        if dim <= left {
            left -= dim;
            params.push(p);
        }
    }
    let mut keys: Vec<Key> = params
        .iter()
        .map(|p| (p.kind, p.n, p.m, p.lambda.clone()))
        .collect();
    keys.sort();
    (params, keys)
}

pub fn sum_of(params: &[ElementaryParams<Rational>]) -> CFData<Rational> {
    let mut parts = params.iter().map(|p| build_elementary(p).unwrap());
    let first = parts.next().expect("at least one summand");
    parts.fold(first, |acc, c| direct_sum_cf(&acc, &c))
}

/// Sum of finite residues of `p / q` = coefficient of `1/x` in the Laurent
/// expansion at infinity, by long division in `1/x`.
pub fn residue_oracle(p: &Poly<Rational>, den: &Poly<Rational>) -> Rational {
    let coeffs = |f: &Poly<Rational>| -> Vec<Rational> {
        let d = f.degree().unwrap_or(0) as usize;
        (0..=d).map(|k| f.coeff(&[k as u32])).collect()
    };
    let (mut num, den) = (coeffs(p), coeffs(den));
    let dd = den.len() - 1;
    // p/q = sum_k c_k x^{deg p - dd - k}; the 1/x term has k = deg p - dd + 1
    let dp = num.len() - 1;
    let want = dp as i64 - dd as i64 + 1;
    if want < 0 {
        return q(0);
    }
    let mut c = q(0);
    for k in 0..=want as usize {
        let top = dp as i64 - k as i64;
        let lead = if top >= 0 {
            num[top as usize].clone()
        } else {
            q(0)
        };
        c = lead / den[dd].clone();
        for (i, dc) in den.iter().enumerate() {
            let pos = top - (dd - i) as i64;
            if pos >= 0 {
                num[pos as usize] -= c.clone() * dc;
            }
        }
    }
    c
}
