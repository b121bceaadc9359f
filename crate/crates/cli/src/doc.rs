//! Input documents. Rationals travel as strings ("p/q" or "p"); bare JSON
//! integers are accepted on input but never emitted.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use supercardy::mf::{tensor_mf, MatrixFactorization, Poly, PolyMatrix};
use supercardy::{
    CFData, ElementaryKind, ElementaryParams, Field, Matrix, Parity, Rational, SuperAlgebra,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an exact rational as a string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                let t = v.trim();
                if t.split('/')
                    .nth(1)
                    .is_some_and(|den| den.trim_start_matches(['+', '-']).chars().all(|c| c == '0'))
                {
                    return Err(E::custom(format!("zero denominator in {v:?}")));
                }
                Rational::from_str(t)
                    .map(Q)
                    .map_err(|_| E::custom(format!("not an exact rational: {v:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_i64(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                i64::try_from(v)
                    .map(|v| Q(Rational::from_i64(v)))
                    .map_err(|_| E::custom("integer out of range; use a string"))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Q, E> {
                Err(E::custom(format!(
                    "floating-point value {v}; write rationals as \"p/q\" strings"
                )))
            }
        }
        d.deserialize_any(V)
    }
}

fn q_vec(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    /// 0 even, 1 odd
    pub parity: Vec<u8>,
    pub unit: Vec<Q>,
    /// sparse structure constants `b_i b_j = sum_k c b_k` as `[i, j, k, c]`
    pub products: Vec<(usize, usize, usize, Q)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CfAlgebraDoc {
    pub kind: String,
    pub bulk: AlgebraDoc,
    pub boundary: AlgebraDoc,
    pub theta_bulk: Vec<Q>,
    pub theta_boundary: Vec<Q>,
    /// bulk-boundary map, `dim B` rows by `dim A` columns
    pub tau_star: Vec<Vec<Q>>,
    /// boundary-bulk map, `dim A` rows by `dim B` columns; derived if absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_upper: Option<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementaryDoc {
    pub kind: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    pub lambda: Q,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Q>,
}

pub type PolyDoc = Vec<(Vec<u32>, Q)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<PolyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<Vec<Vec<PolyDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<Vec<Vec<PolyDoc>>>,
    /// graded tensor product of these factorizations, instead of `w`/`d0`/`d1`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_of: Option<Vec<MfDoc>>,
}

#[derive(Clone, Debug)]
pub enum Document {
    CfAlgebra(CfAlgebraDoc),
    Elementary(ElementaryDoc),
    MatrixFactorization(MfDoc),
}

#[derive(Deserialize)]
struct Head {
    kind: String,
}

/// Parses a document; errors carry serde_json's line/column.
pub fn parse(text: &str) -> Result<Document, String> {
    let head: Head = serde_json::from_str(text).map_err(|e| format!("malformed document: {e}"))?;
    let typed = |e: serde_json::Error| format!("invalid {} document: {e}", head.kind);
    match head.kind.as_str() {
        "cf_algebra" => serde_json::from_str(text)
            .map(Document::CfAlgebra)
            .map_err(typed),
        "elementary" => serde_json::from_str(text)
            .map(Document::Elementary)
            .map_err(typed),
        "matrix_factorization" => serde_json::from_str(text)
            .map(Document::MatrixFactorization)
            .map_err(typed),
        other => Err(format!(
            "unknown kind {other:?}; expected cf_algebra, elementary or matrix_factorization"
        )),
    }
}

impl AlgebraDoc {
    pub fn build(&self, name: &str) -> Result<SuperAlgebra<Rational>, String> {
        let d = self.dim;
        if self.parity.len() != d || self.unit.len() != d {
            return Err(format!(
                "{name}: parity and unit must have length dim = {d}"
            ));
        }
        let parity = self
            .parity
            .iter()
            .map(|&b| {
                Parity::from_bit(b)
                    .ok_or_else(|| format!("{name}: parity entries must be 0 or 1, got {b}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let products = self
            .products
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, c.0.clone()));
        SuperAlgebra::from_products(parity, products, q_vec(&self.unit))
            .map_err(|e| format!("{name}: {e}"))
    }

    pub fn from_algebra(a: &SuperAlgebra<Rational>) -> Self {
        let d = a.dim();
        let mut products = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in a.basis_product(i, j).iter().enumerate() {
                    if *c != Rational::from_i64(0) {
                        products.push((i, j, k, Q(c.clone())));
                    }
                }
            }
        }
        AlgebraDoc {
            dim: d,
            parity: a.parities().iter().map(|p| p.bit()).collect(),
            unit: to_q(a.unit()),
            products,
        }
    }
}

fn matrix(rows: &[Vec<Q>], r: usize, c: usize, name: &str) -> Result<Matrix<Rational>, String> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(format!("{name} must be {r}x{c}"));
    }
    Ok(Matrix::from_fn(r, c, |i, j| rows[i][j].0.clone()))
}

fn matrix_rows(m: &Matrix<Rational>) -> Vec<Vec<Q>> {
    m.to_rows().iter().map(|r| to_q(r)).collect()
}

impl CfAlgebraDoc {
    pub fn build(&self) -> Result<CFData<Rational>, String> {
        let bulk = self.bulk.build("bulk")?;
        let boundary = self.boundary.build("boundary")?;
        let (da, db) = (bulk.dim(), boundary.dim());
        let lower = matrix(&self.tau_star, db, da, "tau_star")?;
        let upper = self
            .tau_upper
            .as_ref()
            .map(|t| matrix(t, da, db, "tau_upper"))
            .transpose()?;
        CFData::new(
            bulk,
            boundary,
            q_vec(&self.theta_bulk),
            q_vec(&self.theta_boundary),
            lower,
            upper,
        )
        .map_err(|e| e.to_string())
    }

    pub fn from_cf(cf: &CFData<Rational>) -> Self {
        CfAlgebraDoc {
            kind: "cf_algebra".into(),
            bulk: AlgebraDoc::from_algebra(&cf.bulk),
            boundary: AlgebraDoc::from_algebra(&cf.boundary),
            theta_bulk: to_q(&cf.theta_bulk),
            theta_boundary: to_q(&cf.theta_boundary),
            tau_star: matrix_rows(&cf.tau_lower),
            tau_upper: cf.tau_upper.as_ref().map(matrix_rows),
        }
    }
}

pub fn parse_kind(s: &str) -> Result<ElementaryKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "triv" => Ok(ElementaryKind::Triv),
        "mat" => Ok(ElementaryKind::Mat),
        "q" => Ok(ElementaryKind::Q),
        _ => Err(format!(
            "unknown elementary type {s:?}; expected triv, mat or q"
        )),
    }
}

pub fn kind_name(k: ElementaryKind) -> &'static str {
    match k {
        ElementaryKind::Triv => "triv",
        ElementaryKind::Mat => "mat",
        ElementaryKind::Q => "q",
    }
}

impl ElementaryDoc {
    pub fn params(&self) -> Result<ElementaryParams<Rational>, String> {
        let kind = parse_kind(&self.ty)?;
        let lambda = self.lambda.0.clone();
        let mu = || {
            self.mu
                .as_ref()
                .map(|m| m.0.clone())
                .ok_or_else(|| format!("type {} needs mu", self.ty))
        };
        let p = match kind {
            ElementaryKind::Triv => ElementaryParams::triv(lambda),
            ElementaryKind::Mat => ElementaryParams::mat(self.n, self.m, lambda, mu()?),
            ElementaryKind::Q => ElementaryParams::q(self.n, lambda, mu()?),
        };
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }

    pub fn from_params(p: &ElementaryParams<Rational>) -> Self {
        ElementaryDoc {
            kind: "elementary".into(),
            ty: kind_name(p.kind).into(),
            n: p.n,
            m: p.m,
            lambda: Q(p.lambda.clone()),
            mu: (p.kind != ElementaryKind::Triv).then(|| Q(p.mu.clone())),
        }
    }
}

fn poly(vars: &[String], terms: &PolyDoc) -> Result<Poly<Rational>, String> {
    Poly::new(
        vars.to_vec(),
        terms.iter().map(|(e, c)| (e.clone(), c.0.clone())),
    )
    .map_err(|e| e.to_string())
}

fn poly_matrix(
    vars: &[String],
    rows: &[Vec<PolyDoc>],
    name: &str,
) -> Result<PolyMatrix<Rational>, String> {
    let entries = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| poly(vars, p))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    PolyMatrix::from_rows(vars.to_vec(), entries).map_err(|e| format!("{name}: {e}"))
}

impl MfDoc {
    pub fn build(&self) -> Result<MatrixFactorization<Rational>, String> {
        if let Some(factors) = &self.tensor_of {
            if self.w.is_some() || self.d0.is_some() || self.d1.is_some() {
                return Err("give either tensor_of or w/d0/d1, not both".into());
            }
            let mut built = factors.iter().map(MfDoc::build);
            let first = built.next().ok_or("tensor_of is empty")??;
            return built.try_fold(first, |acc, f| {
                tensor_mf(&acc, &f?).map_err(|e| e.to_string())
            });
        }
        let vars = &self.variables;
        let w = poly(vars, self.w.as_ref().ok_or("missing w")?)?;
        let d0 = poly_matrix(vars, self.d0.as_ref().ok_or("missing d0")?, "d0")?;
        let d1 = poly_matrix(vars, self.d1.as_ref().ok_or("missing d1")?, "d1")?;
        MatrixFactorization::new(w, d0, d1).map_err(|e| e.to_string())
    }
}
