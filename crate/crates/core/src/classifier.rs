//! Decomposition of semisimple Cardy-Frobenius data into elementary summands.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cardy::{verify_all, CFData, CheckReport, ElementaryKind};
use crate::error::{Error, Result};
use crate::linalg::{EchelonSpan, Matrix};
use crate::scalar::{mul_add, ExactRational, Field, Parity};
use crate::superalgebra::{AlgebraElement, SuperAlgebra};
use crate::upoly::{minimal_relation, rational_roots, UniPoly};

const SPLIT_ATTEMPTS: usize = 8;
const SPLIT_RANGE: i64 = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct ElementarySummand<F: std::fmt::Display> {
    pub kind: ElementaryKind,
    pub n: usize,
    pub m: usize,
    /// `theta_A(e_i)`
    pub lambda: F,
    /// `mu^2` as forced by the Cardy identity; absent for `Triv`
    pub mu_squared: Option<F>,
    pub bulk_idempotent: AlgebraElement<F>,
    pub block_unit: Option<AlgebraElement<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation<F: std::fmt::Display> {
    /// Some axiom check failed on the whole data or on one summand.
    Checks {
        block: Option<usize>,
        report: CheckReport<F>,
    },
    /// `tau_*(e_i) = sum_j coefficients[j] 1_j` is not 0 or a single block unit.
    Matching {
        idempotent: usize,
        coefficients: Vec<F>,
        detail: String,
    },
    /// A block unit is hit by no idempotent or by several.
    BlockCoverage { block: usize, hits: usize },
    /// The restricted boundary form is not a multiple of the invariant form.
    Form { block: usize, detail: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification<F: std::fmt::Display> {
    Classified,
    NotSemisimple(String),
    NotSplit(String),
    AxiomViolation(Violation<F>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport<F: std::fmt::Display> {
    /// Sorted by `(kind, n, m, lambda)`.
    pub summands: Vec<ElementarySummand<F>>,
    pub verdict: Classification<F>,
}

impl<F: Field> ClassificationReport<F> {
    fn stop(verdict: Classification<F>) -> Self {
        ClassificationReport {
            summands: Vec::new(),
            verdict,
        }
    }

    pub fn is_classified(&self) -> bool {
        self.verdict == Classification::Classified
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockType {
    Mat { n: usize, m: usize },
    Q { n: usize },
    Unknown,
}

fn exact_sqrt(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|s| s * s == x)
}

/// Type of a graded-simple block from its graded dimensions. `Mat(n|m)` and
/// `Mat(m|n)` are isomorphic; the answer has `n >= m`.
pub fn identify_block_type(even: usize, odd: usize) -> BlockType {
    if even >= odd {
        if let (Some(s), Some(d)) = (exact_sqrt(even + odd), exact_sqrt(even - odd)) {
            if s > 0 && (s + d) % 2 == 0 {
                return BlockType::Mat {
                    n: (s + d) / 2,
                    m: (s - d) / 2,
                };
            }
        }
    }
    match exact_sqrt(even) {
        Some(n) if even == odd && n > 0 => BlockType::Q { n },
        _ => BlockType::Unknown,
    }
}

fn stage_seed(seed: u64, stage: u64) -> u64 {
    seed ^ stage.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Orthogonal primitive idempotents summing to 1 in a commutative,
/// semisimple, purely even algebra, found by splitting the minimal
/// polynomial of a random element.
pub fn primitive_idempotents_commutative<F: ExactRational>(
    alg: &SuperAlgebra<F>,
    seed: u64,
) -> Result<Vec<AlgebraElement<F>>> {
    let d = alg.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    if let Some((i, j, _)) = alg.supercommutativity_defect() {
        return Err(Error::InvalidAlgebra(format!(
            "basis vectors {i} and {j} do not supercommute"
        )));
    }
    if !alg.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    if !alg.is_purely_even() {
        return Err(Error::NotPurelyEven);
    }
    let basis: Vec<Vec<F>> = Matrix::<F>::identity(d).to_rows();
    Ok(split_commutative(alg, &basis, seed)?
        .into_iter()
        .map(|e| alg.element(e))
        .collect())
}

/// Primitive idempotents of the commutative semisimple subalgebra of `alg`
/// spanned by `span`, computed inside `alg`: a random `t` in the span
/// separates the idempotents exactly when its minimal polynomial has
/// `span.len()` distinct rational roots, and Lagrange interpolation at those
/// roots gives the idempotents.
fn split_commutative<F: ExactRational>(
    alg: &SuperAlgebra<F>,
    span: &[Vec<F>],
    seed: u64,
) -> Result<Vec<Vec<F>>> {
    let (d, k) = (alg.dim(), span.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_factor: Option<UniPoly<F>> = None;
    for _ in 0..SPLIT_ATTEMPTS {
        let mut t = vec![F::zero(); d];
        for v in span {
            let r = F::from_i64(rng.random_range(-SPLIT_RANGE..=SPLIT_RANGE));
            for (x, y) in t.iter_mut().zip(v) {
                mul_add(x, &r, y);
            }
        }
        let left = alg.left_mul_matrix(&t);
        let mut powers = vec![alg.unit().to_vec()];
        for i in 0..k {
            let next = left.mul_vec(&powers[i]);
            powers.push(next);
        }
        let minpoly = minimal_relation(&powers)
            .expect("k + 1 elements of a k-dimensional algebra are dependent");
        let roots = rational_roots(&minpoly);
        if !roots.splits() {
            last_factor = Some(roots.remainder);
            continue;
        }
        if roots.roots.len() != k {
            continue;
        }
        return Ok(roots
            .roots
            .iter()
            .map(|r| {
                let lagrange = lagrange_basis(&roots.roots, r);
                let mut coords = vec![F::zero(); d];
                for (c, p) in lagrange.coeffs().iter().zip(&powers) {
                    for (x, y) in coords.iter_mut().zip(p) {
                        mul_add(x, c, y);
                    }
                }
                coords
            })
            .collect());
    }
    Err(Error::NotSplit(match last_factor {
        Some(f) => format!("minimal polynomial has the irreducible factor {f}"),
        None => format!("no separating element found in {SPLIT_ATTEMPTS} attempts"),
    }))
}

/// `v` scaled to an integer vector with coprime entries. Random combinations
/// of such vectors tend to have eigenvalues of small height, which keeps the
/// root isolation cheap.
fn primitive_integer_vector<F: ExactRational>(v: &[F]) -> Vec<F> {
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let big: Vec<_> = v.iter().map(|x| x.to_big_ratio()).collect();
    let lcm = big
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<_> = big
        .iter()
        .map(|x| (x * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| F::from_big_ratio(&num_rational::BigRational::from_integer(x / &gcd)))
        .collect()
}

/// `prod_{s != r} (t - s) / (r - s)`.
fn lagrange_basis<F: Field>(roots: &[F], r: &F) -> UniPoly<F> {
    let mut p = UniPoly::constant(F::one());
    for s in roots.iter().filter(|s| *s != r) {
        p = p
            .mul(&UniPoly::linear(s.clone()))
            .scale(&(r.clone() - s.clone()).inv());
    }
    p
}

/// One graded-simple two-sided ideal `z B` of a semisimple algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Block<F: std::fmt::Display> {
    /// basis of the block in coordinates of `B`, evens first
    pub basis: Vec<Vec<F>>,
    pub algebra: SuperAlgebra<F>,
    /// the central idempotent `z`, in coordinates of `B`
    pub unit: Vec<F>,
}

/// Splits `B` into graded-simple blocks along the primitive idempotents of
/// its even center.
pub fn decompose_boundary<F: ExactRational>(
    b: &SuperAlgebra<F>,
    seed: u64,
) -> Result<Vec<Block<F>>> {
    let d = b.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    if !b.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let center: Vec<Vec<F>> = b
        .graded_center_even()
        .into_iter()
        .map(|z| z.coords)
        .collect();
    let center: Vec<Vec<F>> = center.iter().map(|v| primitive_integer_vector(v)).collect();
    let units = split_commutative(b, &center, seed)?;

    let mut blocks = Vec::with_capacity(units.len());
    let mut total = 0;
    for z in units {
        // z is a central idempotent, so (z b_p)(z b_q) = z (b_p b_q): the block
        // constants follow from the coordinates of every z b_l in the block basis.
        let left = b.left_mul_matrix(&z);
        let mut picked = EchelonSpan::new(d);
        let mut source = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            for l in (0..d).filter(|&l| b.parity(l) == parity) {
                if picked.insert(&left.column(l)) {
                    source.push(l);
                }
            }
        }
        let k = source.len();
        total += k;
        let basis: Vec<Vec<F>> = source.iter().map(|&l| left.column(l)).collect();
        let coords = Matrix::from_columns(d, &basis)
            .solve_columns(&left)
            .ok_or_else(|| {
                Error::InvalidAlgebra("z B is not spanned by the chosen vectors".into())
            })?;
        let mut table = vec![F::zero(); k * k * k];
        for (a, &pa) in source.iter().enumerate() {
            for (bb, &pb) in source.iter().enumerate() {
                for (l, c) in b.basis_product(pa, pb).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for e in 0..k {
                        mul_add(&mut table[(a * k + bb) * k + e], c, &coords[(e, l)]);
                    }
                }
            }
        }
        let unit = coords.mul_vec(b.unit());
        let parity = source.iter().map(|&l| b.parity(l)).collect();
        let algebra = SuperAlgebra::new(parity, table, unit)?;
        blocks.push(Block {
            basis,
            algebra,
            unit: z,
        });
    }
    if total != d {
        return Err(Error::InvalidAlgebra(
            "blocks do not span the algebra".into(),
        ));
    }
    Ok(blocks)
}

/// Solutions `theta` of `theta(b_i b_j) = (-1)^{|i||j|} theta(b_j b_i)`.
pub fn symmetric_forms<F: Field>(alg: &SuperAlgebra<F>) -> Vec<Vec<F>> {
    let d = alg.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i..d {
            let negate = alg.parity(i).koszul(alg.parity(j));
            let row: Vec<F> = (0..d)
                .map(|k| {
                    let a = alg.constant(i, j, k).clone();
                    let b = alg.constant(j, i, k).clone();
                    if negate {
                        a + b
                    } else {
                        a - b
                    }
                })
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Matrix::<F>::identity(d).to_rows();
    }
    Matrix::from_rows(rows).kernel_basis()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormProportionality<F> {
    /// spanning vector of the symmetric forms on the block
    pub generator: Vec<F>,
    /// `theta = coefficient * generator`
    pub coefficient: F,
}

/// Checks that the symmetric forms on `alg` form a line and that `theta`
/// lies on it.
pub fn form_proportionality<F: Field>(
    alg: &SuperAlgebra<F>,
    theta: &[F],
) -> std::result::Result<FormProportionality<F>, String> {
    let forms = symmetric_forms(alg);
    if forms.len() != 1 {
        return Err(format!(
            "symmetric forms span dimension {}, expected 1",
            forms.len()
        ));
    }
    let generator = forms.into_iter().next().expect("one form");
    let pivot = generator
        .iter()
        .position(|x| !x.is_zero())
        .expect("kernel vectors are nonzero");
    let coefficient = theta[pivot].clone() / generator[pivot].clone();
    for (t, g) in theta.iter().zip(&generator) {
        if *t != coefficient.clone() * g {
            return Err("restricted form is not a multiple of the symmetric form".into());
        }
    }
    Ok(FormProportionality {
        generator,
        coefficient,
    })
}

/// For each bulk idempotent, the block whose unit is its image, or `None`
/// if the image is zero.
pub fn match_idempotents<F: Field>(
    cf: &CFData<F>,
    idempotents: &[AlgebraElement<F>],
    block_units: &[Vec<F>],
) -> std::result::Result<Vec<Option<usize>>, Violation<F>> {
    let db = cf.boundary.dim();
    let units = Matrix::from_columns(db, block_units);
    let mut hits = vec![0usize; block_units.len()];
    let mut matching = Vec::with_capacity(idempotents.len());
    for (i, e) in idempotents.iter().enumerate() {
        let image = cf.bulk_to_boundary(&e.coords);
        let Some(coefficients) = units.solve(&image) else {
            return Err(Violation::Matching {
                idempotent: i,
                coefficients: Vec::new(),
                detail: "image is not a combination of block units".into(),
            });
        };
        let ones: Vec<usize> = (0..coefficients.len())
            .filter(|&j| coefficients[j].is_one())
            .collect();
        let clean = coefficients.iter().all(|c| c.is_zero() || c.is_one());
        if !clean || ones.len() > 1 {
            return Err(Violation::Matching {
                idempotent: i,
                coefficients,
                detail: "image must be 0 or exactly one block unit".into(),
            });
        }
        if let Some(&j) = ones.first() {
            hits[j] += 1;
        }
        matching.push(ones.first().copied());
    }
    if let Some((block, &h)) = hits.iter().enumerate().find(|(_, &h)| h != 1) {
        return Err(Violation::BlockCoverage { block, hits: h });
    }
    Ok(matching)
}

/// The elementary data on `e_i A` and one block, in the block's basis.
fn summand_data<F: Field>(
    cf: &CFData<F>,
    e: &AlgebraElement<F>,
    block: Option<&Block<F>>,
) -> Result<CFData<F>> {
    let lambda = dot(&cf.theta_bulk, &e.coords);
    let bulk =
        SuperAlgebra::from_products(vec![Parity::Even], [(0, 0, 0, F::one())], vec![F::one()])?;
    let (boundary, theta_boundary) = match block {
        None => (SuperAlgebra::zero(), Vec::new()),
        Some(bl) => (
            bl.algebra.clone(),
            bl.basis
                .iter()
                .map(|v| dot(&cf.theta_boundary, v))
                .collect(),
        ),
    };
    let tau_lower = Matrix::from_columns(boundary.dim(), &[boundary.unit().to_vec()]);
    CFData::new(
        bulk,
        boundary,
        vec![lambda],
        theta_boundary,
        tau_lower,
        None,
    )?
    .with_derived_tau_upper()
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        mul_add(&mut acc, x, y);
    }
    acc
}

/// Runs the whole pipeline; the first failing stage decides the verdict.
pub fn classify<F: ExactRational>(cf: &CFData<F>, seed: u64) -> ClassificationReport<F> {
    let report = verify_all(cf);
    if !report.passed() {
        return ClassificationReport::stop(Classification::AxiomViolation(Violation::Checks {
            block: None,
            report,
        }));
    }
    let fail = |e: Error| {
        ClassificationReport::stop(match e {
            Error::NotSplit(s) => Classification::NotSplit(s),
            other => Classification::NotSemisimple(other.to_string()),
        })
    };
    if !cf.bulk.is_semisimple() {
        return fail(Error::NotSemisimple);
    }
    let idempotents = match primitive_idempotents_commutative(&cf.bulk, stage_seed(seed, 0)) {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let blocks = match decompose_boundary(&cf.boundary, stage_seed(seed, 1)) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let mut types = Vec::with_capacity(blocks.len());
    for (j, bl) in blocks.iter().enumerate() {
        let g = bl.algebra.grading();
        let ty = identify_block_type(g.even, g.odd);
        if ty == BlockType::Unknown {
            return fail(Error::NotSplit(format!(
                "block {j} with graded dimension ({}|{}) is neither Mat(n|m) nor Q(n)",
                g.even, g.odd
            )));
        }
        let theta: Vec<F> = bl
            .basis
            .iter()
            .map(|v| dot(&cf.theta_boundary, v))
            .collect();
        if let Err(detail) = form_proportionality(&bl.algebra, &theta) {
            return ClassificationReport::stop(Classification::AxiomViolation(Violation::Form {
                block: j,
                detail,
            }));
        }
        types.push(ty);
    }
    let units: Vec<Vec<F>> = blocks.iter().map(|b| b.unit.clone()).collect();
    let matching = match match_idempotents(cf, &idempotents, &units) {
        Ok(m) => m,
        Err(v) => return ClassificationReport::stop(Classification::AxiomViolation(v)),
    };

    let mut summands = Vec::with_capacity(idempotents.len());
    for (e, target) in idempotents.into_iter().zip(matching) {
        let block = target.map(|j| &blocks[j]);
        let data = match summand_data(cf, &e, block) {
            Ok(d) => d,
            Err(err) => {
                return ClassificationReport::stop(Classification::AxiomViolation(
                    Violation::Form {
                        block: target.unwrap_or(usize::MAX),
                        detail: err.to_string(),
                    },
                ))
            }
        };
        let report = verify_all(&data);
        if !report.passed() {
            return ClassificationReport::stop(Classification::AxiomViolation(Violation::Checks {
                block: target,
                report,
            }));
        }
        let lambda = data.theta_bulk[0].clone();
        let (kind, n, m, mu_squared) = match target.map(|j| types[j]) {
            None => (ElementaryKind::Triv, 0, 0, None),
            Some(BlockType::Mat { n, m }) => (ElementaryKind::Mat, n, m, Some(lambda.clone())),
            // the Cardy identity on Q(n) forces lambda = -mu^2 / 2
            Some(BlockType::Q { n }) => (
                ElementaryKind::Q,
                n,
                0,
                Some(-(lambda.clone() + lambda.clone())),
            ),
            Some(BlockType::Unknown) => unreachable!("rejected above"),
        };
        summands.push(ElementarySummand {
            kind,
            n,
            m,
            lambda,
            mu_squared,
            bulk_idempotent: e,
            block_unit: block.map(|b| cf.boundary.element(b.unit.clone())),
        });
    }
    summands.sort_by(|a, b| (a.kind, a.n, a.m, &a.lambda).cmp(&(b.kind, b.n, b.m, &b.lambda)));
    ClassificationReport {
        summands,
        verdict: Classification::Classified,
    }
}
