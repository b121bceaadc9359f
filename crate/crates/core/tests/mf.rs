mod common;

use common::{frac, q, residue_oracle};
use supercardy::mf::*;
use supercardy::{classify, verify_all, Classification, Parity, Rational};

fn x() -> Vec<String> {
    vec!["x".into()]
}

fn upoly(coeffs: &[i64]) -> Poly<Rational> {
    Poly::new(
        x(),
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (vec![k as u32], q(c))),
    )
    .unwrap()
}

fn xk(k: u32) -> Poly<Rational> {
    Poly::monomial(x(), vec![k], q(1))
}

fn mono(s: u32, a: u32) -> MatrixFactorization<Rational> {
    MatrixFactorization::monomial("x", s, a).unwrap()
}

#[test]
fn polynomial_residue_oracle_sanity() {
    // 1/(2x) -> 1/2, x/(3x^2) -> 1/3, (x^2+1)/(x^3) -> 1
    assert_eq!(residue_oracle(&xk(0), &upoly(&[0, 2])), frac(1, 2));
    assert_eq!(residue_oracle(&xk(1), &upoly(&[0, 0, 3])), frac(1, 3));
    assert_eq!(
        residue_oracle(&upoly(&[1, 0, 1]), &upoly(&[0, 0, 0, 1])),
        q(1)
    );
    assert_eq!(residue_oracle(&xk(0), &upoly(&[0, 0, 3])), q(0));
}

#[test]
fn validation() {
    for s in 2..=6 {
        for a in 1..s {
            assert!(validate_mf(&mono(s, a)).is_ok());
        }
    }
    let bad = MatrixFactorization::rank_one(xk(3), xk(1), upoly(&[1, 0, 1])).unwrap();
    let v = validate_mf(&bad).unwrap_err();
    assert_eq!((v.row, v.col), (0, 0));
    assert_eq!(v.found, upoly(&[0, 1, 0, 1]));
    assert_eq!(v.expected, xk(3));
    assert!(MatrixFactorization::<Rational>::monomial("x", 3, 0).is_err());
    assert!(MatrixFactorization::<Rational>::monomial("x", 3, 3).is_err());
}

#[test]
fn milnor_rings() {
    let r = milnor_ring(&xk(3)).unwrap();
    assert_eq!(r.basis(), &[vec![0], vec![1]]);
    assert_eq!(milnor_ring(&xk(2)).unwrap().dim(), 1);
    let vars = vec!["x".to_string(), "y".to_string()];
    let w = Poly::new(vars, [(vec![3, 0], q(1)), (vec![0, 3], q(1))]).unwrap();
    let r2 = milnor_ring(&w).unwrap();
    assert_eq!(
        r2.basis(),
        &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]
    );
    // normal form is idempotent and kills the partials
    for i in 0..2 {
        assert!(r2.normal_form(&w.derivative(i)).iter().all(|c| *c == q(0)));
    }
    let p = w.mul(&w).add(&Poly::var(w.vars().to_vec(), 0));
    let nf = r2.normal_form(&p);
    assert_eq!(r2.normal_form(&r2.to_poly(&nf)), nf);
    // general univariate W: x^3 - 3x has W' = 3(x^2 - 1)
    let w = upoly(&[0, -3, 0, 1]);
    let r = milnor_ring(&w).unwrap();
    assert_eq!(r.normal_form(&xk(2)), vec![q(1), q(0)]);
}

#[test]
fn unsupported_shapes() {
    let vars = vec!["x".to_string(), "y".to_string()];
    let xy = Poly::monomial(vars.clone(), vec![1, 1], q(1));
    assert!(matches!(
        milnor_ring(&xy),
        Err(supercardy::Error::UnsupportedShape(_))
    ));
    let only_x = Poly::monomial(vars, vec![3, 0], q(1));
    assert!(milnor_ring(&only_x).is_err());
    assert!(milnor_ring(&xk(1)).is_err());
}

#[test]
fn residues_agree_with_oracle() {
    for s in 2..=6u32 {
        let w = xk(s);
        let ring = milnor_ring(&w).unwrap();
        let wp = w.derivative(0);
        for k in 0..(s - 1) {
            assert_eq!(
                ring.residue(&xk(k)),
                residue_oracle(&xk(k), &wp),
                "s={s} k={k}"
            );
        }
        // unreduced input too
        let p = upoly(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(ring.residue(&p), residue_oracle(&p, &wp), "s={s}");
    }
    let w = upoly(&[1, -3, 2, 0, 5]);
    let ring = milnor_ring(&w).unwrap();
    for k in 0..6 {
        assert_eq!(
            ring.residue(&xk(k)),
            residue_oracle(&xk(k), &w.derivative(0)),
            "k={k}"
        );
    }
    assert_eq!(milnor_ring(&xk(3)).unwrap().residue(&xk(1)), frac(1, 3));
    assert_eq!(milnor_ring(&xk(3)).unwrap().residue(&xk(0)), q(0));
    assert_eq!(milnor_ring(&xk(2)).unwrap().residue(&xk(0)), frac(1, 2));
}

#[test]
fn cohomology_dimensions() {
    for (s, a, even, odd) in [
        (2, 1, 1, 1),
        (3, 1, 1, 1),
        (3, 2, 1, 1),
        (4, 2, 2, 2),
        (4, 1, 1, 1),
    ] {
        let coh = end_cohomology(&mono(s, a)).unwrap();
        assert_eq!(
            (coh.even_basis().len(), coh.odd_basis().len()),
            (even, odd),
            "x^{s}, a={a}"
        );
        assert_eq!(euler_characteristic(&coh), 0);
    }
}

#[test]
fn representatives_are_closed_and_commutators_exact() {
    for (s, a) in [(2, 1), (3, 1), (4, 2), (5, 2)] {
        let mf = mono(s, a);
        let d = mf.differential();
        let coh = end_cohomology(&mf).unwrap();
        for (parity, reps) in [
            (Parity::Even, coh.even_basis()),
            (Parity::Odd, coh.odd_basis()),
        ] {
            for y in reps {
                assert!(graded_commutator(&d, y, parity).is_zero());
            }
        }
        // D of a few arbitrary morphisms lands on zero in cohomology
        for k in 0..3u32 {
            let mut phi = PolyMatrix::zeros(x(), 2, 2);
            phi.set(0, 0, upoly(&[1, k as i64, 2]));
            phi.set(1, 1, xk(k));
            let ex = graded_commutator(&d, &phi, Parity::Even);
            assert!(coh.coordinates(&ex).unwrap().iter().all(|c| *c == q(0)));
            let mut psi = PolyMatrix::zeros(x(), 2, 2);
            psi.set(0, 1, xk(k));
            psi.set(1, 0, upoly(&[3, 0, 1]));
            let ex = graded_commutator(&d, &psi, Parity::Odd);
            assert!(coh.coordinates(&ex).unwrap().iter().all(|c| *c == q(0)));
        }
        // a non-closed morphism is rejected
        let mut bad = PolyMatrix::zeros(x(), 2, 2);
        bad.set(0, 0, q_poly(1));
        assert!(coh.coordinates(&bad).is_err());
    }
}

fn q_poly(c: i64) -> Poly<Rational> {
    Poly::constant(x(), q(c))
}

#[test]
fn cutoff_is_stable() {
    for s in 2..=5u32 {
        for a in 1..s {
            let mf = mono(s, a);
            let base = cohomology_dims_at(&mf, 3 * s);
            assert_eq!(base, cohomology_dims_at(&mf, 4 * s));
            assert_eq!(base, cohomology_dims_at(&mf, 5 * s));
        }
    }
}

#[test]
fn x_squared_data() {
    let lg = LandauGinzburg::new(&mono(2, 1)).unwrap();
    let sigma = lg.cohomology.odd_basis()[0].clone();
    // sigma^2 = -1
    let sq = lg.cohomology.coordinates(&sigma.mul(&sigma)).unwrap();
    assert_eq!(sq, vec![q(-1), q(0)]);
    assert_eq!(lg.boundary_bulk(&sigma), vec![q(-2)]);
    assert_eq!(lg.theta_a(&xk(0)), frac(1, 2));
    assert_eq!(lg.theta_b(&sigma, ThetaBSign::AsBoundaryBulk), q(-1));
    assert_eq!(lg.theta_b(&sigma, ThetaBSign::Unsigned), q(1));
    let id = &lg.cohomology.even_basis()[0];
    assert_eq!(lg.theta_b(id, ThetaBSign::Unsigned), q(0));
    assert_eq!(lg.boundary_bulk(id), vec![q(0)]);
}

#[test]
fn x_cubed_data() {
    let lg = LandauGinzburg::new(&mono(3, 1)).unwrap();
    let rho = lg.cohomology.odd_basis()[0].clone();
    // the odd class is (0, -x; 1, 0) up to scale
    let expected = PolyMatrix::from_rows(
        x(),
        vec![
            vec![q_poly(0), xk(1).scale(&q(-1))],
            vec![q_poly(1), q_poly(0)],
        ],
    )
    .unwrap();
    let scale = rho.get(1, 0).coeff(&[0]);
    assert_eq!(rho, expected.scale(&scale));
    let rho = expected;
    assert_eq!(lg.boundary_bulk(&rho), vec![q(0), q(3)]);
    assert_eq!(lg.theta_b(&rho, ThetaBSign::AsBoundaryBulk), q(1));
    // tau^*(1) = 0 for odd n
    let id = PolyMatrix::identity(x(), 2);
    assert_eq!(lg.boundary_bulk(&id), vec![q(0), q(0)]);
    // tau_*(x) = x 1_R is exact here
    assert_eq!(lg.bulk_boundary(&xk(1)).unwrap(), vec![q(0), q(0)]);
    assert_eq!(lg.bulk_boundary(&xk(0)).unwrap(), vec![q(1), q(0)]);
}

#[test]
fn bulk_boundary_is_multiplicative() {
    for (s, a) in [(4, 2), (5, 2), (5, 1)] {
        let lg = LandauGinzburg::new(&mono(s, a)).unwrap();
        let b = lg.cohomology.algebra();
        for i in 0..s - 1 {
            for j in 0..s - 1 {
                let lhs = lg.bulk_boundary(&xk(i + j)).unwrap();
                let rhs = b.mul_coords(
                    &lg.bulk_boundary(&xk(i)).unwrap(),
                    &lg.bulk_boundary(&xk(j)).unwrap(),
                );
                assert_eq!(lhs, rhs, "x^{s}, a={a}: x^{i} x^{j}");
            }
        }
    }
}

#[test]
fn mf_data_satisfies_the_axioms() {
    for s in 2..=5u32 {
        for a in 1..s {
            let cf = mf_to_cf(&mono(s, a)).unwrap();
            let report = verify_all(&cf);
            assert!(
                report.passed(),
                "x^{s}, a={a}: {:?}",
                report.failures().collect::<Vec<_>>()
            );
            // str(m_{1,1}) = chi
            let tu = cf.tau_upper.clone().unwrap();
            let (lhs, rhs) =
                supercardy::cardy::cardy_sides(&cf, &tu, supercardy::SignRule::Printed);
            let unit = cf.boundary.unit().iter().position(|c| *c != q(0)).unwrap();
            assert_eq!(
                rhs[(unit, unit)],
                q(end_cohomology(&mono(s, a))
                    .unwrap()
                    .grading()
                    .euler_characteristic())
            );
            assert_eq!(lhs[(unit, unit)], q(0));
        }
    }
}

#[test]
fn unsigned_theta_b_breaks_adjointness() {
    let lg = LandauGinzburg::new(&mono(2, 1)).unwrap();
    let cf = lg.to_cf_with(ThetaBSign::Unsigned).unwrap();
    let report = verify_all(&cf);
    assert!(report
        .failures()
        .any(|o| o.kind == supercardy::CheckKind::Adjoint));
}

#[test]
fn zero_factorization() {
    let r0 = MatrixFactorization::new(
        xk(3),
        PolyMatrix::zeros(x(), 0, 0),
        PolyMatrix::zeros(x(), 0, 0),
    )
    .unwrap();
    let coh = end_cohomology(&r0).unwrap();
    assert_eq!(coh.dim(), 0);
    assert_eq!(euler_characteristic(&coh), 0);
}

#[test]
fn tensor_products() {
    let ry = MatrixFactorization::monomial("y", 2, 1).unwrap();
    let t = tensor_mf(&mono(2, 1), &ry).unwrap();
    assert!(validate_mf(&t).is_ok());
    assert_eq!(t.rank(), 2);
    assert!(matches!(
        tensor_mf(&mono(2, 1), &mono(3, 1)),
        Err(supercardy::Error::VariableClash(_))
    ));

    // Kunneth against direct cutoff computation at n = 2
    for (s1, a1, s2, a2) in [(2, 1, 2, 1), (3, 1, 2, 1), (3, 1, 3, 2)] {
        let r1 = mono(s1, a1);
        let r2 = MatrixFactorization::monomial("y", s2, a2).unwrap();
        let t = tensor_mf(&r1, &r2).unwrap();
        assert!(validate_mf(&t).is_ok());
        let direct = end_cohomology(&t).unwrap().grading();
        let kunneth = end_dims(&t).unwrap();
        assert_eq!(direct, kunneth, "x^{s1} (x) y^{s2}");
    }
}

#[test]
fn dao_checks() {
    for s in 2..=6u32 {
        for a in 1..s {
            let rep = check_dao(&mono(s, a)).unwrap();
            assert!(rep.holds(), "x^{s}, a={a}: {rep:?}");
        }
    }
    let ry = MatrixFactorization::monomial("y", 2, 1).unwrap();
    let rz = MatrixFactorization::monomial("z", 3, 1).unwrap();
    let t2 = tensor_mf(&mono(2, 1), &ry).unwrap();
    assert!(matches!(
        check_dao(&t2),
        Err(supercardy::Error::Hypothesis(_))
    ));
    let t3 = tensor_mf(&t2, &rz).unwrap();
    assert!(validate_mf(&t3).is_ok());
    let rep = check_dao(&t3).unwrap();
    assert_eq!(rep.nvars, 3);
    assert!(rep.holds());
}

#[test]
fn classify_mf_data() {
    // W = x^2: A = K and B is Q(1) with xi^2 = -1, a non-split form of Q(1)
    let cf = mf_to_cf(&mono(2, 1)).unwrap();
    let report = classify(&cf, 0);
    assert!(report.is_classified(), "{:?}", report.verdict);
    for s in &report.summands {
        assert_eq!(s.n, 1);
        assert_eq!(s.kind, supercardy::ElementaryKind::Q);
        assert_eq!(s.mu_squared, Some(q(-1)));
    }
    // W = x^3: the Milnor ring has a nilpotent
    let cf = mf_to_cf(&mono(3, 1)).unwrap();
    assert!(matches!(
        classify(&cf, 0).verdict,
        Classification::NotSemisimple(_)
    ));
}
