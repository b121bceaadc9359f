mod common;

use common::{frac, q, random_summands, sum_of, Key};
use supercardy::cardy::{direct_sum_cf, ElementaryKind};
use supercardy::classifier::{
    decompose_boundary, form_proportionality, identify_block_type, match_idempotents,
    primitive_idempotents_commutative, symmetric_forms, BlockType, Violation,
};
use supercardy::superalgebra::{build_mat, build_q, direct_sum_algebras};
use supercardy::{
    build_elementary, classify, Classification, ElementaryParams, Error, Matrix, Parity, Rational,
    SuperAlgebra,
};

fn ground() -> SuperAlgebra<Rational> {
    SuperAlgebra::from_products(vec![Parity::Even], [(0, 0, 0, q(1))], vec![q(1)]).unwrap()
}

fn keys(report: &supercardy::ClassificationReport<Rational>) -> Vec<Key> {
    report
        .summands
        .iter()
        .map(|s| (s.kind, s.n, s.m, s.lambda.clone()))
        .collect()
}

#[test]
fn idempotents_of_split_algebras() {
    let k = ground();
    let e = primitive_idempotents_commutative(&k, 0).unwrap();
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].coords, vec![q(1)]);

    let k2 = direct_sum_algebras(&k, &k).algebra;
    let k3 = direct_sum_algebras(&k2, &k).algebra;
    let (scrambled, _) = supercardy::random_graded_basis_change(&k3, 5);
    let e = primitive_idempotents_commutative(&scrambled, 9).unwrap();
    assert_eq!(e.len(), 3);
    let mut total = vec![q(0); 3];
    for (i, a) in e.iter().enumerate() {
        for (j, b) in e.iter().enumerate() {
            let prod = scrambled.mul_coords(&a.coords, &b.coords);
            let expected = if i == j {
                a.coords.clone()
            } else {
                vec![q(0); 3]
            };
            assert_eq!(prod, expected);
        }
        for (t, x) in total.iter_mut().zip(&a.coords) {
            *t += x;
        }
    }
    assert_eq!(total, scrambled.unit().to_vec());
}

#[test]
fn irrational_splitting_is_reported() {
    // K[t]/(t^2 - 2)
    let alg = SuperAlgebra::from_products(
        vec![Parity::Even; 2],
        [
            (0, 0, 0, q(1)),
            (0, 1, 1, q(1)),
            (1, 0, 1, q(1)),
            (1, 1, 0, q(2)),
        ],
        vec![q(1), q(0)],
    )
    .unwrap();
    assert!(matches!(
        primitive_idempotents_commutative(&alg, 0),
        Err(Error::NotSplit(_))
    ));

    let dual = SuperAlgebra::from_products(
        vec![Parity::Even; 2],
        [(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
        vec![q(1), q(0)],
    )
    .unwrap();
    assert_eq!(
        primitive_idempotents_commutative(&dual, 0),
        Err(Error::NotSemisimple)
    );
}

#[test]
fn boundary_blocks() {
    let m11 = build_mat::<Rational>(1, 1).unwrap();
    let blocks = decompose_boundary(&m11, 0).unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0].algebra.dim(), 4);

    let q1 = build_q::<Rational>(1).unwrap();
    let sum = direct_sum_algebras(&m11, &q1).algebra;
    let (scrambled, _) = supercardy::random_graded_basis_change(&sum, 3);
    let mut dims: Vec<(usize, usize)> = decompose_boundary(&scrambled, 1)
        .unwrap()
        .iter()
        .map(|b| (b.algebra.grading().even, b.algebra.grading().odd))
        .collect();
    dims.sort();
    assert_eq!(dims, vec![(1, 1), (2, 2)]);

    assert!(decompose_boundary(&SuperAlgebra::<Rational>::zero(), 0)
        .unwrap()
        .is_empty());
}

#[test]
fn block_types() {
    assert_eq!(identify_block_type(2, 2), BlockType::Mat { n: 1, m: 1 });
    assert_eq!(identify_block_type(1, 1), BlockType::Q { n: 1 });
    assert_eq!(identify_block_type(5, 4), BlockType::Mat { n: 2, m: 1 });
    assert_eq!(identify_block_type(1, 0), BlockType::Mat { n: 1, m: 0 });
    assert_eq!(identify_block_type(9, 9), BlockType::Q { n: 3 });
    assert_eq!(identify_block_type(3, 0), BlockType::Unknown);
    for n in 0..=4usize {
        for m in 0..=n {
            if n + m == 0 {
                continue;
            }
            let g = build_mat::<Rational>(n, m).unwrap().grading();
            assert_eq!(identify_block_type(g.even, g.odd), BlockType::Mat { n, m });
        }
    }
    for n in 1..=4 {
        let g = build_q::<Rational>(n).unwrap().grading();
        assert_eq!(identify_block_type(g.even, g.odd), BlockType::Q { n });
    }
}

#[test]
fn symmetric_forms_are_lines() {
    assert_eq!(
        symmetric_forms(&build_mat::<Rational>(1, 1).unwrap()).len(),
        1
    );

    let q1 = build_q::<Rational>(1).unwrap();
    let forms = symmetric_forms(&q1);
    assert_eq!(forms.len(), 1);
    assert_eq!(forms[0][0], q(0));

    // Mat(2|1): even part E11, E12, E21, E22, E33; the solution is str up to scale
    let m21 = build_mat::<Rational>(2, 1).unwrap();
    let forms = symmetric_forms(&m21);
    assert_eq!(forms.len(), 1);
    let f = &forms[0];
    let scale = f[0].clone();
    let str_even = [q(1), q(0), q(0), q(1), q(-1)];
    for (x, s) in f.iter().zip(str_even.iter()) {
        assert_eq!(x.clone(), scale.clone() * s);
    }
    assert!(f[5..].iter().all(|x| *x == q(0)));

    let cf = build_elementary(&ElementaryParams::mat(2, 1, q(4), q(2))).unwrap();
    let prop = form_proportionality(&cf.boundary, &cf.theta_boundary).unwrap();
    assert_eq!(prop.coefficient.clone() * &prop.generator[0], q(2));
    let mut bad = cf.theta_boundary.clone();
    bad[1] = q(7);
    assert!(form_proportionality(&cf.boundary, &bad).is_err());
}

#[test]
fn idempotent_matching() {
    let mat = build_elementary(&ElementaryParams::mat(1, 1, q(1), q(1))).unwrap();
    let triv = build_elementary(&ElementaryParams::triv(q(3))).unwrap();
    let cf = direct_sum_cf(&mat, &triv);
    let e = vec![cf.bulk.basis_element(0), cf.bulk.basis_element(1)];
    let unit = cf.boundary.unit().to_vec();
    assert_eq!(
        match_idempotents(&cf, &e, std::slice::from_ref(&unit)).unwrap(),
        vec![Some(0), None]
    );
    let flipped = vec![e[1].clone(), e[0].clone()];
    assert_eq!(
        match_idempotents(&cf, &flipped, &[unit]).unwrap(),
        vec![None, Some(0)]
    );

    // e_1 sent to the sum of two block units
    let qq = build_elementary(&ElementaryParams::q(1, frac(-1, 2), q(1))).unwrap();
    let mut two = direct_sum_cf(&mat, &qq);
    let both: Vec<Rational> = two
        .tau_lower
        .column(0)
        .iter()
        .zip(two.tau_lower.column(1))
        .map(|(a, b)| a + b)
        .collect();
    let mut cols = vec![both.clone(), vec![q(0); both.len()]];
    cols[1] = two.tau_lower.column(1);
    two.tau_lower = Matrix::from_columns(both.len(), &cols);
    let blocks = decompose_boundary(&two.boundary, 0).unwrap();
    let units: Vec<Vec<Rational>> = blocks.iter().map(|b| b.unit.clone()).collect();
    let e = vec![two.bulk.basis_element(0), two.bulk.basis_element(1)];
    let err = match_idempotents(&two, &e, &units).unwrap_err();
    let Violation::Matching {
        idempotent,
        coefficients,
        ..
    } = err
    else {
        panic!("expected a matching violation")
    };
    assert_eq!(idempotent, 0);
    assert_eq!(coefficients, vec![q(1), q(1)]);
}

#[test]
fn classify_single_and_mixed() {
    let cf = build_elementary(&ElementaryParams::mat(1, 1, q(1), q(1))).unwrap();
    let report = classify(&cf, 0);
    assert!(report.is_classified());
    assert_eq!(keys(&report), vec![(ElementaryKind::Mat, 1, 1, q(1))]);
    assert_eq!(report.summands[0].mu_squared, Some(q(1)));

    let params = vec![
        ElementaryParams::mat(1, 1, q(1), q(1)),
        ElementaryParams::q(1, frac(-1, 2), q(1)),
        ElementaryParams::triv(q(7)),
    ];
    let scrambled = sum_of(&params).scramble(11);
    let report = classify(&scrambled, 4);
    assert!(report.is_classified(), "{:?}", report.verdict);
    assert_eq!(
        keys(&report),
        vec![
            (ElementaryKind::Triv, 0, 0, q(7)),
            (ElementaryKind::Mat, 1, 1, q(1)),
            (ElementaryKind::Q, 1, 0, frac(-1, 2)),
        ]
    );
    let q_summand = &report.summands[2];
    assert_eq!(q_summand.mu_squared, Some(q(1)));
}

#[test]
fn wrong_mu_is_a_cardy_violation() {
    let mut cf = build_elementary(&ElementaryParams::mat(1, 1, q(1), q(1))).unwrap();
    cf.theta_boundary = cf.theta_boundary.iter().map(|t| t * q(3)).collect();
    cf.tau_upper = None;
    let report = classify(&cf, 0);
    let Classification::AxiomViolation(Violation::Checks { report, .. }) = report.verdict else {
        panic!("expected an axiom violation")
    };
    let failing: Vec<_> = report.failures().map(|o| o.kind).collect();
    assert_eq!(failing, vec![supercardy::CheckKind::Cardy]);
}

#[test]
fn report_invariants_on_random_sums() {
    for seed in 0..12 {
        let (params, expected) = random_summands(seed, 24);
        let cf = sum_of(&params).scramble(seed * 7 + 1);
        let report = classify(&cf, seed);
        assert!(report.is_classified(), "seed {seed}: {:?}", report.verdict);
        assert_eq!(keys(&report), expected, "seed {seed}");

        let da = cf.bulk.dim();
        let db = cf.boundary.dim();
        let mut e_sum = vec![q(0); da];
        let mut u_sum = vec![q(0); db];
        let mut blocks = 0;
        for s in &report.summands {
            assert_ne!(s.lambda, q(0));
            for (t, x) in e_sum.iter_mut().zip(&s.bulk_idempotent.coords) {
                *t += x;
            }
            if let Some(u) = &s.block_unit {
                blocks += 1;
                for (t, x) in u_sum.iter_mut().zip(&u.coords) {
                    *t += x;
                }
            }
            let sq = cf
                .bulk
                .mul_coords(&s.bulk_idempotent.coords, &s.bulk_idempotent.coords);
            assert_eq!(sq, s.bulk_idempotent.coords);
        }
        assert_eq!(e_sum, cf.bulk.unit().to_vec());
        assert_eq!(u_sum, cf.boundary.unit().to_vec());
        assert!(report.summands.len() >= blocks);
    }
}

#[test]
fn determinism() {
    let (params, _) = random_summands(3, 30);
    let cf = sum_of(&params).scramble(3);
    assert_eq!(classify(&cf, 17), classify(&cf, 17));
}
