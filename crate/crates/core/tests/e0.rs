use lhs_core::e0::*;
use lhs_core::group::{AbelianPGroupSpec, ExtensionSpec};
use lhs_core::ring::{monomial_basis, CohoClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `C_p -> C_{p^2} -> C_p`
fn cyclic_extension(p: u32) -> ExtensionSpec {
    let q = AbelianPGroupSpec::new(p, vec![1]).unwrap();
    ExtensionSpec::new(1, q.clone(), CohoClass::parse("x1", &q, 2).unwrap(), None).unwrap()
}

fn random_bidegrees(rng: &mut ChaCha8Rng, total: usize) -> (usize, usize, usize, usize) {
    loop {
        let v: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=total)).collect();
        if v.iter().sum::<usize>() <= total {
            return (v[0], v[1], v[2], v[3]);
        }
    }
}

#[test]
fn double_complex_shape_and_signs() {
    let dc = DoubleComplex::new(&cyclic_extension(2), 4).unwrap();
    assert_eq!(dc.dim(2, 2), 128);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..=2 {
        for j in 0..=2 - i {
            let x = dc.random(i, j, &mut rng);
            assert!(dc.d0(&dc.d0(&x).unwrap()).unwrap().is_zero());
            assert!(dc.d1(&dc.d1(&x).unwrap()).unwrap().is_zero());
            let mut s = dc.d0(&dc.d1(&x).unwrap()).unwrap();
            dc.axpy(&mut s, 1, Some(&dc.d1(&dc.d0(&x).unwrap()).unwrap())).unwrap();
            assert!(s.is_zero(), "anticommutation at ({i},{j})");
        }
    }
}

#[test]
fn cup_product_is_unital_associative_and_twisted_commutative() {
    for p in [2, 3] {
        let dc = DoubleComplex::new(&cyclic_extension(p), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (a, b, c, d) = random_bidegrees(&mut rng, 3);
            let e = rng.gen_range(0..=3 - (a + b + c + d));
            let (f, t) = (dc.random(a, b, &mut rng), dc.random(c, d, &mut rng));
            let g = dc.random(e, 0, &mut rng);
            assert_eq!(dc.cup(&dc.unit(), &f).unwrap(), f);
            assert_eq!(dc.cup(&f, &dc.unit()).unwrap(), f);
            let left = dc.cup(&dc.cup(&f, &t).unwrap(), &g).unwrap();
            let right = dc.cup(&f, &dc.cup(&t, &g).unwrap()).unwrap();
            assert_eq!(left, right);
            let twist = dc.product(&f, &t, ProductKind::Twist).unwrap().unwrap();
            let mut rev = dc.cup(&t, &f).unwrap();
            if (f.degree() * t.degree()) % 2 == 1 {
                rev = E0Cochain {
                    values: rev.values.iter().map(|&v| (p - v) % p).collect(),
                    ..rev
                };
            }
            assert_eq!(twist, rev);
        }
    }
}

#[test]
fn differentials_are_derivations() {
    let dc = DoubleComplex::new(&cyclic_extension(3), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let (a, b, c, d) = random_bidegrees(&mut rng, 2);
        let (f, t) = (dc.random(a, b, &mut rng), dc.random(c, d, &mut rng));
        let s = if f.degree() % 2 == 1 { -1 } else { 1 };
        for use_d0 in [true, false] {
            let d = |x: &E0Cochain| if use_d0 { dc.d0(x) } else { dc.d1(x) }.unwrap();
            let mut r = d(&dc.cup(&f, &t).unwrap());
            dc.axpy(&mut r, -1, Some(&dc.cup(&d(&f), &t).unwrap())).unwrap();
            dc.axpy(&mut r, -s, Some(&dc.cup(&f, &d(&t)).unwrap())).unwrap();
            assert!(r.is_zero());
        }
    }
}

#[test]
fn cup_one_coboundary_formulas() {
    for p in [2, 3] {
        let dc = DoubleComplex::new(&cyclic_extension(p), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let (a, b, c, d) = random_bidegrees(&mut rng, 3);
            let (f, t) = (dc.random(a, b, &mut rng), dc.random(c, d, &mut rng));
            assert_eq!(coboundary_residuals(&dc, &f, &t).unwrap(), [0; 4], "({a},{b}) x ({c},{d})");
        }
    }
}

#[test]
fn other_sign_conventions_break_the_coboundary_formulas() {
    let alternatives = [
        Conventions { koszul_evaluation: true, ..CONVENTIONS },
        Conventions { steenrod_negated: true, ..CONVENTIONS },
        Conventions { cup01_map_sign: true, ..CONVENTIONS },
    ];
    for conv in alternatives {
        let mut dc = DoubleComplex::new(&cyclic_extension(3), 4).unwrap();
        dc.conventions = conv;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let broken = (0..40).any(|_| {
            let (a, b, c, d) = random_bidegrees(&mut rng, 3);
            let (f, t) = (dc.random(a, b, &mut rng), dc.random(c, d, &mut rng));
            coboundary_residuals(&dc, &f, &t).unwrap() != [0; 4]
        });
        assert!(broken, "{conv:?}");
    }
}

#[test]
fn ladder_represents_the_extension_class() {
    for p in [2, 3] {
        let spec = cyclic_extension(p);
        let dc = DoubleComplex::new(&spec, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in [build_ladder(&dc).unwrap(), build_ladder_with(&dc, Some(&mut rng)).unwrap()] {
            assert!(ladder_residuals(&dc, &l).unwrap().iter().all(|&r| r == 0));
            assert_eq!(class_sign(&dc, &l.xi, &spec.xi, &[]), Some(1));
            // d_3(t) is only defined modulo the image of d_2
            let q = &spec.quotient;
            let ideal: Vec<CohoClass> = monomial_basis(q, 1)
                .into_iter()
                .map(|m| spec.xi.cup(&CohoClass::monomial(q, m, 1)).unwrap())
                .collect();
            assert!(class_sign(&dc, &l.xi_prime, &spec.xi_prime(), &ideal).is_some());
        }
    }
}

#[test]
fn split_extension_has_trivial_xi() {
    let q = AbelianPGroupSpec::new(3, vec![1]).unwrap();
    let spec = ExtensionSpec::new(1, q.clone(), CohoClass::zero(&q, 2), None).unwrap();
    let dc = DoubleComplex::new(&spec, 3).unwrap();
    let l = build_ladder(&dc).unwrap();
    assert_eq!(class_sign(&dc, &l.xi, &spec.xi, &[]), Some(1));
    assert!(class_sign(&dc, &l.xi, &CohoClass::parse("x1", &q, 2).unwrap(), &[]).is_none());
}

#[test]
fn eta_recursion() {
    for p in [2, 3] {
        let dc = DoubleComplex::new(&cyclic_extension(p), 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let l = build_ladder_with(&dc, Some(&mut rng)).unwrap();
        assert!(!l.xi_prime.is_zero());
        for n in [1, 2] {
            let (fam, res) = eta_family(&dc, &l, n).unwrap();
            assert_eq!(res, [0; 4], "p={p} n={n}");
            if n == 1 {
                assert!(fam.eta[2].is_none() && fam.eta[3].is_none());
            }
        }
    }
}

#[test]
fn eta_recursion_detects_the_wrong_cup_one_orientation() {
    let mut dc = DoubleComplex::new(&cyclic_extension(3), 5).unwrap();
    dc.conventions.steenrod_negated = true;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let l = build_ladder_with(&dc, Some(&mut rng)).unwrap();
    let (_, res) = eta_family(&dc, &l, 2).unwrap();
    assert_ne!(res, [0; 4]);
}

#[test]
fn budget_is_enforced() {
    assert!(matches!(
        DoubleComplex::with_budget(&cyclic_extension(3), 4, 1000),
        Err(E0Error::Budget { .. })
    ));
}
