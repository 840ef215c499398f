use std::sync::Arc;

use lhs_core::diagonal::*;
use lhs_core::group::{AbelianPGroupSpec, FiniteGroupTable};
use lhs_core::resolution::*;
use lhs_core::ring::{massey_homotopy, monomial_basis, ChainModel, CohoClass};

#[test]
fn cyclic_homotopy_identity() {
    for (n, p) in [(2, 2), (3, 3), (4, 2), (5, 5), (9, 3), (8, 2)] {
        let res = cyclic_resolution(n, p, 7);
        let d = ce_diagonal_map(&res).unwrap();
        let h = ce_homotopy_map(&res).unwrap();
        let r = homotopy_residuals(&res, &d, &h, 6);
        assert!(r.is_empty(), "order {n}: {} bad generators, first {:?}", r.len(), r.first());
    }
}

#[test]
fn bar_diagonal_and_cup_one() {
    for (n, p) in [(2, 2), (3, 3), (4, 2)] {
        let g = Arc::new(FiniteGroupTable::cyclic(n));
        let bar = bar_resolution(&g, p, 4, DEFAULT_BAR_BUDGET).unwrap();
        let aw = aw_diagonal_map(&bar, 3).unwrap();
        check_chain_map(&bar, &aw).unwrap();
        for deg in 0..=3 {
            for k in 0..bar.rank(deg) {
                assert!(coassociativity_defect(&bar, &aw, deg, k).is_zero());
            }
        }
        let s = steenrod_cup1_map(&bar, 3).unwrap();
        let r = cup1_residuals(&bar, &aw, &s, 3, CUP1_FROM_DIAGONAL_TO_TWIST);
        assert!(r.is_empty(), "order {n}: {} bad generators", r.len());
    }
}

#[test]
fn tensor_homotopy_identity() {
    for e in [vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
        let spec = AbelianPGroupSpec::new(3, e.clone()).unwrap();
        let ad = abelian_diagonal(&spec, 5);
        check_chain_map(&ad.resolution, &ad.diagonal).unwrap();
        let r = homotopy_residuals(&ad.resolution, &ad.diagonal, &ad.homotopy, 4);
        assert!(r.is_empty(), "{e:?}: {} bad generators", r.len());
    }
}

fn unit(spec: &AbelianPGroupSpec, degree: usize) -> Vec<CohoClass> {
    monomial_basis(spec, degree)
        .into_iter()
        .map(|m| CohoClass::monomial(spec, m, 1))
        .collect()
}

#[test]
fn chain_cup_matches_monomial_cup() {
    for (p, e) in [(3, vec![1]), (3, vec![2]), (3, vec![1, 1]), (3, vec![2, 1]), (5, vec![1, 1])] {
        let spec = AbelianPGroupSpec::new(p, e.clone()).unwrap();
        let model = ChainModel::new(&spec, 5);
        for da in 0..=4 {
            for db in 0..=4 - da {
                for a in unit(&spec, da) {
                    for b in unit(&spec, db) {
                        assert_eq!(model.cup(&a, &b), a.cup(&b).unwrap(), "{e:?}: ({a})*({b})");
                    }
                }
            }
        }
    }
}

#[test]
fn massey_recursion_matches_chain_homotopy() {
    for e in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 1, 1]] {
        let spec = AbelianPGroupSpec::new(3, e.clone()).unwrap();
        let top = if e.len() == 3 { 5 } else { 7 };
        let model = ChainModel::new(&spec, top + 1);
        let mut nonzero = 0;
        for da in 1..=3usize {
            for db in 1..=3usize {
                for dc in 1..=3usize {
                    if da + db + dc > top {
                        continue;
                    }
                    for a in unit(&spec, da) {
                        for b in unit(&spec, db) {
                            for c in unit(&spec, dc) {
                                let m = |x: &CohoClass| x.terms().keys().next().unwrap().clone();
                                let h = massey_homotopy(&spec, &m(&a), &m(&b), &m(&c));
                                let chain = model.homotopy_value(&a, &b, &c);
                                let expected = if (da + db + dc) % 2 == 1 { chain.neg() } else { chain };
                                assert_eq!(h, expected, "{e:?}: h({a}, {b}, {c})");
                                nonzero += !h.is_zero() as usize;
                            }
                        }
                    }
                }
            }
        }
        // the homotopy only sees a factor of order exactly p
        assert_eq!(nonzero > 0, e.contains(&1), "{e:?}");
    }
}
