use lhs_core::group::{AbelianPGroupSpec, ExtensionSpec};
use lhs_core::ring::{dims, ChainModel, CohoClass, DegreeBasis};
use lhs_core::sseq::{Rational, Sseq};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group_strategy() -> impl Strategy<Value = AbelianPGroupSpec> {
    (prop::sample::select(vec![2u32, 3, 5]), prop::collection::vec(1u32..=2, 1..=3))
        .prop_map(|(p, e)| AbelianPGroupSpec::new(p, e).unwrap())
}

fn random_class(g: &AbelianPGroupSpec, degree: usize, rng: &mut ChaCha8Rng) -> CohoClass {
    let basis = DegreeBasis::new(g, degree);
    let v: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..g.p)).collect();
    CohoClass::from_vector(g, &basis, &v)
}

fn sign(c: &CohoClass, odd: bool) -> CohoClass {
    if odd { c.neg() } else { c.clone() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cup_is_associative_and_graded_commutative(g in group_strategy(), seed in any::<u64>(), d in (0usize..=3, 0usize..=3, 0usize..=3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_class(&g, d.0, &mut rng), random_class(&g, d.1, &mut rng), random_class(&g, d.2, &mut rng));
        let left = a.cup(&b).unwrap().cup(&c).unwrap();
        let right = a.cup(&b.cup(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let ab = a.cup(&b).unwrap();
        let ba = b.cup(&a).unwrap();
        prop_assert_eq!(ab, sign(&ba, d.0 * d.1 % 2 == 1));
        prop_assert_eq!(CohoClass::one(&g).cup(&a).unwrap(), a);
    }

    #[test]
    fn bockstein_is_a_square_zero_derivation(g in group_strategy(), seed in any::<u64>(), da in 0usize..=3, db in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_class(&g, da, &mut rng), random_class(&g, db, &mut rng));
        prop_assert!(a.bockstein().bockstein().is_zero());
        let lhs = a.cup(&b).unwrap().bockstein();
        let rhs = a.bockstein().cup(&b).unwrap().add(&sign(&a.cup(&b.bockstein()).unwrap(), da % 2 == 1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_expansion_inverts_the_denominator(
        num in prop::collection::vec(-4i64..=4, 1..=5),
        a in 0usize..=3,
        k in 1usize..=6,
        b in 0usize..=2,
    ) {
        let terms: Vec<String> = num.iter().enumerate().map(|(i, c)| format!("({c})*s^{i}")).collect();
        let text = format!("({})/((1-s)^{a}*(1-s^{k})^{b})", terms.join(" + "));
        let n = 15;
        let e = Rational::parse(&text).unwrap().expand(n).unwrap();
        // multiply back by the denominator, truncated at s^n
        let mut den = vec![1i64];
        for f in std::iter::repeat(1).take(a).chain(std::iter::repeat(k).take(b)) {
            let mut next = vec![0; den.len() + f];
            for (i, &c) in den.iter().enumerate() {
                next[i] += c;
                next[i + f] -= c;
            }
            den = next;
        }
        for d in 0..=n {
            let back: i64 = (0..=d).map(|i| den.get(i).copied().unwrap_or(0) * e[d - i]).sum();
            prop_assert_eq!(back, num.get(d).copied().unwrap_or(0), "degree {}", d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pages_on_random_extensions(p in prop::sample::select(vec![3u32, 5]), e in prop::collection::vec(1u32..=2, 1..=2), seed in any::<u64>()) {
        let g = AbelianPGroupSpec::new(p, e).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = random_class(&g, 2, &mut rng);
        let spec = ExtensionSpec::new(1, g.clone(), xi, None).unwrap();
        let run = Sseq::new(&spec, 10, &[]).unwrap().run(5).unwrap();
        let h = dims(&g, 10);
        let e2 = &run.pages[0];
        for i in 0..=10 {
            for j in 0..=10 - i {
                prop_assert_eq!(e2.dim(i, j), h[i]);
            }
        }
        let vt = run.report.poincare.valid_through;
        for w in run.pages.windows(2) {
            for d in 0..=vt {
                prop_assert!(w[1].total_dim(d) <= w[0].total_dim(d));
            }
        }
        prop_assert_eq!(run.report.poincare.coefficients[0], 1);
        // H^1(E) = Hom(E, F_p) has dimension at least the rank of G
        prop_assert!(run.report.poincare.coefficients[1] >= g.rank());
    }
}

#[test]
fn cyclic_squares_of_the_degree_one_class() {
    // u·u = C(n,2)·t: nonzero only for the group of order 2
    for (p, m) in [(2, 1), (2, 2), (3, 1), (5, 1), (3, 2)] {
        let g = AbelianPGroupSpec::new(p, vec![m]).unwrap();
        let model = ChainModel::new(&g, 3);
        let u = CohoClass::y(&g, 0);
        let want = if g.order() == 2 { CohoClass::x(&g, 0) } else { CohoClass::zero(&g, 2) };
        assert_eq!(model.cup(&u, &u), want, "order {}", g.order());
        assert_eq!(u.cup(&u).unwrap(), want, "order {}", g.order());
    }
}
