use lhs_core::group::{AbelianPGroupSpec, ExtensionSpec};
use lhs_core::ring::CohoClass;
use lhs_core::sseq::*;

fn spec(p: u32, kernel_m: u32, e: &[u32], xi: &str) -> ExtensionSpec {
    let q = AbelianPGroupSpec::new(p, e.to_vec()).unwrap();
    let xi = CohoClass::parse(xi, &q, 2).unwrap();
    ExtensionSpec::new(kernel_m, q, xi, None).unwrap()
}

fn case_f_overrides() -> Vec<DifferentialOverride> {
    vec![
        DifferentialOverride {
            r: 5,
            source: "t^2*(x1*y2 - x2*y1)".into(),
            value: "x1^3*x2 - x2^3*x1".into(),
            provenance: "transgression of a p-th power".into(),
        },
        DifferentialOverride {
            r: 5,
            source: "t^2*u*y1*y2".into(),
            value: "u*(x1^3*y2 - x2^3*y1)".into(),
            provenance: "integral Bockstein argument".into(),
        },
    ]
}

#[test]
fn closed_forms_through_degree_twelve() {
    let a = "1/(1-s)^3";
    let b = "1/(1-s)^2";
    let c = "(1+s)/((1-s)*(1-s^6))";
    let d = "(1+s+s^2)/((1-s^2)^2*(1-s))";
    let e = "(1+s^2)/((1-s^6)*(1-s)^2)";
    let f = "(1+s+2*s^2+2*s^3+s^4+s^5)/((1-s^6)*(1-s))";
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let cases = [
            ("0", a),
            ("x1", b),
            ("x1 + y1*y2", if n > 1 { b } else { c }),
            (
                "y1*y2",
                match (m > 1, n > 1) {
                    (true, true) => d,
                    (false, false) => f,
                    _ => e,
                },
            ),
        ];
        for (xi, series) in cases {
            let s = spec(3, 1, &[m, n], xi);
            let ov = if m == 1 && n == 1 && xi == "y1*y2" { case_f_overrides() } else { vec![] };
            let run = Sseq::new(&s, 20, &ov).unwrap().run(DEFAULT_R_MAX).unwrap();
            let want: Vec<usize> = Rational::parse(series)
                .unwrap()
                .expand(12)
                .unwrap()
                .into_iter()
                .map(|x| x as usize)
                .collect();
            assert_eq!(run.report.poincare.coefficients[..=12], want[..], "({m},{n}) xi = {xi}");
        }
    }
}

fn page(run: &SseqRun, r: usize) -> &Page {
    &run.pages[r - 2]
}

fn class(engine: &Sseq, text: &str) -> E2Class {
    engine.coordinates().parse(text).unwrap()
}

/// `d_r(source) ≡ expected` modulo `B_r` at the target.
fn assert_d(engine: &mut Sseq, pg: &Page, source: &str, expected: &str) {
    let s = class(engine, source);
    let got = engine.evaluate(pg, &s).unwrap();
    let (i, j) = s.bidegree();
    let want = engine.coordinates().parse_at(expected, i + pg.r, j + 1 - pg.r).unwrap();
    let diff = E2Class::new(got.j, got.chi.sub(&want.chi).unwrap());
    let v = engine.coordinates().to_vector(&diff);
    let (ti, tj) = diff.bidegree();
    assert!(
        pg.cell(ti, tj).unwrap().is_boundary(&v),
        "d_{}({source}) = {got}, expected {expected}",
        pg.r
    );
}

#[test]
fn initial_page_dimensions() {
    for e in [vec![1, 1], vec![2, 1], vec![2, 2], vec![2], vec![]] {
        let s = spec(3, 1, &e, "0");
        let engine = Sseq::new(&s, 12, &[]).unwrap();
        let e2 = engine.initial_page();
        let dims = lhs_core::ring::dims(&s.quotient, 12);
        for i in 0..=12 {
            for j in 0..=12 - i {
                assert_eq!(e2.dim(i, j), dims[i], "{e:?} ({i},{j})");
            }
        }
    }
    let run = Sseq::new(&spec(3, 1, &[1, 1], "0"), 10, &[]).unwrap().run(7).unwrap();
    for t in &run.report.pages {
        assert_eq!(t.dims, run.report.pages[0].dims);
    }
    let trivial = Sseq::new(&spec(3, 1, &[], "0"), 6, &[]).unwrap().initial_page();
    assert_eq!(trivial.dim(0, 5), 1);
    assert_eq!(trivial.dim(1, 0), 0);
}

#[test]
fn low_differentials_on_the_extraspecial_group() {
    let s = spec(3, 1, &[1, 1], "y1*y2");
    let mut engine = Sseq::new(&s, 16, &case_f_overrides()).unwrap();
    let run = engine.run(7).unwrap();
    assert_d(&mut engine, page(&run, 2), "t^3*u*x1", "t^3*y1*y2*x1");
    assert_d(&mut engine, page(&run, 3), "t", "x1*y2 - x2*y1");
    assert_d(&mut engine, page(&run, 3), "t^2*u*y1*y2", "0");
    assert_d(&mut engine, page(&run, 4), "t^2*y1", "u*(x1*y2 - x2*y1)*x1");
    assert_d(&mut engine, page(&run, 4), "t^2*y2", "u*(x1*y2 - x2*y1)*x2");
    for k in 1..=3 {
        assert_d(
            &mut engine,
            page(&run, 4),
            &format!("t^{k}*u*(x1*y2 - x2*y1)"),
            &format!("{k}*t^{}*(x1*x2^2*y2 - x1^2*x2*y1)", k - 1),
        );
    }
    assert_d(&mut engine, page(&run, 5), "t^2*(x1*y2 - x2*y1)", "x1^3*x2 - x2^3*x1");
    assert_d(&mut engine, page(&run, 5), "t^2*u*y1*y2", "u*(x1^3*y2 - x2^3*y1)");
    assert_d(&mut engine, page(&run, 5), "t^5*x1*(x1*y2 - x2*y1)", "t^3*x1*(x1^3*x2 - x2^3*x1)");
    assert_d(&mut engine, page(&run, 5), "y1*t^2*(x1*y2 - x2*y1)", "-y1*(x1^3*x2 - x2^3*x1)");
    // t^3 is not hit by anything and supports no differential
    for r in 2..=6 {
        assert_d(&mut engine, page(&run, r), "t^3", "0");
    }
}

#[test]
fn d4_on_a_larger_first_factor() {
    let s = spec(3, 1, &[2, 1], "y1*y2");
    let mut engine = Sseq::new(&s, 10, &[]).unwrap();
    let run = engine.run(5).unwrap();
    assert_d(&mut engine, page(&run, 4), "t^2*y2", "-u*x2^2*y1");
    for k in 1..=4 {
        assert_d(&mut engine, page(&run, 4), &format!("t^{k}*u*y1"), "0");
    }
}

#[test]
fn pages_shrink_and_stay_consistent() {
    for (e, xi) in [(vec![1, 1], "y1*y2"), (vec![2, 1], "y1*y2"), (vec![1, 1], "x1 + y1*y2"), (vec![1], "x1")] {
        let s = spec(3, 1, &e, xi);
        let ov = if e == [1, 1] && xi == "y1*y2" { case_f_overrides() } else { vec![] };
        let run = Sseq::new(&s, 14, &ov).unwrap().run(7).unwrap();
        let vt = run.report.poincare.valid_through;
        assert_eq!(vt, 7);
        assert_eq!(run.report.poincare.coefficients[0], 1);
        for w in run.pages.windows(2) {
            for d in 0..=vt {
                assert!(w[1].total_dim(d) <= w[0].total_dim(d));
                for j in 0..=d {
                    assert!(w[1].dim(d - j, j) <= w[0].dim(d - j, j));
                }
            }
        }
    }
}

#[test]
fn d4_choices_do_not_change_the_pages() {
    for (e, ov) in [(vec![2, 1], vec![]), (vec![1, 1], case_f_overrides())] {
        let s = spec(3, 1, &e, "y1*y2");
        let base = Sseq::new(&s, 14, &ov).unwrap().run(7).unwrap();
        for seed in 0..5 {
            let run = Sseq::new(&s, 14, &ov).unwrap().with_seed(seed).run(7).unwrap();
            assert_eq!(run.pages[3], base.pages[3], "{e:?} seed {seed}: E_5");
            assert_eq!(run.report, base.report);
        }
    }
}

#[test]
fn override_errors() {
    let s = spec(3, 1, &[1, 1], "y1*y2");
    let bad_degree = DifferentialOverride {
        r: 5,
        source: "t^2*(x1*y2 - x2*y1)".into(),
        value: "x1^3".into(),
        provenance: String::new(),
    };
    assert!(matches!(Sseq::new(&s, 10, &[bad_degree]), Err(SseqError::Override { .. })));
    let low = DifferentialOverride {
        r: 3,
        source: "t".into(),
        value: "0".into(),
        provenance: String::new(),
    };
    assert!(Sseq::new(&s, 10, &[low]).is_err());
    // u dies at E_3, so it cannot carry a d_5
    let dead = DifferentialOverride {
        r: 5,
        source: "t^2*u".into(),
        value: "0".into(),
        provenance: String::new(),
    };
    let err = Sseq::new(&s, 10, &[dead]).unwrap().run(7).unwrap_err();
    assert!(matches!(err, SseqError::Override { .. }), "{err}");
    // the second value contradicts x1 times the first
    let inconsistent = [
        DifferentialOverride {
            r: 5,
            source: "t^2*y1*y2".into(),
            value: "x1^3*y1".into(),
            provenance: String::new(),
        },
        DifferentialOverride {
            r: 5,
            source: "t^2*x1*y1*y2".into(),
            value: "0".into(),
            provenance: String::new(),
        },
    ];
    let err = Sseq::new(&s, 12, &inconsistent).unwrap().run(7).unwrap_err();
    assert!(err.to_string().contains("inconsistent"), "{err}");
}

#[test]
fn longer_differentials_are_flagged() {
    let s = spec(3, 1, &[1, 1], "y1*y2");
    let run = Sseq::new(&s, 20, &case_f_overrides()).unwrap().run(7).unwrap();
    let later = &run.report.later_differentials;
    assert!(!later.is_empty());
    assert!(later.iter().all(|d| d.r >= 7 && d.source.1 + 1 >= d.r));
    let collapse = Sseq::new(&spec(3, 1, &[1, 1], "0"), 12, &[]).unwrap().run(7).unwrap();
    assert!(collapse.report.later_differentials.iter().all(|d| d.source.1 >= 6));
}

#[test]
fn quaternion_group_at_the_prime_two() {
    // C_2 → Q_8 → C_2 ⊕ C_2; H*(Q_8) has period 4
    let s = spec(2, 1, &[1, 1], "x1 + y1*y2 + x2");
    let run = Sseq::new(&s, 12, &[]).unwrap().run(5).unwrap();
    assert!(run.report.experimental);
    assert_eq!(run.report.poincare.coefficients, vec![1, 2, 2, 1, 1, 2, 2, 1]);
    // C_2 → C_4 → C_2
    let c4 = spec(2, 1, &[1], "x1");
    let run = Sseq::new(&c4, 10, &[]).unwrap().run(4).unwrap();
    assert_eq!(run.report.poincare.coefficients, vec![1; 7]);
}
