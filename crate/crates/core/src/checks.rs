//! Self-checks shared by the `verify` command and the acceptance harness.
//!
//! Every suite compares a computed object with an independent one: a chain
//! level identity, a closed form or a brute-force oracle. A suite reports how
//! many comparisons it made and the first few that failed.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{parse_extension_spec, parse_overrides, ExtensionConfig};
use crate::diagonal::{ce_diagonal_map, ce_homotopy_map, homotopy_residuals};
use crate::e0::{build_ladder_with, coboundary_residuals, eta_family, ladder_residuals, DoubleComplex as E0Complex};
use crate::group::{build_extension_group, AbelianPGroupSpec, ExtensionSpec};
use crate::linalg::{kernel_basis, FpMatrix};
use crate::oracle::{double_complex_ss, minimal_resolution, DEFAULT_ORACLE_BUDGET};
use crate::resolution::cyclic_resolution;
use crate::ring::{massey_triple, monomial_basis, ChainModel, CohoClass, DegreeBasis, RingError};
use crate::sseq::{DifferentialOverride, Rational, Sseq, DEFAULT_R_MAX};

pub const ELEMENTARY_27: &str = include_str!("../../../configs/elementary-27.toml");
pub const C9_X_C3: &str = include_str!("../../../configs/c9xc3.toml");
pub const METACYCLIC_27: &str = include_str!("../../../configs/metacyclic-27.toml");
pub const EXTRASPECIAL_27: &str = include_str!("../../../configs/extraspecial-27.toml");
pub const EXTRASPECIAL_27_OVERRIDES: &str = include_str!("../../../configs/extraspecial-27-overrides.toml");

/// Poincaré series of the extensions of `C_3` by `C_{3^m} ⊕ C_{3^n}`, by case.
pub const SERIES: [(char, &str); 6] = [
    ('a', "1/(1-s)^3"),
    ('b', "1/(1-s)^2"),
    ('c', "(1+s)/((1-s)*(1-s^6))"),
    ('d', "(1+s+s^2)/((1-s^2)^2*(1-s))"),
    ('e', "(1+s^2)/((1-s^6)*(1-s)^2)"),
    ('f', "(1+s+2*s^2+2*s^3+s^4+s^5)/((1-s^6)*(1-s))"),
];

pub const COBOUNDARY_PAIRS: usize = 100;
pub const RANDOM_MASSEY_TRIPLES: usize = 200;
pub const CHOICE_RERUNS: u64 = 20;
/// Closed forms are compared through this degree, with the engine run to 20.
pub const CLOSED_FORM_DEGREE: usize = 12;
pub const CLOSED_FORM_RUN_DEGREE: usize = 20;
/// Oracle comparisons stop at this total degree.
pub const ORACLE_DEGREE: usize = 8;

const MAX_REPORTED: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Homotopy,
    Coboundary,
    Ladder,
    CyclicMassey,
    RankTwoMassey,
    MasseyVanishing,
    ClosedForms,
    GroupCohomology,
    PageAgreement,
    ChoiceIndependence,
    RingConsistency,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Homotopy,
        Suite::Coboundary,
        Suite::Ladder,
        Suite::CyclicMassey,
        Suite::RankTwoMassey,
        Suite::MasseyVanishing,
        Suite::ClosedForms,
        Suite::GroupCohomology,
        Suite::PageAgreement,
        Suite::ChoiceIndependence,
        Suite::RingConsistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Homotopy => "homotopy",
            Suite::Coboundary => "coboundary",
            Suite::Ladder => "ladder",
            Suite::CyclicMassey => "cyclic-massey",
            Suite::RankTwoMassey => "rank-two-massey",
            Suite::MasseyVanishing => "massey-vanishing",
            Suite::ClosedForms => "closed-forms",
            Suite::GroupCohomology => "group-cohomology",
            Suite::PageAgreement => "page-agreement",
            Suite::ChoiceIndependence => "choice-independence",
            Suite::RingConsistency => "ring-consistency",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Homotopy => "dH + Hd = (Δ⊗1)Δ - (1⊗Δ)Δ on cyclic groups of order 2, 3, 4, 5, 9 through degree 6",
            Suite::Coboundary => "coboundaries of the E_0 products on random cochain pairs, total degree ≤ 3",
            Suite::Ladder => "ladder and η recursion residuals for n = 1, 2",
            Suite::CyclicMassey => "⟨t^i u, t^j u, t^k u⟩ on cyclic groups of order 3, 5, 9, 27",
            Suite::RankTwoMassey => "⟨x1y2 - y1x2, x1y2 - y1x2, y1y2⟩ on C_3 ⊕ C_3",
            Suite::MasseyVanishing => "Massey triples contain zero on C_9 ⊕ C_9 and C_5 ⊕ C_5",
            Suite::ClosedForms => "engine Poincaré coefficients against the six closed forms",
            Suite::GroupCohomology => "minimal resolutions of the order-27 groups against the closed forms",
            Suite::PageAgreement => "engine pages against the double-complex oracle for the order-27 extensions",
            Suite::ChoiceIndependence => "pages do not depend on the choices made in d_4 and in override scalars",
            Suite::RingConsistency => "monomial cup product against the chain-level product",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    pub budget: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<String>,
}

struct Tally {
    suite: Suite,
    checked: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally {
            suite,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, message: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(message);
        }
    }

    fn ok<T, E: fmt::Display>(&mut self, label: &str, r: Result<T, E>) -> Option<T> {
        r.map_err(|e| self.fail(format!("{label}: {e}"))).ok()
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            suite: self.suite,
            passed: self.failed == 0 && self.checked > 0,
            checked: self.checked,
            failed: self.failed,
            failures: self.failures,
        }
    }
}

pub fn run_suite(suite: Suite, options: &CheckOptions) -> SuiteOutcome {
    let mut t = Tally::new(suite);
    match suite {
        Suite::Homotopy => homotopy(&mut t),
        Suite::Coboundary => coboundary(&mut t, options.seed),
        Suite::Ladder => ladder(&mut t, options.seed),
        Suite::CyclicMassey => cyclic_massey(&mut t),
        Suite::RankTwoMassey => rank_two_massey(&mut t),
        Suite::MasseyVanishing => massey_vanishing(&mut t, options.seed),
        Suite::ClosedForms => {
            for case in closed_form_cases() {
                closed_form(&mut t, &case);
            }
        }
        Suite::GroupCohomology => {
            for case in order_27_cases() {
                group_cohomology(&mut t, &case);
            }
        }
        Suite::PageAgreement => {
            for case in order_27_cases() {
                page_agreement(&mut t, &case, options.budget);
            }
        }
        Suite::ChoiceIndependence => choice_independence(&mut t, options.seed),
        Suite::RingConsistency => ring_consistency(&mut t),
    }
    t.finish()
}

/// An extension together with the overrides it needs and its closed form.
#[derive(Debug, Clone)]
pub struct ClosedFormCase {
    pub label: String,
    pub case: char,
    pub spec: ExtensionSpec,
    pub overrides: Vec<DifferentialOverride>,
}

impl ClosedFormCase {
    pub fn series(&self) -> &'static str {
        SERIES.iter().find(|(c, _)| *c == self.case).map(|(_, s)| *s).unwrap_or("0")
    }

    pub fn expansion(&self, n: usize) -> Vec<usize> {
        match Rational::parse(self.series()).and_then(|r| r.expand(n)) {
            Ok(v) => v.into_iter().map(|x| x.max(0) as usize).collect(),
            Err(_) => Vec::new(),
        }
    }
}

pub fn extraspecial_overrides() -> Vec<DifferentialOverride> {
    parse_overrides(EXTRASPECIAL_27_OVERRIDES).expect("bundled override file parses")
}

fn extension(e: &[u32], xi: &str) -> ExtensionSpec {
    let q = AbelianPGroupSpec::new(3, e.to_vec()).expect("valid quotient");
    let xi = CohoClass::parse(xi, &q, 2).expect("valid class");
    ExtensionSpec::new(1, q, xi, None).expect("valid extension")
}

/// The sixteen extensions of `C_3` by `C_{3^m} ⊕ C_{3^n}`, `m, n ≤ 2`, with
/// classes `0`, `x1`, `x1 + y1y2` and `y1y2`.
pub fn closed_form_cases() -> Vec<ClosedFormCase> {
    let mut out = Vec::new();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for xi in ["0", "x1", "x1 + y1*y2", "y1*y2"] {
            let case = match xi {
                "0" => 'a',
                "x1" => 'b',
                "x1 + y1*y2" if n > 1 => 'b',
                "x1 + y1*y2" => 'c',
                _ => match (m > 1, n > 1) {
                    (true, true) => 'd',
                    (false, false) => 'f',
                    _ => 'e',
                },
            };
            out.push(ClosedFormCase {
                label: format!("C_{} + C_{}, xi = {xi}", 3u32.pow(m), 3u32.pow(n)),
                case,
                spec: extension(&[m, n], xi),
                overrides: if case == 'f' { extraspecial_overrides() } else { Vec::new() },
            });
        }
    }
    out
}

/// The four extensions of order 27 from the bundled configs.
pub fn order_27_cases() -> Vec<ClosedFormCase> {
    [(ELEMENTARY_27, 'a'), (C9_X_C3, 'b'), (METACYCLIC_27, 'c'), (EXTRASPECIAL_27, 'f')]
        .into_iter()
        .map(|(text, case)| {
            let config = ExtensionConfig::parse(text).expect("bundled config parses");
            ClosedFormCase {
                label: config.name.clone().unwrap_or_default(),
                case,
                spec: parse_extension_spec(text).expect("bundled config is valid"),
                overrides: if case == 'f' { extraspecial_overrides() } else { Vec::new() },
            }
        })
        .collect()
}

/// One closed-form comparison, for callers that time cases separately.
pub fn run_closed_form_case(case: &ClosedFormCase) -> SuiteOutcome {
    let mut t = Tally::new(Suite::ClosedForms);
    closed_form(&mut t, case);
    t.finish()
}

fn homotopy(t: &mut Tally) {
    for (n, p) in [(2, 2), (3, 3), (4, 2), (5, 5), (9, 3)] {
        let res = cyclic_resolution(n, p, 7);
        let label = format!("C_{n}");
        let Some(d) = t.ok(&label, ce_diagonal_map(&res)) else { continue };
        let Some(h) = t.ok(&label, ce_homotopy_map(&res)) else { continue };
        let bad = homotopy_residuals(&res, &d, &h, 6);
        t.check(bad.is_empty(), || {
            format!("{label}: {} generators with nonzero residual, first at {:?}", bad.len(), bad[0].0)
        });
    }
}

/// `C_p → C_{p²} → C_p`
fn cyclic_extension(p: u32) -> ExtensionSpec {
    let q = AbelianPGroupSpec::new(p, vec![1]).expect("valid quotient");
    let xi = CohoClass::parse("x1", &q, 2).expect("valid class");
    ExtensionSpec::new(1, q, xi, None).expect("valid extension")
}

fn random_bidegrees<R: Rng>(rng: &mut R, total: usize) -> [usize; 4] {
    loop {
        let v: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..=total));
        if v.iter().sum::<usize>() <= total {
            return v;
        }
    }
}

fn coboundary(t: &mut Tally, seed: u64) {
    for p in [2, 3] {
        let label = format!("C_{p} -> C_{} -> C_{p}", p * p);
        let Some(dc) = t.ok(&label, E0Complex::new(&cyclic_extension(p), 4)) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(p as u64));
        for _ in 0..COBOUNDARY_PAIRS {
            let [a, b, c, d] = random_bidegrees(&mut rng, 3);
            let (f, g) = (dc.random(a, b, &mut rng), dc.random(c, d, &mut rng));
            if let Some(res) = t.ok(&label, coboundary_residuals(&dc, &f, &g)) {
                t.check(res == [0; 4], || format!("{label}: ({a},{b}) x ({c},{d}) residuals {res:?}"));
            }
        }
    }
}

fn ladder(t: &mut Tally, seed: u64) {
    for p in [2, 3] {
        let label = format!("C_{p} -> C_{} -> C_{p}", p * p);
        let Some(dc) = t.ok(&label, E0Complex::new(&cyclic_extension(p), 5)) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(p as u64));
        for randomized in [false, true] {
            let l = if randomized {
                build_ladder_with(&dc, Some(&mut rng))
            } else {
                build_ladder_with::<ChaCha8Rng>(&dc, None)
            };
            let Some(l) = t.ok(&label, l) else { continue };
            let kind = if randomized { "random" } else { "reduced" };
            if let Some(res) = t.ok(&label, ladder_residuals(&dc, &l)) {
                t.check(res.iter().all(|&r| r == 0), || format!("{label}: {kind} ladder residuals {res:?}"));
            }
            for n in [1, 2] {
                if let Some((_, res)) = t.ok(&label, eta_family(&dc, &l, n)) {
                    t.check(res == [0; 4], || format!("{label}: {kind} ladder, n = {n}, residuals {res:?}"));
                }
            }
        }
    }
}

fn power_times(q: &AbelianPGroupSpec, k: usize, tail: &CohoClass) -> CohoClass {
    let x = CohoClass::x(q, 0);
    (0..k).fold(tail.clone(), |acc, _| x.cup(&acc).expect("same group"))
}

fn cyclic_massey(t: &mut Tally) {
    for (p, m) in [(3, 1), (5, 1), (3, 2), (3, 3)] {
        let q = AbelianPGroupSpec::new(p, vec![m]).expect("valid group");
        let order = q.order();
        let u = CohoClass::y(&q, 0);
        for i in 0..=2 {
            for j in 0..=2 {
                for k in 0..=2 {
                    let [a, b, c] = [i, j, k].map(|e| power_times(&q, e, &u));
                    let want = if order == 3 {
                        power_times(&q, i + j + k + 1, &CohoClass::one(&q))
                    } else {
                        CohoClass::zero(&q, 2 * (i + j + k) + 2)
                    };
                    let label = format!("C_{order}: <t^{i}u, t^{j}u, t^{k}u>");
                    if let Some(r) = t.ok(&label, massey_triple(&a, &b, &c)) {
                        t.check(r.representative == want, || format!("{label} = {}, expected {want}", r.representative));
                    }
                }
            }
        }
    }
}

fn rank_two_massey(t: &mut Tally) {
    let q = AbelianPGroupSpec::new(3, vec![1, 1]).expect("valid group");
    let parse = |s: &str| CohoClass::parse_any(s, &q).expect("valid class");
    let a = parse("x1*y2 - y1*x2");
    let want = parse("x1*x2^2*y2 - x1^2*x2*y1");
    if let Some(r) = t.ok("fixture", massey_triple(&a, &a, &parse("y1*y2"))) {
        t.check(r.representative == want, || format!("got {}, expected {want}", r.representative));
    }
}

fn random_class<R: Rng>(q: &AbelianPGroupSpec, basis: &[Vec<u32>], rng: &mut R) -> Option<Vec<u32>> {
    let dim = basis.first()?.len();
    let mut v = vec![0; dim];
    for b in basis {
        crate::linalg::axpy(&mut v, rng.gen_range(0..q.p), b, q.p);
    }
    Some(v)
}

/// Basis of `{a ∈ H^degree : a·b = 0}`, as coordinate vectors.
fn annihilator(q: &AbelianPGroupSpec, b: &CohoClass, degree: usize) -> (DegreeBasis, Vec<Vec<u32>>) {
    let source = DegreeBasis::new(q, degree);
    let target = DegreeBasis::new(q, degree + b.degree());
    let columns: Vec<Vec<u32>> = source
        .monomials
        .iter()
        .map(|m| {
            let a = CohoClass::monomial(q, m.clone(), 1);
            a.cup(b).expect("same group").to_vector(&target)
        })
        .collect();
    let kernel = kernel_basis(&FpMatrix::from_columns(q.p, target.len(), &columns));
    (source, kernel)
}

fn massey_vanishing(t: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (p, e) in [(3, [2, 2]), (5, [1, 1])] {
        let q = AbelianPGroupSpec::new(p, e.to_vec()).expect("valid group");
        let label = format!("C_{} + C_{}", q.factor_order(0), q.factor_order(1));
        let monomials: Vec<CohoClass> = (1..=2)
            .flat_map(|d| monomial_basis(&q, d))
            .map(|m| CohoClass::monomial(&q, m, 1))
            .collect();
        let mut defined = 0;
        for a in &monomials {
            for b in &monomials {
                for c in &monomials {
                    match massey_triple(a, b, c) {
                        Ok(r) => {
                            defined += 1;
                            t.check(r.contains_zero(), || format!("{label}: <{a}, {b}, {c}> = {}", r.representative));
                        }
                        Err(RingError::Undefined(_)) => {}
                        Err(err) => t.fail(format!("{label}: <{a}, {b}, {c}>: {err}")),
                    }
                }
            }
        }
        t.check(defined > 0, || format!("{label}: no defined monomial triple"));
        let mut sampled = 0;
        while sampled < RANDOM_MASSEY_TRIPLES {
            let [da, db, dc] = [0; 3].map(|_| rng.gen_range(1..=2usize));
            let bb = DegreeBasis::new(&q, db);
            let vb: Vec<u32> = (0..bb.len()).map(|_| rng.gen_range(0..p)).collect();
            let b = CohoClass::from_vector(&q, &bb, &vb);
            if b.is_zero() {
                continue;
            }
            let (sa, ka) = annihilator(&q, &b, da);
            let (sc, kc) = annihilator(&q, &b, dc);
            let (Some(va), Some(vc)) = (random_class(&q, &ka, &mut rng), random_class(&q, &kc, &mut rng)) else {
                continue;
            };
            let (a, c) = (CohoClass::from_vector(&q, &sa, &va), CohoClass::from_vector(&q, &sc, &vc));
            if a.is_zero() || c.is_zero() {
                continue;
            }
            sampled += 1;
            let what = format!("{label}: <{a}, {b}, {c}>");
            if let Some(r) = t.ok(&what, massey_triple(&a, &b, &c)) {
                t.check(r.contains_zero(), || format!("{what} = {}", r.representative));
            }
        }
    }
}

fn closed_form(t: &mut Tally, case: &ClosedFormCase) {
    let want = case.expansion(CLOSED_FORM_DEGREE);
    let run = Sseq::new(&case.spec, CLOSED_FORM_RUN_DEGREE, &case.overrides).and_then(|mut s| s.run(DEFAULT_R_MAX));
    let Some(run) = t.ok(&case.label, run) else { return };
    let got = &run.report.poincare.coefficients;
    let ok = got.len() > CLOSED_FORM_DEGREE && got[..=CLOSED_FORM_DEGREE] == want[..];
    t.check(ok, || {
        format!("{} (case {}): got {:?}, expected {want:?}", case.label, case.case, &got[..got.len().min(CLOSED_FORM_DEGREE + 1)])
    });
}

fn group_cohomology(t: &mut Tally, case: &ClosedFormCase) {
    let Some(group) = t.ok(&case.label, build_extension_group(&case.spec)) else { return };
    let Some(res) = t.ok(&case.label, minimal_resolution(&group.table, case.spec.p, ORACLE_DEGREE)) else { return };
    let want = case.expansion(ORACLE_DEGREE);
    t.check(res.ranks() == want.as_slice(), || {
        format!("{} (case {}): ranks {:?}, expected {want:?}", case.label, case.case, res.ranks())
    });
    t.check(res.check_minimal(), || format!("{}: resolution is not minimal", case.label));
}

fn page_agreement(t: &mut Tally, case: &ClosedFormCase, budget: usize) {
    let n = ORACLE_DEGREE;
    let Some(oracle) = t.ok(&case.label, double_complex_ss(&case.spec, n, DEFAULT_R_MAX, budget)) else { return };
    let run = Sseq::new(&case.spec, n + DEFAULT_R_MAX, &case.overrides).and_then(|mut s| s.run(DEFAULT_R_MAX));
    let Some(run) = t.ok(&case.label, run) else { return };
    for (k, page) in run.pages.iter().enumerate() {
        let r = k + 2;
        let Some(table) = oracle.page(r) else {
            t.fail(format!("{}: oracle has no E_{r}", case.label));
            continue;
        };
        for i in 0..=n {
            for j in 0..=n - i {
                let (e, o) = (page.dim(i, j), table.dim(i, j));
                t.check(e == o, || format!("{}: E_{r}^({i},{j}) engine {e}, oracle {o}", case.label));
            }
        }
    }
    let engine = &run.report.poincare.coefficients;
    let ok = engine.len() > n && engine[..=n] == oracle.total_cohomology[..];
    t.check(ok, || {
        format!("{}: E_∞ {:?}, oracle total {:?}", case.label, engine, oracle.total_cohomology)
    });
}

/// Bigraded `E_5` and the `E_∞` coefficients.
fn fingerprint(spec: &ExtensionSpec, overrides: &[DifferentialOverride], seed: Option<u64>) -> Result<(Vec<Vec<usize>>, Vec<usize>), String> {
    let mut engine = Sseq::new(spec, CLOSED_FORM_RUN_DEGREE, overrides).map_err(|e| e.to_string())?;
    if let Some(s) = seed {
        engine = engine.with_seed(s);
    }
    let run = engine.run(DEFAULT_R_MAX).map_err(|e| e.to_string())?;
    let e5 = run.report.pages.iter().find(|pg| pg.r == 5).map(|pg| pg.dims.clone()).unwrap_or_default();
    Ok((e5, run.report.poincare.coefficients))
}

fn choice_independence(t: &mut Tally, seed: u64) {
    let cases = closed_form_cases();
    let pick = |label: &str| cases.iter().find(|c| c.label == label).cloned().expect("known case");
    for case in [pick("C_9 + C_3, xi = y1*y2"), pick("C_3 + C_3, xi = y1*y2")] {
        let Some(base) = t.ok(&case.label, fingerprint(&case.spec, &case.overrides, None)) else { continue };
        for k in 0..CHOICE_RERUNS {
            let s = seed.wrapping_add(k);
            if let Some(run) = t.ok(&case.label, fingerprint(&case.spec, &case.overrides, Some(s))) {
                t.check(run.0 == base.0, || format!("{} seed {s}: E_5 differs", case.label));
                t.check(run.1 == base.1, || format!("{} seed {s}: E_∞ differs", case.label));
            }
        }
        if case.overrides.is_empty() {
            continue;
        }
        // the override scalars are only fixed up to a unit
        let scaled: Vec<DifferentialOverride> = case
            .overrides
            .iter()
            .map(|o| DifferentialOverride {
                value: format!("2*({})", o.value),
                ..o.clone()
            })
            .collect();
        if let Some(run) = t.ok(&case.label, fingerprint(&case.spec, &scaled, Some(seed))) {
            t.check(run == base, || format!("{}: doubling the override values changes the pages", case.label));
        }
    }
}

fn ring_consistency(t: &mut Tally) {
    for e in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2]] {
        let q = AbelianPGroupSpec::new(3, e).expect("valid group");
        let model = ChainModel::new(&q, 5);
        let units = |d: usize| -> Vec<CohoClass> {
            monomial_basis(&q, d).into_iter().map(|m| CohoClass::monomial(&q, m, 1)).collect()
        };
        for da in 0..=4 {
            for db in 0..=4 - da {
                for a in units(da) {
                    for b in units(db) {
                        let Some(mono) = t.ok("cup", a.cup(&b)) else { continue };
                        let chain = model.cup(&a, &b);
                        t.check(chain == mono, || format!("{:?}: ({a})*({b}) chain {chain}, monomial {mono}", q.exponents));
                    }
                }
            }
        }
    }
}
