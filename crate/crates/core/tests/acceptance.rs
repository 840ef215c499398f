//! One PASS/FAIL line per acceptance criterion. Runtime limits are part of
//! the criterion: a suite that is correct but too slow fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lhs_core::checks::{closed_form_cases, run_closed_form_case, run_suite, CheckOptions, Suite, SuiteOutcome};

struct Verdict {
    passed: bool,
    detail: String,
}

fn timed(suite: Suite, limit: Option<Duration>) -> Verdict {
    let start = Instant::now();
    let out = run_suite(suite, &CheckOptions::default());
    verdict(&out, start.elapsed(), limit)
}

fn verdict(out: &SuiteOutcome, elapsed: Duration, limit: Option<Duration>) -> Verdict {
    let in_time = limit.map_or(true, |l| elapsed <= l);
    let limit_text = limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
    let mut detail = format!("{} checks, {:.2}s{limit_text}", out.checked, elapsed.as_secs_f64());
    if !out.passed {
        detail.push_str(&format!("; {} failed: {}", out.failed, out.failures.join(" | ")));
    }
    if !in_time {
        detail.push_str("; over the time limit");
    }
    Verdict {
        passed: out.passed && in_time,
        detail,
    }
}

/// Every one of the sixteen cases must finish within its own limit.
fn closed_forms() -> Verdict {
    let limit = Duration::from_secs(60);
    let start = Instant::now();
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    let mut problems = Vec::new();
    for case in closed_form_cases() {
        let t = Instant::now();
        let out = run_closed_form_case(&case);
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        checked += out.checked;
        if !out.passed {
            problems.extend(out.failures);
        }
        if elapsed > limit {
            problems.push(format!("{} took {:.1}s", case.label, elapsed.as_secs_f64()));
        }
    }
    let mut detail = format!(
        "{checked} cases, {:.2}s total, slowest {:.2}s, limit {}s per case",
        start.elapsed().as_secs_f64(),
        slowest.as_secs_f64(),
        limit.as_secs()
    );
    if !problems.is_empty() {
        detail.push_str(&format!("; {}", problems.join(" | ")));
    }
    Verdict {
        passed: problems.is_empty() && checked == 16,
        detail,
    }
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("coassociativity homotopy on cyclic groups", Box::new(move || timed(Suite::Homotopy, secs(10)))),
        ("coboundary formulas for the E_0 products", Box::new(move || timed(Suite::Coboundary, secs(120)))),
        ("ladder and eta recursion", Box::new(move || timed(Suite::Ladder, secs(120)))),
        ("cyclic Massey products", Box::new(|| timed(Suite::CyclicMassey, None))),
        ("rank-two Massey fixture", Box::new(|| timed(Suite::RankTwoMassey, None))),
        ("Massey vanishing for large factors", Box::new(|| timed(Suite::MasseyVanishing, None))),
        ("closed-form Poincare series", Box::new(closed_forms)),
        ("minimal resolutions of the order-27 groups", Box::new(move || timed(Suite::GroupCohomology, secs(300)))),
        ("engine pages against the double complex", Box::new(|| timed(Suite::PageAgreement, None))),
        ("independence of d_4 choices", Box::new(|| timed(Suite::ChoiceIndependence, None))),
        ("ring consistency", Box::new(|| timed(Suite::RingConsistency, None))),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        all &= v.passed;
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {}", k + 1, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
