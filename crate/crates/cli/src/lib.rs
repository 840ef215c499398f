//! Argument parsing and dispatch for the `lhs` binary.

pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use lhs_core::checks::{run_suite, CheckOptions, Suite};
use lhs_core::config::{parse_overrides, ExtensionConfig};
use lhs_core::group::{build_extension_group, AbelianPGroupSpec, ExtensionSpec};
use lhs_core::oracle::{cohomology_dims, double_complex_ss, DEFAULT_ORACLE_BUDGET};
use lhs_core::ring::{massey_triple, CohoClass};
use lhs_core::sseq::{DifferentialOverride, Rational, Sseq, DEFAULT_R_MAX};

use report::{MasseyReport, OracleReport, RunReport, Status, Verdict};

#[derive(Debug, Parser)]
#[command(name = "lhs", version, about = "LHS spectral sequences of central extensions by cyclic p-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the machine-readable report to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Seed for randomized checks; for `sseq`, a nonzero seed also randomizes the d_4 choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest cochain space the oracle may build in one bidegree.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BUDGET)]
    pub budget: usize,
    /// Last page computed.
    #[arg(long, global = true, default_value_t = DEFAULT_R_MAX)]
    pub r_max: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the spectral sequence engine.
    Sseq {
        #[command(flatten)]
        input: SpecInput,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
        /// Rational function whose expansion the Poincaré coefficients must match.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Group cohomology and double-complex pages by brute force.
    Oracle {
        #[command(flatten)]
        input: SpecInput,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Compare the engine, the double complex and the group cohomology.
    Compare {
        #[command(flatten)]
        input: SpecInput,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// A Massey triple product in the cohomology of an abelian p-group.
    Massey {
        #[arg(long)]
        p: u32,
        /// Exponents of the cyclic factors, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        quotient: Vec<u32>,
        a: String,
        b: String,
        c: String,
        /// A class that must lie in the product's coset.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Run built-in self-check suites (all of them by default).
    Verify {
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
    },
    /// Power series expansion of a rational function in `s`.
    Expand {
        series: String,
        /// Number of coefficients after the constant term.
        #[arg(long, default_value_t = 12)]
        terms: usize,
        /// Coefficients the expansion must start with, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        expect: Option<Vec<i64>>,
    },
}

#[derive(Debug, Args)]
pub struct SpecInput {
    /// Extension spec (TOML).
    #[arg(long)]
    pub spec: PathBuf,
    /// Differential overrides (TOML).
    #[arg(long)]
    pub overrides: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e| {
        let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

struct Loaded {
    config: ExtensionConfig,
    spec: ExtensionSpec,
    overrides: Vec<DifferentialOverride>,
}

fn load(input: &SpecInput) -> Result<Loaded> {
    let text = read(&input.spec)?;
    let config = ExtensionConfig::parse(&text).with_context(|| format!("parsing {}", input.spec.display()))?;
    let spec = config.to_spec().with_context(|| format!("in {}", input.spec.display()))?;
    let overrides = match &input.overrides {
        Some(path) => parse_overrides(&read(path)?).with_context(|| format!("parsing {}", path.display()))?,
        None => Vec::new(),
    };
    Ok(Loaded { config, spec, overrides })
}

fn expansion(series: &str, terms: usize) -> Result<Vec<i64>> {
    Ok(Rational::parse(series)?.expand(terms)?)
}

/// Run one command and return its report.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let (name, seed) = match &cli.command {
        Command::Sseq { .. } => ("sseq", cli.seed),
        Command::Oracle { .. } => ("oracle", cli.seed),
        Command::Compare { .. } => ("compare", cli.seed),
        Command::Massey { .. } => ("massey", cli.seed),
        Command::Verify { .. } => ("verify", cli.seed),
        Command::Expand { .. } => ("expand", cli.seed),
    };
    let mut report = RunReport::new(name, seed);
    if cli.r_max < 2 {
        bail!("--r-max must be at least 2");
    }
    match &cli.command {
        Command::Sseq { input, max_degree, expect } => {
            let l = load(input)?;
            report.spec = Some(l.config);
            let mut engine = Sseq::new(&l.spec, *max_degree, &l.overrides)?;
            if cli.seed != 0 {
                engine = engine.with_seed(cli.seed);
            }
            let run = engine.run(cli.r_max)?;
            if let Some(series) = expect {
                let n = run.report.poincare.valid_through;
                let want: Vec<usize> = expansion(series, n)?.into_iter().map(|x| x.max(0) as usize).collect();
                let got = run.report.poincare.coefficients.get(..=n).unwrap_or_default().to_vec();
                report.verdicts.push(Verdict::compare("Poincare coefficients", &got, &want));
            }
            report.sseq = Some(run.report);
        }
        Command::Oracle { input, max_degree } => {
            let l = load(input)?;
            report.oracle = Some(oracle(&l.spec, *max_degree, cli)?);
            report.spec = Some(l.config);
        }
        Command::Compare { input, max_degree } => {
            let l = load(input)?;
            let n = *max_degree;
            let o = oracle(&l.spec, n, cli)?;
            let run = Sseq::new(&l.spec, n + cli.r_max, &l.overrides)?.run(cli.r_max)?;
            let mismatches: Vec<String> = run
                .pages
                .iter()
                .enumerate()
                .flat_map(|(k, page)| {
                    let r = k + 2;
                    let table = o.pages.iter().find(|t| t.r == r);
                    (0..=n).flat_map(move |i| (0..=n - i).map(move |j| (i, j))).filter_map(move |(i, j)| {
                        let want = table.map_or(0, |t| t.dim(i, j));
                        (page.dim(i, j) != want).then(|| format!("E_{r}^({i},{j}) engine {} oracle {want}", page.dim(i, j)))
                    })
                })
                .collect();
            report.verdicts.push(Verdict {
                name: "engine pages vs double complex".into(),
                status: if mismatches.is_empty() {
                    Status::Match
                } else {
                    Status::Mismatch {
                        detail: mismatches.join("; "),
                    }
                },
            });
            let engine = run.report.poincare.coefficients[..=n].to_vec();
            report.verdicts.push(Verdict::compare("engine E_inf vs group cohomology", &engine, &o.cohomology));
            report.verdicts.push(Verdict::compare(
                "double complex vs group cohomology",
                &o.total_cohomology,
                &o.cohomology,
            ));
            report.spec = Some(l.config);
            report.sseq = Some(run.report);
            report.oracle = Some(o);
        }
        Command::Massey {
            p,
            quotient,
            a,
            b,
            c,
            expect,
        } => {
            let g = AbelianPGroupSpec::new(*p, quotient.clone())?;
            let [x, y, z] = [a, b, c].map(|s| CohoClass::parse_any(s, &g).with_context(|| format!("parsing `{s}`")));
            let (x, y, z) = (x?, y?, z?);
            let m = massey_triple(&x, &y, &z)?;
            if let Some(e) = expect {
                let want = CohoClass::parse_any(e, &g).with_context(|| format!("parsing `{e}`"))?;
                let status = if m.same_coset(&want) {
                    Status::Match
                } else {
                    Status::Mismatch {
                        detail: format!("{} is not in the coset of {}", want, m.representative),
                    }
                };
                report.verdicts.push(Verdict {
                    name: "Massey product".into(),
                    status,
                });
            }
            report.massey = Some(MasseyReport {
                p: *p,
                quotient: quotient.clone(),
                classes: [x.to_string(), y.to_string(), z.to_string()],
                representative: m.representative.to_string(),
                indeterminacy: m.indeterminacy_basis.iter().map(|c| c.to_string()).collect(),
                contains_zero: m.contains_zero(),
            });
        }
        Command::Verify { suites } => {
            let options = CheckOptions {
                seed: cli.seed,
                budget: cli.budget,
            };
            let chosen = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.clone() };
            for suite in chosen {
                let out = run_suite(suite, &options);
                let status = if out.passed {
                    Status::Match
                } else {
                    Status::Mismatch {
                        detail: format!("{} of {} checks failed", out.failed, out.checked),
                    }
                };
                report.verdicts.push(Verdict {
                    name: suite.name().into(),
                    status,
                });
                report.suites.push(out);
            }
        }
        Command::Expand { series, terms, expect } => {
            let e = expansion(series, *terms)?;
            if let Some(want) = expect {
                let got = e[..want.len().min(e.len())].to_vec();
                report.verdicts.push(Verdict::compare("expansion", &got, want));
            }
            report.expansion = Some(e);
        }
    }
    Ok(report)
}

fn oracle(spec: &ExtensionSpec, n: usize, cli: &Cli) -> Result<OracleReport> {
    let group = build_extension_group(spec)?;
    let cohomology = cohomology_dims(&group.table, spec.p, n)?;
    let dc = double_complex_ss(spec, n, cli.r_max, cli.budget)?;
    Ok(OracleReport {
        group_order: group.table.order(),
        max_degree: n,
        cohomology,
        pages: dc.pages,
        total_cohomology: dc.total_cohomology,
    })
}
