use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triperiod::cusp::{balanced_triples, constant_check};
use triperiod::det::{balanced_degrees, check_invariance};
use triperiod::ingest::{self, emit_report, Overrides, ReportFormat};
use triperiod::linalg::{projector_trial, random_integral_matrix};
use triperiod::localfield::{EisensteinPoly, LocalField, LocalFieldElement};
use triperiod::period::{compute_period, planted_triple, PeriodOptions, ProductForm};
use triperiod::phin::{build_dfgh, check_balanced, convenient_check, FLeg, SupercuspidalLeg, Verdict};
use triperiod::qexp::QExpansion;

#[derive(Parser)]
#[command(name = "triperiod", version, about = "Triple-product p-adic periods through the explicit reciprocity formula")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate I_p(f,g,h) for a triple file.
    Compute(ComputeArgs),
    /// Eigenvalue audit and convenience verdict for D_fgh.
    CheckConvenient(ConvenientArgs),
    /// Invariance of Det_r under random matrices modulo p^e.
    DetInvariance(DetArgs),
    /// Re-derive the constant (−1)^{k−2}(r−k+2)! at the cusp.
    Constant(ConstantArgs),
    /// Compare the ordinary projector with lim A^{n!} on random matrices.
    EordTest(EordArgs),
    /// Run every subcommand's self-test.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Defaults to the `basis` entry of the triple file.
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(long)]
    prec: Option<i64>,
    #[arg(long)]
    qprec: Option<usize>,
    #[arg(long)]
    allow_inconvenient: bool,
    /// Put the derivative on h' instead of g.
    #[arg(long)]
    intro_form: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args)]
struct ConvenientArgs {
    /// Take a_p, χ_f(p), μ_g, μ_h from a triple file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<i64>>,
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// a_p(f), an integer unit.
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    ap: i64,
    /// χ_f(p).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    chi_p: i64,
    /// Units u with μ = π^{1−ν}·u over Q_p(√p).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mu_units: Option<Vec<i64>>,
    /// f of weight 2 with multiplicative reduction.
    #[arg(long)]
    semistable: bool,
    #[arg(long, default_value_t = 20)]
    prec: i64,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args)]
struct DetArgs {
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<u32>>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// `p^e`, e.g. `5^5`.
    #[arg(long, default_value = "5^5")]
    modulus: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args)]
struct ConstantArgs {
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<i64>>,
    #[arg(long, default_value_t = 7)]
    p: u64,
    #[arg(long, default_value_t = 60)]
    qprec: usize,
    #[arg(long, default_value_t = 20)]
    prec: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    selftest: bool,
}

#[derive(Args)]
struct EordArgs {
    #[arg(long, default_value_t = 5)]
    p: u64,
    #[arg(long, default_value_t = 4)]
    size: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    digits: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    selftest: bool,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn three<T: Copy>(v: &[T], flag: &str) -> Result<[T; 3]> {
    match v {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => bail!("{flag} takes exactly three comma-separated values"),
    }
}

fn ramified(p: u64, prec: i64) -> Result<LocalField> {
    Ok(LocalField::new(p, 1, Some(EisensteinPoly::from_integers(&[-(p as i64), 0])), prec)?)
}

fn compute(a: &ComputeArgs) -> Result<bool> {
    if a.selftest {
        return compute_selftest();
    }
    let input = a.input.as_ref().context("--input is required")?;
    let o = Overrides {
        p_adic: a.prec,
        q: a.qprec,
    };
    let triple = ingest::parse_triple(input, o).with_context(|| format!("reading {}", input.display()))?;
    let basis_path = match (&a.basis, &triple.basis) {
        (Some(b), _) => b.clone(),
        (None, Some(b)) => input.parent().unwrap_or(Path::new(".")).join(b),
        (None, None) => bail!("no basis file given (--basis or a `basis` entry)"),
    };
    let basis = ingest::parse_basis(&basis_path, triple.config.field(), Some(triple.q_precision))
        .with_context(|| format!("reading {}", basis_path.display()))?;
    let opts = PeriodOptions {
        form: if a.intro_form { ProductForm::Intro } else { ProductForm::MainText },
        allow_inconvenient: a.allow_inconvenient,
    };
    let report = compute_period(&triple.config, &basis.basis, &basis.degeneracy, opts)?;
    let format = match a.format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Structured,
    };
    print!("{}", String::from_utf8_lossy(&emit_report(&report, format)));
    Ok(report.fully_certified())
}

fn compute_selftest() -> Result<bool> {
    let k = ramified(5, 20)?;
    let u = LocalFieldElement::from_int(&k, 3);
    let pt = planted_triple(&k, &u, 100, 1)?;
    let valid = pt.config.validate().is_empty();
    println!("{} planted (2,2,2) triple is valid", status(valid));
    let rep = compute_period(&pt.config, &pt.basis, &[], PeriodOptions::default())?;
    let got = LocalFieldElement::parse(&k, &rep.period)?;
    let ok = got.eq_at_precision(&u) && rep.fully_certified();
    println!("{} planted period recovered: {}", status(ok), rep.period);
    let mut bad = pt.config.clone();
    bad.weights = [2, 2, 6];
    let degenerate = bad.validate().iter().any(|v| v.clause == "balanced");
    println!("{} (2,2,6) reported as unbalanced", status(degenerate));
    let mut undepleted = pt.config.clone();
    undepleted.g.form.set(5, LocalFieldElement::one(&k));
    let rejected = compute_period(&undepleted, &pt.basis, &[], PeriodOptions::default()).is_err();
    println!("{} undepleted g rejected", status(rejected));
    Ok(valid && ok && degenerate && rejected)
}

fn check_convenient(a: &ConvenientArgs) -> Result<bool> {
    if a.selftest {
        return convenient_selftest();
    }
    let (field, f, g, h) = if let Some(input) = &a.input {
        let t = ingest::parse_triple(input, Overrides::default())?;
        let tc = t.config;
        let field = tc.field().clone();
        let ap = tc.f.a_p.clone().context("a_p(f) missing")?;
        let f = match tc.reduction {
            triperiod::period::Reduction::Good => FLeg::Crystalline {
                weight: tc.weights[0],
                a_p: ap,
                chi_p: tc.tame[0].value(tc.p as i64),
            },
            triperiod::period::Reduction::Multiplicative => FLeg::Semistable { a_p: ap },
        };
        let g = SupercuspidalLeg {
            weight: tc.weights[1],
            mu: tc.g.mu.clone().context("μ_g missing")?,
        };
        let h = SupercuspidalLeg {
            weight: tc.weights[2],
            mu: tc.h.mu.clone().context("μ_h missing")?,
        };
        (field, f, g, h)
    } else {
        let w = three(a.weights.as_deref().context("--weights or --input is required")?, "--weights")?;
        let units = a.mu_units.clone().unwrap_or_else(|| vec![2, 3]);
        if units.len() != 2 {
            bail!("--mu-units takes exactly two comma-separated values");
        }
        let field = ramified(a.p, a.prec)?;
        let el = |n: i64| LocalFieldElement::from_int(&field, n);
        let mu = |nu: i64, u: i64| -> Result<LocalFieldElement> {
            Ok(&LocalFieldElement::uniformizer(&field).pow(1 - nu)? * &el(u))
        };
        let f = if a.semistable {
            FLeg::Semistable { a_p: el(a.ap) }
        } else {
            FLeg::Crystalline {
                weight: w[0],
                a_p: el(a.ap),
                chi_p: el(a.chi_p),
            }
        };
        let g = SupercuspidalLeg {
            weight: w[1],
            mu: mu(w[1], units[0])?,
        };
        let h = SupercuspidalLeg {
            weight: w[2],
            mu: mu(w[2], units[1])?,
        };
        (field, f, g, h)
    };
    let module = build_dfgh(&field, field.unram_degree(), &f, &g, &h)?;
    let rep = convenient_check(&module, &triperiod::localfield::FpPolynomial::linear(&LocalFieldElement::one(&field)))?;
    println!("label  ord_p  |.|-exponent  N=0");
    for e in &rep.audit.entries {
        println!("{:<6} {:<6} {:<13} {}", e.label, e.valuation, e.abs_exponent, e.n_zero);
    }
    let exps: Vec<String> = rep.audit.exponents().iter().map(|e| e.to_string()).collect();
    println!("exponents {{{}}}", exps.join(", "));
    println!("verdict {:?}", rep.verdict);
    Ok(rep.verdict == Verdict::Convenient)
}

fn convenient_selftest() -> Result<bool> {
    let k = ramified(5, 20)?;
    let el = |n: i64| LocalFieldElement::from_int(&k, n);
    let pi = LocalFieldElement::uniformizer(&k);
    let leg = |w: i64, u: i64| -> Result<SupercuspidalLeg> {
        Ok(SupercuspidalLeg {
            weight: w,
            mu: &pi.pow(1 - w)? * &el(u),
        })
    };
    let q = triperiod::localfield::FpPolynomial::linear(&el(1));
    let f = |w: i64, a: i64| FLeg::Crystalline {
        weight: w,
        a_p: el(a),
        chi_p: el(1),
    };
    let mut all = true;
    let d = build_dfgh(&k, 1, &f(3, 2), &leg(3, 7)?, &leg(2, 3)?)?;
    let v = convenient_check(&d, &q)?.verdict;
    println!("{} (3,3,2) is convenient", status(v == Verdict::Convenient));
    all &= v == Verdict::Convenient;
    let d = build_dfgh(&k, 1, &f(2, 1), &leg(2, 1)?, &leg(2, 1)?)?;
    let v = convenient_check(&d, &q)?.verdict;
    println!("{} (2,2,2) with unit product 1 is not convenient", status(v == Verdict::NotConvenient));
    all &= v == Verdict::NotConvenient;
    let unbalanced = check_balanced(2, 2, 6).is_err();
    println!("{} (2,2,6) rejected", status(unbalanced));
    Ok(all && unbalanced)
}

fn parse_modulus(s: &str) -> Result<(u64, u32)> {
    let (p, e) = s.split_once('^').context("modulus must look like p^e")?;
    Ok((p.trim().parse()?, e.trim().parse()?))
}

fn det_invariance(a: &DetArgs) -> Result<bool> {
    if a.selftest {
        let mut all = true;
        for r in balanced_degrees(2) {
            let rep = check_invariance(r, 5, 3, 10, 7)?;
            println!("{} r = {:?}", status(rep.passed()), r);
            all &= rep.passed();
        }
        let rejected = check_invariance([1, 1, 1], 5, 3, 1, 1).is_err();
        println!("{} odd total degree rejected", status(rejected));
        return Ok(all && rejected);
    }
    let (p, e) = parse_modulus(&a.modulus)?;
    let degrees: Vec<[u32; 3]> = match &a.r {
        Some(r) => vec![three(r, "--r")?],
        None => balanced_degrees(4),
    };
    let mut all = true;
    for r in degrees {
        let rep = check_invariance(r, p, e, a.trials, a.seed)?;
        let eq = if rep.equality_case { " (equality case)" } else { "" };
        println!(
            "{} r = {:?} mod {}: scaling {}/{}, invariance {}/{}{eq}",
            status(rep.passed()),
            r,
            rep.modulus,
            rep.scaling_holds,
            rep.trials,
            rep.invariance_holds,
            rep.trials
        );
        if let Some(g) = rep.counterexample {
            println!("    counterexample {g:?}");
        }
        all &= rep.passed();
    }
    Ok(all)
}

fn depleted(field: &LocalField, rng: &mut ChaCha8Rng, n: usize) -> QExpansion {
    let p = field.p() as usize;
    let coeffs: Vec<i64> = (0..=n)
        .map(|i| if i % p == 0 { 0 } else { rng.gen_range(-40..=40) })
        .collect();
    QExpansion::from_ints(field, &coeffs, 2, 1)
}

fn constant(a: &ConstantArgs) -> Result<bool> {
    let field = LocalField::qp(a.p, a.prec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let triples = if a.selftest {
        vec![[2, 2, 2], [3, 3, 2], [4, 4, 4]]
    } else {
        match &a.weights {
            Some(w) => vec![three(w, "--weights")?],
            None => balanced_triples(6),
        }
    };
    let mut all = true;
    for w in triples {
        let xi2 = depleted(&field, &mut rng, a.qprec);
        let xi3 = depleted(&field, &mut rng, a.qprec);
        let rep = constant_check(w, &xi2, &xi3)?;
        println!(
            "{} {:?}: constant {} (expected {}), q-expansion check {}",
            status(rep.passed()),
            w,
            rep.constant,
            rep.expected,
            rep.concrete_agrees
        );
        all &= rep.passed();
    }
    Ok(all)
}

fn eord_test(a: &EordArgs) -> Result<bool> {
    let runs: Vec<(u64, usize, usize)> = if a.selftest {
        vec![(5, 2, 3), (7, 3, 3)]
    } else {
        vec![(a.p, a.size, a.trials)]
    };
    let mut all = true;
    for (p, n, trials) in runs {
        let field = LocalField::qp(p, 3 * a.digits)?;
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for i in 0..trials {
            let m = random_integral_matrix(&field, n, &mut rng)?;
            let t = projector_trial(&m, a.digits)?;
            let ok = t.agrees && t.idempotent;
            println!("{} p = {p}, size {n}, trial {i}: ordinary rank {}", status(ok), t.rank);
            all &= ok;
        }
    }
    Ok(all)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compute(a) => compute(&a),
        Command::CheckConvenient(a) => check_convenient(&a),
        Command::DetInvariance(a) => det_invariance(&a),
        Command::Constant(a) => constant(&a),
        Command::EordTest(a) => eord_test(&a),
        Command::Selftest => {
            let mut all = true;
            println!("== compute");
            all &= compute_selftest()?;
            println!("== check-convenient");
            all &= convenient_selftest()?;
            println!("== det-invariance");
            all &= det_invariance(&DetArgs {
                r: None,
                trials: 0,
                modulus: String::new(),
                seed: 0,
                selftest: true,
            })?;
            println!("== constant");
            all &= constant(&ConstantArgs {
                weights: None,
                p: 7,
                qprec: 40,
                prec: 20,
                seed: 1,
                selftest: true,
            })?;
            println!("== eord-test");
            all &= eord_test(&EordArgs {
                p: 5,
                size: 2,
                trials: 0,
                digits: 8,
                seed: 1,
                selftest: true,
            })?;
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(ok) => exit(ok),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
