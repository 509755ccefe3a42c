use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quartic_fermat::arith::primes_up_to;
use quartic_fermat::elliptic::PointCounter;
use quartic_fermat::frey::{a3_table_with, build_frey, trace_inert_with, trace_split_with, QcurveTrace, Variant};
use quartic_fermat::newforms::{records, render_rows, verify_table, Eigenvalue};
use quartic_fermat::obstruction::{
    first_case_constraint, int_json, rt2_json, theorem1_verdict_with, theorem2_verdict_with, VerdictReport,
};
use quartic_fermat::search::{search_solutions, verify_side_claims, SearchReport, SideClaimViolation};
use quartic_fermat::two_squares::{all_representations, TwoSquares};
use quartic_fermat::{Error, GaussianInt, Int};
use serde_json::{json, Value};

/// Checks the finite arithmetic behind the modular treatment of x^4 + y^4 = z^p.
#[derive(Debug, Parser)]
#[command(name = "quartic-fermat", version)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Point-count cache file, created if missing.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue table of the six newforms.
    Newforms {
        #[command(subcommand)]
        action: NewformsAction,
    },
    /// Traces of Frobenius of the Frey curves.
    Frey {
        #[command(subcommand)]
        action: FreyAction,
    },
    /// Traces at 3 of both Frey curves over the coprime classes mod 3.
    A3Table,
    /// Verdict reports.
    Verdict {
        #[command(subcommand)]
        action: VerdictAction,
    },
    /// Branch of a prime q = 1 mod 4 as a divisor of C, for p = 3 mod 4.
    AnalyzeQ {
        #[arg(long)]
        p: Int,
        #[arg(long)]
        q: Int,
    },
    /// Representations of N as a sum of two squares.
    TwoSquares {
        n: Int,
        /// List every representation instead of one.
        #[arg(long)]
        all: bool,
    },
    /// Search A^4 + B^4 = C^p over coprime A, B.
    Search {
        #[arg(long, value_name = "N")]
        max_ab: u64,
        /// Comma-separated exponents.
        #[arg(long, value_name = "LIST", value_delimiter = ',', required = true)]
        primes: Vec<u32>,
    },
    /// Check gcd(6, A^4 + B^4) = 1 and that every prime factor is 1 mod 4.
    SideClaims {
        #[arg(long, value_name = "N")]
        max_ab: u64,
    },
}

#[derive(Debug, Subcommand)]
enum NewformsAction {
    /// Print the table; with --verify, recompute it from point counts.
    Table {
        #[arg(long)]
        verify: bool,
        /// Recompute eigenvalues up to this prime as well.
        #[arg(long, value_name = "N", requires = "verify")]
        max_prime: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum FreyAction {
    /// a_q of E_{A,B} or E_{B,A} at a prime q of good reduction.
    Trace {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long = "A", value_name = "n", allow_negative_numbers = true)]
        a: Int,
        #[arg(long = "B", value_name = "n", allow_negative_numbers = true)]
        b: Int,
        #[arg(long)]
        q: Int,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    #[value(name = "AB")]
    Ab,
    #[value(name = "BA")]
    Ba,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Ab => Variant::AB,
            VariantArg::Ba => Variant::BA,
        }
    }
}

#[derive(Debug, Subcommand)]
enum VerdictAction {
    /// Elimination chain for exponent p, or for every prime in a range.
    Theorem1(Theorem1Args),
    /// First-case chain for exponent p.
    FirstCase {
        #[arg(long)]
        p: Int,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Theorem1Args {
    #[arg(long)]
    p: Option<Int>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    range: Option<Vec<u64>>,
}

/// Rendered result of a command; `ok` is false when a check failed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn gaussian_json(g: &GaussianInt) -> Value {
    json!({"re": int_json(&g.re), "im": int_json(&g.im)})
}

fn trace_json(t: &QcurveTrace) -> Value {
    let mut v = rt2_json(&t.value);
    v["sign_determined"] = json!(t.sign_determined);
    v
}

fn eigenvalue_json(e: &Eigenvalue) -> Value {
    match e {
        Eigenvalue::Rational(n) => json!({"rat": n, "irr": 0}),
        Eigenvalue::Surd(t) => trace_json(t),
    }
}

fn rep_json(r: &TwoSquares<Int>) -> Value {
    json!({"alpha": int_json(&r.alpha), "beta": int_json(&r.beta)})
}

fn newforms_table(counter: &PointCounter, verify: bool, max_prime: Option<u64>) -> quartic_fermat::Result<Output> {
    let recs = records()?;
    let table_json = |r: &quartic_fermat::newforms::NewformRecord| -> Value {
        r.table.iter().map(|(p, v)| (p.to_string(), rt2_json(v))).collect::<serde_json::Map<_, _>>().into()
    };
    if !verify {
        let forms: Vec<Value> = recs
            .iter()
            .map(|r| json!({"label": r.label.to_string(), "level": r.level, "cm_field": r.cm_field.to_string(), "table": table_json(r)}))
            .collect();
        return Ok(Output { text: render_rows(recs), json: json!({"forms": forms}), ok: true });
    }
    let checks = verify_table(counter, max_prime.unwrap_or(17))?;
    let mut text = String::new();
    let mut forms = Vec::new();
    for (rec, check) in recs.iter().zip(&checks) {
        let values: Vec<String> = check.computed.iter().map(|(p, e)| format!("a{p}={e}")).collect();
        let mark = if check.ok { "ok" } else { "MISMATCH" };
        writeln!(text, "{} level {} {}: {} ({mark})", rec.label, rec.level, rec.cm_field, values.join(" ")).unwrap();
        let computed: serde_json::Map<_, _> =
            check.computed.iter().map(|(p, e)| (p.to_string(), eigenvalue_json(e))).collect();
        forms.push(json!({
            "label": rec.label.to_string(),
            "level": rec.level,
            "cm_field": rec.cm_field.to_string(),
            "table": table_json(rec),
            "computed": computed,
            "ok": check.ok,
        }));
    }
    let ok = checks.iter().all(|c| c.ok);
    text.push_str(if ok { "table verified" } else { "table mismatch" });
    Ok(Output { text, json: json!({"forms": forms, "ok": ok}), ok })
}

fn frey_trace(counter: &PointCounter, variant: Variant, a: &Int, b: &Int, q: &Int) -> quartic_fermat::Result<Output> {
    let e = build_frey(a, b, variant)?;
    if !e.has_good_reduction(q) || *q == Int::from(2) {
        return Err(Error::BadReduction(format!("E_{variant} has bad reduction at {q}")));
    }
    let curve = &e.curve;
    let coefficients = json!({"a2": gaussian_json(&curve.a2), "a4": gaussian_json(&curve.a4), "a6": gaussian_json(&curve.a6)});
    let base = json!({"variant": variant, "A": int_json(a), "B": int_json(b), "q": int_json(q), "curve": coefficients});
    let (kind, trace_text, trace) = if q % 4u32 == Int::from(3) {
        let t = trace_inert_with(counter, curve, q)?;
        ("inert", t.to_string(), trace_json(&t))
    } else {
        let t = trace_split_with(counter, curve, q)?;
        ("split", t.to_string(), json!({"rat": t, "irr": 0}))
    };
    let mut json = base;
    json["kind"] = json!(kind);
    json["trace"] = trace;
    let text = format!("E_{variant} (A, B) = ({a}, {b}): {curve}\nq = {q} ({kind}): a_q = {trace_text}");
    Ok(Output { text, json, ok: true })
}

fn a3(counter: &PointCounter) -> quartic_fermat::Result<Output> {
    let table = a3_table_with(counter)?;
    let mut text = String::from("A mod 3  B mod 3  (A, B)   a_3(E_AB)  a_3(E_BA)\n");
    let mut rows = Vec::new();
    for r in &table.rows {
        let (x, y) = &r.representative;
        writeln!(text, "{:<8} {:<8} {:<8} {:<10} {}", r.a_mod3, r.b_mod3, format!("({x}, {y})"), r.ab.to_string(), r.ba).unwrap();
        rows.push(json!({
            "a_mod3": r.a_mod3,
            "b_mod3": r.b_mod3,
            "representative": [int_json(x), int_json(y)],
            "ab": trace_json(&r.ab),
            "ba": trace_json(&r.ba),
        }));
    }
    let ok = table.classification_holds();
    text.push_str(if ok { "classification holds" } else { "classification FAILS" });
    Ok(Output { text, json: json!({"rows": rows, "classification_holds": ok}), ok })
}

fn report_output(report: VerdictReport) -> Output {
    let json: Value = serde_json::from_str(&report.to_json()).expect("report JSON");
    Output { text: report.to_string(), json, ok: report.all_computed_hold() }
}

fn theorem1_range(counter: &PointCounter, lo: u64, hi: u64) -> quartic_fermat::Result<Output> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for p in primes_up_to(hi).into_iter().filter(|&p| p >= lo) {
        let report = theorem1_verdict_with(counter, &Int::from(p))?;
        ok &= report.all_computed_hold();
        writeln!(text, "{p} {}", report.verdict).unwrap();
        rows.push(json!({"p": p, "verdict": report.verdict, "all_computed_hold": report.all_computed_hold()}));
    }
    Ok(Output { text: text.trim_end().to_string(), json: json!({"reports": rows}), ok })
}

fn analyze_q(p: &Int, q: &Int) -> quartic_fermat::Result<Output> {
    let a = first_case_constraint(q, p)?;
    let r = &a.decomposition;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let text = format!(
        "q = {q}, p = {p}, q mod p = {}\n{q} = {}^2 + {}^2\nalpha^2 = 1 mod p: {}\np | beta: {}\nbranch: {}",
        q % p,
        r.alpha,
        r.beta,
        yes(a.forced.alpha_sq_is_1),
        yes(a.forced.p_divides_beta),
        a.branch
    );
    let json = json!({
        "q": int_json(q),
        "p": int_json(p),
        "decomposition": rep_json(r),
        "alpha_sq_is_1": a.forced.alpha_sq_is_1,
        "p_divides_beta": a.forced.p_divides_beta,
        "branch": a.branch,
    });
    Ok(Output { text, json, ok: true })
}

fn two_squares(n: &Int, all: bool) -> quartic_fermat::Result<Output> {
    let reps = all_representations(n)?;
    let shown: Vec<_> = if all { reps.iter().collect() } else { reps.iter().take(1).collect() };
    let text = if shown.is_empty() {
        format!("{n} is not a sum of two squares")
    } else {
        shown.iter().map(|r| format!("{n} = {}^2 + {}^2", r.alpha, r.beta)).collect::<Vec<_>>().join("\n")
    };
    let json = json!({
        "n": int_json(n),
        "count": reps.len(),
        "representations": shown.iter().map(|r| rep_json(r)).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, ok: true })
}

fn search(max_ab: u64, primes: &[u32]) -> Output {
    let report: SearchReport = search_solutions(max_ab, primes);
    let sols: Vec<Value> = report
        .solutions_found
        .iter()
        .map(|s| json!({"a": s.a, "b": s.b, "c": int_json(&s.c), "p": s.p}))
        .collect();
    let mut text = format!(
        "checked {} coprime pairs with A, B <= {max_ab} for p in {:?}: {} solutions",
        report.pairs_checked,
        report.primes_tested,
        sols.len()
    );
    for s in &report.solutions_found {
        write!(text, "\n{}^4 + {}^4 = {}^{}", s.a, s.b, s.c, s.p).unwrap();
    }
    let json = json!({
        "bound": max_ab,
        "primes": report.primes_tested,
        "pairs_checked": report.pairs_checked,
        "solutions": sols,
    });
    Output { text, json, ok: report.solutions_found.is_empty() }
}

fn side_claims(max_ab: u64) -> Output {
    let report = verify_side_claims(max_ab);
    let mut text = format!(
        "checked {} coprime pairs with A even, A, B <= {max_ab}: {} violations",
        report.pairs_checked,
        report.side_claim_violations.len()
    );
    let mut violations = Vec::new();
    for v in &report.side_claim_violations {
        match v {
            SideClaimViolation::SharesFactorWithSix { a, b, n } => {
                write!(text, "\ngcd(6, {n}) != 1 at ({a}, {b})").unwrap();
                violations.push(json!({"kind": "shares_factor_with_six", "a": a, "b": b, "n": n}));
            }
            SideClaimViolation::PrimeFactorNotOneModFour { a, b, prime } => {
                write!(text, "\nprime {prime} = 3 mod 4 divides A^4 + B^4 at ({a}, {b})").unwrap();
                violations.push(json!({"kind": "prime_factor_not_one_mod_four", "a": a, "b": b, "prime": prime}));
            }
        }
    }
    let json = json!({"bound": max_ab, "pairs_checked": report.pairs_checked, "violations": violations});
    Output { text, json, ok: report.side_claim_violations.is_empty() }
}

fn run(cli: &Cli, counter: &PointCounter) -> quartic_fermat::Result<Output> {
    match &cli.command {
        Command::Newforms { action: NewformsAction::Table { verify, max_prime } } => {
            newforms_table(counter, *verify, *max_prime)
        }
        Command::Frey { action: FreyAction::Trace { variant, a, b, q } } => {
            frey_trace(counter, (*variant).into(), a, b, q)
        }
        Command::A3Table => a3(counter),
        Command::Verdict { action: VerdictAction::Theorem1(args) } => match (&args.p, &args.range) {
            (Some(p), _) => Ok(report_output(theorem1_verdict_with(counter, p)?)),
            (None, Some(r)) => theorem1_range(counter, r[0], r[1]),
            (None, None) => unreachable!("clap enforces the group"),
        },
        Command::Verdict { action: VerdictAction::FirstCase { p } } => {
            Ok(report_output(theorem2_verdict_with(counter, p)?))
        }
        Command::AnalyzeQ { p, q } => analyze_q(p, q),
        Command::TwoSquares { n, all } => two_squares(n, *all),
        Command::Search { max_ab, primes } => Ok(search(*max_ab, primes)),
        Command::SideClaims { max_ab } => Ok(side_claims(*max_ab)),
    }
}

/// Exit status for a library error: 1 when a check inside the computation
/// failed, 2 when the input was outside the operation's domain.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::StructureViolation(_)
        | Error::ConjugacyViolation { .. }
        | Error::LawViolation(_)
        | Error::Identification(_)
        | Error::ModelUnavailable(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let counter = match &cli.cache {
        Some(path) => match PointCounter::with_cache_file(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => PointCounter::direct(),
    };
    let result = run(&cli, &counter);
    if let Err(e) = counter.flush() {
        eprintln!("error: writing cache: {e}");
    }
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON value"));
            } else {
                println!("{}", out.text.trim_end());
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
