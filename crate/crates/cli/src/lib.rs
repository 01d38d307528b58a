//! Command-line front end for the verification suites of `unitary-chow-core`.
//!
//! [`run`] parses an argument vector, runs one suite and returns the exit
//! code together with the rendered output. Exit codes: 0 when every enforced
//! check passes, 1 on a failed check, 2 on invalid arguments.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use unitary_chow_core::corr::{st_vanishing_mechanism, verify_correspondence_suite, CorrRing};
use unitary_chow_core::flag::FlagRing;
use unitary_chow_core::milnor::{crosscheck_flag_embedding, verify_milnor_quotient, verify_quotient_presentation, MilnorRing};
use unitary_chow_core::ranks::{
    dimension_crosscheck, dimension_identities, transfer_table, verify_rank_valuations,
};
use unitary_chow_core::unitary::{
    verify_divided_classes, verify_e_presentation, verify_push_pull, verify_congruences, verify_main_steen, verify_model,
    verify_generation, UnitaryGrassmannian,
};
use unitary_chow_core::report::{all_passed, Check};
use unitary_chow_core::wz::verify_levels;
use unitary_chow_core::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `n` accepted for flag-model commands without `--force`.
pub const FLAG_LIMIT: usize = 8;
/// Largest `n` accepted by `verify ranks` without `--force`.
pub const RANKS_LIMIT: usize = 16;
/// Transfer ranks are tabulated up to this motive rank.
pub const TRANSFER_MAX: u32 = 16;
/// `dims` compares with the flag model up to this `n`.
const DIMS_MODEL_LIMIT: usize = 6;
/// Codimensions enumerated by `verify levels`.
const LEVEL_CODIMS: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "unitary-chow", version, about = "Exact Chow-ring verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the graded basis of a ring.
    Ring {
        #[arg(value_enum)]
        ring: RingKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RingKind {
    H1,
    Flag,
    Hk,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Lemma1,
    #[value(name = "remark-R", alias = "remark-r")]
    RemarkR,
    Lemma16,
    Halves,
    Lemma18,
    Prop19,
    EPresentation,
    MainSteen,
    Section2,
    StMechanism,
    Ranks,
    Dims,
    Levels,
    Model,
    Embedding,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Defaults to 1; `dims` runs every k when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// Restrict `lemma16`/`lemma18` to one index.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Allow sizes beyond the guardrails.
    #[arg(long)]
    force: bool,
    /// `section2` variety: P<d> or H<k> (with --n). All of P1, P2, H1, H2 when omitted.
    #[arg(long)]
    variety: Option<String>,
    /// `st-mechanism` dimension threshold; defaults to k(n - 2k) + 1.
    #[arg(long)]
    threshold: Option<usize>,
    /// Include wall-clock duration (makes output non-deterministic).
    #[arg(long)]
    timing: bool,
}

impl Opts {
    fn k(&self) -> usize {
        self.k.unwrap_or(1)
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. } | Error::InvalidFlagType(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let (name, opts, flag_model) = match &cli.command {
        Command::Ring { ring, opts } => (format!("ring {}", ring_name(*ring)), opts, *ring != RingKind::H1),
        Command::Verify { target, opts } => (target_name(*target).to_string(), opts, uses_flag_model(*target, opts)),
    };
    if let Err(msg) = guard(&cli.command, opts, flag_model) {
        return (2, format!("error: {msg}\n"));
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Ring { ring, opts } => dump_ring(*ring, opts),
        Command::Verify { target, opts } => verify(*target, opts),
    };
    let elapsed = start.elapsed();
    let (report, passed) = match result {
        Ok(x) => x,
        Err(Failure::Usage(msg)) => return (2, format!("error: invalid arguments: {msg}\n")),
        Err(Failure::Compute(msg)) => return (1, format!("error: {msg}\n")),
    };
    let mut env = Map::new();
    env.insert("schema_version".into(), json!(SCHEMA_VERSION));
    env.insert("target".into(), json!(name));
    env.insert("parameters".into(), parameters(&cli.command, opts));
    env.insert("status".into(), json!(if passed { "pass" } else { "fail" }));
    let mut failures = Vec::new();
    collect_failures(&report, &mut failures);
    env.insert("failures".into(), Value::Array(failures));
    env.insert("report".into(), report);
    if opts.timing {
        env.insert("duration_ms".into(), json!(elapsed.as_secs_f64() * 1000.0));
    }
    let env = Value::Object(env);
    let out = match opts.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&env).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(&env),
    };
    (if passed { 0 } else { 1 }, out)
}

fn ring_name(r: RingKind) -> &'static str {
    match r {
        RingKind::H1 => "h1",
        RingKind::Flag => "flag",
        RingKind::Hk => "hk",
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Lemma1 => "lemma1",
        Target::RemarkR => "remark-R",
        Target::Lemma16 => "lemma16",
        Target::Halves => "halves",
        Target::Lemma18 => "lemma18",
        Target::Prop19 => "prop19",
        Target::EPresentation => "e-presentation",
        Target::MainSteen => "main-steen",
        Target::Section2 => "section2",
        Target::StMechanism => "st-mechanism",
        Target::Ranks => "ranks",
        Target::Dims => "dims",
        Target::Levels => "levels",
        Target::Model => "model",
        Target::Embedding => "embedding",
    }
}

fn uses_flag_model(t: Target, opts: &Opts) -> bool {
    match t {
        Target::Lemma1 | Target::RemarkR | Target::Ranks | Target::Levels => false,
        Target::Dims => opts.n <= DIMS_MODEL_LIMIT,
        Target::Section2 => opts.variety.as_deref().map_or(true, |v| v.starts_with('H')),
        _ => true,
    }
}

fn factorial_estimate(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

fn guard(cmd: &Command, opts: &Opts, flag_model: bool) -> Result<(), String> {
    if opts.force {
        return Ok(());
    }
    if flag_model && opts.n > FLAG_LIMIT {
        let rank = factorial_estimate(opts.n);
        return Err(format!(
            "n = {} exceeds {FLAG_LIMIT} for a flag-model command: the model has n! = {rank:.0} basis classes \
             and multiplication tables of order (n!)^2 = {:.2e} entries; pass --force to run anyway",
            opts.n,
            rank * rank
        ));
    }
    if matches!(cmd, Command::Verify { target: Target::Ranks, .. }) && opts.n > RANKS_LIMIT {
        return Err(format!(
            "n = {} exceeds {RANKS_LIMIT} for ranks: C(2^n, 2^k) has about 2^n bits; pass --force to run anyway",
            opts.n
        ));
    }
    Ok(())
}

fn parameters(cmd: &Command, opts: &Opts) -> Value {
    let mut p = Map::new();
    p.insert("n".into(), json!(opts.n));
    let dims = matches!(cmd, Command::Verify { target: Target::Dims, .. });
    p.insert("k".into(), if dims { json!(opts.k) } else { json!(opts.k()) });
    p.insert("i".into(), json!(opts.i));
    p.insert("seed".into(), json!(opts.seed));
    p.insert("samples".into(), json!(opts.samples));
    if let Command::Verify { target, .. } = cmd {
        if *target == Target::Section2 {
            p.insert("variety".into(), json!(opts.variety));
        }
        if *target == Target::StMechanism {
            p.insert("threshold".into(), json!(opts.threshold));
        }
    }
    Value::Object(p)
}

type Outcome = Result<(Value, bool), Failure>;

fn reported<T: serde::Serialize>(r: &T, passed: bool) -> Outcome {
    Ok((to_value(r), passed))
}

fn verify(target: Target, opts: &Opts) -> Outcome {
    let (n, k) = (opts.n, opts.k());
    match target {
        Target::Lemma1 => {
            let r = verify_milnor_quotient(n)?;
            reported(&r, r.passed)
        }
        Target::RemarkR => {
            let r = verify_quotient_presentation(n)?;
            reported(&r, r.passed)
        }
        Target::Lemma16 => {
            let r = verify_push_pull(n, k, opts.i)?;
            reported(&r, r.passed)
        }
        Target::Halves => {
            let r = verify_divided_classes(n, k)?;
            reported(&r, r.passed)
        }
        Target::Lemma18 => {
            let r = verify_congruences(n, k, opts.i)?;
            reported(&r, r.passed)
        }
        Target::Prop19 => {
            let r = verify_generation(n, k)?;
            reported(&r, r.passed)
        }
        Target::EPresentation => {
            let r = verify_e_presentation(n)?;
            reported(&r, r.passed)
        }
        Target::MainSteen => {
            let r = verify_main_steen(n, k)?;
            reported(&r, r.passed)
        }
        Target::Model => {
            let r = verify_model(n, k)?;
            reported(&r, r.passed)
        }
        Target::Embedding => {
            let r = crosscheck_flag_embedding(n)?;
            reported(&r, r.passed)
        }
        Target::Levels => {
            let r = verify_levels(n, k, LEVEL_CODIMS)?;
            reported(&r, r.passed)
        }
        Target::Section2 => correspondence_suite(opts),
        Target::StMechanism => {
            if 2 * k > n {
                return Err(Failure::Usage(format!("need 2k <= n, got n = {n}, k = {k}")));
            }
            let threshold = opts.threshold.unwrap_or(k * (n - 2 * k) + 1);
            let r = st_vanishing_mechanism(n, k, threshold, opts.seed, opts.samples)?;
            reported(&r, r.passed)
        }
        Target::Ranks => ranks(n),
        Target::Dims => dims(opts),
    }
}

fn parse_variety(v: &str, n: usize) -> Result<CorrRing, Failure> {
    let bad = || Failure::Usage(format!("unknown variety {v:?}; expected P<d> or H<k>"));
    let (head, tail) = v.split_at(v.chars().next().map_or(0, char::len_utf8));
    let m: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "P" => Ok(CorrRing::projective_space(m)?),
        "H" => Ok(CorrRing::unitary(n, m)?),
        _ => Err(bad()),
    }
}

fn correspondence_suite(opts: &Opts) -> Outcome {
    let names: Vec<String> = match &opts.variety {
        Some(v) => vec![v.clone()],
        None => {
            let mut v: Vec<String> = vec!["P1".into(), "P2".into(), "H1".into()];
            if opts.n >= 4 {
                v.push("H2".into());
            }
            v
        }
    };
    let mut reports = Vec::new();
    let mut passed = true;
    for name in &names {
        let x = parse_variety(name, opts.n)?;
        let r = verify_correspondence_suite(&x, opts.seed, opts.samples)?;
        passed &= r.passed;
        reports.push(to_value(&r));
    }
    Ok((json!({ "varieties": reports }), passed))
}

fn ranks(n: usize) -> Outcome {
    if n == 0 || n > 62 {
        return Err(Failure::Usage(format!("need 1 <= n <= 62 for ranks, got {n}")));
    }
    let r = verify_rank_valuations(n as u32);
    let transfers = transfer_table(TRANSFER_MAX);
    let passed = r.passed && r.rows.iter().all(|row| row.passed) && transfers.iter().all(|row| row.passed);
    Ok((json!({ "valuations": to_value(&r), "transfers": to_value(&transfers) }), passed))
}

fn dims(opts: &Opts) -> Outcome {
    let n = opts.n;
    let ks: Vec<usize> = match opts.k {
        Some(k) => vec![k],
        None => (1..=n / 2).collect(),
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for k in ks {
        if k == 0 || 2 * k > n {
            return Err(Failure::Usage(format!("need 1 <= k <= n/2, got n = {n}, k = {k}")));
        }
        let mut r = dimension_identities(n, k);
        if n <= DIMS_MODEL_LIMIT {
            r.checks.push(dimension_crosscheck(n, k)?);
            r.passed = all_passed(&r.checks);
        }
        passed &= r.passed;
        rows.push(to_value(&r));
    }
    Ok((json!({ "rows": rows }), passed))
}

fn monomial(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn flag_names(n: usize) -> Vec<String> {
    (0..n).map(|v| format!("x{v}")).collect()
}

fn dump_ring(kind: RingKind, opts: &Opts) -> Outcome {
    let n = opts.n;
    let mut graded = Vec::new();
    let mut checks = Vec::new();
    let (dim, rank, name) = match kind {
        RingKind::H1 => {
            let ring = MilnorRing::new(n)?;
            let names = ["a".to_string(), "b".to_string()];
            for d in 0..=ring.dim() {
                let basis: Vec<String> = ring
                    .indices_in_codim(d)
                    .into_iter()
                    .map(|idx| {
                        let (i, j) = ring.exponents(idx);
                        monomial(&names, &[i as u32, j as u32])
                    })
                    .collect();
                graded.push(json!({ "codim": d, "basis": basis }));
            }
            (ring.dim(), ring.rank(), format!("H_1 (n = {n})"))
        }
        RingKind::Flag => {
            let ring = FlagRing::new(n)?;
            let names = flag_names(n);
            for d in 0..=ring.dim() {
                let basis: Vec<String> =
                    ring.indices_in_codim(d).iter().map(|&idx| monomial(&names, &ring.basis()[idx])).collect();
                graded.push(json!({ "codim": d, "basis": basis }));
            }
            let ok = ring.pairing_is_unimodular();
            checks.push(Check::new("Poincaré pairing is unimodular", ok, ""));
            (ring.dim(), ring.rank(), format!("Fl({n})"))
        }
        RingKind::Hk => {
            let k = opts.k();
            let gr = UnitaryGrassmannian::new(n, k)?;
            let names = flag_names(n);
            let sub = gr.subring();
            for d in 0..=gr.dim() {
                let basis: Vec<String> = sub
                    .basis(d)
                    .iter()
                    .map(|c| {
                        let terms: Vec<String> =
                            c.terms().map(|(e, v)| format!("{v}*{}", monomial(&names, e))).collect();
                        if terms.is_empty() {
                            "0".into()
                        } else {
                            terms.join(" + ")
                        }
                    })
                    .collect();
                graded.push(json!({ "codim": d, "basis": basis }));
            }
            (gr.dim(), sub.total_rank(), format!("H_{k} (n = {n})"))
        }
    };
    let passed = all_passed(&checks);
    Ok((json!({ "ring": name, "dim": dim, "rank": rank, "graded": graded, "checks": to_value(&checks) }), passed))
}

/// Failed enforced checks and failed randomized tallies, with their
/// counterexamples.
fn collect_failures(v: &Value, out: &mut Vec<Value>) {
    match v {
        Value::Object(m) => {
            if let Some(Value::Array(checks)) = m.get("checks") {
                for c in checks {
                    if c["passed"] == json!(false) && c["enforced"] != json!(false) {
                        out.push(c.clone());
                    }
                }
            }
            if let Some(Value::Array(tallies)) = m.get("tallies") {
                for t in tallies {
                    if t["failures"].as_u64().is_some_and(|f| f > 0) {
                        out.push(t.clone());
                    }
                }
            }
            for (key, x) in m {
                if key != "checks" && key != "tallies" {
                    collect_failures(x, out);
                }
            }
        }
        Value::Array(xs) => xs.iter().for_each(|x| collect_failures(x, out)),
        _ => {}
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(x) => Some(x.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_check(c: &Value, indent: &str, out: &mut String) {
    let mark = match (c["passed"].as_bool(), c["enforced"].as_bool()) {
        (Some(true), _) => "ok  ",
        (Some(false), Some(false)) => "note",
        _ => "FAIL",
    };
    let detail = c["detail"].as_str().unwrap_or("");
    let label = c["label"].as_str().unwrap_or("");
    if detail.is_empty() {
        out.push_str(&format!("{indent}{mark} {label}\n"));
    } else {
        out.push_str(&format!("{indent}{mark} {label}: {detail}\n"));
    }
}

fn render_value(v: &Value, indent: &str, out: &mut String) {
    let Value::Object(m) = v else {
        out.push_str(&format!("{indent}{}\n", scalar(v).unwrap_or_else(|| v.to_string())));
        return;
    };
    for (key, x) in m {
        if key == "checks" {
            continue;
        }
        if let Some(s) = scalar(x) {
            out.push_str(&format!("{indent}{key}: {s}\n"));
            continue;
        }
        out.push_str(&format!("{indent}{key}:\n"));
        let deeper = format!("{indent}  ");
        match x {
            Value::Array(rows) => {
                for row in rows {
                    if row.get("checks").is_some() || row.get("tallies").is_some() || row.get("basis").is_some() {
                        render_value(row, &deeper, out);
                        out.push('\n');
                    } else {
                        out.push_str(&format!("{deeper}{row}\n"));
                    }
                }
            }
            _ => render_value(x, &deeper, out),
        }
    }
    if let Some(Value::Array(checks)) = m.get("checks") {
        out.push_str(&format!("{indent}checks:\n"));
        for c in checks {
            render_check(c, &format!("{indent}  "), out);
        }
    }
}

fn render_text(env: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("target: {}\n", env["target"].as_str().unwrap_or("")));
    let params: Vec<String> = env["parameters"]
        .as_object()
        .map(|m| m.iter().map(|(k, v)| format!("{k}={}", scalar(v).unwrap_or_default())).collect())
        .unwrap_or_default();
    out.push_str(&format!("parameters: {}\n", params.join(" ")));
    out.push_str(&format!("status: {}\n", env["status"].as_str().unwrap_or("")));
    if let Some(d) = env.get("duration_ms") {
        out.push_str(&format!("duration_ms: {d}\n"));
    }
    if let Some(Value::Array(f)) = env.get("failures") {
        if !f.is_empty() {
            out.push_str("failures:\n");
            for x in f {
                out.push_str(&format!("  {x}\n"));
            }
        }
    }
    render_value(&env["report"], "", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_basis_for_n_2() {
        let (code, out) = run(["unitary-chow", "ring", "h1", "--n", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["rank"], json!(2));
        assert_eq!(v["report"]["graded"][0]["basis"], json!(["1"]));
        assert_eq!(v["report"]["graded"][1]["basis"], json!(["a"]));
    }

    #[test]
    fn bad_arguments_exit_2() {
        assert_eq!(run(["unitary-chow", "verify", "nonsense"]).0, 2);
        assert_eq!(run(["unitary-chow", "verify", "lemma1", "--n", "x"]).0, 2);
        assert_eq!(run(["unitary-chow", "verify", "lemma1", "--n", "1"]).0, 2);
        assert_eq!(run(["unitary-chow", "verify", "section2", "--variety", "Q3"]).0, 2);
    }

    #[test]
    fn guardrail_needs_force() {
        let (code, out) = run(["unitary-chow", "ring", "flag", "--n", "9"]);
        assert_eq!(code, 2);
        assert!(out.contains("--force") && out.contains("362880"), "{out}");
    }

    #[test]
    fn text_output_marks_checks() {
        let (code, out) = run(["unitary-chow", "verify", "lemma1", "--n", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("status: pass"));
        assert!(out.contains("ok "));
    }

    #[test]
    fn failures_are_collected() {
        let report = json!({
            "checks": [
                {"label": "a", "passed": false, "enforced": true, "detail": ""},
                {"label": "b", "passed": false, "enforced": false, "detail": ""}
            ],
            "inner": {"tallies": [{"name": "t", "failures": 2, "counterexample": {"matrices": []}}]}
        });
        let mut out = Vec::new();
        collect_failures(&report, &mut out);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0]["label"], json!("a"));
        assert_eq!(out[1]["name"], json!("t"));
    }
}
