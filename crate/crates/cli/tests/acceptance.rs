//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["unitary-chow"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let (code, out) = unitary_chow::run(argv);
    let v = serde_json::from_str(&out).unwrap_or(Value::Null);
    (code, v)
}

struct Criterion {
    ok: bool,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion { ok: true, notes: Vec::new() }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn command(&mut self, args: &[&str]) -> Value {
        let (code, v) = run_json(args);
        self.expect(code == 0 && v["status"] == "pass", format!("{} failed: {}", args.join(" "), v["failures"]));
        v
    }

    fn within(&mut self, elapsed: Duration, budget: Duration, what: &str) {
        self.expect(elapsed < budget, format!("{what} took {elapsed:?}, budget {budget:?}"));
    }
}

fn milnor_suite() -> Criterion {
    let mut c = Criterion::new();
    for n in 4..=8usize {
        let start = Instant::now();
        c.command(&["verify", "lemma1", "--n", &n.to_string()]);
        let r = c.command(&["verify", "remark-R", "--n", &n.to_string()]);
        c.within(start.elapsed(), Duration::from_secs(5), &format!("n = {n}"));
        let m = n / 2;
        let ranks: Vec<u64> = r["report"]["graded_ranks"].as_array().unwrap().iter().filter_map(Value::as_u64).collect();
        let c_codim = r["report"]["c_codim"].as_u64().unwrap() as usize;
        let mut expected = vec![0u64; ranks.len()];
        for i in 0..m {
            expected[2 * i] += 1;
            expected[c_codim + 2 * i] += 1;
        }
        c.expect(ranks == expected, format!("n = {n}: graded ranks {ranks:?}, listed {expected:?}"));
    }
    c
}

const PAIRS: [(usize, usize); 5] = [(4, 1), (4, 2), (6, 1), (6, 2), (6, 3)];

fn over_pairs(target: &str, pairs: &[(usize, usize)]) -> Criterion {
    let mut c = Criterion::new();
    for &(n, k) in pairs {
        c.command(&["verify", target, "--n", &n.to_string(), "--k", &k.to_string()]);
    }
    c
}

fn push_pull() -> Criterion {
    let start = Instant::now();
    let mut c = over_pairs("lemma16", &PAIRS);
    c.within(start.elapsed(), Duration::from_secs(60), "all pairs");
    c
}

fn congruences() -> Criterion {
    let mut c = Criterion::new();
    for k in [1usize, 2] {
        let v = c.command(&["verify", "lemma18", "--n", "6", "--k", &k.to_string()]);
        let rows = v["report"]["rows"].as_array().cloned().unwrap_or_default();
        let unhalved = rows.iter().filter(|r| r["halved"] == false).count();
        let halved = rows.iter().filter(|r| r["halved"] == true).count();
        c.expect(unhalved == 6 - 2 * k + 1, format!("k = {k}: {unhalved} unhalved rows"));
        c.expect(halved > 0, format!("k = {k}: no halved rows"));
    }
    c
}

fn generation() -> Criterion {
    let mut c = over_pairs("prop19", &PAIRS);
    for n in [4usize, 6] {
        let v = c.command(&["verify", "e-presentation", "--n", &n.to_string()]);
        c.expect(v["report"]["total_rank"] == 1u64 << (n / 2), format!("n = {n}: quotient rank"));
    }
    c
}

fn steenrod_vanishing() -> Criterion {
    let mut c = Criterion::new();
    for (n, k) in PAIRS {
        let v = c.command(&["verify", "main-steen", "--n", &n.to_string(), "--k", &k.to_string()]);
        let bound = (k * (n - 2 * k)) as u64;
        for row in v["report"]["rows"].as_array().cloned().unwrap_or_default() {
            if row["dimension"].as_u64().unwrap() > bound {
                c.expect(row["odd_degrees"] == 0, format!("({n},{k}): {row}"));
            }
        }
    }
    c
}

fn correspondence_suite() -> Criterion {
    let mut c = Criterion::new();
    let v = c.command(&["verify", "section2", "--n", "4", "--seed", "0", "--samples", "64"]);
    let varieties = v["report"]["varieties"].as_array().cloned().unwrap_or_default();
    let names: Vec<&str> = varieties.iter().filter_map(|x| x["variety"].as_str()).collect();
    c.expect(names == ["P1", "P2", "H1(4)", "H2(4)"], format!("varieties {names:?}"));
    for x in &varieties {
        for t in x["tallies"].as_array().cloned().unwrap_or_default() {
            let trials = t["trials"].as_u64().unwrap_or(0);
            c.expect(t["failures"] == 0 && trials > 0, format!("{}: {}", x["variety"], t["name"]));
            if t["name"] == "sq-prime-rank" {
                c.expect(trials >= 20, format!("{}: {trials} projectors", x["variety"]));
            }
            if t["name"] == "lift-independence" {
                c.expect(trials >= 64 * 16, format!("{}: {trials} lifts", x["variety"]));
            }
        }
    }
    c
}

fn mechanism() -> Criterion {
    let mut c = Criterion::new();
    for (k, threshold) in [(1usize, 3usize), (2, 1)] {
        let v = c.command(&["verify", "st-mechanism", "--n", "4", "--k", &k.to_string(), "--threshold", &threshold.to_string()]);
        let r = &v["report"];
        c.expect(r["trials"].as_u64().unwrap_or(0) > 0 && r["nonzero_st"] == 0, format!("k = {k}: st nonzero"));
        let rows = r["rank_rows"].as_array().cloned().unwrap_or_default();
        c.expect(!rows.is_empty(), format!("k = {k}: no split projectors"));
        for row in rows {
            if row["rank"].as_u64().unwrap() % 4 == 2 {
                c.expect(row["sq_prime"] == 2, format!("k = {k}: {row}"));
            }
        }
    }
    c
}

fn rank_ledger() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    for n in 1..=10u64 {
        let v = c.command(&["verify", "ranks", "--n", &n.to_string()]);
        let rows = v["report"]["valuations"]["rows"].as_array().cloned().unwrap_or_default();
        c.expect(rows.len() == n as usize, format!("n = {n}: {} rows", rows.len()));
        for row in rows {
            let k = row["k"].as_u64().unwrap();
            c.expect(row["v2_rk_f"] == n - k, format!("v2 C(2^{n}, 2^{k})"));
        }
        let transfers = v["report"]["transfers"].as_array().cloned().unwrap_or_default();
        c.expect(transfers.len() == 17, "transfer table covers ranks 0..=16");
    }
    for n in 2..=16usize {
        let (code, v) = run_json(&["verify", "dims", "--n", &n.to_string(), "--force"]);
        c.expect(code == 0, format!("dims n = {n}: {}", v["failures"]));
    }
    c.within(start.elapsed(), Duration::from_secs(1), "rank ledger");
    c
}

fn model_oracles() -> Criterion {
    let mut c = Criterion::new();
    for n in 2..=4usize {
        c.command(&["ring", "flag", "--n", &n.to_string()]);
    }
    for n in 2..=6usize {
        for k in 1..=n / 2 {
            let v = c.command(&["verify", "model", "--n", &n.to_string(), "--k", &k.to_string()]);
            let f = |m: usize| (1..=m).product::<usize>() as u64;
            let cells = f(n) / (f(k) * f(k) * f(n - 2 * k));
            c.expect(v["report"]["euler_characteristic"] == cells.to_string(), format!("({n},{k}) Euler characteristic"));
        }
        c.command(&["verify", "embedding", "--n", &n.to_string()]);
    }
    c
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Criterion); 9] = [
        ("milnor ring and the quotient R, n = 4..8", milnor_suite),
        ("push-pull of c(-T_k)", push_pull),
        ("congruences modulo norms, n = 6", congruences),
        ("generation of invariants mod norms", generation),
        ("Steenrod degree vanishing above k(n - 2k)", steenrod_vanishing),
        ("correspondence suite on P1, P2, H1, H2", correspondence_suite),
        ("st vanishing mechanism and split ranks mod 4", mechanism),
        ("rank ledger and dimension identities", rank_ledger),
        ("model self-consistency oracles", model_oracles),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let c = f();
        let secs = start.elapsed().as_secs_f64();
        let mark = if c.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {mark} {name} ({secs:.2}s)", i + 1);
        for note in &c.notes {
            println!("    {note}");
        }
        all &= c.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
