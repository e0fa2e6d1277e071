//! One PASS/FAIL line per acceptance criterion. Every comparison is exact;
//! the only tolerances are the wall-clock limits below.

use std::io::Write;
use std::time::{Duration, Instant};

use rgroup::datum::{parse_datum, ParseOptions};
use rgroup::elliptic::{prime_family_report, run_pipeline};
use rgroup::fixtures::fixture_json;
use rgroup::mackey::induced_character;
use rgroup::oracle::{run_oracle, Scope, Selection};
use rgroup::report::structure_name;

const WORKED_EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const PRIME_FAMILY_LIMIT: Duration = Duration::from_secs(10);
/// `2^5 · 5`, the largest `R(σ)` the rank-5 corpus can produce.
const MACKEY_MAX_ORDER: usize = 160;

struct Outcome {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn worked_example() -> Result<String, Vec<String>> {
    let (result, elapsed) = timed(|| {
        let d = parse_datum(&fixture_json("prime3").unwrap(), ParseOptions::default()).map_err(|e| e.to_string())?;
        run_pipeline(&d).map_err(|e| e.to_string())
    });
    let p = result.map_err(|e| vec![e])?;
    let mut f = Vec::new();
    let a = &p.analysis;
    check(&mut f, a.r_sigma.len() == 24, format!("|R(sigma)| = {}", a.r_sigma.len()));
    check(&mut f, structure_name(a) == "Z_3 x| Z_2^3", structure_name(a));
    check(&mut f, a.gamma.len() == 3 && a.b_pi == [0, 1, 2], "Gamma or B(pi)");
    let mut dims: Vec<usize> = p.table.irreps.iter().map(|r| r.dim).collect();
    dims.sort_unstable();
    check(&mut f, dims == [1, 1, 1, 1, 1, 1, 3, 3], format!("dims {dims:?}"));
    check(&mut f, p.regulars.len() == 8, format!("{} regular elements", p.regulars.len()));
    let report = &p.report;
    let ell: Vec<usize> = report.components.iter().filter(|c| c.elliptic).map(|c| c.multiplicity).collect();
    let non: Vec<usize> = report.components.iter().filter(|c| !c.elliptic).map(|c| c.multiplicity).collect();
    check(&mut f, ell == [1; 6], format!("elliptic multiplicities {ell:?}"));
    check(&mut f, non == [3, 3], format!("non-elliptic multiplicities {non:?}"));
    let g = &p.presentation.group;
    for rho in p.table.irreps.iter().filter(|r| r.dim == 3) {
        for w in &p.regulars {
            let x = g.index_of(w).expect("regular element in R(sigma)");
            let theta = induced_character(&p.presentation, &p.table.field, rho, x);
            check(&mut f, p.table.field.is_zero(&theta), format!("theta_{} at {w} is nonzero", rho.id));
        }
    }
    check(&mut f, elapsed < WORKED_EXAMPLE_LIMIT, format!("took {elapsed:?}"));
    if f.is_empty() {
        Ok(format!("|R|=24, dims 1x6 3x2, 8 regular, 6+2 split, {elapsed:.2?}"))
    } else {
        Err(f)
    }
}

fn oracle(scopes: &[Scope], r_max: usize, limit: Option<Duration>) -> Result<String, Vec<String>> {
    let mut f = Vec::new();
    let mut parts = Vec::new();
    for &scope in scopes {
        let (result, elapsed) = timed(|| run_oracle(Selection::One(scope), r_max));
        let results = result.map_err(|e| vec![e])?;
        for r in &results {
            if let Some(c) = &r.counterexample {
                f.push(format!("{}: {} ({})", r.scope, c.detail, c.case));
            } else if !r.passed {
                f.push(format!("{} failed", r.scope));
            }
            check(&mut f, r.data > 0 && r.checks > 0, format!("{}: nothing was checked", r.scope));
            parts.push(format!("{} data={} checks={}", r.scope, r.data, r.checks));
        }
        if let Some(limit) = limit {
            check(&mut f, elapsed < limit, format!("{scope} took {elapsed:?}"));
        }
        parts.push(format!("{elapsed:.2?}"));
    }
    if f.is_empty() {
        Ok(parts.join(", "))
    } else {
        Err(f)
    }
}

fn mackey() -> Result<String, Vec<String>> {
    let summary = oracle(&[Scope::Mackey], 5, None)?;
    let corpus = rgroup::corpus::generate(5);
    let largest = corpus
        .iter()
        .filter_map(|c| rgroup::rgroup::analyze(&c.datum).ok())
        .map(|a| a.r_sigma.len())
        .max()
        .unwrap_or(0);
    if largest > MACKEY_MAX_ORDER {
        return Err(vec![format!("largest R(sigma) has order {largest}")]);
    }
    Ok(format!("{summary}, largest |R| = {largest}"))
}

fn prime_family() -> Result<String, Vec<String>> {
    let (result, elapsed) = timed(|| {
        let mut f = Vec::new();
        for p in [2usize, 3, 5] {
            let report = match prime_family_report(p as u32) {
                Ok(r) => r,
                Err(e) => {
                    f.push(format!("p={p}: {e}"));
                    continue;
                }
            };
            let ell: Vec<_> = report.components.iter().filter(|c| c.elliptic).collect();
            let non: Vec<_> = report.components.iter().filter(|c| !c.elliptic).collect();
            check(&mut f, ell.len() == 2 * p, format!("p={p}: {} elliptic", ell.len()));
            check(&mut f, ell.iter().all(|c| c.multiplicity == 1 && c.dim == 1), format!("p={p}: elliptic dims"));
            check(&mut f, non.len() == ((1 << p) - 2) / p, format!("p={p}: {} non-elliptic", non.len()));
            check(&mut f, non.iter().all(|c| c.dim == p && c.multiplicity == p), format!("p={p}: non-elliptic dims"));
        }
        f
    });
    let mut f = result;
    check(&mut f, elapsed < PRIME_FAMILY_LIMIT, format!("took {elapsed:?}"));
    if f.is_empty() {
        Ok(format!("p = 2, 3, 5: 2p elliptic and (2^p-2)/p of dimension p, {elapsed:.2?}"))
    } else {
        Err(f)
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&'static str, Box<dyn Fn() -> Result<String, Vec<String>>>)> = vec![
        ("worked example r=3", Box::new(worked_example)),
        ("regularity oracle r<=5", Box::new(|| oracle(&[Scope::Regularity], 5, Some(ORACLE_LIMIT)))),
        ("complement oracle r<=4", Box::new(|| oracle(&[Scope::Complement], 4, Some(ORACLE_LIMIT)))),
        (
            "permutation uniqueness and sign minimality r<=4",
            Box::new(|| oracle(&[Scope::PermutationUniqueness, Scope::SignMinimality], 4, Some(ORACLE_LIMIT))),
        ),
        ("quotient map oracle r<=4", Box::new(|| oracle(&[Scope::QuotientMap], 4, None))),
        ("B(pi) stability oracle r<=4", Box::new(|| oracle(&[Scope::BPiStability], 4, None))),
        ("Mackey engine soundness r<=5", Box::new(mackey)),
        ("prime family p=2,3,5", Box::new(prime_family)),
    ];
    let mut outcomes = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (passed, detail) = match run() {
            Ok(d) => (true, d),
            Err(f) => (false, f.join("; ")),
        };
        let o = Outcome { id: i + 1, name, passed, detail };
        // written past the test harness capture so the lines land in every log
        let _ = writeln!(
            std::io::stderr(),
            "{} criterion {}: {} ({})",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        );
        outcomes.push(o);
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
