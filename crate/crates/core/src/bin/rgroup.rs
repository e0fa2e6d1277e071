use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rgroup::datum::{DatumDocument, DatumError, InducingDatum, ParseOptions, ValidationOutput};
use rgroup::error::AnalysisError;
use rgroup::fixtures::fixture_json;
use rgroup::oracle::{run_oracle, Selection};
use rgroup::report::{build_report, render_text};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(name = "rgroup", version, about = "R-groups and elliptic constituents for Levi data of quasi-split SU(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a datum file against the schema and the validation rules.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Require e_i - e_j in the root set whenever pi_i and pi_j agree.
        #[arg(long)]
        strict_diff_rule: bool,
    },
    /// Compute the R-group, its character table and the elliptic constituents.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Run the brute-force suites on this datum and embed the results.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long)]
        strict_diff_rule: bool,
    },
    /// Run brute-force suites over every generated datum up to rank r-max.
    Oracle {
        /// lemma33, lemma36, thm37, thm39, prop32, lemma38, mackey or all
        scope: String,
        #[arg(long, default_value_t = 4)]
        r_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write a shipped fixture.
    Fixtures {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn read_document(path: &Path) -> Result<DatumDocument, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: schema error: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn load(path: &Path, options: ParseOptions, json: bool) -> Result<InducingDatum, ExitCode> {
    let doc = read_document(path)?;
    match InducingDatum::from_document(doc.clone(), options) {
        Ok(d) => Ok(d),
        Err(DatumError::Schema(msg)) => Err(fail(EXIT_USAGE, format!("{}: schema error: {msg}", path.display()))),
        Err(DatumError::Invalid(violations)) => {
            if json {
                print_json(&ValidationOutput { document: doc, violations });
            } else {
                for v in &violations {
                    eprintln!("{}: {v}", path.display());
                }
            }
            Err(fail(EXIT_INVALID, format!("{}: datum is invalid", path.display())))
        }
    }
}

fn analysis_failure(e: AnalysisError) -> ExitCode {
    match e {
        AnalysisError::Inconsistent { .. } => fail(EXIT_INCONSISTENT, e),
        AnalysisError::Unsupported(_) => fail(EXIT_USAGE, e),
    }
}

fn validate(file: &Path, json: bool, options: ParseOptions) -> ExitCode {
    match load(file, options, json) {
        Ok(d) => {
            if json {
                print_json(&ValidationOutput { document: d.document.clone(), violations: Vec::new() });
            } else {
                for w in &d.warnings {
                    println!("warning: {w}");
                }
                println!("{}: valid (r = {}, n = {})", file.display(), d.rank(), d.n());
            }
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}

fn analyze(file: &Path, json: bool, with_oracle: bool, options: ParseOptions) -> ExitCode {
    let d = match load(file, options, false) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let report = match build_report(&d, with_oracle) {
        Ok(r) => r,
        Err(e) => return analysis_failure(e),
    };
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", render_text(&report));
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        fail(EXIT_INCONSISTENT, "oracle check failed")
    }
}

fn oracle(scope: &str, r_max: usize, json: bool) -> ExitCode {
    let selection: Selection = match scope.parse() {
        Ok(s) => s,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let results = match run_oracle(selection, r_max) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if json {
        print_json(&results);
    } else {
        for r in &results {
            println!("{}", r.summary_line());
            for n in &r.notes {
                println!("    note: {n}");
            }
            if let Some(c) = &r.counterexample {
                println!("    counterexample {}: {}", c.case, c.detail);
                if let Some(datum) = &c.datum {
                    println!("{datum}");
                }
            }
        }
    }
    if results.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INCONSISTENT)
    }
}

fn fixtures(name: &str, output: Option<&Path>) -> ExitCode {
    let text = match fixture_json(name) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    match output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_USAGE, format!("{}: {e}", path.display())),
        },
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Validate { file, json, strict_diff_rule } => validate(&file, json, ParseOptions { strict_diff_rule }),
        Command::Analyze { file, json, with_oracle, strict_diff_rule } => {
            analyze(&file, json, with_oracle, ParseOptions { strict_diff_rule })
        }
        Command::Oracle { scope, r_max, json } => oracle(&scope, r_max, json),
        Command::Fixtures { name, output } => fixtures(&name, output.as_deref()),
    }
}
