//! Command-line front end for `tropineq`.
//!
//! Exit codes: 0 when regular solutions exist (or a check/oracle passes),
//! 2 when only the trivial solution exists or a check/oracle fails, 1 on
//! usage, parse, shape, cap and IO errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropineq::{
    check_solution, compare_pipelines, evaluate_candidate, generate_candidates, partial_solve_lemma3, refine,
    set_float_epsilon, solve, write_matrix, Error, MaxPlus, Number, OracleConfig, OracleReport, ProblemInstance,
    RefineVerdict, Semifield, SolutionKind, TropMatrix, DEFAULT_CANDIDATE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tropineq", version, about = "Regular solutions of A x <= B x over max-plus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: CliConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Arbitrary-precision rationals.
    Exact,
    /// f64 with an absolute tolerance.
    Float,
}

#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    pub mode: Mode,
    /// Comparison tolerance in float mode.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub eps: f64,
    /// Limit on the number of candidates enumerated by the exhaustive oracle.
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP, global = true)]
    pub cap: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for oracle sampling.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Pair {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generating matrix S of all regular solutions.
    Solve {
        #[command(flatten)]
        pair: Pair,
        /// Also print the explicit partial family (B⁻A)* when it exists.
        #[arg(long)]
        lemma3: bool,
        /// Cross-check against exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the refined pair and its verdict.
    Refine {
        #[command(flatten)]
        pair: Pair,
    },
    /// Print every candidate G with its trace test and generator.
    Gens {
        #[command(flatten)]
        pair: Pair,
    },
    /// Test whether the column vector in X solves the inequality.
    Check {
        #[command(flatten)]
        pair: Pair,
        x: PathBuf,
    },
    /// Compare the backtracking and exhaustive pipelines.
    Oracle {
        #[command(flatten)]
        pair: Pair,
        /// Number of sampled parameter vectors.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

/// Reads and parses a matrix file; errors carry the path.
pub fn parse_matrix<S>(path: &Path) -> Result<TropMatrix<S>, String>
where
    S: Semifield + FromStr<Err = Error>,
{
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    tropineq::parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
}

struct Output {
    text: String,
    code: i32,
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit code. Diagnostics go to stderr.
pub fn run<I, A>(argv: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = cli.config.clone();
    let result = match config.mode {
        Mode::Exact => dispatch::<tropineq::Rational>(&cli.command, &config),
        Mode::Float => {
            if !(config.eps.is_finite() && config.eps > 0.0) {
                Err(format!("--eps must be a positive number, got {}", config.eps))
            } else {
                set_float_epsilon(config.eps);
                dispatch::<f64>(&cli.command, &config)
            }
        }
    };
    match result {
        Ok(output) => match emit(&config, &output.text) {
            Ok(()) => output.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn emit(config: &CliConfig, text: &str) -> Result<(), String> {
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load<T: Number>(pair: &Pair) -> Result<ProblemInstance<MaxPlus<T>>, String> {
    let a = parse_matrix(&pair.a)?;
    let b = parse_matrix(&pair.b)?;
    ProblemInstance::new(a, b).map_err(|e| e.to_string())
}

fn dispatch<T: Number>(command: &Command, config: &CliConfig) -> Result<Output, String> {
    match command {
        Command::Solve { pair, lemma3, oracle } => cmd_solve::<T>(&load(pair)?, config, *lemma3, *oracle),
        Command::Refine { pair } => Ok(cmd_refine::<T>(&load(pair)?, config)),
        Command::Gens { pair } => cmd_gens::<T>(&load(pair)?, config),
        Command::Check { pair, x } => cmd_check::<T>(&load(pair)?, &parse_matrix(x)?, config),
        Command::Oracle { pair, trials } => {
            let cfg = OracleConfig {
                cap: config.cap,
                trials: *trials,
                seed: config.seed,
            };
            let report = compare_pipelines(&load::<T>(pair)?, &cfg).map_err(|e| e.to_string())?;
            let code = if report.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            let text = if config.json {
                json_line(&json!(report))
            } else {
                oracle_lines(&report)
            };
            Ok(Output { text, code })
        }
    }
}

fn json_line(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    text
}

fn matrix_json<S: Semifield>(m: &TropMatrix<S>) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    json!(rows)
}

/// Renders `m` with every line prefixed by `# `.
fn commented<S: Semifield>(m: &TropMatrix<S>) -> String {
    write_matrix(m).lines().map(|l| format!("#   {l}\n")).collect()
}

fn one_based(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A term `v_k ⊗ c` in conventional notation.
fn term<S: Semifield>(k: usize, coefficient: &S) -> String {
    let text = coefficient.to_string();
    if coefficient.is_one() {
        format!("v{k}")
    } else if let Some(rest) = text.strip_prefix('-') {
        format!("v{k} - {rest}")
    } else {
        format!("v{k} + {text}")
    }
}

/// The block `x_i = max(...)` spelling out `x = S ⊗ v`.
fn parametric_form<S: Semifield>(s: &TropMatrix<S>) -> String {
    let mut out = String::from("# x = S v for regular v:\n");
    for i in 0..s.rows() {
        let terms: Vec<String> = s
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| term(k + 1, c))
            .collect();
        let rhs = match terms.len() {
            0 => "-inf".to_string(),
            1 => terms[0].clone(),
            _ => format!("max({})", terms.join(", ")),
        };
        let _ = writeln!(out, "#   x{} = {rhs}", i + 1);
    }
    out
}

fn kind_name(kind: SolutionKind) -> &'static str {
    match kind {
        SolutionKind::Generators => "GENERATORS",
        SolutionKind::AllRegular => "ALL_REGULAR",
        SolutionKind::NoRegular => "NO_REGULAR",
    }
}

fn verdict_name(verdict: RefineVerdict) -> &'static str {
    match verdict {
        RefineVerdict::Proceed => "PROCEED",
        RefineVerdict::AllRegular => "ALL_REGULAR",
        RefineVerdict::NoRegular => "NO_REGULAR",
    }
}

fn oracle_lines(report: &OracleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# oracle: {} exhaustive / {} backtracked candidates, {} / {} accepted",
        report.exhaustive_candidates,
        report.backtracked_candidates,
        report.accepted_exhaustive,
        report.accepted_backtracked
    );
    let _ = writeln!(
        out,
        "# oracle: verdicts {}, spans {}, {} of {} samples unsound (seed {})",
        if report.verdicts_equal { "agree" } else { "differ" },
        if report.spans_equal { "equal" } else { "differ" },
        report.soundness_failures,
        report.sample_size,
        report.seed
    );
    out
}

fn cmd_solve<T: Number>(
    inst: &ProblemInstance<MaxPlus<T>>,
    config: &CliConfig,
    lemma3: bool,
    oracle: bool,
) -> Result<Output, String> {
    let sol = solve(inst).map_err(|e| e.to_string())?;
    let code = if sol.kind == SolutionKind::NoRegular {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    let partial = lemma3.then(|| partial_solve_lemma3(inst));
    let oracle_report = if oracle {
        let cfg = OracleConfig {
            cap: config.cap,
            seed: config.seed,
            ..OracleConfig::default()
        };
        Some(compare_pipelines(inst, &cfg).map_err(|e| e.to_string())?)
    } else {
        None
    };

    if config.json {
        let mut value = json!({
            "report": sol.report,
            "s": sol.s.as_ref().map(matrix_json),
        });
        if let Some(partial) = &partial {
            value["lemma3"] = match partial {
                Ok(m) => json!({ "applicable": true, "s": m.as_ref().map(matrix_json) }),
                Err(e) => json!({ "applicable": false, "reason": e.to_string() }),
            };
        }
        if let Some(report) = &oracle_report {
            value["oracle"] = json!(report);
        }
        return Ok(Output {
            text: json_line(&value),
            code,
        });
    }

    let r = &sol.report;
    let mut out = String::new();
    let _ = writeln!(out, "# kind: {}", kind_name(sol.kind));
    let _ = writeln!(
        out,
        "# instance: {}x{}, kept rows: {}",
        r.rows,
        r.cols,
        one_based(&r.kept_rows)
    );
    let _ = writeln!(
        out,
        "# candidates: {} generated, {} accepted, {} rejected",
        r.candidates_generated, r.candidates_accepted, r.candidates_rejected
    );
    for (idx, c) in r.candidates.iter().enumerate() {
        let mut line = format!("# candidate {}: columns {}", idx + 1, one_based(&c.selection));
        if !c.forced_rows.is_empty() {
            let _ = write!(line, ", forced rows {}", one_based(&c.forced_rows));
        }
        match &c.rejection {
            None => {
                let _ = write!(line, ", accepted, {} columns added", c.columns_added);
            }
            Some(rej) => {
                let _ = write!(line, ", rejected at k = {} with trace {}", rej.k, rej.trace);
            }
        }
        let _ = writeln!(out, "{line}");
    }
    if let Some(partial) = &partial {
        match partial {
            Ok(Some(m)) => {
                let _ = writeln!(out, "# partial family (B^- A)*:");
                out.push_str(&commented(m));
            }
            Ok(None) => out.push_str("# partial family: trace condition fails\n"),
            Err(e) => {
                let _ = writeln!(out, "# partial family: not applicable ({e})");
            }
        }
    }
    if let Some(report) = &oracle_report {
        out.push_str(&oracle_lines(report));
    }
    match &sol.s {
        Some(s) => {
            out.push_str(&parametric_form(s));
            out.push_str(&write_matrix(s));
        }
        None => out.push_str("# only the trivial solution x = 0 exists\n"),
    }
    Ok(Output { text: out, code })
}

fn cmd_refine<T: Number>(inst: &ProblemInstance<MaxPlus<T>>, config: &CliConfig) -> Output {
    let r = refine(inst);
    let code = if r.verdict == RefineVerdict::NoRegular {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    let text = if config.json {
        json_line(&json!({
            "verdict": r.verdict,
            "kept_rows": r.kept_rows,
            "a_hat": matrix_json(&r.a_hat),
            "b_hat": matrix_json(&r.b_hat),
        }))
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "# verdict: {}", verdict_name(r.verdict));
        let _ = writeln!(out, "# kept rows: {}", one_based(&r.kept_rows));
        out.push_str("# refined A:\n");
        out.push_str(&commented(&r.a_hat));
        out.push_str("# refined B:\n");
        out.push_str(&commented(&r.b_hat));
        out
    };
    Output { text, code }
}

fn cmd_gens<T: Number>(inst: &ProblemInstance<MaxPlus<T>>, config: &CliConfig) -> Result<Output, String> {
    let r = refine(inst);
    if r.verdict != RefineVerdict::Proceed {
        let text = if config.json {
            json_line(&json!({ "verdict": r.verdict, "candidates": [] }))
        } else {
            format!("# verdict: {}, no candidates\n", verdict_name(r.verdict))
        };
        return Ok(Output { text, code: EXIT_OK });
    }
    let candidates = generate_candidates(&r.a_hat, &r.b_hat).map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    let mut out = String::new();
    for (idx, cand) in candidates.iter().enumerate() {
        let e = evaluate_candidate(cand, &r.a_hat, &r.b_hat).map_err(|e| e.to_string())?;
        records.push(json!({
            "selection": cand.selection,
            "forced_rows": cand.forced_rows,
            "g": matrix_json(&cand.g),
            "f": matrix_json(&e.f),
            "accepted": e.accepted,
            "rejection": e.rejection.as_ref().map(|r| json!({ "k": r.k, "trace": r.trace.to_string() })),
            "generator": e.generator.as_ref().map(matrix_json),
        }));
        let status = match &e.rejection {
            None => "accepted".to_string(),
            Some(rej) => format!("rejected at k = {} with trace {}", rej.k, rej.trace),
        };
        let _ = writeln!(
            out,
            "# candidate {}: columns {}, {status}",
            idx + 1,
            one_based(&cand.selection)
        );
        out.push_str("# G:\n");
        out.push_str(&commented(&cand.g));
        out.push_str("# F:\n");
        out.push_str(&commented(&e.f));
        if let Some(g) = &e.generator {
            out.push_str("# generator:\n");
            out.push_str(&commented(g));
        }
    }
    let text = if config.json {
        json_line(&json!({ "verdict": r.verdict, "candidates": records }))
    } else {
        out
    };
    Ok(Output { text, code: EXIT_OK })
}

fn cmd_check<T: Number>(
    inst: &ProblemInstance<MaxPlus<T>>,
    x: &TropMatrix<MaxPlus<T>>,
    config: &CliConfig,
) -> Result<Output, String> {
    let ok = check_solution(inst, x).map_err(|e| e.to_string())?;
    let regular = x.structure_flags().regular_vector;
    let lhs = inst.a().mul(x).map_err(|e| e.to_string())?;
    let rhs = inst.b().mul(x).map_err(|e| e.to_string())?;
    let violated: Vec<usize> = (0..lhs.rows()).filter(|&i| lhs.get(i, 0) > rhs.get(i, 0)).collect();
    let text = if config.json {
        json_line(&json!({
            "solution": ok,
            "regular": regular,
            "violated_rows": violated,
            "lhs": matrix_json(&lhs),
            "rhs": matrix_json(&rhs),
        }))
    } else {
        let mut out = String::new();
        if ok {
            out.push_str("solution\n");
        } else {
            out.push_str("not a solution\n");
            if !regular {
                out.push_str("# x has a -inf entry\n");
            }
            for &i in &violated {
                let _ = writeln!(out, "# row {}: {} > {}", i + 1, lhs.get(i, 0), rhs.get(i, 0));
            }
        }
        out
    };
    Ok(Output {
        text,
        code: if ok { EXIT_OK } else { EXIT_NEGATIVE },
    })
}
