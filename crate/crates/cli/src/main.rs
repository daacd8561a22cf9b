use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use goi_core::compile::{abstract_term, classify, Fragment};
use goi_core::duality::{involution_to_type, is_denotation, type_to_involution};
use goi_core::machine::{bang, decode, lapp, FeedbackBudget, GoiError};
use goi_core::suite::{builtin_cases, parse_suite, run_suite, Outcome};
use goi_core::syntax::{
    parse_comb, parse_lambda, parse_rules, parse_type, render_comb, render_involution,
    render_judgement, render_lambda, render_type, ParseError, RuleStyle, SourceText,
};
use goi_core::terms::{canonicalize, equivalent, CombTerm, Involution};
use goi_core::types::{principal_type, Mode};

const FORMAT_VERSION: u32 = 1;

/// Partial involutions, combinator compilation and principal types.
///
/// Inputs are inline text, or a file path when prefixed with `@`.
#[derive(Parser)]
#[command(name = "goi", version)]
struct Cli {
    /// Iteration limit for the feedback loop of application.
    #[arg(
        long,
        global = true,
        env = "GOI_BUDGET",
        default_value_t = FeedbackBudget::DEFAULT_ITERATIONS as u64,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    budget: u64,

    /// Output style; `machine` emits versioned JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a λ!-term to a combinator expression.
    Compile { term: String },
    /// Print the involution denoted by a λ!-term or combinator expression.
    Interpret { term: String },
    /// Linear application of two rule sets.
    Apply { f: String, g: String },
    /// Replication of a rule set.
    Bang { rules: String },
    /// Principal type of a λ-term.
    Type {
        term: String,
        #[arg(long, default_value = "affine")]
        fragment: Fragment,
    },
    /// Involution read off a type.
    Dual { ty: String },
    /// Type synthesized from a rule set.
    Synth { rules: String },
    /// Decide whether a rule set denotes a strictly affine combinator.
    Characterize { rules: String },
    /// Run an equation suite (the built-in one by default).
    Check {
        suite: Option<String>,
        #[arg(long, default_value = "full")]
        fragment: Fragment,
    },
    /// Whether two rule sets are equal up to renaming.
    Equiv { f: String, g: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Compile { .. } => "compile",
            Command::Interpret { .. } => "interpret",
            Command::Apply { .. } => "apply",
            Command::Bang { .. } => "bang",
            Command::Type { .. } => "type",
            Command::Dual { .. } => "dual",
            Command::Synth { .. } => "synth",
            Command::Characterize { .. } => "characterize",
            Command::Check { .. } => "check",
            Command::Equiv { .. } => "equiv",
        }
    }
}

enum Failure {
    Usage(String),
    Parse(ParseError),
    Budget(usize),
    /// Well-formed input the operation rejects.
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Domain(_) => 1,
            Failure::Budget(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Parse(_) => "parse",
            Failure::Budget(_) => "budget-exhausted",
            Failure::Domain(_) => "domain",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m.clone(),
            Failure::Parse(e) => e.to_string(),
            Failure::Budget(n) => {
                format!("feedback did not settle within {n} iterations (raise --budget)")
            }
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<GoiError> for Failure {
    fn from(e: GoiError) -> Self {
        match e {
            GoiError::BudgetExhausted { max_iterations } => Failure::Budget(max_iterations),
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// What a successful command prints, and whether it answered "yes".
struct Report {
    text: String,
    warnings: Vec<String>,
    machine: Value,
    ok: bool,
}

impl Report {
    fn yes(text: String, machine: Value) -> Report {
        Report {
            text,
            warnings: Vec::new(),
            machine,
            ok: true,
        }
    }
}

fn load(arg: &str) -> Result<SourceText, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|text| SourceText::new(text, path))
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(SourceText::inline(arg)),
    }
}

fn rules_json(f: &Involution) -> Value {
    let canon = canonicalize(f);
    json!({
        "rules": render_involution(&canon, RuleStyle::Directed).lines().collect::<Vec<_>>(),
        "clauses": render_involution(&canon, RuleStyle::Merged).lines().collect::<Vec<_>>(),
    })
}

fn involution_report(f: &Involution) -> Report {
    let text = if f.is_empty() {
        "(empty)".to_string()
    } else {
        render_involution(f, RuleStyle::Merged)
    };
    Report::yes(text, rules_json(f))
}

/// A λ!-term if it parses as one and is closed, otherwise a combinator
/// expression.
fn closed_term(src: &SourceText) -> Result<CombTerm, Failure> {
    let lambda = parse_lambda(src);
    if let Ok(m) = &lambda {
        if m.is_closed() {
            return abstract_term(m).map_err(|e| Failure::Domain(e.to_string()));
        }
    }
    match (lambda, parse_comb(src)) {
        (_, Ok(c)) if c.is_closed() => Ok(c),
        (Ok(m), _) => abstract_term(&m).map_err(|e| Failure::Domain(e.to_string())),
        (Err(e), _) => Err(e.into()),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let budget = FeedbackBudget::new(usize::try_from(cli.budget).unwrap_or(usize::MAX));
    match &cli.command {
        Command::Compile { term } => {
            let m = parse_lambda(&load(term)?)?;
            let c = abstract_term(&m).map_err(|e| Failure::Domain(e.to_string()))?;
            let text = render_comb(&c);
            let mut report = Report::yes(
                text.clone(),
                json!({ "comb": text, "fragment": classify(&m) }),
            );
            if m.is_closed() && !c.is_closed() {
                report
                    .warnings
                    .push("a linear binder is used more than once; the result is open".into());
            }
            Ok(report)
        }
        Command::Interpret { term } => {
            let c = closed_term(&load(term)?)?;
            Ok(involution_report(&decode(&c, budget)?))
        }
        Command::Apply { f, g } => {
            let f = parse_rules(&load(f)?)?;
            let g = parse_rules(&load(g)?)?;
            Ok(involution_report(&lapp(&f, &g, budget)?))
        }
        Command::Bang { rules } => Ok(involution_report(&bang(&parse_rules(&load(rules)?)?))),
        Command::Type { term, fragment } => {
            let mode = match fragment {
                Fragment::StrictlyLinear => Mode::Linear,
                Fragment::StrictlyAffine => Mode::Affine,
                Fragment::FullAffine => {
                    return Err(Failure::Usage(
                        "types cover only the linear and affine fragments".into(),
                    ))
                }
            };
            let m = parse_lambda(&load(term)?)?;
            let j = principal_type(&m, mode).map_err(|e| Failure::Domain(e.to_string()))?;
            let context: Vec<Value> = j
                .context
                .entries
                .iter()
                .map(|(x, t)| json!({ "var": x, "type": t.to_string() }))
                .collect();
            Ok(Report::yes(
                render_judgement(&j),
                json!({ "context": context, "type": j.ty.to_string() }),
            ))
        }
        Command::Dual { ty } => {
            let t = parse_type(&load(ty)?)?;
            let f = type_to_involution(&t).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(involution_report(&f))
        }
        Command::Synth { rules } => {
            let h = parse_rules(&load(rules)?)?;
            let r = involution_to_type(&h).map_err(|e| Failure::Domain(e.to_string()))?;
            let ty = render_type(&r.ty);
            Ok(Report {
                text: ty.clone(),
                machine: json!({ "type": ty, "warnings": r.warnings }),
                warnings: r.warnings,
                ok: true,
            })
        }
        Command::Characterize { rules } => {
            let h = parse_rules(&load(rules)?)?;
            let v = is_denotation(&h).map_err(|e| Failure::Domain(e.to_string()))?;
            let ty = render_type(&v.synthesized_type);
            let witness = v.witness.as_ref().map(render_lambda);
            let text = match &witness {
                Some(w) if v.is_denotation => format!("denotation: {ty}\nwitness: {w}"),
                _ => format!("not a denotation: {ty} is not a minimal tautology"),
            };
            Ok(Report {
                text,
                machine: json!({
                    "is_denotation": v.is_denotation,
                    "type": ty,
                    "tautology": v.tautology,
                    "witness": witness,
                    "coherent": v.coherent,
                    "warnings": v.warnings,
                }),
                warnings: v.warnings,
                ok: v.is_denotation,
            })
        }
        Command::Check { suite, fragment } => {
            let cases = match suite {
                Some(path) => {
                    let path = path.strip_prefix('@').unwrap_or(path);
                    parse_suite(&load(&format!("@{path}"))?)?
                }
                None => builtin_cases(),
            };
            let cases: Vec<_> = cases
                .into_iter()
                .filter(|c| c.fragment.within(*fragment))
                .collect();
            let report = run_suite(&cases, budget);
            let mut lines: Vec<String> = report
                .cases
                .iter()
                .map(|c| {
                    let tag = match c.outcome {
                        Outcome::Pass => "PASS",
                        Outcome::Fail => "FAIL",
                        Outcome::Error => "ERROR",
                    };
                    match &c.error {
                        Some(e) => format!("{tag:5} {} ({e})", c.id),
                        None => format!("{tag:5} {} (expected {})", c.id, c.expected),
                    }
                })
                .collect();
            lines.push(format!(
                "{}/{} passed, {} failed, {} errors",
                report.passed, report.total, report.failed, report.errors
            ));
            Ok(Report {
                text: lines.join("\n"),
                warnings: Vec::new(),
                ok: report.all_passed(),
                machine: serde_json::to_value(&report).expect("report serializes"),
            })
        }
        Command::Equiv { f, g } => {
            let f = parse_rules(&load(f)?)?;
            let g = parse_rules(&load(g)?)?;
            let same = equivalent(&f, &g);
            Ok(Report {
                text: same.to_string(),
                warnings: Vec::new(),
                machine: json!({ "equivalent": same }),
                ok: same,
            })
        }
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "format_version": FORMAT_VERSION, "command": command });
    if let (Value::Object(out), Value::Object(body)) = (&mut out, body) {
        out.extend(body);
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = cli.command.name();
    match run(&cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            match cli.format {
                Format::Text => println!("{}", report.text),
                Format::Machine => println!("{}", envelope(command, report.machine)),
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            if cli.format == Format::Machine {
                let body =
                    json!({ "error": { "kind": failure.kind(), "message": failure.message() } });
                println!("{}", envelope(command, body));
            }
            ExitCode::from(failure.code())
        }
    }
}
