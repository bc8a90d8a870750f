use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use shannon_core::parser::ParseError;
use shannon_core::prelude::*;

use crate::json::render_json;
use crate::problem::parse_problem;
use crate::prove::{prove, ray_summary, Outcome, Problem, Report};

pub const EXIT_PROVEN: i32 = 0;
pub const EXIT_NOT_PROVABLE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "shannon", version, about = "Prove Shannon-type information inequalities with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Relation to prove, e.g. "I(A;D) <= I(B;C)".
    #[arg(long, requires = "vars")]
    expr: Option<String>,
    /// Variable names, comma or space separated.
    #[arg(long, requires = "expr")]
    vars: Option<String>,
    /// Constraint such as "markov: A -> B -> C"; repeatable.
    #[arg(long, requires = "expr")]
    assume: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print the verdict only.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prove the statement in a problem file.
    Prove { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

/// Runs the command line `args` (program name first). Returns
/// [`EXIT_PROVEN`], [`EXIT_NOT_PROVABLE`] or [`EXIT_INPUT_ERROR`].
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return EXIT_PROVEN;
        }
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return EXIT_INPUT_ERROR;
        }
    };
    let problem = match load(&cli) {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT_ERROR;
        }
    };
    let report = match prove(&problem) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    emit(&cli, &report, out, err);
    if report.is_proven() {
        EXIT_PROVEN
    } else {
        EXIT_NOT_PROVABLE
    }
}

fn flag_error(flag: &str, e: ParseError) -> String {
    format!("{flag}: {e}")
}

fn load(cli: &Cli) -> Result<Problem, String> {
    match (&cli.command, &cli.expr, &cli.vars) {
        (Some(_), Some(_), _) => Err("give either `prove <file>` or --expr/--vars, not both".into()),
        (Some(Command::Prove { file }), None, _) => {
            let shown = file.display();
            let text = std::fs::read_to_string(file).map_err(|e| format!("cannot read {shown}: {e}"))?;
            parse_problem(&text).map_err(|e| format!("{shown}:{e}"))
        }
        (None, Some(expr), Some(vars)) => {
            let universe = parse_universe(vars).map_err(|e| flag_error("--vars", e))?;
            let assumptions = cli
                .assume
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    parse_constraint(a, &universe).map_err(|e| flag_error(&format!("--assume #{}", i + 1), e))
                })
                .collect::<Result<_, _>>()?;
            let statement = parse_relation(expr, &universe).map_err(|e| flag_error("--expr", e))?;
            Ok(Problem { universe, assumptions, statement })
        }
        _ => Err("nothing to prove; use `shannon prove <file>` or --expr with --vars (see --help)".into()),
    }
}

fn emit(cli: &Cli, report: &Report, out: &mut dyn Write, err: &mut dyn Write) {
    let u = &report.problem.universe;
    for d in report.failures() {
        let _ = write!(err, "{}", ray_summary(d, u));
    }
    if cli.quiet {
        let _ = writeln!(out, "{}", report.verdict());
        return;
    }
    if !report.is_proven() {
        if cli.format != Format::Json {
            let _ = writeln!(out, "{}", report.verdict());
        }
        return;
    }
    let forms = report.directions.iter().filter_map(|d| match &d.outcome {
        Outcome::Proven { form, .. } => Some(form),
        Outcome::NotProvable { .. } => None,
    });
    match cli.format {
        Format::Json => {
            let _ = write!(out, "{}", render_json(report));
        }
        Format::Text => {
            let _ = writeln!(out, "{}", report.verdict());
            for f in forms {
                let _ = write!(out, "\n{}", render_text(f));
            }
        }
        Format::Latex => {
            let _ = writeln!(out, "% {}", report.verdict());
            for f in forms {
                let _ = write!(out, "\n{}", render_latex(f));
            }
        }
    }
}
