use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use symlim::category::{
    check_conditions, limit_simples, AdversarialSystem, ConditionReport, InverseSystem, LimitObject,
    TableSystem,
};
use symlim::glpoly::{
    character, character_infty, gamma_n, gl_object_from_json, restrict, GlInftyObject, GlSystem,
};
use symlim::schur::{kostka, schur_product};
use symlim::{lift, CompatibleSequence, Partition, SymFunc, TruncatedSymElem};

#[derive(Parser)]
#[command(name = "symlim", version, about = "Symmetric functions and inverse limits of categories")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Schur expansion of s_MU · s_NU.
    Lr { mu: Partition, nu: Partition },
    /// Kostka number K_{LAMBDA,MU}.
    Kostka { lambda: Partition, mu: Partition },
    /// Truncates an element of R_n to R_N (`-` reads stdin).
    Truncate {
        #[arg(long)]
        n: usize,
        element: PathBuf,
    },
    /// Lifts a compatible sequence, given as a JSON array whose entry n lies in R_n.
    Lift {
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        provider: PathBuf,
    },
    /// Simple objects of a filtered limit, by label.
    LimitSimples {
        /// `gl`, `adversarial`, or a system presentation file.
        #[arg(long)]
        system: String,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        horizon: usize,
        /// Largest number of boxes enumerated for `gl`.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Checks the coincidence conditions and declared witnesses of a system.
    CheckSystem {
        /// `gl`, `adversarial`, or a system presentation file.
        system: String,
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Character of a gl_n (with "n") or gl_∞ (without) object.
    Character { object: PathBuf },
    /// Checks that restriction and truncation commute on characters.
    VerifySquare {
        object: PathBuf,
        /// Required for gl_∞ objects; must match "n" otherwise.
        #[arg(long)]
        n: Option<usize>,
    },
}

enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    Domain(symlim::Error),
    /// A verification ran and failed; the report is still printed.
    Failed(String),
}

impl From<symlim::Error> for CliError {
    fn from(e: symlim::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Input(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            println!("{out}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Lr { mu, nu } => {
            let product = SymFunc::new(symlim::Basis::Schur, schur_product(mu, nu));
            Ok(if json { to_json(&product) } else { product.to_string() })
        }
        Command::Kostka { lambda, mu } => {
            let value = kostka(lambda, mu);
            Ok(if json {
                to_json(&json!({ "lambda": lambda, "mu": mu, "value": value }))
            } else {
                value.to_string()
            })
        }
        Command::Truncate { n, element } => {
            let e: TruncatedSymElem = parse_json(element)?;
            let t = e.truncate_to(*n)?;
            Ok(if json { to_json(&t) } else { t.to_string() })
        }
        Command::Lift { bound, provider } => {
            let prefix: Vec<TruncatedSymElem> = parse_json(provider)?;
            let f = lift(&CompatibleSequence::from_prefix(*bound, prefix))?;
            Ok(if json { to_json(&f) } else { f.to_string() })
        }
        Command::LimitSimples {
            system,
            level,
            horizon,
            max_degree,
        } => simples_table(load_system(system, *max_degree)?.as_ref(), *level, *horizon, json),
        Command::CheckSystem {
            system,
            kmax,
            horizon,
            max_degree,
        } => {
            let report = load_system(system, *max_degree)?.check(*kmax, *horizon)?;
            Ok(if json { to_json(&report) } else { report_text(&report) })
        }
        Command::Character { object } => {
            let text = read_input(object)?;
            if has_n(&text, object)? {
                let x = gl_object_from_json(&text).map_err(input_error)?;
                let c = character(&x)?;
                Ok(if json { to_json(&c) } else { c.to_string() })
            } else {
                let m = GlInftyObject::from_json(&text).map_err(input_error)?;
                let c = character_infty(&m)?;
                Ok(if json { to_json(&c) } else { c.to_string() })
            }
        }
        Command::VerifySquare { object, n } => verify_square(object, *n, json),
    }
}

fn input_error(e: symlim::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn has_n(text: &str, path: &Path) -> CliResult<bool> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(value.get("n").is_some())
}

/// A built-in system by name, or a presentation file.
fn load_system(name: &str, max_degree: usize) -> CliResult<Box<dyn ErasedSystem>> {
    Ok(match name {
        "gl" => Box::new(Erased(Arc::new(GlSystem::new(max_degree)))),
        "adversarial" => Box::new(Erased(Arc::new(AdversarialSystem))),
        path => {
            let text = read_input(Path::new(path))?;
            Box::new(Erased(Arc::new(TableSystem::from_json(&text).map_err(input_error)?)))
        }
    })
}

/// Object-safe view of a system with labels rendered as strings.
trait ErasedSystem {
    fn check(&self, k_max: u32, horizon: usize) -> symlim::Result<ConditionReport>;
    fn simples(&self, level: u32, horizon: usize) -> symlim::Result<Vec<SimpleRow>>;
}

struct Erased<S>(Arc<S>);

#[derive(Serialize)]
struct SimpleRow {
    label: String,
    level: u32,
    degree: Option<u32>,
    anchor_index: usize,
}

impl<S: InverseSystem> ErasedSystem for Erased<S> {
    fn check(&self, k_max: u32, horizon: usize) -> symlim::Result<ConditionReport> {
        check_conditions(self.0.as_ref(), k_max, horizon)
    }

    fn simples(&self, level: u32, horizon: usize) -> symlim::Result<Vec<SimpleRow>> {
        let simples: Vec<LimitObject<S>> = limit_simples(&self.0, level, horizon)?;
        Ok(simples
            .iter()
            .map(|s| {
                let label = s.anchor().labels().next().expect("simple objects are nonzero");
                SimpleRow {
                    label: label.to_string(),
                    level: label.level(),
                    degree: label.degree(),
                    anchor_index: s.anchor_index(),
                }
            })
            .collect())
    }
}

fn simples_table(system: &dyn ErasedSystem, level: u32, horizon: usize, json: bool) -> CliResult<String> {
    let rows = system.simples(level, horizon)?;
    if json {
        return Ok(to_json(&rows));
    }
    let mut out = String::from("label\tlevel\tdegree\tanchor");
    for r in &rows {
        let degree = r.degree.map_or("-".to_string(), |d| d.to_string());
        write!(out, "\n{}\t{}\t{}\t{}", r.label, r.level, degree, r.anchor_index).unwrap();
    }
    Ok(out)
}

fn report_text(report: &ConditionReport) -> String {
    let verdict = |b: bool| if b { "holds" } else { "fails" };
    let mut out = format!(
        "system {} (levels 0..={}, indices 0..={})\ncondition 1: {}\ncondition 2: {}\nwitnesses: {}",
        report.system,
        report.k_max,
        report.horizon,
        verdict(report.condition1),
        verdict(report.condition2),
        verdict(report.witness_ok),
    );
    for l in &report.levels {
        write!(
            out,
            "\nlevel {}: threads {}, injective beyond {}, bijective beyond {}, declared witness {}",
            l.level, l.threads, l.injective_beyond, l.bijective_beyond, l.declared_witness
        )
        .unwrap();
        let mut shown = Vec::new();
        for c in [&l.thread_violation, &l.injectivity_counterexample, &l.bijectivity_counterexample]
            .into_iter()
            .flatten()
        {
            if shown.contains(&c) {
                continue;
            }
            shown.push(c);
            write!(out, "\n  at index {}: {:?} {}", c.index, c.kind, c.label).unwrap();
            if let Some(other) = &c.other {
                write!(out, " ({other})").unwrap();
            }
        }
    }
    out
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
}

fn verify_square(path: &Path, n: Option<usize>, json: bool) -> CliResult<String> {
    let text = read_input(path)?;
    let mut checks = Vec::new();
    let x = if has_n(&text, path)? {
        let x = gl_object_from_json(&text).map_err(input_error)?;
        if n.is_some_and(|n| n != x.index()) {
            return Err(CliError::Input(format!("--n does not match the object's n = {}", x.index())));
        }
        x
    } else {
        let m = GlInftyObject::from_json(&text).map_err(input_error)?;
        let n = n.ok_or_else(|| CliError::Input("--n is required for a gl_∞ object".into()))?;
        let x = gamma_n(&m, n);
        checks.push(Check {
            name: "character_infty truncates to character of gamma_n",
            pass: character_infty(&m)?.truncate_to(n) == character(&x)?,
        });
        if n > 0 {
            checks.push(Check {
                name: "restriction of gamma_n is gamma_{n-1}",
                pass: restrict(&x)? == gamma_n(&m, n - 1),
            });
        }
        x
    };
    if x.index() > 0 {
        checks.push(Check {
            name: "character of restriction is truncated character",
            pass: character(&restrict(&x)?)? == character(&x)?.truncate()?,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    let out = if json {
        to_json(&json!({ "n": x.index(), "pass": pass, "checks": checks }))
    } else {
        let mut out = String::new();
        for c in &checks {
            writeln!(out, "{}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name).unwrap();
        }
        out.push_str(if pass { "PASS" } else { "FAIL" });
        out
    };
    if pass {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}
