//! `opencospan`: compose, tensor, convert, gray-box, simulate and check open
//! systems stored as JSON model files.
//!
//! Exit codes: 0 on success, 2 for domain or validation errors, 3 for I/O and
//! parse errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opencospan::cospan::{
    check_companion, check_conjoint, companion, conjoint, iso_cospan, left_unitor, right_unitor, to_decorated,
    to_structured,
};
use opencospan::dynam::{compose_open_dynam, graybox, simulate, OpenDynam};
use opencospan::finset::DEFAULT_ISO_BUDGET;
use opencospan::json::{trajectory_csv, Cospans, JsonDecoration, Model, ModelFile, SimConfig};
use opencospan::models::Names;
use opencospan::{Cospan, DecoratedCospan, Error, FinFunction, Graph, StructuredCospan, System};

const BUDGET_VAR: &str = "OPENCOSPAN_ISO_BUDGET";

#[derive(Parser)]
#[command(name = "opencospan", version, about = "Open graphs, circuits and Petri nets as structured and decorated cospans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose models left to right by pushout.
    Compose {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Place models side by side.
    Tensor {
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Switch between the structured and decorated representations.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Representation,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Turn an open Petri net with rates into its open dynamical system.
    Graybox {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Integrate the open rate equation and write a CSV trajectory.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run law checks and print one PASS/FAIL line per law.
    Check {
        files: Vec<PathBuf>,
        /// Comma-separated: validate, iso, companion, unitors, roundtrip, graybox.
        #[arg(long, value_delimiter = ',', default_value = "validate")]
        laws: Vec<Law>,
        /// The map for `companion`, as a JSON array such as `[0,0]`.
        #[arg(long)]
        function: Option<String>,
        /// Codomain size for `--function`; defaults to one past its largest entry.
        #[arg(long)]
        cod: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Representation {
    Structured,
    Decorated,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Law {
    Validate,
    Iso,
    Companion,
    Unitors,
    Roundtrip,
    Graybox,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

enum Failure {
    Domain(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Io(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> CliResult<ModelFile> {
    ModelFile::parse(&read(path)?).map_err(|e| match Failure::from(e) {
        Failure::Io(m) => Failure::Io(format!("{}: {m}", path.display())),
        Failure::Domain(m) => Failure::Domain(format!("{}: {m}", path.display())),
    })
}

fn write(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn write_model(out: Option<&Path>, f: &ModelFile) -> CliResult<()> {
    let mut text = f.to_canonical_string();
    if out.is_some() {
        text.push('\n');
    }
    write(out, &text)
}

fn iso_budget() -> CliResult<u64> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| domain(format!("{BUDGET_VAR} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ISO_BUDGET),
    }
}

fn mismatch(a: &Model, b: &Model) -> Failure {
    domain(format!(
        "cannot combine a {} {} model with a {} {} model",
        a.representation(),
        a.kind(),
        b.representation(),
        b.kind()
    ))
}

/// Applies a binary cospan operation to two models of the same kind and representation.
fn binary(a: &Model, b: &Model, op: Op) -> CliResult<Model> {
    fn go<C: Cospan>(x: &C, y: &C, op: Op) -> opencospan::Result<C> {
        match op {
            Op::Compose => x.compose(y),
            Op::Tensor => x.tensor(y),
        }
    }
    fn both<S: System>(x: &Cospans<S>, y: &Cospans<S>, op: Op) -> Option<opencospan::Result<Cospans<S>>> {
        match (x, y) {
            (Cospans::Decorated(x), Cospans::Decorated(y)) => Some(go(x, y, op).map(Cospans::Decorated)),
            (Cospans::Structured(x), Cospans::Structured(y)) => Some(go(x, y, op).map(Cospans::Structured)),
            _ => None,
        }
    }
    let r = match (a, b) {
        (Model::Graph(x), Model::Graph(y)) => both(x, y, op).map(|r| r.map(Model::Graph)),
        (Model::Lgraph(x), Model::Lgraph(y)) => both(x, y, op).map(|r| r.map(Model::Lgraph)),
        (Model::Petri(x), Model::Petri(y)) => both(x, y, op).map(|r| r.map(Model::Petri)),
        (Model::PetriRates(x), Model::PetriRates(y)) => both(x, y, op).map(|r| r.map(Model::PetriRates)),
        (Model::Dynam(x), Model::Dynam(y)) => Some(match op {
            Op::Compose => compose_open_dynam(x, y).map(Model::Dynam),
            Op::Tensor => x.tensor(y).map(Model::Dynam),
        }),
        _ => None,
    };
    match r {
        Some(r) => r.map_err(|e| match e {
            Error::Composability { right, left } => domain(format!(
                "cannot compose: the right foot of the left model has {right} elements but the left foot of the next has {left}"
            )),
            other => other.into(),
        }),
        None => Err(mismatch(a, b)),
    }
}

#[derive(Clone, Copy)]
enum Op {
    Compose,
    Tensor,
}

fn concat(a: &[String], b: &[String], na: usize, nb: usize) -> Vec<String> {
    if a.len() == na && b.len() == nb && na + nb > 0 {
        a.iter().chain(b).cloned().collect()
    } else {
        Vec::new()
    }
}

fn cmd_fold(files: &[PathBuf], out: Option<&Path>, op: Op) -> CliResult<()> {
    let mut acc = load(&files[0])?;
    for path in &files[1..] {
        let next = load(path)?;
        let model = binary(&acc.model, &next.model, op)?;
        let names = match op {
            Op::Compose => Names { apex: Vec::new(), left: acc.names.left.clone(), right: next.names.right.clone() },
            Op::Tensor => {
                let (a, b) = (acc.model.shape(), next.model.shape());
                Names {
                    apex: concat(&acc.names.apex, &next.names.apex, a.1, b.1),
                    left: concat(&acc.names.left, &next.names.left, a.0, b.0),
                    right: concat(&acc.names.right, &next.names.right, a.2, b.2),
                }
            }
        };
        acc = ModelFile { model, names };
    }
    write_model(out, &acc)
}

fn convert_cospans<S: System>(c: &Cospans<S>, to: Representation) -> CliResult<Cospans<S>> {
    Ok(match (c, to) {
        (Cospans::Decorated(d), Representation::Structured) => Cospans::Structured(to_structured(d)),
        (Cospans::Structured(s), Representation::Decorated) => Cospans::Decorated(to_decorated(s)?),
        (same, _) => same.clone(),
    })
}

fn convert(model: &Model, to: Representation) -> CliResult<Model> {
    Ok(match model {
        Model::Graph(c) => Model::Graph(convert_cospans(c, to)?),
        Model::Lgraph(c) => Model::Lgraph(convert_cospans(c, to)?),
        Model::Petri(c) => Model::Petri(convert_cospans(c, to)?),
        Model::PetriRates(c) => Model::PetriRates(convert_cospans(c, to)?),
        Model::Dynam(_) if to == Representation::Structured => {
            return Err(domain("open dynamical systems have no structured form"))
        }
        Model::Dynam(d) => Model::Dynam(d.clone()),
    })
}

fn as_dynam(model: &Model) -> CliResult<OpenDynam> {
    match model {
        Model::Dynam(d) => Ok(d.clone()),
        Model::PetriRates(Cospans::Decorated(d)) => Ok(graybox(d)),
        Model::PetriRates(Cospans::Structured(s)) => Ok(graybox(&to_decorated(s)?)),
        other => Err(domain(format!("cannot gray-box a {} model, need petri_rates", other.kind()))),
    }
}

fn cmd_simulate(file: &Path, config: &Path, out: Option<&Path>) -> CliResult<()> {
    let m = load(file)?;
    let sys = as_dynam(&m.model)?;
    let cfg = SimConfig::parse(&read(config)?).map_err(|e| match Failure::from(e) {
        Failure::Io(msg) => Failure::Io(format!("{}: {msg}", config.display())),
        other => other,
    })?;
    let (c0, sched) = cfg.resolve(&sys, &m.names)?;
    let traj = simulate(&sys, &sched, &c0, cfg.t0, cfg.t1, cfg.dt)?;
    let csv = trajectory_csv(&traj, &m.names.apex);
    match out {
        Some(p) => std::fs::write(p, csv).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

/// One line of a check report.
struct Outcome {
    law: Law,
    subject: String,
    failure: Option<String>,
}

fn pass(law: Law, subject: impl Into<String>) -> Outcome {
    Outcome { law, subject: subject.into(), failure: None }
}

fn fail(law: Law, subject: impl Into<String>, why: impl Into<String>) -> Outcome {
    Outcome { law, subject: subject.into(), failure: Some(why.into()) }
}

fn unitors_hold<C: Cospan>(m: &C, budget: u64) -> CliResult<Option<String>> {
    let left = C::identity(m.left_foot()).compose(m)?;
    let right = m.compose(&C::identity(m.right_foot()))?;
    for (name, composite, unitor) in [("left", &left, left_unitor(m)?), ("right", &right, right_unitor(m)?)] {
        if let Some(v) = unitor.validate(composite, m)?.first() {
            return Ok(Some(format!("{name} unitor: {v}")));
        }
        if iso_cospan(composite, m, budget)?.is_none() {
            return Ok(Some(format!("{name} unit composite is not isomorphic to the model")));
        }
    }
    Ok(None)
}

fn iso_holds<C: Cospan>(a: &C, b: &C, budget: u64) -> CliResult<bool> {
    Ok(iso_cospan(a, b, budget)?.is_some())
}

fn companion_report<C: Cospan>(f: &FinFunction) -> CliResult<Option<String>> {
    for (name, report) in [
        ("companion", check_companion(&companion::<C>(f)?)?),
        ("conjoint", check_conjoint(&conjoint::<C>(f)?)?),
    ] {
        if !report.passed() {
            let first = report.violations.first().map(|v| v.to_string()).unwrap_or_default();
            return Ok(Some(format!("{name} equations fail: {first}")));
        }
    }
    Ok(None)
}

fn parse_function(text: &str, cod: Option<usize>) -> CliResult<FinFunction> {
    let table: Vec<usize> =
        serde_json::from_str(text).map_err(|e| Failure::Io(format!("--function must be a JSON array: {e}")))?;
    let cod = cod.unwrap_or_else(|| table.iter().max().map_or(0, |m| m + 1));
    Ok(FinFunction::new(table, cod)?)
}

fn check_law(law: Law, files: &[(String, ModelFile)], function: Option<&FinFunction>, budget: u64) -> CliResult<Vec<Outcome>> {
    let mut out = Vec::new();
    match law {
        Law::Validate => {
            // loading already enforced every invariant
            for (name, _) in files {
                out.push(pass(law, name.as_str()));
            }
        }
        Law::Iso => {
            let [(na, a), (nb, b)] = files else {
                return Err(domain("iso needs exactly two model files"));
            };
            let subject = format!("{na} vs {nb}");
            let found = match (&a.model, &b.model) {
                (Model::Graph(x), Model::Graph(y)) => iso_either(x, y, budget)?,
                (Model::Lgraph(x), Model::Lgraph(y)) => iso_either(x, y, budget)?,
                (Model::Petri(x), Model::Petri(y)) => iso_either(x, y, budget)?,
                (Model::PetriRates(x), Model::PetriRates(y)) => iso_either(x, y, budget)?,
                (Model::Dynam(x), Model::Dynam(y)) => Some(iso_holds(x, y, budget)?),
                _ => None,
            };
            out.push(match found {
                Some(true) => pass(law, subject),
                Some(false) => fail(law, subject, "no apex isomorphism commutes with the legs and decorations"),
                None => fail(law, subject, mismatch(&a.model, &b.model).to_string()),
            });
        }
        Law::Companion => {
            let f = function.ok_or_else(|| domain("companion needs --function"))?;
            let subject = format!("f = {:?}", f.table());
            let kind = files.first().map(|(_, m)| &m.model);
            let r = match kind {
                None | Some(Model::Graph(Cospans::Decorated(_))) => companion_report::<DecoratedCospan<Graph>>(f)?,
                Some(Model::Graph(Cospans::Structured(_))) => companion_report::<StructuredCospan<Graph>>(f)?,
                Some(Model::Lgraph(c)) => by_rep(c, f)?,
                Some(Model::Petri(c)) => by_rep(c, f)?,
                Some(Model::PetriRates(c)) => by_rep(c, f)?,
                Some(Model::Dynam(_)) => companion_report::<OpenDynam>(f)?,
            };
            out.push(match r {
                None => pass(law, subject),
                Some(why) => fail(law, subject, why),
            });
        }
        Law::Unitors => {
            for (name, m) in files {
                let r = match &m.model {
                    Model::Graph(c) => unitors_either(c, budget)?,
                    Model::Lgraph(c) => unitors_either(c, budget)?,
                    Model::Petri(c) => unitors_either(c, budget)?,
                    Model::PetriRates(c) => unitors_either(c, budget)?,
                    Model::Dynam(d) => unitors_hold(d, budget)?,
                };
                out.push(match r {
                    None => pass(law, name.as_str()),
                    Some(why) => fail(law, name.as_str(), why),
                });
            }
        }
        Law::Roundtrip => {
            for (name, m) in files {
                if let Model::Dynam(_) = m.model {
                    out.push(fail(law, name.as_str(), "open dynamical systems have no structured form"));
                    continue;
                }
                let (there, back) = match m.model.representation() {
                    "decorated" => (Representation::Structured, Representation::Decorated),
                    _ => (Representation::Decorated, Representation::Structured),
                };
                let trip = convert(&m.model, there).and_then(|x| convert(&x, back));
                out.push(match trip {
                    Ok(model) => {
                        let again = ModelFile { model, names: m.names.clone() };
                        if again.to_canonical_string() == m.to_canonical_string() {
                            pass(law, name.as_str())
                        } else {
                            fail(law, name.as_str(), "round trip changed the file")
                        }
                    }
                    Err(e) => fail(law, name.as_str(), e.to_string()),
                });
            }
        }
        Law::Graybox => {
            for (name, m) in files {
                let net = match &m.model {
                    Model::PetriRates(Cospans::Decorated(d)) => d.clone(),
                    Model::PetriRates(Cospans::Structured(s)) => to_decorated(s)?,
                    other => {
                        out.push(fail(law, name.as_str(), format!("need petri_rates, found {}", other.kind())));
                        continue;
                    }
                };
                // glue the net to itself when its feet allow, otherwise to an identity
                let next = if net.right_foot() == net.left_foot() { net.clone() } else { Cospan::identity(net.right_foot()) };
                let whole = graybox(&net.compose(&next)?);
                let parts = compose_open_dynam(&graybox(&net), &graybox(&next))?;
                out.push(if whole == parts {
                    pass(law, name.as_str())
                } else {
                    fail(law, name.as_str(), "gray-boxing the composite differs from composing the gray boxes")
                });
            }
        }
    }
    Ok(out)
}

fn iso_either<S: System>(x: &Cospans<S>, y: &Cospans<S>, budget: u64) -> CliResult<Option<bool>> {
    Ok(match (x, y) {
        (Cospans::Decorated(x), Cospans::Decorated(y)) => Some(iso_holds(x, y, budget)?),
        (Cospans::Structured(x), Cospans::Structured(y)) => Some(iso_holds(x, y, budget)?),
        _ => None,
    })
}

fn unitors_either<S: System>(c: &Cospans<S>, budget: u64) -> CliResult<Option<String>> {
    match c {
        Cospans::Decorated(d) => unitors_hold(d, budget),
        Cospans::Structured(s) => unitors_hold(s, budget),
    }
}

fn by_rep<S: System + JsonDecoration>(c: &Cospans<S>, f: &FinFunction) -> CliResult<Option<String>> {
    match c {
        Cospans::Decorated(_) => companion_report::<DecoratedCospan<S>>(f),
        Cospans::Structured(_) => companion_report::<StructuredCospan<S>>(f),
    }
}

fn cmd_check(files: &[PathBuf], laws: &[Law], function: Option<&str>, cod: Option<usize>) -> CliResult<bool> {
    let budget = iso_budget()?;
    let loaded = files
        .iter()
        .map(|p| Ok((p.display().to_string(), load(p)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let f = function.map(|t| parse_function(t, cod)).transpose()?;
    let mut all = true;
    for &law in laws {
        for o in check_law(law, &loaded, f.as_ref(), budget)? {
            match o.failure {
                None => println!("PASS {} {}", o.law, o.subject),
                Some(why) => {
                    all = false;
                    println!("FAIL {} {}: {why}", o.law, o.subject);
                }
            }
        }
    }
    Ok(all)
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Compose { files, out } => cmd_fold(&files, out.as_deref(), Op::Compose)?,
        Command::Tensor { files, out } => cmd_fold(&files, out.as_deref(), Op::Tensor)?,
        Command::Convert { file, to, out } => {
            let m = load(&file)?;
            write_model(out.as_deref(), &ModelFile { model: convert(&m.model, to)?, names: m.names })?;
        }
        Command::Graybox { file, out } => {
            let m = load(&file)?;
            write_model(out.as_deref(), &ModelFile { model: Model::Dynam(as_dynam(&m.model)?), names: m.names })?;
        }
        Command::Simulate { file, config, out } => cmd_simulate(&file, &config, out.as_deref())?,
        Command::Check { files, laws, function, cod } => return cmd_check(&files, &laws, function.as_deref(), cod),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
