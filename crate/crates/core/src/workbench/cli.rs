//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::algebra::LieAlgebra;
use crate::classify::{
    complemented_decomposition, decomposition_theorems_check, is_complemented, verify_theorems, DecompositionOutcome,
    Route, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::frattini::{chief_series, elementary_residual_in, frattini_in, prefrattini_from, prefrattini_residual_in};
use crate::lattice::{EnumerationBudget, Lattice};
use crate::linalg::Subspace;
use crate::report::{subspace_json, subspaces_json, Status};

use super::catalog::{catalog, parse_param, CATALOG};
use super::lie_file::{parse_lie_file, serialize_lie};

#[derive(Parser, Debug)]
#[command(name = "solvlie", version, about = "Frattini theory of small solvable Lie algebras")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampling and for random catalog entries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Field, dimension, structure flags and the standard series.
    Info { file: PathBuf },
    /// The Frattini subalgebra.
    Frattini { file: PathBuf },
    /// The prefrattini subalgebras from the canonical chief series.
    Prefrattini { file: PathBuf },
    /// The canonical chief series with its factor classes.
    ChiefSeries { file: PathBuf },
    /// Whether the algebra is complemented.
    Complemented {
        file: PathBuf,
        #[arg(long, default_value = "splits_over_ideals")]
        route: String,
    },
    /// Frattini subalgebra, prefrattini residual and elementary residual.
    Residual { file: PathBuf },
    /// The abelian decomposition of a complemented algebra.
    Decompose { file: PathBuf },
    /// Check the structure theorems on this algebra.
    Verify {
        file: PathBuf,
        /// Comma-separated record ids or prefixes.
        #[arg(long, value_delimiter = ',')]
        theorems: Vec<String>,
        /// Maximum number of subspaces to enumerate.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Named algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    /// Print an entry as `.lie` text.
    Emit {
        name: String,
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

/// Text and JSON renderings of one command's result.
struct Output {
    code: i32,
    text: String,
    json: Value,
}

fn load(path: &Path) -> Result<(String, LieAlgebra)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, reason: format!("{}: {e}", path.display()) })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok((name, parse_lie_file(&text)?))
}

fn algebra_json(name: &str, l: &LieAlgebra) -> Value {
    json!({
        "name": name,
        "field": l.field().to_string(),
        "dim": l.dim(),
        "labels": l.labels(),
    })
}

fn base_json(name: &str, l: &LieAlgebra) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("algebra".into(), algebra_json(name, l));
    m.insert("flags".into(), serde_json::to_value(l.structure_flags()).expect("serializable"));
    m
}

fn render_all(items: &[Subspace], labels: &[String]) -> String {
    items.iter().map(|s| s.render(labels)).collect::<Vec<_>>().join("\n  ")
}

fn lattice(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Lattice> {
    if !l.field().is_finite() {
        return Err(Error::InfiniteFieldEnumeration);
    }
    l.require_solvable()?;
    Lattice::new(l, budget)
}

fn info(name: &str, l: &LieAlgebra) -> Output {
    let flags = l.structure_flags();
    let labels = l.labels();
    let derived = l.derived_series().terms;
    let lower = l.lower_central_series().terms;
    let center = l.center();
    let residual = l.nilpotent_residual();
    let text = format!(
        "algebra: {name}\nfield: {}\ndim: {}\nbasis: {}\nsolvable: {}\nnilpotent: {}\nabelian: {}\ncompletely solvable: {}\nderived length: {}\nderived series:\n  {}\nlower central series:\n  {}\ncenter: {}\nnilpotent residual: {}\n",
        l.field(),
        l.dim(),
        labels.join(" "),
        flags.solvable,
        flags.nilpotent,
        flags.abelian,
        flags.completely_solvable,
        flags.derived_length.map_or("none".to_string(), |d| d.to_string()),
        render_all(&derived, labels),
        render_all(&lower, labels),
        center.render(labels),
        residual.render(labels),
    );
    let mut m = base_json(name, l);
    m.insert(
        "subspaces".into(),
        json!({
            "derived_series": subspaces_json(&derived),
            "lower_central_series": subspaces_json(&lower),
            "center": subspace_json(&center),
            "nilpotent_residual": subspace_json(&residual),
        }),
    );
    Output { code: 0, text, json: Value::Object(m) }
}

fn frattini(name: &str, l: &LieAlgebra) -> Result<Output> {
    let lat = lattice(l, &EnumerationBudget::default())?;
    let phi = lat.space(frattini_in(&lat, lat.zero_id()));
    let mut m = base_json(name, l);
    m.insert("subspaces".into(), json!({"frattini": subspace_json(&phi)}));
    Ok(Output {
        code: 0,
        text: format!("frattini: {}\n", phi.render(l.labels())),
        json: Value::Object(m),
    })
}

fn prefrattini(name: &str, l: &LieAlgebra) -> Result<Output> {
    let (lat, series) = chief_series(l, &EnumerationBudget::default())?;
    let members: Vec<Subspace> = prefrattini_from(&lat, &series)?.iter().map(|&b| lat.space(b)).collect();
    let mut m = base_json(name, l);
    m.insert("subspaces".into(), json!({"prefrattini": subspaces_json(&members)}));
    m.insert("dimension".into(), json!(series.frattini_dimension(&lat)));
    Ok(Output {
        code: 0,
        text: format!(
            "prefrattini subalgebras ({}, dimension {}):\n  {}\n",
            members.len(),
            series.frattini_dimension(&lat),
            render_all(&members, l.labels())
        ),
        json: Value::Object(m),
    })
}

fn chief(name: &str, l: &LieAlgebra) -> Result<Output> {
    let (lat, series) = chief_series(l, &EnumerationBudget::default())?;
    let labels = l.labels();
    let mut text = format!("chief series ({} factors):\n  {}\n", series.len(), lat.space(series.terms[0]).render(labels));
    let mut factors = Vec::new();
    for i in 0..series.len() {
        let term = lat.space(series.terms[i + 1]);
        let witness = series.witnesses[i].map(|w| lat.space(w));
        text.push_str(&format!(
            "  {}  [{}{}]\n",
            term.render(labels),
            match series.classes[i] {
                crate::frattini::FactorClass::Frattini => "frattini",
                crate::frattini::FactorClass::Complemented => "complemented",
            },
            witness.as_ref().map_or(String::new(), |w| format!(" by {}", w.render(labels)))
        ));
        factors.push(json!({
            "class": series.classes[i],
            "witness": witness.as_ref().map(subspace_json),
        }));
    }
    let mut m = base_json(name, l);
    m.insert("subspaces".into(), json!({"chief_series": subspaces_json(&series.spaces(&lat))}));
    m.insert("factors".into(), Value::Array(factors));
    m.insert("index_set".into(), json!(series.index_set));
    Ok(Output { code: 0, text, json: Value::Object(m) })
}

fn complemented(name: &str, l: &LieAlgebra, route: &str) -> Result<Output> {
    let route: Route = route.parse()?;
    let v = is_complemented(l, &EnumerationBudget::default(), route)?;
    let mut text = format!("{}\n", v.complemented);
    if let Some(w) = &v.witness {
        text.push_str(&format!("witness: {} ({})\n", w.render(l.labels()), v.detail));
    }
    let mut m = base_json(name, l);
    m.insert("route".into(), json!(route));
    m.insert("complemented".into(), json!(v.complemented));
    m.insert("witness".into(), json!(v.witness.as_ref().map(subspace_json)));
    m.insert("detail".into(), json!(v.detail));
    Ok(Output { code: 0, text, json: Value::Object(m) })
}

fn residual(name: &str, l: &LieAlgebra) -> Result<Output> {
    let lat = lattice(l, &EnumerationBudget::default())?;
    let zero = lat.zero_id();
    let phi = lat.space(frattini_in(&lat, zero));
    let pi = lat.space(prefrattini_residual_in(&lat, zero)?);
    let e = lat.space(elementary_residual_in(&lat, zero)?);
    let labels = l.labels();
    let mut m = base_json(name, l);
    m.insert(
        "subspaces".into(),
        json!({
            "frattini": subspace_json(&phi),
            "prefrattini_residual": subspace_json(&pi),
            "elementary_residual": subspace_json(&e),
        }),
    );
    Ok(Output {
        code: 0,
        text: format!(
            "frattini: {}\nprefrattini residual: {}\nelementary residual: {}\n",
            phi.render(labels),
            pi.render(labels),
            e.render(labels)
        ),
        json: Value::Object(m),
    })
}

fn decompose(name: &str, l: &LieAlgebra) -> Result<Output> {
    let budget = EnumerationBudget::default();
    let labels = l.labels();
    let mut m = base_json(name, l);
    match complemented_decomposition(l, &budget)? {
        DecompositionOutcome::NotComplemented(v) => {
            let w = v.witness.as_ref().expect("negative verdicts carry a witness");
            m.insert("complemented".into(), json!(false));
            m.insert("witness".into(), subspace_json(w));
            Ok(Output {
                code: 0,
                text: format!("not complemented\nwitness: {} ({})\n", w.render(labels), v.detail),
                json: Value::Object(m),
            })
        }
        DecompositionOutcome::Decomposed(d) => {
            let lat = lattice(l, &budget)?;
            let records = decomposition_theorems_check(&lat, &d)?;
            let n = d.n();
            let mut text = String::from("complemented\n");
            for i in (0..=n).rev() {
                text.push_str(&format!("A_{i} = {}\n", d.parts[i].render(labels)));
            }
            let ch = &d.checks;
            text.push_str(&format!(
                "abelian parts: {}\ndirect: {}\npartial sums: {}\ncompletely reducible (1..n): {}\n",
                ch.abelian,
                ch.direct,
                ch.partial_sums,
                ch.irreducible.iter().skip(1).all(Option::is_none)
            ));
            for r in &records {
                text.push_str(&format!("{}: {}\n", r.id, r.status));
            }
            let ok = ch.passed() && records.iter().all(|r| r.status != Status::Fail);
            let parts: Vec<Subspace> = d.parts.iter().rev().cloned().collect();
            m.insert("complemented".into(), json!(true));
            m.insert("subspaces".into(), json!({"parts_from_top": subspaces_json(&parts)}));
            m.insert(
                "checks".into(),
                json!({
                    "abelian": ch.abelian,
                    "direct": ch.direct,
                    "partial_sums": ch.partial_sums,
                    "not_completely_reducible": ch.irreducible.iter().map(|s| s.as_ref().map(subspace_json)).collect::<Vec<_>>(),
                }),
            );
            m.insert("records".into(), serde_json::to_value(&records).expect("serializable"));
            Ok(Output {
                code: if ok { 0 } else { 1 },
                text,
                json: Value::Object(m),
            })
        }
    }
}

fn verify(name: &str, l: &LieAlgebra, theorems: Vec<String>, budget: Option<u64>, seed: u64) -> Result<Output> {
    let opts = VerifyOptions {
        budget: budget.map_or_else(EnumerationBudget::default, EnumerationBudget::with_max_count),
        select: theorems,
        seed,
        ..VerifyOptions::default()
    };
    let report = verify_theorems(l, name, &opts)?;
    let mut text = String::new();
    for r in &report.records {
        text.push_str(&format!("{}: {}\n", r.id, r.status));
        if r.status == Status::Fail {
            text.push_str(&format!("  witness: {}\n", r.witness));
        }
    }
    let failures = report.count(Status::Fail);
    text.push_str(&format!(
        "{} pass, {} fail, {} skipped, {} budget, {} info\n",
        report.count(Status::Pass),
        failures,
        report.count(Status::Skipped),
        report.count(Status::Budget),
        report.count(Status::Info)
    ));
    let mut m = base_json(name, l);
    m.insert("records".into(), serde_json::to_value(&report.records).expect("serializable"));
    Ok(Output {
        code: if failures > 0 { 1 } else { 0 },
        text,
        json: Value::Object(m),
    })
}

fn catalog_cmd(action: CatalogAction, seed: u64) -> Result<Output> {
    match action {
        CatalogAction::List => {
            let mut text = String::new();
            let mut entries = Vec::new();
            for e in CATALOG {
                let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                text.push_str(&format!("{} [{}]\n  {}\n", e.name, params.join(" "), e.description));
                entries.push(json!({
                    "name": e.name,
                    "params": e.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>(),
                    "description": e.description,
                }));
            }
            Ok(Output { code: 0, text, json: json!({"catalog": entries}) })
        }
        CatalogAction::Emit { name, params } => {
            let mut params: Vec<(String, String)> = params.iter().map(|p| parse_param(p)).collect::<Result<_>>()?;
            if name == "random_solvable" && !params.iter().any(|(k, _)| k == "seed") {
                params.insert(0, ("seed".into(), seed.to_string()));
            }
            let l = catalog(&name, &params)?;
            let text = serialize_lie(&l);
            let mut m = base_json(&name, &l);
            m.insert("lie".into(), json!(text));
            Ok(Output { code: 0, text, json: Value::Object(m) })
        }
    }
}

fn dispatch(cli: Cli) -> Result<Output> {
    let seed = cli.seed;
    match cli.command {
        Command::Catalog { action } => catalog_cmd(action, seed),
        Command::Info { file } => {
            let (name, l) = load(&file)?;
            Ok(info(&name, &l))
        }
        Command::Frattini { file } => {
            let (name, l) = load(&file)?;
            frattini(&name, &l)
        }
        Command::Prefrattini { file } => {
            let (name, l) = load(&file)?;
            prefrattini(&name, &l)
        }
        Command::ChiefSeries { file } => {
            let (name, l) = load(&file)?;
            chief(&name, &l)
        }
        Command::Complemented { file, route } => {
            let (name, l) = load(&file)?;
            complemented(&name, &l, &route)
        }
        Command::Residual { file } => {
            let (name, l) = load(&file)?;
            residual(&name, &l)
        }
        Command::Decompose { file } => {
            let (name, l) = load(&file)?;
            decompose(&name, &l)
        }
        Command::Verify { file, theorems, budget } => {
            let (name, l) = load(&file)?;
            verify(&name, &l, theorems, budget, seed)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 success, 1 theorem failure, 2 usage or parse error, 3 budget or
/// unsupported input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json_mode = cli.json;
    match dispatch(cli) {
        Ok(o) => {
            let _ = if json_mode {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let code = e.exit_code();
            if json_mode {
                let _ = writeln!(out, "{}", json!({"error": e.to_string(), "exit_code": code}));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}
