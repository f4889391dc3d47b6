//! Command surface of the `domclose` binary.
//!
//! [`run_command`] parses an argument vector, runs one command and returns the
//! exit code together with everything the process would print. Exit codes:
//! `0` when the checked property holds, `1` when it fails or a counterexample
//! is found, `2` for usage and validation errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use domclose::category::{self, OperatorClass};
use domclose::closure;
use domclose::io::{self, SetSystem};
use domclose::properties::{self, PROPERTY_NAMES};
use domclose::search::{self, SearchConfig, SuiteOptions};
use domclose::transforms::{self, GaloisPair, Transformation, ADJOINT_MAX};
use domclose::{ClosureMode, Error, GroundSet, Operator, PropertyReport, Subset, SubsetFamily};

#[derive(Debug, Parser)]
#[command(name = "domclose", version, about = "Dominating operators, closure and set-system transformations")]
pub struct Cli {
    /// Print one canonical JSON document instead of text.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check operator properties.
    Check {
        file: PathBuf,
        /// Comma-separated property names; defaults to every applicable one.
        #[arg(long, value_delimiter = ',')]
        props: Vec<String>,
    },
    /// Evaluate the dominated closure of a set.
    Closure {
        file: PathBuf,
        #[arg(long)]
        set: String,
        /// `eq1` unions subsets of Y.Δ; `eq2` scans the neighbourhood.
        #[arg(long, value_enum, default_value = "eq2")]
        mode: Mode,
    },
    /// List the sets closed under the dominated closure.
    ClosedSets { file: PathBuf },
    /// List the generators of an image value.
    Generators {
        file: PathBuf,
        #[arg(long)]
        target: String,
        /// Use the dominated closure instead of the operator itself.
        #[arg(long)]
        closure: bool,
    },
    /// Minimal generators of Y.Δ.
    Gamma {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long)]
        closure: bool,
    },
    /// The neighbourhood Y.Δ − Y.
    Eta {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Check the pullback property of the generator families.
    Pullback { file: PathBuf },
    /// Check that the maps `f` and `g` of a document form a Galois connection.
    Galois { file: PathBuf },
    /// Check continuity and preservation of the map `f` of a document.
    Continuity { file: PathBuf },
    /// Count the operators of a class on a small ground set.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "closure")]
        class: OperatorClass,
        /// Also print every operator as a document.
        #[arg(long)]
        list: bool,
    },
    /// Hunt for a counterexample to a claim.
    Search {
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// List the claims known to `search`.
    Claims,
    /// Run the built-in suite of worked instances, sweeps and hunts.
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SuiteOptions::default().hunt_budget)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Eq1,
    Eq2,
    Both,
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(holds: bool, text: String, json: Value) -> Self {
        Report {
            code: if holds { 0 } else { 1 },
            text,
            json,
        }
    }
}

pub fn run_command<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli.command) {
        Ok(report) => Output {
            code: report.code,
            stdout: if cli.quiet {
                format!("{}\n", report.json)
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(e) => Output {
            code: 2,
            stdout: if cli.quiet {
                format!("{}\n", json!({ "error": e.to_string() }))
            } else {
                String::new()
            },
            stderr: format!("error: {e}\n"),
        },
    }
}

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Check { file, props } => check(&load(file)?, props),
        Command::Closure { file, set, mode } => closure_cmd(&load(file)?, set, *mode),
        Command::ClosedSets { file } => closed_sets(&load(file)?),
        Command::Generators { file, target, closure } => {
            generators(&load(file)?, target, *closure)
        }
        Command::Gamma { file, set, closure } => gamma(&load(file)?, set, *closure),
        Command::Eta { file, set } => eta(&load(file)?, set),
        Command::Pullback { file } => pullback(&load(file)?),
        Command::Galois { file } => galois(&load(file)?),
        Command::Continuity { file } => continuity(&load(file)?),
        Command::Enumerate { n, class, list } => enumerate(*n, *class, *list),
        Command::Search {
            claim,
            seed,
            budget,
            n,
            workers,
        } => search_cmd(&SearchConfig::new(claim.clone(), *seed, *n, *budget), *workers),
        Command::Claims => Ok(claims()),
        Command::VerifyPaper {
            seed,
            budget,
            workers,
        } => verify(&SuiteOptions {
            seed: *seed,
            hunt_budget: *budget,
            workers: *workers,
            ..SuiteOptions::default()
        }),
    }
}

fn load(path: &Path) -> Result<SetSystem, Error> {
    io::load_system(path)
}

fn mark(holds: bool) -> &'static str {
    if holds {
        "✓"
    } else {
        "✗"
    }
}

fn report_line(r: &PropertyReport) -> String {
    let mut line = format!("{:<22}{}", r.property, mark(r.holds));
    if let Some(w) = r.witness_text() {
        line.push_str(&format!("  witness {w}"));
    }
    if let Some(note) = &r.note {
        line.push_str(&format!("  ({note})"));
    }
    line.push('\n');
    line
}

fn family_json(g: &GroundSet, family: &SubsetFamily) -> Value {
    json!(family.iter().map(|y| g.render(y)).collect::<Vec<_>>())
}

fn family_lines(g: &GroundSet, family: &SubsetFamily) -> String {
    family.iter().map(|y| format!("{}\n", g.render(y))).collect()
}

fn check(system: &SetSystem, props: &[String]) -> Result<Report, Error> {
    let op = &system.operator;
    let names: Vec<String> = if props.is_empty() {
        let closed = properties::is_closure(op)?.holds;
        PROPERTY_NAMES
            .iter()
            .filter(|p| closed || !matches!(**p, "matroid" | "antimatroid" | "topological"))
            .map(|p| p.to_string())
            .collect()
    } else {
        props.to_vec()
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for name in &names {
        match properties::check_named(op, name) {
            Ok(r) => {
                all &= r.holds;
                text.push_str(&report_line(&r));
                rows.push(r.to_json());
            }
            Err(Error::Precondition { property, witness }) => {
                all = false;
                text.push_str(&format!(
                    "{name:<22}✗  requires {property} (witness {witness})\n"
                ));
                rows.push(json!({
                    "property": name,
                    "holds": false,
                    "precondition": property,
                    "witness": witness,
                }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Report::new(
        all,
        text,
        json!({
            "command": "check",
            "ground": system.ground.labels(),
            "properties": rows,
            "holds": all,
        }),
    ))
}

fn closure_cmd(system: &SetSystem, set: &str, mode: Mode) -> Result<Report, Error> {
    let g = &system.ground;
    let y = g.parse_subset(set)?;
    let eval = |m| -> Result<Subset, Error> {
        closure::dominated_closure_with(&system.operator, m)?.eval(y)
    };
    let (text, json, holds) = match mode {
        Mode::Eq1 | Mode::Eq2 => {
            let m = if mode == Mode::Eq1 {
                ClosureMode::Subsets
            } else {
                ClosureMode::Neighborhood
            };
            let z = eval(m)?;
            (
                format!("{}\n", g.render(z)),
                json!({ "command": "closure", "set": g.render(y), "closure": g.render(z) }),
                true,
            )
        }
        Mode::Both => {
            let (a, b) = (eval(ClosureMode::Subsets)?, eval(ClosureMode::Neighborhood)?);
            (
                format!("eq1 {}\neq2 {}\n", g.render(a), g.render(b)),
                json!({
                    "command": "closure",
                    "set": g.render(y),
                    "eq1": g.render(a),
                    "eq2": g.render(b),
                    "agree": a == b,
                }),
                a == b,
            )
        }
    };
    Ok(Report::new(holds, text, json))
}

fn closed_sets(system: &SetSystem) -> Result<Report, Error> {
    let g = &system.ground;
    let phi = closure::dominated_closure(&system.operator)?;
    let closed = closure::closed_sets(&phi)?;
    Ok(Report::new(
        true,
        family_lines(g, &closed),
        json!({
            "command": "closed-sets",
            "count": closed.len(),
            "closed_sets": family_json(g, &closed),
        }),
    ))
}

fn target_operator(system: &SetSystem, use_closure: bool) -> Result<Operator, Error> {
    if use_closure {
        closure::dominated_closure(&system.operator)
    } else {
        Ok(system.operator.clone())
    }
}

fn generators(system: &SetSystem, target: &str, use_closure: bool) -> Result<Report, Error> {
    let g = &system.ground;
    let op = target_operator(system, use_closure)?;
    let z = g.parse_subset(target)?;
    let gens = closure::generators(&op, z)?;
    let text = if gens.is_image() {
        format!(
            "generators {}\nminimal    {}\n",
            g.render_family(&gens.generators),
            g.render_family(&gens.minimal)
        )
    } else {
        format!("{} is not an image\n", g.render(z))
    };
    Ok(Report::new(
        true,
        text,
        json!({
            "command": "generators",
            "target": g.render(z),
            "generators": family_json(g, &gens.generators),
            "minimal": family_json(g, &gens.minimal),
        }),
    ))
}

fn gamma(system: &SetSystem, set: &str, use_closure: bool) -> Result<Report, Error> {
    let g = &system.ground;
    let op = target_operator(system, use_closure)?;
    let y = g.parse_subset(set)?;
    let minimal = closure::gamma(&op, y)?;
    Ok(Report::new(
        true,
        format!("{}\n", g.render_family(&minimal)),
        json!({
            "command": "gamma",
            "set": g.render(y),
            "image": g.render(op.eval(y)?),
            "minimal_generators": family_json(g, &minimal),
        }),
    ))
}

fn eta(system: &SetSystem, set: &str) -> Result<Report, Error> {
    let g = &system.ground;
    let y = g.parse_subset(set)?;
    let z = system.operator.eta(y)?;
    Ok(Report::new(
        true,
        format!("{}\n", g.render(z)),
        json!({ "command": "eta", "set": g.render(y), "eta": g.render(z) }),
    ))
}

fn pullback(system: &SetSystem) -> Result<Report, Error> {
    let g = &system.ground;
    let op = &system.operator;
    let r = category::pullback_property(op)?;
    let eq = category::antimatroid_equivalence(op)?;
    let mut text = String::new();
    for s in &r.per_image {
        text.push_str(&format!(
            "{:<16}generators {:<4}minimal {:<24}{}\n",
            g.render(s.target),
            s.generators,
            g.render_family(&s.minimal),
            if s.intersection_closed {
                "intersection-closed"
            } else {
                "not intersection-closed"
            }
        ));
    }
    let summary = r.to_report();
    text.push_str(&report_line(&summary));
    text.push_str(&format!(
        "closure {}  antimatroid {}  uniquely-generated {}\n",
        mark(eq.closure),
        mark(eq.antimatroid),
        mark(eq.uniquely_generated)
    ));
    let images: Vec<Value> = r
        .per_image
        .iter()
        .map(|s| {
            json!({
                "target": g.render(s.target),
                "generators": s.generators,
                "minimal": family_json(g, &s.minimal),
                "intersection_closed": s.intersection_closed,
            })
        })
        .collect();
    Ok(Report::new(
        r.holds,
        text,
        json!({
            "command": "pullback",
            "pullback": summary.to_json(),
            "images": images,
            "closure": eq.closure,
            "antimatroid": eq.antimatroid,
            "uniquely_generated": eq.uniquely_generated,
        }),
    ))
}

fn maps(system: &SetSystem) -> Result<(&Transformation, Option<&Transformation>, &Operator), Error> {
    let f = system
        .f
        .as_ref()
        .ok_or_else(|| invalid("document", "needs a map `f`"))?;
    let target = system
        .second
        .as_ref()
        .map(|s| &s.operator)
        .unwrap_or(&system.operator);
    Ok((f, system.g.as_ref(), target))
}

fn invalid(what: &str, reason: &str) -> Error {
    Error::Invalid {
        what: what.to_string(),
        reason: reason.to_string(),
    }
}

fn galois(system: &SetSystem) -> Result<Report, Error> {
    let (f, g, _) = maps(system)?;
    let g = g.ok_or_else(|| invalid("document", "needs a map `g`"))?;
    let r = transforms::is_galois(f, g)?;
    let mut text: String = r.parts().into_iter().map(report_line).collect();
    let mut json = json!({
        "command": "galois",
        "galois": r.holds(),
        "checks": r.parts().into_iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        "criteria_agree": r.agrees(),
    });
    text.push_str(&format!("{:<22}{}\n", "galois", mark(r.holds())));
    if r.holds() {
        let pair = GaloisPair::new(f.clone(), g.clone())?;
        let identities = transforms::galois_identities(&pair)?;
        let phi = transforms::galois_closure(&pair)?;
        let closure = properties::is_closure(&phi)?;
        let closed = closure::closed_sets(&phi)?;
        text.push_str(&report_line(&identities));
        text.push_str(&format!("{:<22}{}\n", "f·g closure", mark(closure.holds)));
        text.push_str(&format!("closed sets of f·g  {}\n", f.source().render_family(&closed)));
        json["identities"] = identities.to_json();
        json["closure"] = json!(closure.holds);
        json["closed_sets"] = family_json(f.source(), &closed);
        if f.source().len() <= ADJOINT_MAX && f.target().len() <= ADJOINT_MAX {
            let unique = transforms::galois_unique_adjoint(f, g)?;
            text.push_str(&report_line(&unique));
            json["unique_adjoint"] = unique.to_json();
        }
    }
    Ok(Report::new(r.holds(), text, json))
}

fn continuity(system: &SetSystem) -> Result<Report, Error> {
    let (f, _, target) = maps(system)?;
    let delta = &system.operator;
    let cont = transforms::is_continuous(f, delta, target)?;
    let pres = transforms::is_preserving(f, delta, target)?;
    let monotone = transforms::is_monotone_map(f)?;
    let transport = transforms::generator_transport(f, delta, target)?;
    let surjective = transforms::is_delta_surjective(f, target)?;
    let preimages = transforms::delta_set_preimages(f, delta, target)?;
    let rows = [
        &monotone,
        &cont,
        &pres.definitional,
        &pres.inclusion,
        &transport,
        &surjective,
        &preimages,
    ];
    let text: String = rows.iter().map(|r| report_line(r)).collect();
    Ok(Report::new(
        cont.holds,
        text,
        json!({
            "command": "continuity",
            "continuous": cont.holds,
            "checks": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "source_idempotent": pres.source_idempotent,
        }),
    ))
}

fn enumerate(n: usize, class: OperatorClass, list: bool) -> Result<Report, Error> {
    let ops = category::enumerate_class(n, class)?;
    let mut text = format!("{class} operators on {n} elements: {}\n", ops.len());
    let mut json = json!({ "command": "enumerate", "class": class.as_str(), "n": n, "count": ops.len() });
    if list {
        let docs: Vec<Value> = ops
            .iter()
            .map(|op| serde_json::to_value(io::operator_to_doc(op)).expect("documents serialize"))
            .collect();
        for d in &docs {
            text.push_str(&format!("{d}\n"));
        }
        json["operators"] = json!(docs);
    }
    Ok(Report::new(true, text, json))
}

fn search_cmd(config: &SearchConfig, workers: usize) -> Result<Report, Error> {
    let result = search::hunt(config, workers)?;
    let mut text = format!(
        "claim      {} ({})\nstatement  {}\nn={} seed={} budget={}\ntested {}  applicable {}\nverdict    {}\n",
        result.claim,
        result.kind.as_str(),
        result.statement,
        result.n,
        result.seed,
        result.budget,
        result.candidates_tested,
        result.applicable,
        result.verdict()
    );
    if let Some(c) = &result.counterexample {
        text.push_str(&format!(
            "candidate  {}\nwitness    {}\ndetail     {}\ninstance   {}\n",
            c.index, c.witness, c.detail, c.instance
        ));
    }
    Ok(Report::new(result.counterexample.is_none(), text, result.to_json()))
}

fn claims() -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in search::CLAIMS {
        text.push_str(&format!("{:<24}{:<12}{}\n", c.id, c.kind.as_str(), c.statement));
        rows.push(json!({
            "id": c.id,
            "kind": c.kind.as_str(),
            "statement": c.statement,
            "max_n": c.max_n,
        }));
    }
    Report::new(true, text, json!({ "command": "claims", "claims": rows }))
}

fn verify(options: &SuiteOptions) -> Result<Report, Error> {
    let report = search::verify_paper(options)?;
    let mut text = String::new();
    for e in &report.entries {
        let status = match (e.holds, e.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        text.push_str(&format!("{status}  {:<9}{}", e.section, e.name));
        if e.checked > 0 {
            text.push_str(&format!("  [{}]", e.checked));
        }
        if !e.detail.is_empty() {
            text.push_str(&format!("  {}", e.detail));
        }
        text.push('\n');
    }
    let failures = report.failures();
    if failures.is_empty() {
        text.push_str("all propositions hold\n");
    } else {
        text.push_str(&format!("{} failing entries\n", failures.len()));
    }
    Ok(Report::new(report.passed(), text, report.to_json()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn closure_of_a_under_dstar() {
        let out = run_command(["domclose", "closure", &data("dstar.json"), "--set", "a"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "{a}\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_command(["domclose", "frobnicate"]).code, 2);
        assert_eq!(run_command(["domclose", "closure", &data("dstar.json")]).code, 2);
        let out = run_command(["domclose", "closure", &data("dstar.json"), "--set", "z"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("`z`"), "{}", out.stderr);
        assert_eq!(run_command(["domclose", "--help"]).code, 0);
    }

    #[test]
    fn quiet_mode_emits_json() {
        let out = run_command(["domclose", "-q", "eta", &data("dstar.json"), "--set", "a,b"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["eta"], "{c,d}");
    }
}
