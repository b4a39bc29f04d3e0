//! `lpw`: check, search and explore proofs in the leveled paraconsistent
//! calculi.
//!
//! Exit codes: 0 for success or an accepted proof, 1 for a rejected proof or
//! a search that found nothing, 2 for usage, input or parse errors.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use lpw_core::checker::check_proof_with;
use lpw_core::formula::{expand_cons, expand_cons_v41, expand_incons};
use lpw_core::registry::Registry;
use lpw_core::schema::{
    instantiate_checked, match_axiom_with, Profile, SchemaError, SchemaId, SchemaInstance, SchemaSettings,
};
use lpw_core::search::{search, DepthMeasure, SearchConfig, SearchError};
use lpw_core::settheory::{bundled_registry, bundled_script_with_cap, displayed_steps, states, Bundled};
use lpw_core::syntax::{parse_formula, parse_proof, parse_registry, print_formula, print_proof};
use lpw_core::{Formula, Level, Term};

#[derive(Parser)]
#[command(name = "lpw", version, about = "Proof checker for leveled paraconsistent logic and naive set theory")]
struct Cli {
    /// Axiom system to check against.
    #[arg(long, global = true, default_value = "ksth")]
    profile: Profile,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof script.
    Check {
        proof: PathBuf,
        /// Registry of contradictory atoms (`<atom> <level>` per line).
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Unfold a consistency or inconsistency operator.
    Expand {
        formula: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// A natural number, or `w` for the infinite level.
        #[arg(long)]
        level: String,
    },
    /// Search for a proof of bounded length.
    Search {
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Comma-separated schema ids to instantiate (default: all
        /// propositional schemata of the profile).
        #[arg(long, value_delimiter = ',')]
        axioms: Option<Vec<SchemaId>>,
        /// Candidate metavariable filler; repeatable (default: subformulas of
        /// the goal).
        #[arg(long = "universe")]
        universe: Vec<String>,
        /// Hypothesis available as a proof line; repeatable.
        #[arg(long = "hyp")]
        hypotheses: Vec<String>,
        #[arg(long, value_enum, default_value_t = MeasureArg::Lines)]
        measure: MeasureArg,
        /// Give up after this many seconds.
        #[arg(long, default_value_t = 30)]
        timeout: u64,
    },
    /// Check a bundled derivation and show its headline steps.
    Demo {
        /// `thm4_3`, `thm4_1:<n>` or `nonexplosion`.
        name: String,
    },
    /// Parse a formula and print it in normal form.
    Parse {
        formula: String,
        /// Also report the first axiom schema it instantiates.
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Instantiate an axiom schema.
    Instantiate {
        schema: SchemaId,
        /// `META=value`; uppercase metavariables take formulas, lowercase ones
        /// take terms.
        #[arg(long = "bind")]
        bindings: Vec<String>,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Cons,
    Incons,
    Cons41,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Lines,
    Height,
}

/// A failure that ends the run with exit code 2.
struct Usage(String);

impl<E: Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Run = Result<ExitCode, Usage>;

fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn load_registry(path: Option<&Path>) -> Result<Registry, Usage> {
    match path {
        None => Ok(Registry::new()),
        Some(p) => parse_registry(&read(p)?).map_err(|e| Usage(format!("{}: {e}", p.display()))),
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check(settings: &SchemaSettings, proof: &Path, registry: Option<&Path>, json: bool) -> Run {
    let script = parse_proof(&read(proof)?).map_err(|e| Usage(format!("{}: {e}", proof.display())))?;
    let r = load_registry(registry)?;
    let report = check_proof_with(&script, &r, settings);
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.summary());
        if let Some(f) = &report.first_failure {
            if let Some(line) = script.line(&f.line) {
                println!("  {}: {}", line.id, print_formula(&line.formula));
            }
        }
    }
    Ok(verdict(report.accepted()))
}

fn parse_level(text: &str) -> Result<Level, Usage> {
    match text {
        "w" | "omega" => Ok(Level::Omega),
        _ => text.parse().map(Level::Finite).map_err(|_| Usage(format!("invalid level `{text}`"))),
    }
}

fn expand(settings: &SchemaSettings, formula: &str, mode: Mode, level: &str) -> Run {
    let f = parse_formula(formula)?;
    let n = parse_level(level)?;
    if let Level::Finite(k) = n {
        if k > settings.level_cap {
            return Err(Usage(format!("level {k} exceeds the cap {}", settings.level_cap)));
        }
    }
    let out = match mode {
        Mode::Cons => expand_cons(&f, n)?,
        Mode::Incons => expand_incons(&f, n)?,
        Mode::Cons41 => {
            if n != Level::Finite(0) {
                return Err(Usage("the alternative consistency base case is defined for level 0 only".into()));
            }
            expand_cons_v41(&f)
        }
    };
    println!("{}", print_formula(&out));
    Ok(ExitCode::SUCCESS)
}

struct SearchArgs {
    goal: String,
    depth: usize,
    registry: Option<PathBuf>,
    axioms: Option<Vec<SchemaId>>,
    universe: Vec<String>,
    hypotheses: Vec<String>,
    measure: MeasureArg,
    timeout: u64,
}

fn run_search(settings: &SchemaSettings, a: SearchArgs) -> Run {
    let goal = parse_formula(&a.goal)?;
    let r = load_registry(a.registry.as_deref())?;
    let mut cfg = SearchConfig::new(a.depth);
    cfg.settings = *settings;
    cfg.schema_whitelist = a.axioms.map(|ids| ids.into_iter().collect::<BTreeSet<_>>());
    cfg.instantiation_universe = a.universe.iter().map(|s| parse_formula(s)).collect::<Result<_, _>>()?;
    cfg.hypotheses = a.hypotheses.iter().map(|s| parse_formula(s)).collect::<Result<_, _>>()?;
    cfg.measure = match a.measure {
        MeasureArg::Lines => DepthMeasure::Lines,
        MeasureArg::Height => DepthMeasure::Height,
    };
    cfg.time_budget = Duration::from_secs(a.timeout);
    match search(&goal, &cfg, &r) {
        Ok(Some(script)) => {
            print!("{}", print_proof(&script));
            Ok(ExitCode::SUCCESS)
        }
        Ok(None) => {
            println!("no proof within depth {}", a.depth);
            Ok(ExitCode::from(1))
        }
        Err(e @ SearchError::BudgetExhausted(_)) => {
            println!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn demo(settings: &SchemaSettings, name: &str) -> Run {
    let bundled: Bundled = name.parse()?;
    let script = bundled_script_with_cap(bundled, settings.level_cap)?;
    let r = bundled_registry(bundled);
    let report = check_proof_with(&script, &r, settings);
    println!("{bundled}: {} lines, {}", script.lines.len(), report.summary());
    if !r.is_empty() {
        let entries: Vec<String> = r.iter().map(|(a, n)| format!("{a} in V{n}")).collect();
        println!("registry: {}", entries.join(", "));
    }
    if !report.hypotheses.is_empty() {
        println!("hypotheses: {}", report.hypotheses.join(", "));
    }
    for (label, id, step) in displayed_steps(bundled) {
        let mark = if states(&script, &id, &step) && report.accepted() { "checked" } else { "NOT checked" };
        println!("{label:>14}  line {id:>3}  {mark}  {}", print_formula(&step));
    }
    println!("explosion used: {}", report.explosion_used);
    if bundled == Bundled::NonexplosionDemo {
        let goal = Formula::prop("A");
        let universe = ["P", "A", "P & !P"].map(|s| parse_formula(s).expect("fixed formula"));
        let mut cfg = SearchConfig::new(6).universe(universe);
        cfg.settings = *settings;
        let found = search(&goal, &cfg, &r)?;
        println!(
            "fresh atom A from the registered contradiction within 6 lines: {}",
            if found.is_some() { "derivable" } else { "not derivable" }
        );
    }
    Ok(verdict(report.accepted()))
}

fn parse(settings: &SchemaSettings, formula: &str, registry: Option<&Path>, classify: bool) -> Run {
    let f = parse_formula(formula)?;
    println!("{}", print_formula(&f));
    if classify {
        let r = load_registry(registry)?;
        match match_axiom_with(&f, &r, settings) {
            Some(inst) => println!("axiom {}", inst.schema),
            None => println!("not an axiom"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn instantiate(
    settings: &SchemaSettings,
    schema: SchemaId,
    bindings: &[String],
    level: Option<u32>,
    registry: Option<&Path>,
) -> Run {
    let mut inst = SchemaInstance::new(schema);
    for b in bindings {
        let (meta, value) = b.split_once('=').ok_or_else(|| Usage(format!("binding `{b}` is not META=value")))?;
        let (meta, value) = (meta.trim(), value.trim());
        inst = if meta.starts_with(|c: char| c.is_ascii_uppercase()) {
            inst.formula(meta, parse_formula(value)?)
        } else if value.starts_with(|c: char| c.is_ascii_uppercase()) {
            inst.term(meta, Term::constant(value))
        } else {
            inst.term(meta, Term::var(value))
        };
    }
    if let Some(n) = level {
        inst = inst.level(n);
    }
    let r = load_registry(registry)?;
    match instantiate_checked(&inst, &r, settings) {
        Ok(f) => {
            println!("{}", print_formula(&f));
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ (SchemaError::SideConditionViolated { .. } | SchemaError::NotInProfile { .. })) => {
            println!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = SchemaSettings::with_profile(cli.profile);
    let result = match cli.command {
        Command::Check { proof, registry, json } => check(&settings, &proof, registry.as_deref(), json),
        Command::Expand { formula, mode, level } => expand(&settings, &formula, mode, &level),
        Command::Search { goal, depth, registry, axioms, universe, hypotheses, measure, timeout } => {
            run_search(&settings, SearchArgs { goal, depth, registry, axioms, universe, hypotheses, measure, timeout })
        }
        Command::Demo { name } => demo(&settings, &name),
        Command::Parse { formula, registry, classify } => parse(&settings, &formula, registry.as_deref(), classify),
        Command::Instantiate { schema, bindings, level, registry } => {
            instantiate(&settings, schema, &bindings, level, registry.as_deref())
        }
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
