//! The set-theoretic layer: leveled membership, defined negation, Russell
//! collections and the bundled derivations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{expand_cons, expand_incons, expand_levels, Formula, Level, Term};
use crate::proof::ProofScript;
use crate::registry::Registry;
use crate::schema::default_level_cap;
use crate::syntax::{parse_formula, parse_proof, parse_registry};

pub const THM4_3_SCRIPT: &str = include_str!("../scripts/thm4_3.lpw");
pub const NONEXPLOSION_SCRIPT: &str = include_str!("../scripts/nonexplosion.lpw");
pub const NONEXPLOSION_REGISTRY: &str = include_str!("../scripts/p1.reg");
pub const EMPTY_REGISTRY: &str = include_str!("../scripts/empty.reg");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipKind {
    /// `(t1 ∈ t2)^(n)`
    Cons,
    /// `(t1 ∈ t2)^[n]`
    Incons,
}

/// `(t1 ∈ t2)^(n)` or `(t1 ∈ t2)^[n]`, expanded.
pub fn leveled_membership(t1: Term, t2: Term, n: u32, kind: MembershipKind) -> Formula {
    let m = Formula::Mem(t1, t2);
    let lvl = Level::Finite(n);
    match kind {
        MembershipKind::Cons => expand_cons(&m, lvl),
        MembershipKind::Incons => expand_incons(&m, lvl),
    }
    .expect("finite level")
}

/// Replace every `~A` by `A → ∀x∀y(x ∈ y ∧ x =s y)`. The absurd statement is
/// closed, so no variable of `A` can be captured.
pub fn defneg_unfold_formula(f: &Formula) -> Formula {
    let mut has = false;
    f.visit(&mut |g| has |= matches!(g, Formula::DefNeg(_)));
    if !has {
        return f.clone();
    }
    match f {
        Formula::DefNeg(a) => Formula::imp(defneg_unfold_formula(a), Formula::absurdity()),
        other => other.map_children(&|c| Arc::new(defneg_unfold_formula(c)), false),
    }
}

/// A named collection given by comprehension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionDef {
    pub name: String,
    /// The `F(x, y)` of the comprehension schema.
    pub defining_pattern: Formula,
    pub level: Option<u32>,
}

/// The Russell collection: `Rn` with `∀x((x ∈ Rn)^[n] ↔ ¬(x ∈ x)^[n])` when
/// `n` is given, otherwise `Rt` with `∀x(x ∈ Rt ↔ ~(x ∈ x))`.
pub fn russell_collection(n: Option<u32>) -> (CollectionDef, Formula) {
    let x = Term::var("x");
    match n {
        Some(n) => {
            let name = format!("R{n}");
            let c = Term::constant(name.clone());
            let pattern = Formula::not(leveled_membership(x.clone(), x.clone(), n, MembershipKind::Incons));
            let lhs = leveled_membership(x, c, n, MembershipKind::Incons);
            let def = Formula::forall("x", Formula::iff(lhs, pattern.clone()));
            (CollectionDef { name, defining_pattern: pattern, level: Some(n) }, def)
        }
        None => {
            let c = Term::constant("Rt");
            let pattern = Formula::defneg(Formula::Mem(x.clone(), x.clone()));
            let def = Formula::forall("x", Formula::iff(Formula::Mem(x, c), pattern.clone()));
            (CollectionDef { name: "Rt".into(), defining_pattern: pattern, level: None }, def)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundled {
    /// Russell's collection under the defined negation `~`.
    Thm4_3,
    /// The leveled Russell collection `Rn`.
    Thm4_1(u32),
    /// A registered contradiction that does not explode.
    NonexplosionDemo,
}

impl fmt::Display for Bundled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bundled::Thm4_3 => f.write_str("thm4_3"),
            Bundled::Thm4_1(n) => write!(f, "thm4_1:{n}"),
            Bundled::NonexplosionDemo => f.write_str("nonexplosion"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SettheoryError {
    #[error("level {level} exceeds the cap {cap}")]
    UnsupportedLevel { level: u32, cap: u32 },
    #[error("unknown bundled script `{0}` (expected thm4_3, thm4_1:<n> or nonexplosion)")]
    UnknownScript(String),
}

impl FromStr for Bundled {
    type Err = SettheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thm4_3" => Ok(Bundled::Thm4_3),
            "nonexplosion" => Ok(Bundled::NonexplosionDemo),
            _ => s
                .strip_prefix("thm4_1:")
                .and_then(|n| n.parse().ok())
                .map(Bundled::Thm4_1)
                .ok_or_else(|| SettheoryError::UnknownScript(s.to_string())),
        }
    }
}

/// Source text of the leveled Russell derivation at level `n`.
///
/// The derivation instantiates the hypothesis at `Rn`, splits the
/// biconditional, proves `φ` by cases from the excluded middle for the
/// compound `φ = (Rn ∈ Rn)^[n]`, then detaches `¬φ`. It uses primitive
/// negation throughout.
pub fn thm4_1_text(n: u32) -> String {
    let r = format!("R{n}");
    let phi = format!("({r} in {r})^[{n}]");
    let nphi = format!("!{phi}");
    let hyp = format!("forall x. (x in {r})^[{n}] <-> !(x in x)^[{n}]");
    let bic = format!("{phi} <-> {nphi}");
    let id = |a: &str| format!("{a} -> {a}");
    let lines = [
        format!("# Leveled Russell collection {r} at level {n}. Line 1 names the collection"),
        "# by its defining biconditional, taken as hypothesis.".to_string(),
        format!("1: {hyp} ; hyp"),
        format!("2: ({hyp}) -> ({bic}) ; axiom QII {{y:={r}}}"),
        format!("3: {bic} ; mp 1 2"),
        format!("4: ({bic}) -> {phi} -> {nphi} ; axiom LP4"),
        format!("5: {phi} -> {nphi} ; mp 3 4"),
        format!("6: ({bic}) -> {nphi} -> {phi} ; axiom LP5"),
        format!("7: {nphi} -> {phi} ; mp 3 6"),
        format!("8: {phi} | {nphi} ; axiom LP12"),
        format!("9: {phi} -> ({}) -> {phi} ; axiom LP1", id(&phi)),
        format!("10: {phi} -> {} ; axiom LP1", id(&phi)),
        format!("11: ({phi} -> {}) -> ({phi} -> ({}) -> {phi}) -> {} ; axiom LP2", id(&phi), id(&phi), id(&phi)),
        format!("12: ({phi} -> ({}) -> {phi}) -> {} ; mp 10 11", id(&phi), id(&phi)),
        format!("13: {} ; mp 9 12", id(&phi)),
        format!("14: ({}) -> ({nphi} -> {phi}) -> ({phi} | {nphi}) -> {phi} ; axiom LP8", id(&phi)),
        format!("15: ({nphi} -> {phi}) -> ({phi} | {nphi}) -> {phi} ; mp 13 14"),
        format!("16: ({phi} | {nphi}) -> {phi} ; mp 7 15"),
        format!("17: {phi} ; mp 8 16"),
        format!("18: {nphi} ; mp 17 5"),
        format!("19: {phi} -> {nphi} -> {phi} & {nphi} ; axiom LP3"),
        format!("20: {nphi} -> {phi} & {nphi} ; mp 17 19"),
        format!("21: {phi} & {nphi} ; mp 18 20"),
    ];
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

/// The script of a bundled derivation, with levels capped by
/// `LPW_LEVEL_CAP` (default 32).
pub fn bundled_script(name: Bundled) -> Result<ProofScript, SettheoryError> {
    bundled_script_with_cap(name, default_level_cap())
}

pub fn bundled_script_with_cap(name: Bundled, cap: u32) -> Result<ProofScript, SettheoryError> {
    let text = match name {
        Bundled::Thm4_3 => THM4_3_SCRIPT.to_string(),
        Bundled::Thm4_1(n) if n > cap => return Err(SettheoryError::UnsupportedLevel { level: n, cap }),
        Bundled::Thm4_1(n) => thm4_1_text(n),
        Bundled::NonexplosionDemo => NONEXPLOSION_SCRIPT.to_string(),
    };
    Ok(parse_proof(&text).expect("bundled scripts parse"))
}

/// The registry a bundled derivation is checked against.
pub fn bundled_registry(name: Bundled) -> Registry {
    let text = match name {
        Bundled::NonexplosionDemo => NONEXPLOSION_REGISTRY,
        _ => EMPTY_REGISTRY,
    };
    parse_registry(text).expect("bundled registries parse")
}

/// The headline formulas of a bundled derivation with the ids of the lines
/// that state them.
pub fn displayed_steps(name: Bundled) -> Vec<(&'static str, String, Formula)> {
    let f = |s: &str| parse_formula(s).expect("step formula parses");
    match name {
        Bundled::Thm4_3 => vec![
            ("(1)", "s1".into(), f("Rt in Rt <-> ~(Rt in Rt)")),
            ("(2)", "s2".into(), f("Rt in Rt & ~(Rt in Rt)")),
            ("(3)", "s3".into(), f("Rt in Rt & !(Rt in Rt)")),
        ],
        Bundled::Thm4_1(n) => {
            let rn = Term::constant(format!("R{n}"));
            let phi = Formula::incons(Formula::Mem(rn.clone(), rn), Level::Finite(n));
            vec![
                ("biconditional", "3".into(), Formula::iff(phi.clone(), Formula::not(phi.clone()))),
                ("contradiction", "21".into(), Formula::and(phi.clone(), Formula::not(phi))),
            ]
        }
        Bundled::NonexplosionDemo => vec![("contradiction", "1".into(), f("P & !P"))],
    }
}

/// Whether a script line states `step` once finite levels are expanded.
pub fn states(script: &ProofScript, line: &str, step: &Formula) -> bool {
    script.line(line).is_some_and(|l| expand_levels(&l.formula) == expand_levels(step))
}
