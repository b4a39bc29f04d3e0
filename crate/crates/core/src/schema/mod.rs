//! Axiom schemata: templates, instantiation, shape matching and the
//! registry-dependent side conditions.

mod id;
mod matching;
mod template;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, Term};

pub use id::{SchemaId, UnknownSchema};
pub use matching::{match_axiom, match_axiom_with, match_schema, match_shape, side_condition};
pub use template::{comprehension_instance, instantiate, instantiate_checked, instantiate_with};

/// Default bound on level parameters.
pub const DEFAULT_LEVEL_CAP: u32 = 32;

/// The level cap, taken from `LPW_LEVEL_CAP` when that holds a natural number.
pub fn default_level_cap() -> u32 {
    std::env::var("LPW_LEVEL_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_LEVEL_CAP)
}

/// Which postulate set is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Single-level system: one designated set `V`, level parameters fixed at 0.
    Lp1,
    /// Leveled system with quantifiers and equality.
    LpOmega,
    /// Leveled system plus comprehension.
    KSth,
}

impl Profile {
    pub fn allows(self, s: SchemaId) -> bool {
        use SchemaId::*;
        match self {
            Profile::Lp1 => matches!(
                s,
                Lp1 | Lp2
                    | Lp3
                    | Lp4
                    | Lp5
                    | Lp6
                    | Lp7
                    | Lp8
                    | Lp9
                    | Lp1Excluded
                    | Lp1Explosion
                    | Lp1ExcludedFourth
                    | QI
                    | QII
                    | QIII
                    | QIV
                    | QV
                    | QVI
                    | QVII
                    | QVIII
                    | EIX
                    | EX
                    | EXI
                    | EXIIReflexive
                    | EXIII
                    | EXIV
                    | EXV
            ),
            Profile::LpOmega => !matches!(s, Comp | Lp1Excluded | Lp1Explosion | Lp1ExcludedFourth | EXIIReflexive),
            Profile::KSth => !matches!(s, Lp1Excluded | Lp1Explosion | Lp1ExcludedFourth | EXIIReflexive),
        }
    }

    /// Axiom schemata (rules excluded) in the fixed trial order.
    pub fn axioms(self) -> impl Iterator<Item = SchemaId> {
        SchemaId::ALL.into_iter().filter(move |s| !s.is_rule() && self.allows(*s))
    }
}

impl std::str::FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lp1" => Ok(Profile::Lp1),
            "lpomega" | "lpw" => Ok(Profile::LpOmega),
            "ksth" => Ok(Profile::KSth),
            other => Err(format!("unknown profile `{other}` (expected lp1, lpomega or ksth)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemaSettings {
    pub profile: Profile,
    pub level_cap: u32,
}

impl Default for SchemaSettings {
    fn default() -> Self {
        SchemaSettings { profile: Profile::KSth, level_cap: default_level_cap() }
    }
}

impl SchemaSettings {
    pub fn with_profile(profile: Profile) -> Self {
        SchemaSettings { profile, ..Self::default() }
    }
}

/// A schema plus the values of its metavariables.
///
/// Formula metavariables are `A`, `B`, `C`, `P` and `F`; term metavariables
/// are `x` and `y` (bound variables are given as `Term::Var`); the level
/// parameter is `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchemaInstance {
    pub schema: SchemaId,
    pub subst: BTreeMap<String, Formula>,
    pub level_params: BTreeMap<String, u32>,
    pub term_subst: BTreeMap<String, Term>,
}

impl SchemaInstance {
    pub fn new(schema: SchemaId) -> Self {
        SchemaInstance { schema, subst: BTreeMap::new(), level_params: BTreeMap::new(), term_subst: BTreeMap::new() }
    }

    pub fn formula(mut self, meta: &str, f: Formula) -> Self {
        self.subst.insert(meta.to_string(), f);
        self
    }

    pub fn term(mut self, meta: &str, t: Term) -> Self {
        self.term_subst.insert(meta.to_string(), t);
        self
    }

    pub fn level(mut self, n: u32) -> Self {
        self.level_params.insert("n".to_string(), n);
        self
    }

    pub fn n(&self) -> Option<u32> {
        self.level_params.get("n").copied()
    }
}

/// The metavariables a schema mentions, by kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metavariables {
    pub formulas: &'static [&'static str],
    /// Term metavariables that name a bound variable.
    pub bound_vars: &'static [&'static str],
    /// Term metavariables that take an arbitrary term.
    pub terms: &'static [&'static str],
    pub level: bool,
}

impl SchemaId {
    pub fn metavariables(self) -> Metavariables {
        use SchemaId::*;
        let (formulas, bound_vars, terms): (&[&str], &[&str], &[&str]) = match self {
            Lp1 | Lp3 | Lp4 | Lp5 | Lp6 | Lp7 | Lp15 | Lp1Explosion => (&["A", "B"], &[], &[]),
            Lp2 | Lp8 => (&["A", "B", "C"], &[], &[]),
            Lp9 | Lp10 | Lp11 => (&["P"], &[], &[]),
            Lp12 | Lp13 | Lp14 | Lp1Excluded | Lp1ExcludedFourth => (&["A"], &[], &[]),
            QII | QIII => (&["A"], &["x"], &["y"]),
            QV | QVI | QVII | QVIII => (&["A"], &["x"], &[]),
            EIX | EXIIReflexive | EXIII => (&[], &["x"], &[]),
            EXI | EXIV => (&["A"], &["x", "y"], &[]),
            EXII => (&[], &["x"], &["y"]),
            EXV => (&[], &["x", "y"], &[]),
            Comp => (&["F"], &["x", "y"], &[]),
            QI | QIV | EX => (&[], &[], &[]),
        };
        Metavariables { formulas, bound_vars, terms, level: self.has_level() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("{schema}: missing parameter `{param}`")]
    MissingParameter { schema: SchemaId, param: String },
    #[error("{schema}: side condition violated: {detail}")]
    SideConditionViolated { schema: SchemaId, detail: String },
    #[error("{schema}: invalid parameter: {detail}")]
    InvalidParameter { schema: SchemaId, detail: String },
    #[error("{schema}: level {level} exceeds the cap {cap}")]
    LevelOutOfRange { schema: SchemaId, level: u32, cap: u32 },
    #[error("{0} is an inference rule, not an axiom schema")]
    IsRule(SchemaId),
    #[error("{schema} is not available in the {profile:?} profile")]
    NotInProfile { schema: SchemaId, profile: Profile },
    #[error("pattern has free variables outside the comprehension variables: {}", vars.join(", "))]
    FreeVariableLeak { vars: Vec<String> },
}
