//! Proof scripts: an ordered list of formulas, each with the reason it is
//! allowed to appear.

use crate::formula::{Formula, Term};
use crate::schema::SchemaId;

/// A value bound to a schema metavariable in an `axiom` justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetaValue {
    Formula(Formula),
    Term(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Instance of an axiom schema, optionally pinning the level parameter
    /// and some or all metavariables.
    Axiom {
        schema: SchemaId,
        level: Option<u32>,
        bindings: Vec<(String, MetaValue)>,
    },
    Hypothesis,
    /// `A, A → B ⊢ B`: premise line, implication line.
    Mp(String, String),
    /// `A → B, ¬B ⊢ ¬A`: implication line, negated-consequent line.
    Mt(String, String),
    /// `α → β / α → ∀x β`.
    Gen(String, String),
    /// `α → β / ∃x α → β`.
    ExIntro(String, String),
    /// `(t =s t) ∧ ¬(t =s t) ⊢ B` for arbitrary `B`.
    EqExplosion(String),
    /// Comprehension with the given pattern `F(x, y)`.
    Comp(Formula),
    /// One defined negation `~A` folded to or from `A → Ω`.
    DefNegUnfold(String),
}

impl Justification {
    /// Ids of the earlier lines this justification cites.
    pub fn premises(&self) -> Vec<&str> {
        match self {
            Justification::Mp(a, b) | Justification::Mt(a, b) => vec![a, b],
            Justification::Gen(a, _)
            | Justification::ExIntro(a, _)
            | Justification::EqExplosion(a)
            | Justification::DefNegUnfold(a) => vec![a],
            Justification::Axiom { .. } | Justification::Hypothesis | Justification::Comp(_) => Vec::new(),
        }
    }

    pub(crate) fn premises_mut(&mut self) -> Vec<&mut String> {
        match self {
            Justification::Mp(a, b) | Justification::Mt(a, b) => vec![a, b],
            Justification::Gen(a, _)
            | Justification::ExIntro(a, _)
            | Justification::EqExplosion(a)
            | Justification::DefNegUnfold(a) => vec![a],
            Justification::Axiom { .. } | Justification::Hypothesis | Justification::Comp(_) => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub id: String,
    pub formula: Formula,
    pub justification: Justification,
}

impl ProofLine {
    pub fn new(id: impl Into<String>, formula: Formula, justification: Justification) -> Self {
        ProofLine { id: id.into(), formula, justification }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProofScript {
    pub constants: Vec<String>,
    pub lines: Vec<ProofLine>,
}

impl ProofScript {
    pub fn position(&self, id: &str) -> Option<usize> {
        self.lines.iter().position(|l| l.id == id)
    }

    pub fn line(&self, id: &str) -> Option<&ProofLine> {
        self.lines.iter().find(|l| l.id == id)
    }

    pub fn last(&self) -> Option<&ProofLine> {
        self.lines.last()
    }

    pub fn push(&mut self, id: impl Into<String>, formula: Formula, justification: Justification) {
        self.lines.push(ProofLine::new(id, formula, justification));
    }

    /// Append with the next numeric id and return that id.
    pub fn push_next(&mut self, formula: Formula, justification: Justification) -> String {
        let id = (self.lines.len() + 1).to_string();
        self.push(id.clone(), formula, justification);
        id
    }

    /// Mutable access to the premise references of line `idx` (used by
    /// mutation tests).
    pub fn premises_mut(&mut self, idx: usize) -> Vec<&mut String> {
        self.lines[idx].justification.premises_mut()
    }
}
