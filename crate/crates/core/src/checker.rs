//! Line-by-line verification of proof scripts.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{eq_mod_iff, expand_levels, Formula, Term};
use crate::proof::{Justification, MetaValue, ProofScript};
use crate::registry::Registry;
use crate::schema::{
    comprehension_instance, instantiate_with, match_shape, side_condition, SchemaError, SchemaId, SchemaSettings,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FailureReason {
    /// A premise id is unknown or does not point to an earlier line.
    BadReference,
    /// The line does not have the shape its justification requires.
    SchemaMismatch,
    /// A registry or profile condition of the cited schema fails.
    SideConditionViolated,
    /// A free-variable condition of a quantifier rule or of comprehension fails.
    VariableCondition,
    /// A `defneg-unfold` line is not a single fold or unfold of `~`.
    NotAnUnfolding,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{reason}: {detail}")]
pub struct LineFailure {
    pub reason: FailureReason,
    pub detail: String,
}

impl LineFailure {
    fn new(reason: FailureReason, detail: impl Into<String>) -> Self {
        LineFailure { reason, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstFailure {
    pub line: String,
    pub reason: FailureReason,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub first_failure: Option<FirstFailure>,
    /// How often each schema or schema-backed rule was cited.
    pub schema_usage: BTreeMap<SchemaId, usize>,
    pub explosion_used: bool,
    pub hypotheses: Vec<String>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line human-readable verdict.
    pub fn summary(&self) -> String {
        match &self.first_failure {
            None => "accepted".to_string(),
            Some(f) => format!("rejected at line {}: {}: {}", f.line, f.reason, f.detail),
        }
    }
}

use FailureReason::*;

fn mismatch(detail: impl Into<String>) -> LineFailure {
    LineFailure::new(SchemaMismatch, detail)
}

/// Equality up to expansion of finite level operators.
fn same(a: &Formula, b: &Formula) -> bool {
    a == b || expand_levels(a) == expand_levels(b)
}

/// Peel a top-level node of the expanded formula.
fn expanded(f: &Formula) -> Formula {
    expand_levels(f)
}

fn premise<'s>(script: &'s ProofScript, idx: usize, id: &str) -> Result<&'s Formula, LineFailure> {
    match script.position(id) {
        Some(k) if k < idx => Ok(&script.lines[k].formula),
        Some(_) => Err(LineFailure::new(BadReference, format!("line {id} does not precede this line"))),
        None => Err(LineFailure::new(BadReference, format!("no line {id}"))),
    }
}

fn schema_failure(e: SchemaError) -> LineFailure {
    match e {
        SchemaError::SideConditionViolated { .. } | SchemaError::LevelOutOfRange { .. } => {
            LineFailure::new(SideConditionViolated, e.to_string())
        }
        SchemaError::FreeVariableLeak { .. } => LineFailure::new(VariableCondition, e.to_string()),
        other => mismatch(other.to_string()),
    }
}

fn require_profile(s: SchemaId, settings: &SchemaSettings) -> Result<(), LineFailure> {
    if settings.profile.allows(s) {
        Ok(())
    } else {
        Err(mismatch(format!("{s} is not a postulate of the {:?} profile", settings.profile)))
    }
}

/// Check one line against its justification, assuming earlier lines are
/// valid. Returns the schema or schema-backed rule the line used, if any.
pub fn check_line(script: &ProofScript, idx: usize, r: &Registry) -> Result<Option<SchemaId>, LineFailure> {
    check_line_with(script, idx, r, &SchemaSettings::default())
}

pub fn check_line_with(
    script: &ProofScript,
    idx: usize,
    r: &Registry,
    settings: &SchemaSettings,
) -> Result<Option<SchemaId>, LineFailure> {
    let line = &script.lines[idx];
    let this = &line.formula;
    match &line.justification {
        Justification::Hypothesis => Ok(None),
        Justification::Axiom { schema, level, bindings } => {
            check_axiom(this, *schema, *level, bindings, r, settings).map(Some)
        }
        Justification::Mp(i, j) => {
            let a = premise(script, idx, i)?;
            let ab = premise(script, idx, j)?;
            match ab {
                Formula::Imp(x, y) if same(x, a) && same(y, this) => Ok(None),
                Formula::Imp(x, _) if !same(x, a) => {
                    Err(mismatch(format!("line {j} is not an implication from line {i}")))
                }
                Formula::Imp(..) => Err(mismatch(format!("line {j} does not conclude this formula"))),
                _ => Err(mismatch(format!("line {j} is not an implication"))),
            }
        }
        Justification::Mt(i, j) => {
            let (ab, nb) = (expanded(premise(script, idx, i)?), expanded(premise(script, idx, j)?));
            let Formula::Imp(a, b) = &ab else {
                return Err(mismatch(format!("line {i} is not an implication")));
            };
            let this = expanded(this);
            let ok = match (&nb, &this) {
                (Formula::Not(x), Formula::Not(y)) | (Formula::DefNeg(x), Formula::DefNeg(y)) => x == b && y == a,
                (Formula::Not(_), Formula::DefNeg(_)) | (Formula::DefNeg(_), Formula::Not(_)) => {
                    return Err(mismatch("modus tollens cannot mix `!` and `~`"));
                }
                _ => false,
            };
            if ok {
                Ok(None)
            } else {
                Err(mismatch(format!("lines {i}, {j} do not give this negation by modus tollens")))
            }
        }
        Justification::Gen(i, x) => {
            require_profile(SchemaId::QI, settings)?;
            let prem = expanded(premise(script, idx, i)?);
            let this = expanded(this);
            let (Formula::Imp(a, b), Formula::Imp(a2, q)) = (&prem, &this) else {
                return Err(mismatch("generalization needs implications on both lines"));
            };
            match q.as_ref() {
                Formula::Forall(v, b2) if v == x && a == a2 && b == b2 => {}
                _ => return Err(mismatch(format!("this line is not line {i} with its consequent bound by ∀{x}"))),
            }
            if a.has_free(x) {
                return Err(LineFailure::new(VariableCondition, format!("`{x}` is free in the antecedent")));
            }
            Ok(Some(SchemaId::QI))
        }
        Justification::ExIntro(i, x) => {
            require_profile(SchemaId::QIV, settings)?;
            let prem = expanded(premise(script, idx, i)?);
            let this = expanded(this);
            let (Formula::Imp(a, b), Formula::Imp(q, b2)) = (&prem, &this) else {
                return Err(mismatch("existential introduction needs implications on both lines"));
            };
            match q.as_ref() {
                Formula::Exists(v, a2) if v == x && a == a2 && b == b2 => {}
                _ => return Err(mismatch(format!("this line is not line {i} with its antecedent bound by ∃{x}"))),
            }
            if b.has_free(x) {
                return Err(LineFailure::new(VariableCondition, format!("`{x}` is free in the consequent")));
            }
            Ok(Some(SchemaId::QIV))
        }
        Justification::EqExplosion(i) => {
            require_profile(SchemaId::EX, settings)?;
            let prem = expanded(premise(script, idx, i)?);
            if strong_self_contradiction(&prem).is_some() {
                Ok(Some(SchemaId::EX))
            } else {
                Err(mismatch(format!("line {i} is not of the form (t =s t) & !(t =s t)")))
            }
        }
        Justification::Comp(pattern) => {
            require_profile(SchemaId::Comp, settings)?;
            let inst = comprehension_instance(pattern, "y", "x").map_err(schema_failure)?;
            if inst == expanded(this) {
                Ok(Some(SchemaId::Comp))
            } else {
                Err(mismatch(format!("comprehension with this pattern gives {inst}")))
            }
        }
        Justification::DefNegUnfold(i) => {
            let prem = expanded(premise(script, idx, i)?);
            match unfold_diff(&prem, &expanded(this)) {
                Some(1) => Ok(None),
                Some(0) => Err(LineFailure::new(NotAnUnfolding, format!("this line repeats line {i}"))),
                Some(k) => Err(LineFailure::new(
                    NotAnUnfolding,
                    format!("{k} defined negations changed, exactly one is allowed"),
                )),
                None => Err(LineFailure::new(
                    NotAnUnfolding,
                    format!("this line differs from line {i} by more than a fold of `~`"),
                )),
            }
        }
    }
}

/// `t` when `f` is `(t =s t) ∧ ¬(t =s t)`.
fn strong_self_contradiction(f: &Formula) -> Option<&Term> {
    let Formula::And(a, na) = f else { return None };
    let Formula::StrongEq(s, t) = a.as_ref() else { return None };
    match na.as_ref() {
        Formula::Not(b) if b == a && s == t => Some(t),
        _ => None,
    }
}

/// Whether `f` is `∀u∀v(u ∈ v ∧ u =s v)` for distinct variables `u`, `v`.
pub fn is_absurdity(f: &Formula) -> bool {
    let Formula::Forall(u, rest) = f else { return false };
    let Formula::Forall(v, body) = rest.as_ref() else { return false };
    if u == v {
        return false;
    }
    let (tu, tv) = (Term::var(u.clone()), Term::var(v.clone()));
    **body == Formula::and(Formula::Mem(tu.clone(), tv.clone()), Formula::StrongEq(tu, tv))
}

/// Number of `~A` / `A → Ω` swaps turning `a` into `b`, or `None` when the two
/// differ in any other way.
fn unfold_diff(a: &Formula, b: &Formula) -> Option<usize> {
    if a == b {
        return Some(0);
    }
    match (a, b) {
        (Formula::DefNeg(x), Formula::Imp(y, o)) | (Formula::Imp(y, o), Formula::DefNeg(x))
            if x == y && is_absurdity(o) =>
        {
            Some(1)
        }
        (Formula::Not(x), Formula::Not(y)) | (Formula::DefNeg(x), Formula::DefNeg(y)) => unfold_diff(x, y),
        (Formula::Forall(u, x), Formula::Forall(v, y)) | (Formula::Exists(u, x), Formula::Exists(v, y)) if u == v => {
            unfold_diff(x, y)
        }
        (Formula::And(x1, x2), Formula::And(y1, y2))
        | (Formula::Or(x1, x2), Formula::Or(y1, y2))
        | (Formula::Imp(x1, x2), Formula::Imp(y1, y2))
        | (Formula::Iff(x1, x2), Formula::Iff(y1, y2)) => Some(unfold_diff(x1, y1)? + unfold_diff(x2, y2)?),
        _ => None,
    }
}

fn check_axiom(
    this: &Formula,
    schema: SchemaId,
    level: Option<u32>,
    bindings: &[(String, MetaValue)],
    r: &Registry,
    settings: &SchemaSettings,
) -> Result<SchemaId, LineFailure> {
    if schema.is_rule() {
        return Err(mismatch(format!("{schema} is an inference rule, cite it with its rule keyword")));
    }
    require_profile(schema, settings)?;
    let mut inst = match_shape(schema, this).ok_or_else(|| mismatch(format!("not an instance of {schema}")))?;
    if let Some(n) = level {
        match inst.n() {
            Some(m) if m == n => {}
            Some(m) => return Err(mismatch(format!("cited n={n} but the line has n={m}"))),
            None => return Err(mismatch(format!("{schema} has no level parameter"))),
        }
    }
    for (meta, value) in bindings {
        match value {
            MetaValue::Formula(f) if inst.subst.contains_key(meta) => {
                inst.subst.insert(meta.clone(), f.clone());
            }
            MetaValue::Term(t) if inst.term_subst.contains_key(meta) => {
                inst.term_subst.insert(meta.clone(), t.clone());
            }
            _ => return Err(mismatch(format!("{schema} has no metavariable `{meta}` of that kind"))),
        }
    }
    if !bindings.is_empty() {
        let g = instantiate_with(&inst, settings).map_err(schema_failure)?;
        let line = expanded(this);
        let ok = if schema == SchemaId::Comp { g == line } else { eq_mod_iff(&g, &line) };
        if !ok {
            return Err(mismatch(format!("the cited bindings give {g}")));
        }
    }
    side_condition(&inst, r, settings).map_err(schema_failure)?;
    Ok(schema)
}

/// Check every line in order, stopping at the first failure.
pub fn check_proof(script: &ProofScript, r: &Registry) -> CheckReport {
    check_proof_with(script, r, &SchemaSettings::default())
}

pub fn check_proof_with(script: &ProofScript, r: &Registry, settings: &SchemaSettings) -> CheckReport {
    let mut report = CheckReport {
        verdict: Verdict::Accepted,
        first_failure: None,
        schema_usage: BTreeMap::new(),
        explosion_used: false,
        hypotheses: Vec::new(),
    };
    for (idx, line) in script.lines.iter().enumerate() {
        match check_line_with(script, idx, r, settings) {
            Ok(used) => {
                if let Some(s) = used {
                    *report.schema_usage.entry(s).or_insert(0) += 1;
                    report.explosion_used |= s.is_explosive();
                }
                if line.justification == Justification::Hypothesis {
                    report.hypotheses.push(line.id.clone());
                }
            }
            Err(e) => {
                report.verdict = Verdict::Rejected;
                report.first_failure = Some(FirstFailure { line: line.id.clone(), reason: e.reason, detail: e.detail });
                break;
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("the script is not accepted by the checker, so there is nothing to audit")]
    NotCheckedYet,
}

/// Whether an accepted script reaches its conclusions without exploding a
/// registered contradiction: no explosion schema fires on a formula in `V̂`
/// and no equality explosion starts from a registered `t =s t`.
pub fn audit_nonexplosion(script: &ProofScript, r: &Registry) -> Result<bool, AuditError> {
    audit_nonexplosion_with(script, r, &SchemaSettings::default())
}

pub fn audit_nonexplosion_with(
    script: &ProofScript,
    r: &Registry,
    settings: &SchemaSettings,
) -> Result<bool, AuditError> {
    if !check_proof_with(script, r, settings).accepted() {
        return Err(AuditError::NotCheckedYet);
    }
    for line in &script.lines {
        match &line.justification {
            Justification::Axiom { schema: SchemaId::Lp15 | SchemaId::Lp1Explosion, .. } => {
                let b = match expanded(&line.formula) {
                    Formula::Imp(b, _) => b,
                    _ => continue,
                };
                if r.in_vhat(&b) {
                    return Ok(false);
                }
            }
            Justification::EqExplosion(i) => {
                let prem = script.line(i).map(|l| expanded(&l.formula));
                if let Some(Formula::And(eq, _)) = prem {
                    if r.in_vhat(&eq) {
                        return Ok(false);
                    }
                }
            }
            _ => {}
        }
    }
    Ok(true)
}
