//! Recognizing schema instances.
//!
//! Matching happens in two stages. A per-schema extractor reads candidate
//! metavariable values off the formula, then the candidate is instantiated
//! and compared with the input. Extractors see an `A ↔ B` node as
//! `(A → B) ∧ (B → A)` wherever the template expects a conjunction, and the
//! final comparison is modulo that unfolding, except for comprehension whose
//! template contains a literal `↔`.

use std::sync::Arc;

use super::template::instantiate_with;
use super::{Profile, SchemaError, SchemaId, SchemaInstance, SchemaSettings};
use crate::formula::{as_cons, as_incons, eq_mod_iff, expand_levels, Formula, Term};
use crate::registry::Registry;

type F = Arc<Formula>;

fn imp(f: &Formula) -> Option<(F, F)> {
    match f {
        Formula::Imp(a, b) => Some((a.clone(), b.clone())),
        _ => None,
    }
}

fn and(f: &Formula) -> Option<(F, F)> {
    match f {
        Formula::And(a, b) => Some((a.clone(), b.clone())),
        Formula::Iff(a, b) => {
            Some((Arc::new(Formula::Imp(a.clone(), b.clone())), Arc::new(Formula::Imp(b.clone(), a.clone()))))
        }
        _ => None,
    }
}

fn or(f: &Formula) -> Option<(F, F)> {
    match f {
        Formula::Or(a, b) => Some((a.clone(), b.clone())),
        _ => None,
    }
}

fn forall(f: &Formula) -> Option<(String, F)> {
    match f {
        Formula::Forall(x, a) => Some((x.clone(), a.clone())),
        _ => None,
    }
}

fn exists(f: &Formula) -> Option<(String, F)> {
    match f {
        Formula::Exists(x, a) => Some((x.clone(), a.clone())),
        _ => None,
    }
}

/// The term that sits in `b` where `a` has a free `x`, if any.
fn witness_term(a: &Formula, x: &str, b: &Formula) -> Option<Term> {
    match (a, b) {
        (Formula::Forall(v, _), _) | (Formula::Exists(v, _), _) if v == x => None,
        (Formula::Forall(_, p), Formula::Forall(_, q))
        | (Formula::Exists(_, p), Formula::Exists(_, q))
        | (Formula::Not(p), Formula::Not(q))
        | (Formula::DefNeg(p), Formula::DefNeg(q))
        | (Formula::Cons(p, _), Formula::Cons(q, _))
        | (Formula::Incons(p, _), Formula::Incons(q, _)) => witness_term(p, x, q),
        (Formula::And(p1, p2), Formula::And(q1, q2))
        | (Formula::Or(p1, p2), Formula::Or(q1, q2))
        | (Formula::Imp(p1, p2), Formula::Imp(q1, q2))
        | (Formula::Iff(p1, p2), Formula::Iff(q1, q2)) => witness_term(p1, x, q1).or_else(|| witness_term(p2, x, q2)),
        _ if a.is_atomic() && b.is_atomic() => {
            a.terms().into_iter().zip(b.terms()).find(|(s, _)| s.as_var() == Some(x)).map(|(_, t)| t.clone())
        }
        _ => None,
    }
}

fn var_of(t: &Term) -> Option<&str> {
    t.as_var()
}

fn extract(s: SchemaId, f: &Formula) -> Option<SchemaInstance> {
    use SchemaId::*;
    let inst = SchemaInstance::new(s);
    let fo = |a: &F| Formula::clone(a);
    Some(match s {
        Lp1 | Lp3 => {
            let (a, rest) = imp(f)?;
            let (b, _) = imp(&rest)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b))
        }
        Lp2 => {
            let (ab, rest) = imp(f)?;
            let (a, b) = imp(&ab)?;
            let (abc, _) = imp(&rest)?;
            let (_, bc) = imp(&abc)?;
            let (_, c) = imp(&bc)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b)).formula("C", fo(&c))
        }
        Lp4 | Lp5 => {
            let (ab, _) = imp(f)?;
            let (a, b) = and(&ab)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b))
        }
        Lp6 => {
            let (a, rest) = imp(f)?;
            let (_, b) = or(&rest)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b))
        }
        Lp7 => {
            let (b, rest) = imp(f)?;
            let (a, _) = or(&rest)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b))
        }
        Lp8 => {
            let (ac, rest) = imp(f)?;
            let (a, c) = imp(&ac)?;
            let (bc, _) = imp(&rest)?;
            let (b, _) = imp(&bc)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b)).formula("C", fo(&c))
        }
        Lp9 => {
            let (p, _) = and(f)?;
            inst.formula("P", fo(&p))
        }
        Lp10 => {
            let (e, _) = and(f)?;
            let (p, _) = and(&e)?;
            inst.formula("P", fo(&p))
        }
        Lp11 => {
            let (p, n) = as_incons(f)?;
            if n == 0 {
                return None;
            }
            inst.formula("P", fo(&p)).level(n)
        }
        Lp12 | Lp1Excluded => {
            let (a, _) = or(f)?;
            inst.formula("A", fo(&a))
        }
        Lp13 | Lp1ExcludedFourth => {
            let (l, _) = or(f)?;
            let (a, _) = or(&l)?;
            inst.formula("A", fo(&a))
        }
        Lp14 => {
            let (_, last) = or(f)?;
            let (a, n) = as_incons(&last)?;
            inst.formula("A", fo(&a)).level(n)
        }
        Lp15 | Lp1Explosion => {
            let (b, rest) = imp(f)?;
            let (_, a) = imp(&rest)?;
            inst.formula("A", fo(&a)).formula("B", fo(&b))
        }
        QII => {
            let (l, r) = imp(f)?;
            let (x, a) = forall(&l)?;
            let t = witness_term(&a, &x, &r).unwrap_or_else(|| Term::Var(x.clone()));
            inst.formula("A", fo(&a)).term("x", Term::Var(x)).term("y", t)
        }
        QIII => {
            let (l, r) = imp(f)?;
            let (x, a) = exists(&r)?;
            let t = witness_term(&a, &x, &l).unwrap_or_else(|| Term::Var(x.clone()));
            inst.formula("A", fo(&a)).term("x", Term::Var(x)).term("y", t)
        }
        QV | QVI => {
            let (l, _) = imp(f)?;
            let (x, body) = forall(&l)?;
            let (a, n) = as_cons(&body)?;
            inst.formula("A", fo(&a)).term("x", Term::Var(x)).level(n)
        }
        QVII | QVIII => {
            let (l, _) = imp(f)?;
            let (x, body) = forall(&l)?;
            let (a, n) = as_incons(&body)?;
            inst.formula("A", fo(&a)).term("x", Term::Var(x)).level(n)
        }
        EIX => {
            let (x, _) = exists(f)?;
            inst.term("x", Term::Var(x))
        }
        EXI | EXIV => {
            let (x, rest) = forall(f)?;
            let (y, body) = forall(&rest)?;
            let (_, ab) = imp(&body)?;
            let (a, _) = imp(&ab)?;
            inst.formula("A", fo(&a)).term("x", Term::Var(x)).term("y", Term::Var(y))
        }
        EXII => {
            let (x, body) = forall(f)?;
            let (l, _) = imp(&body)?;
            let Formula::Not(eq) = l.as_ref() else { return None };
            let Formula::StrongEq(_, t) = eq.as_ref() else { return None };
            inst.term("x", Term::Var(x)).term("y", t.clone())
        }
        EXIIReflexive => {
            let (x, _) = forall(f)?;
            inst.term("x", Term::Var(x))
        }
        EXIII => {
            let (x, body) = exists(f)?;
            let (_, n) = as_incons(&body)?;
            inst.term("x", Term::Var(x)).level(n)
        }
        EXV => {
            let (y, rest) = forall(f)?;
            let (x, body) = exists(&rest)?;
            let (_, n) = as_incons(&body)?;
            inst.term("x", Term::Var(x)).term("y", Term::Var(y)).level(n)
        }
        Comp => {
            let (y, rest) = exists(f)?;
            let (x, body) = forall(&rest)?;
            let Formula::Iff(_, pat) = body.as_ref() else { return None };
            inst.formula("F", fo(pat)).term("x", Term::Var(x)).term("y", Term::Var(y))
        }
        QI | QIV | EX => return None,
    })
}

/// Read `f` as an instance of `s`, ignoring side conditions and profiles.
///
/// Finite level operators in `f` are expanded first. The returned instance
/// instantiates back to `f` (modulo `↔` unfolding for every schema except
/// comprehension).
pub fn match_shape(s: SchemaId, f: &Formula) -> Option<SchemaInstance> {
    let f = expand_levels(f);
    let inst = extract(s, &f)?;
    let unbounded = SchemaSettings { profile: Profile::KSth, level_cap: u32::MAX };
    let g = instantiate_with(&inst, &unbounded).ok()?;
    let same = if s == SchemaId::Comp { g == f } else { eq_mod_iff(&g, &f) };
    same.then_some(inst)
}

fn violated(s: SchemaId, detail: String) -> SchemaError {
    SchemaError::SideConditionViolated { schema: s, detail }
}

fn level_text(l: Option<u32>) -> String {
    match l {
        Some(k) => format!("level {k}"),
        None => "no level".to_string(),
    }
}

/// Profile, level-cap and registry conditions for an instance.
pub fn side_condition(inst: &SchemaInstance, r: &Registry, settings: &SchemaSettings) -> Result<(), SchemaError> {
    use SchemaId::*;
    let s = inst.schema;
    if s.is_rule() {
        return Err(SchemaError::IsRule(s));
    }
    if !settings.profile.allows(s) {
        return Err(SchemaError::NotInProfile { schema: s, profile: settings.profile });
    }
    if let Some(n) = inst.n() {
        if n > settings.level_cap {
            return Err(SchemaError::LevelOutOfRange { schema: s, level: n, cap: settings.level_cap });
        }
        if settings.profile == Profile::Lp1 && s.has_level() && n != 0 {
            return Err(violated(s, format!("the single-level profile fixes n = 0, got n = {n}")));
        }
    }
    let meta = |m: &str| inst.subst.get(m);
    let lvl = |m: &str| meta(m).and_then(|f| r.level_of(f));
    let shown = |m: &str| meta(m).map(|f| f.to_string()).unwrap_or_default();
    match s {
        Lp9 | Lp10 | Lp11 => {
            let want = match s {
                Lp9 => 1,
                Lp10 => 2,
                _ => inst.n().unwrap_or(0),
            };
            let got = lvl("P");
            if got != Some(want) {
                return Err(violated(
                    s,
                    format!("requires `{}` in V_{want}, registry gives {}", shown("P"), level_text(got)),
                ));
            }
        }
        Lp12 | Lp13 | Lp14 => {
            let banned = match s {
                Lp12 => 1,
                Lp13 => 3,
                _ => inst.n().unwrap_or(0) + 1,
            };
            if lvl("A") == Some(banned) {
                return Err(violated(s, format!("requires `{}` not in V_{banned}", shown("A"))));
            }
        }
        Lp15 | Lp1Explosion => {
            if let Some(k) = lvl("B") {
                return Err(violated(s, format!("requires `{}` outside V̂, it is in V_{k}", shown("B"))));
            }
        }
        Lp1Excluded => {
            if let Some(k) = lvl("A") {
                return Err(violated(s, format!("requires `{}` outside V, it is in V_{k}", shown("A"))));
            }
        }
        Comp => {
            let x = inst.term_subst.get("x").and_then(var_of).unwrap_or("x");
            let y = inst.term_subst.get("y").and_then(var_of).unwrap_or("y");
            if let Some(f) = meta("F") {
                let leak: Vec<String> = f.free_vars().into_iter().filter(|v| v != x && v != y).collect();
                if !leak.is_empty() {
                    return Err(SchemaError::FreeVariableLeak { vars: leak });
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// [`match_shape`] plus side conditions.
pub fn match_schema(s: SchemaId, f: &Formula, r: &Registry, settings: &SchemaSettings) -> Option<SchemaInstance> {
    let inst = match_shape(s, f)?;
    side_condition(&inst, r, settings).ok()?;
    Some(inst)
}

/// The first schema, in trial order, of which `f` is a valid instance under
/// the default settings.
pub fn match_axiom(f: &Formula, r: &Registry) -> Option<SchemaInstance> {
    match_axiom_with(f, r, &SchemaSettings::default())
}

pub fn match_axiom_with(f: &Formula, r: &Registry, settings: &SchemaSettings) -> Option<SchemaInstance> {
    settings.profile.axioms().find_map(|s| match_schema(s, f, r, settings))
}
