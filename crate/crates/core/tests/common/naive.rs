//! A second, deliberately simple proof checker used to cross-examine the
//! kernel. Propositional axioms are matched against text templates with a
//! tiny unifier; quantifier, equality and comprehension axioms are delegated
//! to the kernel's schema matcher.

use std::collections::{BTreeMap, HashMap};

use lpw_core::formula::{alpha_eq, expand_levels};
use lpw_core::proof::{Justification, ProofScript};
use lpw_core::registry::Registry;
use lpw_core::schema::{match_schema, SchemaId, SchemaSettings};
use lpw_core::syntax::parse_formula;
use lpw_core::{Formula, Term};

fn unify(pat: &Formula, f: &Formula, metas: &[&str], env: &mut BTreeMap<String, Formula>) -> bool {
    use Formula::*;
    if let Prop(m) = pat {
        if metas.contains(&m.as_str()) {
            return match env.get(m) {
                Some(bound) => bound == f,
                None => {
                    env.insert(m.clone(), f.clone());
                    true
                }
            };
        }
    }
    match (pat, f) {
        (Not(a), Not(b)) => unify(a, b, metas, env),
        (And(a1, b1), And(a2, b2)) | (Or(a1, b1), Or(a2, b2)) | (Imp(a1, b1), Imp(a2, b2)) => {
            unify(a1, a2, metas, env) && unify(b1, b2, metas, env)
        }
        _ => pat == f,
    }
}

fn incons(f: &Formula, n: u32) -> Formula {
    let base = |g: Formula| Formula::and(g.clone(), Formula::not(g));
    (0..n).fold(base(f.clone()), |e, _| Formula::and(e.clone(), base(e)))
}

fn lp14(a: &Formula, n: u32) -> Formula {
    let na = Formula::not(a.clone());
    let mut acc = Formula::or(Formula::or(a.clone(), na.clone()), Formula::and(a.clone(), na));
    for k in 1..=n {
        acc = Formula::or(acc, incons(a, k));
    }
    acc
}

/// Level of an atom according to the registry's listing.
fn level(r: &Registry, f: &Formula) -> Option<u32> {
    r.iter().find(|(a, _)| *a == f).map(|(_, l)| l)
}

fn propositional(s: SchemaId, n: Option<u32>, f: &Formula, r: &Registry) -> bool {
    let text = match s {
        SchemaId::Lp1 => "A -> B -> A",
        SchemaId::Lp2 => "(A -> B) -> (A -> B -> C) -> A -> C",
        SchemaId::Lp3 => "A -> B -> A & B",
        SchemaId::Lp4 => "A & B -> A",
        SchemaId::Lp5 => "A & B -> B",
        SchemaId::Lp6 => "A -> A | B",
        SchemaId::Lp7 => "B -> A | B",
        SchemaId::Lp8 => "(A -> C) -> (B -> C) -> A | B -> C",
        SchemaId::Lp9 => "P & !P",
        SchemaId::Lp10 => "P & !P & !(P & !P)",
        SchemaId::Lp12 => "A | !A",
        SchemaId::Lp13 => "A | !A | A & !A",
        SchemaId::Lp15 => "B -> !B -> A",
        _ => "",
    };
    let metas = ["A", "B", "C", "P"];
    let mut env = BTreeMap::new();
    let shaped = match s {
        SchemaId::Lp11 => (1..=8).any(|k| {
            env.clear();
            n.is_none_or(|m| m == k) && unify(&incons(&Formula::prop("P"), k), f, &metas, &mut env) && {
                env.insert("n".into(), Formula::prop(k.to_string()));
                true
            }
        }),
        SchemaId::Lp14 => (1..=8).any(|k| {
            env.clear();
            n.is_none_or(|m| m == k) && unify(&lp14(&Formula::prop("A"), k), f, &metas, &mut env) && {
                env.insert("n".into(), Formula::prop(k.to_string()));
                true
            }
        }),
        _ => unify(&parse_formula(text).unwrap(), f, &metas, &mut env),
    };
    if !shaped {
        return false;
    }
    let k = env.get("n").map(|p| p.to_string().parse::<u32>().unwrap());
    let lvl = |m: &str| level(r, &env[m]);
    match s {
        SchemaId::Lp9 => lvl("P") == Some(1),
        SchemaId::Lp10 => lvl("P") == Some(2),
        SchemaId::Lp11 => lvl("P") == k,
        SchemaId::Lp12 => lvl("A") != Some(1),
        SchemaId::Lp13 => lvl("A") != Some(3),
        SchemaId::Lp14 => lvl("A") != Some(k.unwrap() + 1),
        SchemaId::Lp15 => lvl("B").is_none(),
        _ => true,
    }
}

fn axiom(s: SchemaId, n: Option<u32>, f: &Formula, r: &Registry, settings: &SchemaSettings) -> bool {
    let f = expand_levels(f);
    let plain = f.unfold_iff();
    match s {
        SchemaId::Lp1
        | SchemaId::Lp2
        | SchemaId::Lp3
        | SchemaId::Lp4
        | SchemaId::Lp5
        | SchemaId::Lp6
        | SchemaId::Lp7
        | SchemaId::Lp8
        | SchemaId::Lp9
        | SchemaId::Lp10
        | SchemaId::Lp11
        | SchemaId::Lp12
        | SchemaId::Lp13
        | SchemaId::Lp14
        | SchemaId::Lp15 => {
            settings.profile.allows(s) && (propositional(s, n, &f, r) || propositional(s, n, &plain, r))
        }
        _ => match_schema(s, &f, r, settings).is_some_and(|i| n.is_none_or(|m| i.n() == Some(m))),
    }
}

/// Every formula obtained from `f` by unfolding exactly one `~A`.
fn single_unfoldings(f: &Formula) -> Vec<Formula> {
    use Formula::*;
    let wrap = |a: &std::sync::Arc<Formula>, mk: &dyn Fn(Formula) -> Formula| {
        single_unfoldings(a).into_iter().map(mk).collect::<Vec<_>>()
    };
    let mut out = Vec::new();
    match f {
        DefNeg(a) => {
            out.push(Formula::imp(a.as_ref().clone(), Formula::absurdity()));
            out.extend(wrap(a, &Formula::defneg));
        }
        Not(a) => out.extend(wrap(a, &Formula::not)),
        Forall(x, a) => out.extend(wrap(a, &|g| Formula::forall(x.clone(), g))),
        Exists(x, a) => out.extend(wrap(a, &|g| Formula::exists(x.clone(), g))),
        And(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) => {
            let rebuild = |l: Formula, r: Formula| match f {
                And(..) => Formula::and(l, r),
                Or(..) => Formula::or(l, r),
                Imp(..) => Formula::imp(l, r),
                _ => Formula::iff(l, r),
            };
            out.extend(single_unfoldings(a).into_iter().map(|g| rebuild(g, b.as_ref().clone())));
            out.extend(single_unfoldings(b).into_iter().map(|g| rebuild(a.as_ref().clone(), g)));
        }
        _ => {}
    }
    out
}

fn folds_once(from: &Formula, to: &Formula) -> bool {
    single_unfoldings(from).iter().any(|g| alpha_eq(g, to)) || single_unfoldings(to).iter().any(|g| alpha_eq(g, from))
}

/// Whether every line of `script` is justified, checked independently of the
/// kernel's rule code.
pub fn accepts(script: &ProofScript, r: &Registry, settings: &SchemaSettings) -> bool {
    let mut seen: HashMap<&str, Formula> = HashMap::new();
    for line in &script.lines {
        let this = expand_levels(&line.formula);
        let get = |id: &str| seen.get(id).cloned();
        let ok = match &line.justification {
            Justification::Hypothesis => true,
            Justification::Axiom { schema, level, .. } => axiom(*schema, *level, &line.formula, r, settings),
            Justification::Mp(i, j) => match (get(i), get(j)) {
                (Some(a), Some(Formula::Imp(x, y))) => *x == a && *y == this,
                _ => false,
            },
            Justification::Mt(i, j) => match (get(i), get(j), &this) {
                (Some(Formula::Imp(a, b)), Some(Formula::Not(nb)), Formula::Not(na)) => nb == b && *na == a,
                (Some(Formula::Imp(a, b)), Some(Formula::DefNeg(nb)), Formula::DefNeg(na)) => nb == b && *na == a,
                _ => false,
            },
            Justification::Gen(i, x) => match (get(i), &this) {
                (Some(Formula::Imp(a, b)), Formula::Imp(a2, q)) => {
                    a == *a2 && !a.has_free(x) && **q == Formula::Forall(x.clone(), b.clone())
                }
                _ => false,
            },
            Justification::ExIntro(i, x) => match (get(i), &this) {
                (Some(Formula::Imp(a, b)), Formula::Imp(q, b2)) => {
                    b == *b2 && !b.has_free(x) && **q == Formula::Exists(x.clone(), a.clone())
                }
                _ => false,
            },
            Justification::EqExplosion(i) => match get(i) {
                Some(Formula::And(e, ne)) => {
                    matches!(e.as_ref(), Formula::StrongEq(s, t) if s == t) && *ne.as_ref() == Formula::Not(e.clone())
                }
                _ => false,
            },
            Justification::Comp(pattern) => {
                let body = Formula::iff(Formula::Mem(Term::var("x"), Term::var("y")), pattern.clone());
                pattern.free_vars().iter().all(|v| v == "x" || v == "y")
                    && this == Formula::exists("y", Formula::forall("x", body))
            }
            Justification::DefNegUnfold(i) => get(i).is_some_and(|p| folds_once(&p, &this)),
        };
        if !ok {
            return false;
        }
        seen.insert(&line.id, this);
    }
    true
}
