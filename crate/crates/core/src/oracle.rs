//! Two-valued truth tables. Used to audit the propositional schemata, not as
//! a semantics for the paraconsistent calculus.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{expand_levels, Formula, Level};

/// Largest number of atoms `is_tautology` will enumerate.
pub const ATOM_LIMIT: usize = 24;

pub type Valuation = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("not a propositional formula: {0}")]
    NotPropositional(String),
    #[error("no truth value for atom `{0}`")]
    UnassignedAtom(String),
    #[error("{found} atoms exceed the limit of {limit}")]
    AtomLimitExceeded { found: usize, limit: usize },
}

/// Evaluate `f` under `v`. Finite level operators are expanded and `↔` is
/// read as a pair of implications.
pub fn eval_classical(f: &Formula, v: &Valuation) -> Result<bool, OracleError> {
    let f = expand_levels(f);
    check_propositional(&f)?;
    let mut memo = HashMap::new();
    eval(&f, v, &mut memo)
}

fn check_propositional(f: &Formula) -> Result<(), OracleError> {
    let mut bad = None;
    f.visit(&mut |g| {
        if bad.is_none() {
            match g {
                Formula::Prop(_)
                | Formula::Not(_)
                | Formula::And(..)
                | Formula::Or(..)
                | Formula::Imp(..)
                | Formula::Iff(..) => {}
                Formula::Cons(_, Level::Omega) | Formula::Incons(_, Level::Omega) => {
                    bad = Some("ω-level operator".to_string())
                }
                Formula::DefNeg(_) => bad = Some("defined negation `~`".to_string()),
                Formula::Forall(..) | Formula::Exists(..) => bad = Some("quantifier".to_string()),
                other => bad = Some(format!("atom `{other}`")),
            }
        }
    });
    bad.map_or(Ok(()), |b| Err(OracleError::NotPropositional(b)))
}

/// Memoized by node address so shared level expansions are evaluated once.
fn eval(f: &Formula, v: &Valuation, memo: &mut HashMap<*const Formula, bool>) -> Result<bool, OracleError> {
    let sub = |a: &Arc<Formula>, memo: &mut HashMap<*const Formula, bool>| -> Result<bool, OracleError> {
        let key = Arc::as_ptr(a);
        if let Some(b) = memo.get(&key) {
            return Ok(*b);
        }
        let b = eval(a, v, memo)?;
        memo.insert(key, b);
        Ok(b)
    };
    Ok(match f {
        Formula::Prop(p) => *v.get(p).ok_or_else(|| OracleError::UnassignedAtom(p.clone()))?,
        Formula::Not(a) => !sub(a, memo)?,
        Formula::And(a, b) => sub(a, memo)? & sub(b, memo)?,
        Formula::Or(a, b) => sub(a, memo)? | sub(b, memo)?,
        Formula::Imp(a, b) => !sub(a, memo)? | sub(b, memo)?,
        Formula::Iff(a, b) => sub(a, memo)? == sub(b, memo)?,
        other => return Err(OracleError::NotPropositional(other.to_string())),
    })
}

fn all_valuations(f: &Formula) -> Result<(Formula, Vec<String>), OracleError> {
    let f = expand_levels(f);
    check_propositional(&f)?;
    let atoms: Vec<String> = f.prop_atoms().into_iter().collect();
    if atoms.len() > ATOM_LIMIT {
        return Err(OracleError::AtomLimitExceeded { found: atoms.len(), limit: ATOM_LIMIT });
    }
    Ok((f, atoms))
}

fn any_row(f: &Formula, want: bool) -> Result<bool, OracleError> {
    let (f, atoms) = all_valuations(f)?;
    for bits in 0u64..(1u64 << atoms.len()) {
        let v: Valuation = atoms.iter().enumerate().map(|(i, a)| (a.clone(), bits >> i & 1 == 1)).collect();
        let mut memo = HashMap::new();
        if eval(&f, &v, &mut memo)? == want {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True under every valuation of the formula's atoms.
pub fn is_tautology(f: &Formula) -> Result<bool, OracleError> {
    any_row(f, false).map(|found| !found)
}

/// True under at least one valuation.
pub fn is_satisfiable(f: &Formula) -> Result<bool, OracleError> {
    any_row(f, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::expand_incons;
    use crate::schema::{instantiate, SchemaId, SchemaInstance};
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        let v: Valuation = [("P".to_string(), false)].into();
        assert!(eval_classical(&p("P | !P"), &v).unwrap());
        let inc = expand_incons(&p("P"), Level::Finite(0)).unwrap();
        for b in [false, true] {
            assert!(!eval_classical(&inc, &[("P".to_string(), b)].into()).unwrap());
        }
        let lp14 = instantiate(&SchemaInstance::new(SchemaId::Lp14).formula("A", p("P")).level(1)).unwrap();
        assert!(is_tautology(&lp14).unwrap());
    }

    #[test]
    fn tautology_examples() {
        assert!(is_tautology(&p("Q -> R -> Q")).unwrap());
        assert!(!is_tautology(&p("P & !P")).unwrap());
        assert!(is_tautology(&p("A | !A")).unwrap());
        assert!(is_tautology(&p("(P <-> Q) -> P -> Q")).unwrap());
        assert!(!is_satisfiable(&p("P^[2]")).unwrap());
        assert!(is_satisfiable(&p("P^(2)")).unwrap());
    }

    #[test]
    fn rejects_non_propositional() {
        for text in ["forall x. P", "~P", "x in y", "Q(x) | P", "P^[w]"] {
            assert!(matches!(is_tautology(&p(text)), Err(OracleError::NotPropositional(_))), "{text}");
        }
        let v = Valuation::new();
        assert!(matches!(eval_classical(&p("P"), &v), Err(OracleError::UnassignedAtom(_))));
    }

    #[test]
    fn atom_limit() {
        let big = (0..25).map(|i| format!("P{i}")).collect::<Vec<_>>().join(" | ");
        assert!(matches!(is_tautology(&p(&big)), Err(OracleError::AtomLimitExceeded { found: 25, .. })));
    }
}
