use std::sync::Arc;

use thiserror::Error;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("substituting {term:?} for `{var}` would be captured by the binder `{binder}`")]
pub struct CaptureError {
    pub var: String,
    pub term: Term,
    pub binder: String,
}

/// Replace every free occurrence of the variable `x` by `t`.
///
/// Fails instead of renaming when `t` is a variable that some binder on the
/// path to a free occurrence of `x` would capture.
pub fn substitute(f: &Formula, x: &str, t: &Term) -> Result<Formula, CaptureError> {
    if !f.has_free(x) {
        return Ok(f.clone());
    }
    subst_rec(f, x, t)
}

fn subst_term(s: &Term, x: &str, t: &Term) -> Term {
    match s {
        Term::Var(v) if v == x => t.clone(),
        other => other.clone(),
    }
}

fn subst_rec(f: &Formula, x: &str, t: &Term) -> Result<Formula, CaptureError> {
    let go = |a: &Arc<Formula>| -> Result<Arc<Formula>, CaptureError> {
        if a.has_free(x) {
            Ok(Arc::new(subst_rec(a, x, t)?))
        } else {
            Ok(a.clone())
        }
    };
    Ok(match f {
        Formula::Prop(_) => f.clone(),
        Formula::Pred(p, ts) => Formula::Pred(p.clone(), ts.iter().map(|s| subst_term(s, x, t)).collect()),
        Formula::Mem(a, b) => Formula::Mem(subst_term(a, x, t), subst_term(b, x, t)),
        Formula::StrongEq(a, b) => Formula::StrongEq(subst_term(a, x, t), subst_term(b, x, t)),
        Formula::WeakEq(a, b) => Formula::WeakEq(subst_term(a, x, t), subst_term(b, x, t)),
        Formula::Not(a) => Formula::Not(go(a)?),
        Formula::DefNeg(a) => Formula::DefNeg(go(a)?),
        Formula::And(a, b) => Formula::And(go(a)?, go(b)?),
        Formula::Or(a, b) => Formula::Or(go(a)?, go(b)?),
        Formula::Imp(a, b) => Formula::Imp(go(a)?, go(b)?),
        Formula::Iff(a, b) => Formula::Iff(go(a)?, go(b)?),
        Formula::Cons(a, n) => Formula::Cons(go(a)?, *n),
        Formula::Incons(a, n) => Formula::Incons(go(a)?, *n),
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            if v == x {
                return Ok(f.clone());
            }
            if t.as_var() == Some(v.as_str()) && a.has_free(x) {
                return Err(CaptureError { var: x.to_string(), term: t.clone(), binder: v.clone() });
            }
            let body = go(a)?;
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(v.clone(), body)
            } else {
                Formula::Exists(v.clone(), body)
            }
        }
    })
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    let mut env = Vec::new();
    alpha_rec(a, b, &mut env)
}

fn term_alpha(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
    match (s, t) {
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::Var(x), Term::Var(y)) => {
            let lx = env.iter().rposition(|(l, _)| l == x);
            let ly = env.iter().rposition(|(_, r)| r == y);
            match (lx, ly) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        _ => false,
    }
}

fn alpha_rec(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
    use Formula::*;
    match (a, b) {
        (Prop(p), Prop(q)) => p == q,
        (Pred(p, ss), Pred(q, ts)) => {
            p == q && ss.len() == ts.len() && ss.iter().zip(ts).all(|(s, t)| term_alpha(s, t, env))
        }
        (Mem(a1, a2), Mem(b1, b2)) | (StrongEq(a1, a2), StrongEq(b1, b2)) | (WeakEq(a1, a2), WeakEq(b1, b2)) => {
            term_alpha(a1, b1, env) && term_alpha(a2, b2, env)
        }
        (Not(x), Not(y)) | (DefNeg(x), DefNeg(y)) => alpha_rec(x, y, env),
        (Cons(x, m), Cons(y, n)) | (Incons(x, m), Incons(y, n)) => m == n && alpha_rec(x, y, env),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Imp(a1, a2), Imp(b1, b2))
        | (Iff(a1, a2), Iff(b1, b2)) => alpha_rec(a1, b1, env) && alpha_rec(a2, b2, env),
        (Forall(x, p), Forall(y, q)) | (Exists(x, p), Exists(y, q)) => {
            env.push((x.clone(), y.clone()));
            let ok = alpha_rec(p, q, env);
            env.pop();
            ok
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn constant_substitution_under_binder() {
        let f = Formula::forall("y", Formula::mem(v("x"), v("y")));
        let c = Term::constant("c");
        assert_eq!(substitute(&f, "x", &c).unwrap(), Formula::forall("y", Formula::mem(c, v("y"))));
    }

    #[test]
    fn capture_is_rejected() {
        let f = Formula::forall("y", Formula::mem(v("x"), v("y")));
        let err = substitute(&f, "x", &v("y")).unwrap_err();
        assert_eq!(err.binder, "y");
    }

    #[test]
    fn direct_replacement() {
        let f = Formula::StrongEq(v("x"), v("x"));
        let c = Term::constant("c");
        assert_eq!(substitute(&f, "x", &c).unwrap(), Formula::StrongEq(c.clone(), c));
    }

    #[test]
    fn bound_occurrences_untouched() {
        let f = Formula::and(Formula::mem(v("x"), v("z")), Formula::exists("x", Formula::mem(v("x"), v("x"))));
        let g = substitute(&f, "x", &v("w")).unwrap();
        assert_eq!(g, Formula::and(Formula::mem(v("w"), v("z")), Formula::exists("x", Formula::mem(v("x"), v("x"))),));
    }

    #[test]
    fn vacuous_binder_does_not_capture() {
        // y binds nothing that mentions x, so no capture.
        let f = Formula::and(Formula::mem(v("x"), v("x")), Formula::forall("y", Formula::prop("P")));
        assert!(substitute(&f, "x", &v("y")).is_ok());
    }

    #[test]
    fn alpha_equivalence() {
        let a = Formula::forall("x", Formula::mem(v("x"), v("z")));
        let b = Formula::forall("y", Formula::mem(v("y"), v("z")));
        let c = Formula::forall("z", Formula::mem(v("z"), v("z")));
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
        assert!(alpha_eq(&Formula::absurdity(), &Formula::absurdity()));
    }
}
