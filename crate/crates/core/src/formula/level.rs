//! Unfolding of the leveled consistency and inconsistency operators.
//!
//! `α^[0] = α ∧ ¬α`, `α^[n] = α^[n-1] ∧ (α^[n-1])^[0]`;
//! `α^(0) = ¬(α ∧ ¬α)`, `α^(n) = α^(n-1) ∧ (α^(n-1))^(0)`.
//!
//! Each step reuses the previous level by reference, so the in-memory size
//! grows linearly with `n` even though the tree size grows like `3^n`.

use std::sync::Arc;

use thiserror::Error;

use super::{Formula, Level};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("the ω level is an infinite conjunction and cannot be expanded")]
    OmegaNotExpandable,
}

fn incons0(f: Arc<Formula>) -> Arc<Formula> {
    Arc::new(Formula::And(f.clone(), Arc::new(Formula::Not(f))))
}

fn cons0(f: Arc<Formula>) -> Arc<Formula> {
    Arc::new(Formula::Not(incons0(f)))
}

pub(crate) fn incons_arc(f: Arc<Formula>, n: u32) -> Arc<Formula> {
    let mut e = incons0(f);
    for _ in 0..n {
        e = Arc::new(Formula::And(e.clone(), incons0(e)));
    }
    e
}

pub(crate) fn cons_arc(f: Arc<Formula>, n: u32) -> Arc<Formula> {
    let mut e = cons0(f);
    for _ in 0..n {
        e = Arc::new(Formula::And(e.clone(), cons0(e)));
    }
    e
}

fn finite(n: Level) -> Result<u32, LevelError> {
    match n {
        Level::Finite(k) => Ok(k),
        Level::Omega => Err(LevelError::OmegaNotExpandable),
    }
}

/// `f^[n]` unfolded into `∧`/`¬`. Level nodes inside `f` are left alone.
pub fn expand_incons(f: &Formula, n: Level) -> Result<Formula, LevelError> {
    let k = finite(n)?;
    Ok(Arc::unwrap_or_clone(incons_arc(Arc::new(f.clone()), k)))
}

/// `f^(n)` unfolded into `∧`/`¬`, with base case `¬(f ∧ ¬f)`.
pub fn expand_cons(f: &Formula, n: Level) -> Result<Formula, LevelError> {
    let k = finite(n)?;
    Ok(Arc::unwrap_or_clone(cons_arc(Arc::new(f.clone()), k)))
}

/// The alternative zero-level consistency operator `f ∧ ¬(f ∧ ¬f)`.
///
/// Not used by the level operators or any schema; [`expand_cons`] is the
/// canonical reading.
pub fn expand_cons_v41(f: &Formula) -> Formula {
    let f = Arc::new(f.clone());
    Formula::And(f.clone(), cons0(f))
}

/// Expand every finite `Cons`/`Incons` node, innermost first. ω-level nodes
/// stay in place (their operands are still expanded).
pub fn expand_levels(f: &Formula) -> Formula {
    if !f.contains_level_ops() {
        return f.clone();
    }
    match f {
        Formula::Cons(a, Level::Finite(n)) => Arc::unwrap_or_clone(cons_arc(Arc::new(expand_levels(a)), *n)),
        Formula::Incons(a, Level::Finite(n)) => Arc::unwrap_or_clone(incons_arc(Arc::new(expand_levels(a)), *n)),
        other => other.map_children(&|c| Arc::new(expand_levels(c)), false),
    }
}

/// If `f` is `α^[n]` in unfolded form, return `(α, n)`.
///
/// The decomposition is unique: a level `n ≥ 1` form is `e ∧ (e ∧ ¬e)` while
/// the base form is `α ∧ ¬α`, so peeling stops exactly at the base.
pub fn as_incons(f: &Formula) -> Option<(Arc<Formula>, u32)> {
    let mut cur = f;
    let mut n = 0u32;
    loop {
        match cur {
            Formula::And(e, rest) => match rest.as_ref() {
                Formula::And(e2, ne) if e == e2 && is_not_of(ne, e) => {
                    n += 1;
                    cur = e;
                }
                Formula::Not(a) if a == e => return Some((e.clone(), n)),
                _ => return None,
            },
            _ => return None,
        }
    }
}

/// If `f` is `α^(n)` in unfolded form, return `(α, n)`.
pub fn as_cons(f: &Formula) -> Option<(Arc<Formula>, u32)> {
    let mut cur = f;
    let mut n = 0u32;
    loop {
        match cur {
            Formula::And(e, rest) => match rest.as_ref() {
                Formula::Not(inner) if is_incons0_of(inner, e) => {
                    n += 1;
                    cur = e;
                }
                _ => return None,
            },
            Formula::Not(inner) => {
                return match inner.as_ref() {
                    Formula::And(a, na) if is_not_of(na, a) => Some((a.clone(), n)),
                    _ => None,
                }
            }
            _ => return None,
        }
    }
}

fn is_not_of(f: &Formula, a: &Arc<Formula>) -> bool {
    matches!(f, Formula::Not(b) if b == a)
}

fn is_incons0_of(f: &Formula, a: &Arc<Formula>) -> bool {
    matches!(f, Formula::And(b, nb) if b == a && is_not_of(nb, a))
}
