//! Terms and formulas of the object language.
//!
//! Formulas are immutable trees whose children are reference counted, so the
//! level operators can be unfolded into shared DAGs without copying. All
//! structural equality is literal: bound-variable names matter. Use
//! [`alpha_eq`] when renaming of bound variables should be ignored.

pub(crate) mod level;
mod subst;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use level::{as_cons, as_incons, expand_cons, expand_cons_v41, expand_incons, expand_levels, LevelError};
pub use subst::{alpha_eq, substitute, CaptureError};

/// A term: a variable or an individual constant. There are no function
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(n) => Some(n),
            Term::Const(_) => None,
        }
    }
}

/// Index of a consistency/inconsistency operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Finite(u32),
    /// The infinite level. Kept opaque: it stands for a conjunction over all
    /// finite levels and is never unfolded.
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Propositional atom (or formula metavariable inside schema templates).
    Prop(String),
    /// Predicate applied to one or more terms.
    Pred(String, Vec<Term>),
    /// `t1 ∈ t2`
    Mem(Term, Term),
    /// Strong equality `t1 =s t2`.
    StrongEq(Term, Term),
    /// Weak equality `t1 =w t2`.
    WeakEq(Term, Term),
    /// Primitive negation `¬`.
    Not(Arc<Formula>),
    /// Defined negation `~A`, an abbreviation for `A → ∀x∀y(x∈y ∧ x =s y)`
    /// kept as its own node.
    DefNeg(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Iff(Arc<Formula>, Arc<Formula>),
    Forall(String, Arc<Formula>),
    Exists(String, Arc<Formula>),
    /// Consistency operator `α^(n)`.
    Cons(Arc<Formula>, Level),
    /// Inconsistency operator `α^[n]`.
    Incons(Arc<Formula>, Level),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Self {
        Formula::Prop(name.into())
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    pub fn mem(a: Term, b: Term) -> Self {
        Formula::Mem(a, b)
    }

    pub fn not(f: impl Into<Arc<Formula>>) -> Self {
        Formula::Not(f.into())
    }

    pub fn defneg(f: impl Into<Arc<Formula>>) -> Self {
        Formula::DefNeg(f.into())
    }

    pub fn and(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Self {
        Formula::And(a.into(), b.into())
    }

    pub fn or(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Self {
        Formula::Or(a.into(), b.into())
    }

    pub fn imp(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Self {
        Formula::Imp(a.into(), b.into())
    }

    pub fn iff(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Self {
        Formula::Iff(a.into(), b.into())
    }

    pub fn forall(x: impl Into<String>, body: impl Into<Arc<Formula>>) -> Self {
        Formula::Forall(x.into(), body.into())
    }

    pub fn exists(x: impl Into<String>, body: impl Into<Arc<Formula>>) -> Self {
        Formula::Exists(x.into(), body.into())
    }

    pub fn cons(f: impl Into<Arc<Formula>>, n: Level) -> Self {
        Formula::Cons(f.into(), n)
    }

    pub fn incons(f: impl Into<Arc<Formula>>, n: Level) -> Self {
        Formula::Incons(f.into(), n)
    }

    /// `Ω = ∀x∀y(x∈y ∧ x =s y)`, the absurd statement that defined negation
    /// points at.
    pub fn absurdity() -> Self {
        let (x, y) = (Term::var("x"), Term::var("y"));
        Formula::forall(
            "x",
            Formula::forall("y", Formula::and(Formula::Mem(x.clone(), y.clone()), Formula::StrongEq(x, y))),
        )
    }

    /// Atomic formulas are the only shapes a registry can hold.
    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Prop(_) | Formula::Pred(..) | Formula::Mem(..) | Formula::StrongEq(..) | Formula::WeakEq(..)
        )
    }

    /// Number of AST nodes: atoms count 1, unary/quantifier/level nodes
    /// count 1 plus their operand, binary nodes 1 plus both operands.
    pub fn node_count(&self) -> u64 {
        match self {
            Formula::Prop(_) | Formula::Pred(..) | Formula::Mem(..) | Formula::StrongEq(..) | Formula::WeakEq(..) => 1,
            Formula::Not(a)
            | Formula::DefNeg(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::Cons(a, _)
            | Formula::Incons(a, _) => 1u64.saturating_add(a.node_count()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                1u64.saturating_add(a.node_count()).saturating_add(b.node_count())
            }
        }
    }

    /// Variables with at least one free occurrence.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut out);
        out
    }

    pub fn has_free(&self, x: &str) -> bool {
        self.free_vars().contains(x)
    }

    /// Every constant symbol occurring in the formula.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            for t in f.terms() {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        });
        out
    }

    /// Distinct atomic subformulas.
    pub fn atoms(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if f.is_atomic() {
                out.insert(f.clone());
            }
        });
        out
    }

    /// Names of propositional atoms.
    pub fn prop_atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Terms directly held by an atomic node.
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Pred(_, ts) => ts.iter().collect(),
            Formula::Mem(a, b) | Formula::StrongEq(a, b) | Formula::WeakEq(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// Pre-order traversal of every node.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a)
            | Formula::DefNeg(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a)
            | Formula::Cons(a, _)
            | Formula::Incons(a, _) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    pub fn contains_iff(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Iff(..)));
        found
    }

    pub fn contains_level_ops(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Cons(..) | Formula::Incons(..)));
        found
    }

    /// Replace every `A ↔ B` by `(A → B) ∧ (B → A)`.
    pub fn unfold_iff(&self) -> Formula {
        if !self.contains_iff() {
            return self.clone();
        }
        self.map_children(&|c| Arc::new(c.unfold_iff()), true)
    }

    /// Rebuild this node with `g` applied to every direct child. When
    /// `expand_iff` is set an `Iff` node comes back as its conjunction of
    /// implications.
    pub(crate) fn map_children(&self, g: &impl Fn(&Arc<Formula>) -> Arc<Formula>, expand_iff: bool) -> Formula {
        match self {
            Formula::Not(a) => Formula::Not(g(a)),
            Formula::DefNeg(a) => Formula::DefNeg(g(a)),
            Formula::And(a, b) => Formula::And(g(a), g(b)),
            Formula::Or(a, b) => Formula::Or(g(a), g(b)),
            Formula::Imp(a, b) => Formula::Imp(g(a), g(b)),
            Formula::Iff(a, b) if expand_iff => {
                let (a, b) = (g(a), g(b));
                Formula::and(Formula::Imp(a.clone(), b.clone()), Formula::Imp(b, a))
            }
            Formula::Iff(a, b) => Formula::Iff(g(a), g(b)),
            Formula::Forall(x, a) => Formula::Forall(x.clone(), g(a)),
            Formula::Exists(x, a) => Formula::Exists(x.clone(), g(a)),
            Formula::Cons(a, n) => Formula::Cons(g(a), *n),
            Formula::Incons(a, n) => Formula::Incons(g(a), *n),
            atom => atom.clone(),
        }
    }
}

/// Equality that treats `A ↔ B` and `(A → B) ∧ (B → A)` as the same formula.
pub fn eq_mod_iff(a: &Formula, b: &Formula) -> bool {
    a == b || a.unfold_iff() == b.unfold_iff()
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Prop(_) => {}
        Formula::Pred(..) | Formula::Mem(..) | Formula::StrongEq(..) | Formula::WeakEq(..) => {
            for t in f.terms() {
                if let Term::Var(v) = t {
                    if !bound.iter().any(|b| b == v) {
                        out.insert(v.clone());
                    }
                }
            }
        }
        Formula::Not(a) | Formula::DefNeg(a) | Formula::Cons(a, _) | Formula::Incons(a, _) => {
            collect_free(a, bound, out)
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            collect_free(a, bound, out);
            bound.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::prop("P")
    }

    fn q() -> Formula {
        Formula::prop("Q")
    }

    fn r() -> Formula {
        Formula::prop("R")
    }

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn free_vars_examples() {
        let f = Formula::forall("x", Formula::mem(v("x"), v("y")));
        assert_eq!(f.free_vars(), BTreeSet::from(["y".to_string()]));
        assert!(p().free_vars().is_empty());
        let g = Formula::and(Formula::mem(v("x"), v("y")), Formula::exists("x", Formula::WeakEq(v("x"), v("z"))));
        let expected: BTreeSet<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(g.free_vars(), expected);
    }

    #[test]
    fn unfold_iff_examples() {
        assert_eq!(Formula::iff(p(), q()).unfold_iff(), Formula::and(Formula::imp(p(), q()), Formula::imp(q(), p())));
        let plain = Formula::imp(p(), p());
        assert_eq!(plain.unfold_iff(), plain);

        // (P↔Q)↔R, unfolded bottom-up by hand.
        let pq = Formula::and(Formula::imp(p(), q()), Formula::imp(q(), p()));
        let expected = Formula::and(Formula::imp(pq.clone(), r()), Formula::imp(r(), pq));
        assert_eq!(Formula::iff(Formula::iff(p(), q()), r()).unfold_iff(), expected);
    }

    #[test]
    fn node_count_convention() {
        assert_eq!(p().node_count(), 1);
        assert_eq!(Formula::mem(v("x"), v("y")).node_count(), 1);
        assert_eq!(Formula::and(p(), Formula::not(p())).node_count(), 4);
        assert_eq!(Formula::forall("x", Formula::pred("Q", vec![v("x")])).node_count(), 2);
    }

    #[test]
    fn atoms_and_constants() {
        let f = Formula::and(
            Formula::mem(Term::constant("Rt"), v("x")),
            Formula::not(Formula::mem(Term::constant("Rt"), v("x"))),
        );
        assert_eq!(f.atoms().len(), 1);
        assert_eq!(f.constants(), BTreeSet::from(["Rt".to_string()]));
    }

    #[test]
    fn eq_mod_iff_sees_through_biconditionals() {
        let a = Formula::iff(p(), q());
        let b = Formula::and(Formula::imp(p(), q()), Formula::imp(q(), p()));
        assert!(eq_mod_iff(&a, &b));
        assert_ne!(a, b);
        assert!(!eq_mod_iff(&a, &Formula::iff(q(), p())));
    }
}
