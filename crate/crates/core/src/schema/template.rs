//! Schema templates and instantiation.

use std::sync::Arc;

use super::{side_condition, SchemaError, SchemaId, SchemaInstance, SchemaSettings};
use crate::formula::level::{cons_arc, incons_arc};
use crate::formula::{substitute, Formula, Term};
use crate::registry::Registry;

type F = Arc<Formula>;

fn imp(a: &F, b: &F) -> F {
    Arc::new(Formula::Imp(a.clone(), b.clone()))
}

fn and(a: &F, b: &F) -> F {
    Arc::new(Formula::And(a.clone(), b.clone()))
}

fn or(a: &F, b: &F) -> F {
    Arc::new(Formula::Or(a.clone(), b.clone()))
}

fn not(a: &F) -> F {
    Arc::new(Formula::Not(a.clone()))
}

fn forall(x: &str, a: &F) -> F {
    Arc::new(Formula::Forall(x.to_string(), a.clone()))
}

fn exists(x: &str, a: &F) -> F {
    Arc::new(Formula::Exists(x.to_string(), a.clone()))
}

/// `a^[k]`, with `k = -1` meaning `a` itself.
fn incons_minus_one(a: &F, n: u32) -> F {
    match n.checked_sub(1) {
        Some(k) => incons_arc(a.clone(), k),
        None => a.clone(),
    }
}

struct Params<'a> {
    inst: &'a SchemaInstance,
    cap: u32,
}

impl Params<'_> {
    fn schema(&self) -> SchemaId {
        self.inst.schema
    }

    fn missing(&self, param: &str) -> SchemaError {
        SchemaError::MissingParameter { schema: self.schema(), param: param.to_string() }
    }

    fn invalid(&self, detail: impl Into<String>) -> SchemaError {
        SchemaError::InvalidParameter { schema: self.schema(), detail: detail.into() }
    }

    fn f(&self, meta: &str) -> Result<F, SchemaError> {
        self.inst.subst.get(meta).map(|f| Arc::new(f.clone())).ok_or_else(|| self.missing(meta))
    }

    /// A bound-variable metavariable; defaults to its own name.
    fn var(&self, meta: &str) -> Result<String, SchemaError> {
        match self.inst.term_subst.get(meta) {
            None => Ok(meta.to_string()),
            Some(Term::Var(v)) => Ok(v.clone()),
            Some(Term::Const(c)) => {
                Err(self.invalid(format!("`{meta}` is bound by a quantifier and cannot be the constant `{c}`")))
            }
        }
    }

    fn term(&self, meta: &str) -> Result<Term, SchemaError> {
        self.inst.term_subst.get(meta).cloned().ok_or_else(|| self.missing(meta))
    }

    fn level(&self, min: u32, default: Option<u32>) -> Result<u32, SchemaError> {
        let n = match (self.inst.n(), default) {
            (Some(n), _) => n,
            (None, Some(d)) => d,
            (None, None) => return Err(self.missing("n")),
        };
        if n < min {
            return Err(self.invalid(format!("level n = {n} is below the minimum {min}")));
        }
        if n > self.cap {
            return Err(SchemaError::LevelOutOfRange { schema: self.schema(), level: n, cap: self.cap });
        }
        Ok(n)
    }

    fn subst(&self, a: &F, x: &str, t: &Term) -> Result<F, SchemaError> {
        substitute(a, x, t).map(Arc::new).map_err(|e| self.invalid(e.to_string()))
    }

    fn distinct(&self, x: &str, y: &str) -> Result<(), SchemaError> {
        if x == y {
            Err(self.invalid(format!("the bound variables must differ, both are `{x}`")))
        } else {
            Ok(())
        }
    }
}

/// The concrete axiom for `inst` under the default level cap. Level
/// operators in the result are already expanded. Side conditions are not
/// checked; see [`instantiate_checked`].
pub fn instantiate(inst: &SchemaInstance) -> Result<Formula, SchemaError> {
    instantiate_with(inst, &SchemaSettings::default())
}

pub fn instantiate_with(inst: &SchemaInstance, settings: &SchemaSettings) -> Result<Formula, SchemaError> {
    build(&Params { inst, cap: settings.level_cap }).map(Arc::unwrap_or_clone)
}

/// [`instantiate_with`] followed by the profile and registry side conditions.
pub fn instantiate_checked(
    inst: &SchemaInstance,
    r: &Registry,
    settings: &SchemaSettings,
) -> Result<Formula, SchemaError> {
    let f = instantiate_with(inst, settings)?;
    side_condition(inst, r, settings)?;
    Ok(f)
}

fn build(p: &Params<'_>) -> Result<F, SchemaError> {
    use SchemaId::*;
    let s = p.schema();
    Ok(match s {
        Lp1 => {
            let (a, b) = (p.f("A")?, p.f("B")?);
            imp(&a, &imp(&b, &a))
        }
        Lp2 => {
            let (a, b, c) = (p.f("A")?, p.f("B")?, p.f("C")?);
            imp(&imp(&a, &b), &imp(&imp(&a, &imp(&b, &c)), &imp(&a, &c)))
        }
        Lp3 => {
            let (a, b) = (p.f("A")?, p.f("B")?);
            imp(&a, &imp(&b, &and(&a, &b)))
        }
        Lp4 | Lp5 => {
            let (a, b) = (p.f("A")?, p.f("B")?);
            imp(&and(&a, &b), if s == Lp4 { &a } else { &b })
        }
        Lp6 | Lp7 => {
            let (a, b) = (p.f("A")?, p.f("B")?);
            imp(if s == Lp6 { &a } else { &b }, &or(&a, &b))
        }
        Lp8 => {
            let (a, b, c) = (p.f("A")?, p.f("B")?, p.f("C")?);
            imp(&imp(&a, &c), &imp(&imp(&b, &c), &imp(&or(&a, &b), &c)))
        }
        Lp9 => {
            let a = p.f("P")?;
            and(&a, &not(&a))
        }
        Lp10 => {
            let a = p.f("P")?;
            let e = and(&a, &not(&a));
            and(&e, &not(&e))
        }
        Lp11 => {
            let n = p.level(1, None)?;
            incons_arc(p.f("P")?, n)
        }
        Lp12 | Lp1Excluded => {
            let a = p.f("A")?;
            or(&a, &not(&a))
        }
        Lp13 | Lp1ExcludedFourth => {
            let a = p.f("A")?;
            let na = not(&a);
            or(&or(&a, &na), &and(&a, &na))
        }
        Lp14 => {
            let n = p.level(1, None)?;
            let a = p.f("A")?;
            let na = not(&a);
            let mut acc = or(&or(&a, &na), &and(&a, &na));
            let mut e = and(&a, &na);
            for _ in 0..n {
                e = and(&e, &and(&e, &not(&e)));
                acc = or(&acc, &e);
            }
            acc
        }
        Lp15 | Lp1Explosion => {
            let (a, b) = (p.f("A")?, p.f("B")?);
            imp(&b, &imp(&not(&b), &a))
        }
        QII | QIII => {
            let (a, x, t) = (p.f("A")?, p.var("x")?, p.term("y")?);
            let at = p.subst(&a, &x, &t)?;
            if s == QII {
                imp(&forall(&x, &a), &at)
            } else {
                imp(&at, &exists(&x, &a))
            }
        }
        QV | QVI => {
            let n = p.level(0, Some(0))?;
            let (a, x) = (p.f("A")?, p.var("x")?);
            let q = if s == QV { forall(&x, &a) } else { exists(&x, &a) };
            imp(&forall(&x, &cons_arc(a, n)), &cons_arc(q, n))
        }
        QVII | QVIII => {
            let n = p.level(0, Some(0))?;
            let (a, x) = (p.f("A")?, p.var("x")?);
            let quant = |b: &F| if s == QVII { forall(&x, b) } else { exists(&x, b) };
            let rhs = and(&incons_minus_one(&quant(&a), n), &quant(&not(&incons_minus_one(&a, n))));
            imp(&forall(&x, &incons_arc(a, n)), &rhs)
        }
        EIX => {
            let x = p.var("x")?;
            let tx = Term::Var(x.clone());
            exists(&x, &Arc::new(Formula::StrongEq(tx.clone(), tx)))
        }
        EXI | EXIV => {
            let (a, x, y) = (p.f("A")?, p.var("x")?, p.var("y")?);
            p.distinct(&x, &y)?;
            let (tx, ty) = (Term::Var(x.clone()), Term::Var(y.clone()));
            let eq = if s == EXI { Formula::StrongEq(tx, ty.clone()) } else { Formula::WeakEq(tx, ty.clone()) };
            let body = imp(&Arc::new(eq), &imp(&a, &p.subst(&a, &x, &ty)?));
            forall(&x, &forall(&y, &body))
        }
        EXII => {
            let x = p.var("x")?;
            let t = p.inst.term_subst.get("y").cloned().unwrap_or_else(|| Term::var("y"));
            if t == Term::Var(x.clone()) {
                return Err(p.invalid(format!("`y` would be captured by the binder `{x}`")));
            }
            let tx = Term::Var(x.clone());
            let body =
                imp(&not(&Arc::new(Formula::StrongEq(tx.clone(), t))), &Arc::new(Formula::WeakEq(tx.clone(), tx)));
            forall(&x, &body)
        }
        EXIIReflexive => {
            let x = p.var("x")?;
            let tx = Term::Var(x.clone());
            let body = imp(
                &not(&Arc::new(Formula::StrongEq(tx.clone(), tx.clone()))),
                &Arc::new(Formula::WeakEq(tx.clone(), tx)),
            );
            forall(&x, &body)
        }
        EXIII => {
            let n = p.level(0, Some(0))?;
            let x = p.var("x")?;
            let tx = Term::Var(x.clone());
            exists(&x, &incons_arc(Arc::new(Formula::WeakEq(tx.clone(), tx)), n))
        }
        EXV => {
            let n = p.level(0, Some(0))?;
            let (x, y) = (p.var("x")?, p.var("y")?);
            p.distinct(&x, &y)?;
            let eq = Formula::WeakEq(Term::Var(y.clone()), Term::Var(x.clone()));
            forall(&y, &exists(&x, &incons_arc(Arc::new(eq), n)))
        }
        Comp => {
            let (f, x, y) = (p.f("F")?, p.var("x")?, p.var("y")?);
            Arc::new(comprehension_instance(&f, &y, &x)?)
        }
        QI | QIV | EX => return Err(SchemaError::IsRule(s)),
    })
}

/// `∃y∀x(x ∈ y ↔ F)` for `setvar = y`, `memvar = x`.
pub fn comprehension_instance(pattern: &Formula, setvar: &str, memvar: &str) -> Result<Formula, SchemaError> {
    if setvar == memvar {
        return Err(SchemaError::InvalidParameter {
            schema: SchemaId::Comp,
            detail: format!("set and member variables must differ, both are `{setvar}`"),
        });
    }
    let leak: Vec<String> = pattern.free_vars().into_iter().filter(|v| v != setvar && v != memvar).collect();
    if !leak.is_empty() {
        return Err(SchemaError::FreeVariableLeak { vars: leak });
    }
    let mem = Formula::Mem(Term::var(memvar), Term::var(setvar));
    Ok(Formula::exists(setvar, Formula::forall(memvar, Formula::iff(mem, pattern.clone()))))
}
