use std::fmt::{self, Write};

use crate::formula::{Formula, Level, Term};

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const POSTFIX: u8 = 7;
const ATOM: u8 = 8;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(_) | Formula::DefNeg(_) | Formula::Forall(..) | Formula::Exists(..) => UNARY,
        Formula::Cons(..) | Formula::Incons(..) => POSTFIX,
        _ => ATOM,
    }
}

fn is_relation(f: &Formula) -> bool {
    matches!(f, Formula::Mem(..) | Formula::StrongEq(..) | Formula::WeakEq(..))
}

fn is_quantifier(f: &Formula) -> bool {
    matches!(f, Formula::Forall(..) | Formula::Exists(..))
}

struct Printer<'w, W: Write> {
    out: &'w mut W,
}

impl<W: Write> Printer<'_, W> {
    /// `tail` is true when nothing follows `f` inside the enclosing
    /// parenthesis group; a quantifier body runs to the right as far as
    /// possible, so quantifiers outside tail position need parentheses.
    fn go(&mut self, f: &Formula, min: u8, tail: bool) -> fmt::Result {
        let paren = prec(f) < min || (is_quantifier(f) && !tail);
        let tail = tail || paren;
        if paren {
            self.out.write_char('(')?;
        }
        match f {
            Formula::Iff(a, b) => {
                self.go(a, IMP, false)?;
                self.out.write_str(" <-> ")?;
                self.go(b, IMP, tail)?;
            }
            Formula::Imp(a, b) => {
                self.go(a, OR, false)?;
                self.out.write_str(" -> ")?;
                self.go(b, IMP, tail)?;
            }
            Formula::Or(a, b) => {
                self.go(a, OR, false)?;
                self.out.write_str(" | ")?;
                self.go(b, AND, tail)?;
            }
            Formula::And(a, b) => {
                self.go(a, AND, false)?;
                self.out.write_str(" & ")?;
                self.go(b, UNARY, tail)?;
            }
            Formula::Not(a) | Formula::DefNeg(a) => {
                self.out.write_char(if matches!(f, Formula::Not(_)) { '!' } else { '~' })?;
                self.operand(a, UNARY, tail)?;
            }
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let kw = if matches!(f, Formula::Forall(..)) { "forall" } else { "exists" };
                write!(self.out, "{kw} {x}. ")?;
                self.go(body, 0, tail)?;
            }
            Formula::Cons(a, n) | Formula::Incons(a, n) => {
                self.operand(a, POSTFIX, false)?;
                let (open, close) = if matches!(f, Formula::Cons(..)) { ('(', ')') } else { ('[', ']') };
                write!(self.out, "^{open}{}{close}", LevelText(*n))?;
            }
            Formula::Prop(p) => self.out.write_str(p)?,
            Formula::Pred(p, args) => {
                write!(self.out, "{p}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        self.out.write_str(", ")?;
                    }
                    self.out.write_str(t.name())?;
                }
                self.out.write_char(')')?;
            }
            Formula::Mem(a, b) => self.relation(a, "in", b)?,
            Formula::StrongEq(a, b) => self.relation(a, "=s", b)?,
            Formula::WeakEq(a, b) => self.relation(a, "=w", b)?,
        }
        if paren {
            self.out.write_char(')')?;
        }
        Ok(())
    }

    /// Relations are wrapped when negated or leveled, for readability.
    fn operand(&mut self, a: &Formula, min: u8, tail: bool) -> fmt::Result {
        if is_relation(a) {
            self.out.write_char('(')?;
            self.go(a, 0, true)?;
            self.out.write_char(')')
        } else {
            self.go(a, min, tail)
        }
    }

    fn relation(&mut self, a: &Term, op: &str, b: &Term) -> fmt::Result {
        write!(self.out, "{} {op} {}", a.name(), b.name())
    }
}

struct LevelText(Level);

impl fmt::Display for LevelText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Omega => f.write_str("w"),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        LevelText(*self).fmt(f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer { out: f }.go(self, 0, true)
    }
}

/// Canonical text of a formula with the fewest parentheses the grammar
/// allows (plus parentheses around negated or leveled relations).
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}
