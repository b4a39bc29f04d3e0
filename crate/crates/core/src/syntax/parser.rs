use std::collections::BTreeSet;

use super::lexer::{Tok, Token};
use super::{ParseError, SourceSpan};
use crate::formula::{Formula, Level, Term};

/// Recursive-descent parser over one token stream.
pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    consts: &'a BTreeSet<String>,
}

fn is_upper(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

const KEYWORDS: [&str; 3] = ["forall", "exists", "in"];

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: Vec<Token>, consts: &'a BTreeSet<String>) -> Self {
        Parser { toks, pos: 0, consts }
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: impl Into<String>) -> ParseError {
        ParseError { span: self.span(), expected: expected.into(), found: self.peek().describe() }
    }

    pub(crate) fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error(what))
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.imp()?;
            if *self.peek() == Tok::DArrow {
                return Err(self.error("parentheses around a chained `<->` (it is non-associative)"));
            }
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Tilde => {
                self.bump();
                Ok(Formula::defneg(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let x = self.bound_var()?;
                self.expect(Tok::Dot, "`.` after the bound variable")?;
                let body = self.formula()?;
                Ok(if kw == "forall" { Formula::forall(x, body) } else { Formula::exists(x, body) })
            }
            _ => self.postfix(),
        }
    }

    pub(crate) fn bound_var(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) if !is_upper(&x) && !self.consts.contains(&x) && !KEYWORDS.contains(&x.as_str()) => {
                self.bump();
                Ok(x)
            }
            _ => Err(self.error("a variable (lowercase identifier that is not a declared constant)")),
        }
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let (close, cons) = match self.peek() {
                Tok::LParen => (Tok::RParen, true),
                Tok::LBrack => (Tok::RBrack, false),
                _ => return Err(self.error("`(` or `[` after `^`")),
            };
            self.bump();
            let level = self.level()?;
            self.expect(close, if cons { "`)`" } else { "`]`" })?;
            f = if cons { Formula::cons(f, level) } else { Formula::incons(f, level) };
        }
        Ok(f)
    }

    fn level(&mut self) -> Result<Level, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Level::Finite(n))
            }
            Tok::Ident(w) if w == "w" => {
                self.bump();
                Ok(Level::Omega)
            }
            _ => Err(self.error("a level (natural number or `w`)")),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                if matches!(self.peek_at(1), Tok::EqS | Tok::EqW)
                    || matches!(self.peek_at(1), Tok::Ident(k) if k == "in")
                {
                    return self.relation();
                }
                if !is_upper(&name) {
                    self.bump();
                    return Err(ParseError {
                        span: self.span(),
                        expected: "`in`, `=s` or `=w` after a term".into(),
                        found: self.peek().describe(),
                    });
                }
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let mut args = vec![self.term()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen, "`,` or `)` in a predicate argument list")?;
                    return Ok(Formula::pred(name, args));
                }
                Ok(Formula::Prop(name))
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn relation(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        let op = self.bump();
        let rhs = self.term()?;
        Ok(match op.tok {
            Tok::EqS => Formula::StrongEq(lhs, rhs),
            Tok::EqW => Formula::WeakEq(lhs, rhs),
            _ => Formula::Mem(lhs, rhs),
        })
    }

    /// Uppercase identifiers and declared names are constants; everything
    /// else is a variable.
    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                if is_upper(&name) || self.consts.contains(&name) {
                    Ok(Term::Const(name))
                } else {
                    Ok(Term::Var(name))
                }
            }
            _ => Err(self.error("a term")),
        }
    }
}
