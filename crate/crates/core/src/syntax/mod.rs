//! ASCII concrete syntax for formulas, proof scripts and registry files.
//!
//! ```text
//! formula  ::= imp [ "<->" imp ]                  (non-associative)
//! imp      ::= or [ "->" imp ]                    (right-associative)
//! or       ::= and { "|" and }                    (left-associative)
//! and      ::= unary { "&" unary }                (left-associative)
//! unary    ::= "!" unary | "~" unary
//!            | ("forall" | "exists") var "." formula
//!            | postfix
//! postfix  ::= primary { "^(" level ")" | "^[" level "]" }
//! level    ::= number | "w"
//! primary  ::= "(" formula ")" | term rel term
//!            | Upper [ "(" term { "," term } ")" ]
//! rel      ::= "in" | "=s" | "=w"
//! term     ::= identifier    (constant if capitalised or declared `const`)
//! ```
//!
//! `#` starts a comment that runs to the end of the line in every format.

mod lexer;
mod parser;
mod printer;
mod script;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

pub use printer::print_formula;
pub use script::{parse_proof, parse_registry, print_proof, print_registry};

/// Position of a token: 1-based line and column, length in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

/// Errors from reading proof scripts and registry files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{span}: line id `{id}` is already used")]
    DuplicateLineId { id: String, span: SourceSpan },
    #[error("{span}: `{atom}` is registered more than once")]
    DuplicateAtom { atom: String, span: SourceSpan },
    #[error("{span}: level {level} is invalid; levels start at 1")]
    InvalidLevel { level: u32, span: SourceSpan },
    #[error("{span}: `{text}` is not an atomic formula")]
    NotAtomic { text: String, span: SourceSpan },
    #[error("{span}: unknown schema `{name}`")]
    UnknownSchema { name: String, span: SourceSpan },
}

impl SyntaxError {
    pub fn span(&self) -> SourceSpan {
        match self {
            SyntaxError::Parse(e) => e.span,
            SyntaxError::DuplicateLineId { span, .. }
            | SyntaxError::DuplicateAtom { span, .. }
            | SyntaxError::InvalidLevel { span, .. }
            | SyntaxError::NotAtomic { span, .. }
            | SyntaxError::UnknownSchema { span, .. } => *span,
        }
    }
}

/// Parse a single formula. Capitalised identifiers in term position are
/// constants, all other term identifiers are variables.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, &BTreeSet::new())
}

/// Parse a formula with extra lowercase names declared as constants.
pub fn parse_formula_with(text: &str, consts: &BTreeSet<String>) -> Result<Formula, ParseError> {
    let mut p = parser::Parser::new(lex_text(text)?, consts);
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Lex possibly multi-line text with comments stripped. The end-of-input
/// token sits on the last line that had any tokens.
fn lex_text(text: &str) -> Result<Vec<lexer::Token>, ParseError> {
    let mut all = Vec::new();
    let mut eof = None;
    for (i, line) in text.split('\n').enumerate() {
        let code = line.split('#').next().unwrap_or("");
        let mut toks = lexer::lex(code, i + 1, 1)?;
        let line_eof = toks.pop();
        if !toks.is_empty() || eof.is_none() {
            eof = line_eof;
        }
        all.extend(toks);
    }
    all.extend(eof);
    Ok(all)
}
