//! Proof-script and registry file formats.
//!
//! Proof script:
//!
//! ```text
//! const Rt                       # optional constant declarations
//! 1: Q -> R -> Q ; axiom LP1
//! 2: P ; hyp
//! 3: B ; mp 2 1
//! ```
//!
//! Registry: one `<atomic formula> <level>` pair per line.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::lexer::{self, Tok};
use super::parser::Parser;
use super::{ParseError, SourceSpan, SyntaxError};
use crate::formula::Formula;
use crate::proof::{Justification, MetaValue, ProofScript};
use crate::registry::Registry;
use crate::schema::SchemaId;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Character column (1-based) of byte offset `byte` in `line`.
fn col_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn span_at(line_no: usize, line: &str, byte: usize, len: usize) -> SourceSpan {
    SourceSpan { line: line_no, column: col_of(line, byte), length: len.max(1) }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Collect `const` directives. Returns the declared names in order.
fn const_directives(text: &str) -> Result<Vec<String>, SyntaxError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let code = strip_comment(raw);
        let trimmed = code.trim_start();
        let Some(rest) = trimmed.strip_prefix("const") else { continue };
        if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
            continue;
        }
        let base = code.len() - trimmed.len() + "const".len();
        let names: Vec<&str> = rest.split_whitespace().collect();
        if names.is_empty() {
            return Err(ParseError {
                span: span_at(i + 1, raw, base.saturating_sub(1), 1),
                expected: "a constant name after `const`".into(),
                found: "end of line".into(),
            }
            .into());
        }
        for name in names {
            let off = base + rest.find(name).unwrap_or(0);
            if !is_ident(name) || ["forall", "exists", "in", "w"].contains(&name) {
                return Err(ParseError {
                    span: span_at(i + 1, raw, off, name.len()),
                    expected: "an identifier".into(),
                    found: format!("`{name}`"),
                }
                .into());
            }
            if !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        }
    }
    Ok(out)
}

fn is_const_directive(code: &str) -> bool {
    let t = code.trim_start();
    t.strip_prefix("const").is_some_and(|r| r.is_empty() || r.starts_with(char::is_whitespace))
}

/// Parse a proof script.
pub fn parse_proof(text: &str) -> Result<ProofScript, SyntaxError> {
    let constants = const_directives(text)?;
    let consts: BTreeSet<String> = constants.iter().cloned().collect();
    let mut script = ProofScript { constants, lines: Vec::new() };
    let mut seen = BTreeSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let code = strip_comment(raw);
        if code.trim().is_empty() || is_const_directive(code) {
            continue;
        }
        let lead = code.len() - code.trim_start().len();
        let Some(colon) = code.find(':') else {
            return Err(ParseError {
                span: span_at(line_no, raw, lead, code.trim().len()),
                expected: "`<id>: <formula> ; <justification>`".into(),
                found: "a line without `:`".into(),
            }
            .into());
        };
        let id = code[..colon].trim();
        if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(ParseError {
                span: span_at(line_no, raw, lead, colon.saturating_sub(lead)),
                expected: "a line id made of letters, digits and `_`".into(),
                found: format!("`{id}`"),
            }
            .into());
        }
        if !seen.insert(id.to_string()) {
            return Err(SyntaxError::DuplicateLineId {
                id: id.to_string(),
                span: span_at(line_no, raw, lead, id.len()),
            });
        }
        let body_start = colon + 1;
        let Some(semi_rel) = code[body_start..].find(';') else {
            return Err(ParseError {
                span: span_at(line_no, raw, code.trim_end().len().saturating_sub(1), 1),
                expected: "`;` followed by a justification".into(),
                found: "end of line".into(),
            }
            .into());
        };
        let semi = body_start + semi_rel;
        let formula = {
            let toks = lexer::lex(&code[body_start..semi], line_no, col_of(raw, body_start))?;
            let mut p = Parser::new(toks, &consts);
            let f = p.formula()?;
            p.expect_eof()?;
            f
        };
        let justification = parse_justification(raw, line_no, semi + 1, &code[semi + 1..], &consts)?;
        script.push(id, formula, justification);
    }
    Ok(script)
}

fn parse_justification(
    raw: &str,
    line_no: usize,
    start: usize,
    text: &str,
    consts: &BTreeSet<String>,
) -> Result<Justification, SyntaxError> {
    let lead = text.len() - text.trim_start().len();
    let trimmed = text.trim_start();
    let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
    let keyword = &trimmed[..kw_len];
    let kw_span = span_at(line_no, raw, start + lead, keyword.len());
    let rest_off = start + lead + kw_len;
    let toks = lexer::lex(&trimmed[kw_len..], line_no, col_of(raw, rest_off))?;
    let mut p = Parser::new(toks, consts);

    let just = match keyword {
        "hyp" => Justification::Hypothesis,
        "mp" | "mt" => {
            let a = line_ref(&mut p)?;
            let b = line_ref(&mut p)?;
            if keyword == "mp" {
                Justification::Mp(a, b)
            } else {
                Justification::Mt(a, b)
            }
        }
        "gen" | "exintro" => {
            let a = line_ref(&mut p)?;
            let x = p.bound_var()?;
            if keyword == "gen" {
                Justification::Gen(a, x)
            } else {
                Justification::ExIntro(a, x)
            }
        }
        "eqexpl" => Justification::EqExplosion(line_ref(&mut p)?),
        "defneg-unfold" => Justification::DefNegUnfold(line_ref(&mut p)?),
        "comp" => Justification::Comp(p.formula()?),
        "axiom" => parse_axiom(&mut p)?,
        "" => {
            return Err(
                ParseError { span: kw_span, expected: "a justification".into(), found: "end of line".into() }.into()
            )
        }
        other => {
            return Err(ParseError {
                span: kw_span,
                expected: "one of `axiom`, `hyp`, `mp`, `mt`, `gen`, `exintro`, `eqexpl`, `comp`, `defneg-unfold`"
                    .into(),
                found: format!("`{other}`"),
            }
            .into())
        }
    };
    p.expect_eof()?;
    Ok(just)
}

fn line_ref(p: &mut Parser<'_>) -> Result<String, ParseError> {
    match p.peek().clone() {
        Tok::Num(n) => {
            p.bump();
            Ok(n.to_string())
        }
        Tok::Ident(s) => {
            p.bump();
            Ok(s)
        }
        _ => Err(p.error("a line id")),
    }
}

fn parse_axiom(p: &mut Parser<'_>) -> Result<Justification, SyntaxError> {
    let span = p.span();
    let name = match p.peek().clone() {
        Tok::Ident(s) => s,
        Tok::Num(n) => n.to_string(),
        _ => return Err(p.error("a schema identifier").into()),
    };
    p.bump();
    let schema: SchemaId = name.parse().map_err(|_| SyntaxError::UnknownSchema { name: name.clone(), span })?;

    let mut level = None;
    if matches!(p.peek(), Tok::Ident(n) if n == "n") {
        p.bump();
        p.expect(Tok::Eq, "`=` after `n`")?;
        match p.peek().clone() {
            Tok::Num(k) => {
                p.bump();
                level = Some(k);
            }
            _ => return Err(p.error("a level number").into()),
        }
    }

    let mut bindings = Vec::new();
    if *p.peek() == Tok::LBrace {
        p.bump();
        if *p.peek() != Tok::RBrace {
            loop {
                let meta = match p.peek().clone() {
                    Tok::Ident(m) => m,
                    _ => return Err(p.error("a metavariable").into()),
                };
                p.bump();
                p.expect(Tok::Assign, "`:=`")?;
                let value = if meta.starts_with(|c: char| c.is_ascii_lowercase()) {
                    MetaValue::Term(p.term()?)
                } else {
                    MetaValue::Formula(p.formula()?)
                };
                bindings.push((meta, value));
                if *p.peek() == Tok::Comma {
                    p.bump();
                } else {
                    break;
                }
            }
        }
        p.expect(Tok::RBrace, "`,` or `}`")?;
    }
    Ok(Justification::Axiom { schema, level, bindings })
}

/// Parse a registry file into `V_n` assignments.
pub fn parse_registry(text: &str) -> Result<Registry, SyntaxError> {
    let consts: BTreeSet<String> = const_directives(text)?.into_iter().collect();
    let mut reg = Registry::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let code = strip_comment(raw);
        if code.trim().is_empty() || is_const_directive(code) {
            continue;
        }
        let trimmed = code.trim_end();
        let split = trimmed.rfind(char::is_whitespace);
        let (atom_text, level_off) = match split {
            Some(k) => (&trimmed[..k], k + 1),
            None => {
                return Err(ParseError {
                    span: span_at(line_no, raw, trimmed.len().saturating_sub(1), 1),
                    expected: "`<atom> <level>`".into(),
                    found: "a single word".into(),
                }
                .into())
            }
        };
        let level_text = &trimmed[level_off..];
        let level_span = span_at(line_no, raw, level_off, level_text.len());
        let level: u32 = level_text.parse().map_err(|_| ParseError {
            span: level_span,
            expected: "a level (natural number)".into(),
            found: format!("`{level_text}`"),
        })?;
        let toks = lexer::lex(atom_text, line_no, 1)?;
        let mut p = Parser::new(toks, &consts);
        let atom = p.formula()?;
        p.expect_eof()?;
        let lead = atom_text.len() - atom_text.trim_start().len();
        let atom_span = span_at(line_no, raw, lead, atom_text.trim().len());
        if !atom.is_atomic() {
            return Err(SyntaxError::NotAtomic { text: atom_text.trim().to_string(), span: atom_span });
        }
        if level == 0 {
            return Err(SyntaxError::InvalidLevel { level, span: level_span });
        }
        if reg.in_vhat(&atom) {
            return Err(SyntaxError::DuplicateAtom { atom: atom.to_string(), span: atom_span });
        }
        reg.insert(atom, level).expect("validated above");
    }
    Ok(reg)
}

fn lowercase_constants<'a>(fs: impl Iterator<Item = &'a Formula>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for f in fs {
        out.extend(f.constants().into_iter().filter(|c| !c.starts_with(|c: char| c.is_ascii_uppercase())));
    }
    out
}

fn print_justification(j: &Justification) -> String {
    match j {
        Justification::Hypothesis => "hyp".into(),
        Justification::Mp(a, b) => format!("mp {a} {b}"),
        Justification::Mt(a, b) => format!("mt {a} {b}"),
        Justification::Gen(a, x) => format!("gen {a} {x}"),
        Justification::ExIntro(a, x) => format!("exintro {a} {x}"),
        Justification::EqExplosion(a) => format!("eqexpl {a}"),
        Justification::DefNegUnfold(a) => format!("defneg-unfold {a}"),
        Justification::Comp(f) => format!("comp {f}"),
        Justification::Axiom { schema, level, bindings } => {
            let mut s = format!("axiom {schema}");
            if let Some(n) = level {
                write!(s, " n={n}").unwrap();
            }
            if !bindings.is_empty() {
                let items: Vec<String> = bindings
                    .iter()
                    .map(|(m, v)| match v {
                        MetaValue::Formula(f) => format!("{m}:={f}"),
                        MetaValue::Term(t) => format!("{m}:={t}"),
                    })
                    .collect();
                write!(s, " {{{}}}", items.join(", ")).unwrap();
            }
            s
        }
    }
}

/// Render a script in the file format; `parse_proof` reads it back.
pub fn print_proof(script: &ProofScript) -> String {
    let mut consts: Vec<String> = script.constants.clone();
    let formulas = script.lines.iter().map(|l| &l.formula);
    for c in lowercase_constants(formulas) {
        if !consts.contains(&c) {
            consts.push(c);
        }
    }
    let mut out = String::new();
    for c in &consts {
        writeln!(out, "const {c}").unwrap();
    }
    for line in &script.lines {
        writeln!(out, "{}: {} ; {}", line.id, line.formula, print_justification(&line.justification)).unwrap();
    }
    out
}

pub fn print_registry(reg: &Registry) -> String {
    let mut out = String::new();
    for c in lowercase_constants(reg.iter().map(|(f, _)| f)) {
        writeln!(out, "const {c}").unwrap();
    }
    for (atom, n) in reg.iter() {
        writeln!(out, "{atom} {n}").unwrap();
    }
    out
}
