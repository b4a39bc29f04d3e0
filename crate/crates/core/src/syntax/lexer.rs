use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(u32),
    Bang,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Caret,
    Dot,
    Comma,
    EqS,
    EqW,
    Eq,
    Assign,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Bang => "!",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "<->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Caret => "^",
            Tok::Dot => ".",
            Tok::Comma => ",",
            Tok::EqS => "=s",
            Tok::EqW => "=w",
            Tok::Eq => "=",
            Tok::Assign => ":=",
            Tok::Ident(_) | Tok::Num(_) | Tok::Eof => "",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokenize one physical line (no newlines). `line` and `col0` place the
/// slice inside the original input so spans point at the right place.
pub(crate) fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let span = |start: usize, len: usize| SourceSpan { line, column: col0 + start, length: len.max(1) };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let peek = |k: usize| chars.get(i + k).copied();
        let tok = if is_ident_start(c) {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<u32>().map_err(|_| ParseError {
                span: span(start, i - start),
                expected: "a number that fits in 32 bits".into(),
                found: format!("`{text}`"),
            })?;
            Tok::Num(n)
        } else {
            let (tok, len) = match (c, peek(1), peek(2)) {
                ('<', Some('-'), Some('>')) => (Tok::DArrow, 3),
                ('-', Some('>'), _) => (Tok::Arrow, 2),
                (':', Some('='), _) => (Tok::Assign, 2),
                ('=', Some(k @ ('s' | 'w')), after) if !after.is_some_and(is_ident_char) => {
                    (if k == 's' { Tok::EqS } else { Tok::EqW }, 2)
                }
                ('=', _, _) => (Tok::Eq, 1),
                ('!', _, _) => (Tok::Bang, 1),
                ('~', _, _) => (Tok::Tilde, 1),
                ('&', _, _) => (Tok::Amp, 1),
                ('|', _, _) => (Tok::Bar, 1),
                ('(', _, _) => (Tok::LParen, 1),
                (')', _, _) => (Tok::RParen, 1),
                ('[', _, _) => (Tok::LBrack, 1),
                (']', _, _) => (Tok::RBrack, 1),
                ('{', _, _) => (Tok::LBrace, 1),
                ('}', _, _) => (Tok::RBrace, 1),
                ('^', _, _) => (Tok::Caret, 1),
                ('.', _, _) => (Tok::Dot, 1),
                (',', _, _) => (Tok::Comma, 1),
                _ => {
                    return Err(ParseError {
                        span: span(start, 1),
                        expected: "a token".into(),
                        found: format!("`{c}`"),
                    })
                }
            };
            i += len;
            tok
        };
        out.push(Token { tok, span: span(start, i - start) });
    }
    // End of input points at the last character (or the first column of an
    // empty slice, with zero length) so the span always lies inside the text.
    let eof_col = if chars.is_empty() { 1 } else { chars.len() };
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan { line, column: col0 + eof_col - 1, length: usize::from(!chars.is_empty()) },
    });
    Ok(out)
}
