//! Recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := ("!"|"[]"|"<>"|"%"|"^"|"@"|"~"|"#"|"o") unary | atom
//! atom    := "true" | "false" | IDENT | "(" formula ")"
//! ```
//!
//! Identifiers start with a letter and continue with letters, digits or
//! underscores. The words `true`, `false` and `o` are reserved; `o` is the
//! essence operator, so `op` is an atom while `o p` and `o(p)` are `∘p`.

use std::fmt;

use thiserror::Error;

use super::{Formula, LanguageTag, Modality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown operator `{op}` at offset {position}")]
    UnknownOperator { position: usize, op: String },
    #[error("modality {modality} is outside the sublanguage {language}")]
    OutsideLanguage {
        modality: Modality,
        language: LanguageTag,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    True,
    False,
    Ident(String),
    LParen,
    RParen,
    Bang,
    BoxOp,
    Diamond,
    Delta,
    Nabla,
    Bullet,
    BlackDown,
    Circ,
    Tri,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Token::True => "`true`",
            Token::False => "`false`",
            Token::Ident(name) => return write!(f, "identifier `{name}`"),
            Token::LParen => "`(`",
            Token::RParen => "`)`",
            Token::Bang => "`!`",
            Token::BoxOp => "`[]`",
            Token::Diamond => "`<>`",
            Token::Delta => "`%`",
            Token::Nabla => "`^`",
            Token::Bullet => "`@`",
            Token::BlackDown => "`~`",
            Token::Circ => "`o`",
            Token::Tri => "`#`",
            Token::Amp => "`&`",
            Token::Bar => "`|`",
            Token::Arrow => "`->`",
            Token::DoubleArrow => "`<->`",
            Token::Eof => "end of input",
        };
        f.write_str(s)
    }
}

const UNARY_START: &[&str] = &[
    "`!`",
    "`[]`",
    "`<>`",
    "`%`",
    "`^`",
    "`@`",
    "`~`",
    "`#`",
    "`o`",
    "`true`",
    "`false`",
    "identifier",
    "`(`",
];

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "true" => Token::True,
                "false" => Token::False,
                "o" => Token::Circ,
                _ => Token::Ident(word.to_string()),
            };
            out.push((start, tok));
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Token::DoubleArrow, 3)
        } else if rest.starts_with("->") {
            (Token::Arrow, 2)
        } else if rest.starts_with("[]") {
            (Token::BoxOp, 2)
        } else if rest.starts_with("<>") {
            (Token::Diamond, 2)
        } else {
            let tok = match c {
                b'(' => Token::LParen,
                b')' => Token::RParen,
                b'!' => Token::Bang,
                b'%' => Token::Delta,
                b'^' => Token::Nabla,
                b'@' => Token::Bullet,
                b'~' => Token::BlackDown,
                b'#' => Token::Tri,
                b'&' => Token::Amp,
                b'|' => Token::Bar,
                _ => {
                    let op: String = rest
                        .chars()
                        .take_while(|ch| !ch.is_whitespace() && !ch.is_ascii_alphanumeric())
                        .collect();
                    let op = if op.is_empty() {
                        rest.chars().next().map(String::from).unwrap_or_default()
                    } else {
                        op
                    };
                    return Err(ParseError::UnknownOperator {
                        position: start,
                        op,
                    });
                }
            };
            (tok, 1)
        };
        out.push((start, tok));
        i += len;
    }
    out.push((text.len(), Token::Eof));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Token::DoubleArrow {
            self.bump();
            let rhs = self.imp()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Token::Bar {
            self.bump();
            let rhs = self.and()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::Amp {
            self.bump();
            let rhs = self.unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let apply: fn(Formula) -> Formula = match self.peek() {
            Token::Bang => Formula::not,
            Token::BoxOp => Formula::boxed,
            Token::Diamond => Formula::diamond,
            Token::Delta => Formula::delta,
            Token::Nabla => Formula::nabla,
            Token::Circ => Formula::circ,
            Token::Bullet => Formula::bullet,
            Token::Tri => Formula::tri,
            Token::BlackDown => Formula::blackdown,
            _ => return self.atom(),
        };
        self.bump();
        Ok(apply(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::False => {
                self.bump();
                Ok(Formula::bottom())
            }
            Token::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Token::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`", "`<->`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(UNARY_START)),
        }
    }
}

/// Parses a formula of the full language, expanding all derived connectives.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let formula = parser.iff()?;
    if *parser.peek() != Token::Eof {
        return Err(parser.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(formula)
}

/// Parses and rejects formulas that use a modality outside `tag`.
pub fn parse_in(text: &str, tag: LanguageTag) -> Result<Formula, ParseError> {
    let formula = parse(text)?;
    match formula.foreign_modality(tag) {
        Some(modality) => Err(ParseError::OutsideLanguage {
            modality,
            language: tag,
        }),
        None => Ok(formula),
    }
}
