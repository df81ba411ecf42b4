use thiserror::Error;

use super::{Formula, NameError, PropName, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("offset {pos}: identifier `{name}` uses the reserved prefix `_fresh`")]
    Reserved { pos: usize, name: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Reserved { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    WBox,
    WDia,
    BBox,
    BDia,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eq,
    True,
    False,
    Atom(PropName),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::WBox => "`[W]`".into(),
            Tok::WDia => "`<W>`".into(),
            Tok::BBox => "`[B]`".into(),
            Tok::BDia => "`<B>`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`I`".into(),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Atom(p) => format!("atom `{p}`"),
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str, allow_reserved: bool) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let fixed = [
            ("<->", Tok::Iff),
            ("->", Tok::Implies),
            ("[W]", Tok::WBox),
            ("<W>", Tok::WDia),
            ("[B]", Tok::BBox),
            ("<B>", Tok::BDia),
            ("~", Tok::Not),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
        ];
        if let Some((lit, tok)) = fixed.iter().find(|(lit, _)| rest.starts_with(lit)) {
            out.push((i, tok.clone()));
            i += lit.len();
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            if i < bytes.len() && bytes[i] == b':' && (word == "l" || word == "r") {
                let side = if word == "l" { Side::Left } else { Side::Right };
                i += 1;
                let id_start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let ident = &text[id_start..i];
                let name = if allow_reserved && ident.starts_with('_') {
                    PropName::parse_key(&text[start..i], true)
                } else {
                    PropName::new(side, ident)
                };
                let name = name.map_err(|e| match e {
                    NameError::Reserved(name) => ParseError::Reserved {
                        pos: id_start,
                        name,
                    },
                    _ if ident.is_empty() => syntax(id_start, "expected an identifier after the side prefix"),
                    _ => syntax(id_start, format!("invalid identifier `{ident}`")),
                })?;
                out.push((start, Tok::Atom(name)));
                continue;
            }
            let tok = match word {
                "I" => Tok::Eq,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => {
                    return Err(syntax(
                        start,
                        format!("unexpected word `{word}` (atoms are written `l:name` or `r:name`)"),
                    ))
                }
            };
            out.push((start, tok));
            continue;
        }
        let ch = rest.chars().next().unwrap();
        return Err(syntax(i, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while self.eat(&Tok::Or) {
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Not => Formula::not(self.unary()?),
            Tok::WBox => Formula::wbox(self.unary()?),
            Tok::WDia => Formula::wdia(self.unary()?),
            Tok::BBox => Formula::bbox(self.unary()?),
            Tok::BDia => Formula::bdia(self.unary()?),
            Tok::Atom(p) => Formula::Atom(p),
            Tok::Eq => Formula::EqConst,
            Tok::True => Formula::Top,
            Tok::False => Formula::Bot,
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                inner
            }
            other => {
                return Err(syntax(
                    at,
                    format!("expected a formula, found {}", other.describe()),
                ))
            }
        })
    }
}

fn parse_with(text: &str, allow_reserved: bool) -> Result<Formula, ParseError> {
    let toks = lex(text, allow_reserved)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let phi = p.iff()?;
    if let Some(tok) = p.peek() {
        return Err(syntax(
            p.offset(),
            format!("unexpected {} after complete formula", tok.describe()),
        ));
    }
    Ok(phi)
}

/// Parses user-supplied concrete syntax. Identifiers with the `_fresh`
/// prefix are rejected.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, false)
}

/// Like [`parse`], but also accepts library-generated names such as
/// `l:_fresh0`, so that rendered normal forms can be read back.
pub fn parse_internal(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, true)
}
