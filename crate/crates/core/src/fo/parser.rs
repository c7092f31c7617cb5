//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula := quant | impl
//! quant   := ("exists" | "forall") IDENT "." formula
//! impl    := disj ("->" impl)?
//! disj    := conj ("|" conj)*
//! conj    := lit ("&" lit)*
//! lit     := "~" lit | "(" formula ")" | atom
//! atom    := IDENT "(" term ("," term)* ")" | term "=" term
//! term    := IDENT
//! ```
//!
//! Identifiers naming a constant of the signature become constants, all other
//! term identifiers are variables. Offsets in errors count characters.

use super::formula::{Formula, Term};
use super::signature::Signature;
use super::FoError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Exists,
    Forall,
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    And,
    Or,
    Not,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Exists => "`exists`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Not => "`~`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> FoError {
    FoError::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FoError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '=' => Tok::Eq,
            '&' => Tok::And,
            '|' => Tok::Or,
            '~' => Tok::Not,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        toks.push((tok, start));
        i += 1;
    }
    toks.push((Tok::Eof, chars.len()));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), FoError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn ident(&mut self) -> Result<String, FoError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(syntax(
                self.offset(),
                format!("expected identifier, found {}", other.describe()),
            )),
        }
    }

    fn formula(&mut self) -> Result<Formula, FoError> {
        match self.peek() {
            Tok::Exists | Tok::Forall => {
                let is_exists = self.bump() == Tok::Exists;
                let at = self.offset();
                let var = self.ident()?;
                if self.sig.has_constant(&var) || self.sig.arity(&var).is_some() {
                    return Err(syntax(at, format!("cannot quantify over symbol `{var}`")));
                }
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if is_exists {
                    Formula::exists(var, body)
                } else {
                    Formula::forall(var, body)
                })
            }
            _ => self.implication(),
        }
    }

    fn implication(&mut self) -> Result<Formula, FoError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, FoError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, FoError> {
        let mut acc = self.literal()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.literal()?);
        }
        Ok(acc)
    }

    fn literal(&mut self) -> Result<Formula, FoError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.literal()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, FoError> {
        let at = self.offset();
        let name = self.ident()?;
        if *self.peek() == Tok::LParen {
            self.bump();
            let mut args = vec![self.term()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
            let expected = self
                .sig
                .arity(&name)
                .ok_or_else(|| FoError::UnknownSymbol(name.clone()))?;
            if expected != args.len() {
                return Err(FoError::ArityMismatch {
                    name,
                    expected,
                    found: args.len(),
                });
            }
            return Ok(Formula::Atom(name, args));
        }
        let lhs = self.resolve_term(name, at)?;
        self.expect(Tok::Eq)?;
        let rhs = self.term()?;
        Ok(Formula::Equality(lhs, rhs))
    }

    fn term(&mut self) -> Result<Term, FoError> {
        let at = self.offset();
        let name = self.ident()?;
        self.resolve_term(name, at)
    }

    fn resolve_term(&self, name: String, at: usize) -> Result<Term, FoError> {
        if self.sig.has_constant(&name) {
            Ok(Term::Const(name))
        } else if self.sig.arity(&name).is_some() {
            Err(syntax(at, format!("relation symbol `{name}` used as a term")))
        } else {
            Ok(Term::Var(name))
        }
    }
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, FoError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(
            p.offset(),
            format!("unexpected {} after formula", p.peek().describe()),
        ));
    }
    Ok(f)
}

/// Parses a `.fml` file: one formula per line, `#` starts a comment, blank
/// lines are skipped. Errors carry the 1-based line number.
pub fn parse_formula_file(text: &str, sig: &Signature) -> Result<Vec<Formula>, FoError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let f = parse_formula(body, sig).map_err(|e| FoError::AtLine {
            line: i + 1,
            source: Box::new(e),
        })?;
        out.push(f);
    }
    Ok(out)
}
