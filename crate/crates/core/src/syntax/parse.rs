//! Recursive-descent parser for the ASCII concrete syntax.
//!
//! ```text
//! concept := top | bottom | NAME | {NAME} | not concept
//!          | some role concept | all role concept
//!          | atleast NUM basic concept | atmost NUM basic concept
//!          | self NAME
//!          | ( concept ((and concept)* | (or concept)*) )
//! role    := primary *...
//! primary := NAME | eps | U | inv(role) | test(concept)
//!          | ( role ((; role)* | ('|' role)*) )
//! basic   := NAME | inv(NAME)
//! ```
//!
//! Grouped `and`/`or`/`;`/`|` chains associate to the left and may not mix
//! operators without parentheses.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{Assertion, BasicRole, Concept, Gci, KnowledgeBase, Role, RoleAxiom};

/// Largest cardinality accepted in a number restriction.
pub const MAX_NUMBER: u64 = 1 << 32;

const KEYWORDS: &[&str] = &[
    "top", "bottom", "not", "and", "or", "some", "all", "atleast", "atmost", "self", "inv", "test",
    "eps", "U", "sub",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {}, found {found}", .expected.join(" or "))]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(&'static str),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, first_line: usize) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, cl) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                column: cl,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Number(s),
                line: l,
                column: cl,
            });
            continue;
        }
        chars.next();
        col += 1;
        let sym = match c {
            '(' => "(",
            ')' => ")",
            '{' => "{",
            '}' => "}",
            ';' => ";",
            '|' => "|",
            '*' => "*",
            ',' => ",",
            ':' => ":",
            '=' => "=",
            '!' if chars.peek() == Some(&'=') => {
                chars.next();
                col += 1;
                "!="
            }
            other => {
                return Err(SyntaxError {
                    line: l,
                    column: cl,
                    expected: vec!["a token".into()],
                    found: format!("`{other}`"),
                })
            }
        };
        out.push(Token {
            tok: Tok::Sym(sym),
            line: l,
            column: cl,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str, first_line: usize) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            toks: lex(text, first_line)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let t = &self.toks[self.pos];
        SyntaxError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn is_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Tok::Sym(s) if *s == sym)
    }

    fn expect_sym(&mut self, sym: &'static str) -> Result<(), SyntaxError> {
        if self.is_sym(sym) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{sym}`")]))
        }
    }

    fn expect_kw(&mut self, kw: &'static str) -> Result<(), SyntaxError> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{kw}`")]))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn number(&mut self) -> Result<u64, SyntaxError> {
        match self.peek() {
            Tok::Number(s) => match s.parse::<u64>() {
                Ok(n) if n <= MAX_NUMBER => {
                    self.bump();
                    Ok(n)
                }
                _ => Err(self.error(&["a number at most 2^32"])),
            },
            _ => Err(self.error(&["a number"])),
        }
    }

    fn end(&mut self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn concept(&mut self) -> Result<Concept, SyntaxError> {
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            Tok::Sym("{") => {
                self.bump();
                let a = self.name("an individual name")?;
                self.expect_sym("}")?;
                return Ok(Concept::Nominal(a));
            }
            Tok::Sym("(") => {
                self.bump();
                return self.concept_group();
            }
            _ => return Err(self.error(&["a concept"])),
        };
        match kw.as_str() {
            "top" => {
                self.bump();
                Ok(Concept::Top)
            }
            "bottom" => {
                self.bump();
                Ok(Concept::Bottom)
            }
            "not" => {
                self.bump();
                Ok(Concept::Not(Arc::new(self.concept()?)))
            }
            "some" | "all" => {
                self.bump();
                let r = self.role()?;
                let c = self.concept()?;
                Ok(if kw == "some" {
                    Concept::Some(Arc::new(r), Arc::new(c))
                } else {
                    Concept::All(Arc::new(r), Arc::new(c))
                })
            }
            "atleast" | "atmost" => {
                self.bump();
                let n = self.number()?;
                let b = self.basic()?;
                let c = Arc::new(self.concept()?);
                Ok(if kw == "atleast" {
                    Concept::AtLeast(n, b, c)
                } else {
                    Concept::AtMost(n, b, c)
                })
            }
            "self" => {
                self.bump();
                Ok(Concept::SelfLoop(self.name("a role name")?))
            }
            _ => Ok(Concept::Atom(self.name("a concept")?)),
        }
    }

    fn concept_group(&mut self) -> Result<Concept, SyntaxError> {
        let mut acc = self.concept()?;
        let op = if self.is_kw("and") {
            "and"
        } else if self.is_kw("or") {
            "or"
        } else {
            self.expect_sym(")")
                .map_err(|_| self.error(&["`and`", "`or`", "`)`"]))?;
            return Ok(acc);
        };
        while self.is_kw(op) {
            self.bump();
            let next = Arc::new(self.concept()?);
            acc = if op == "and" {
                Concept::And(Arc::new(acc), next)
            } else {
                Concept::Or(Arc::new(acc), next)
            };
        }
        self.expect_sym(")")
            .map_err(|_| self.error(&[&format!("`{op}`"), "`)`"]))?;
        Ok(acc)
    }

    fn basic(&mut self) -> Result<BasicRole, SyntaxError> {
        if self.is_kw("inv") {
            self.bump();
            self.expect_sym("(")?;
            let n = self.name("a role name")?;
            self.expect_sym(")")?;
            Ok(BasicRole::inv(n))
        } else {
            Ok(BasicRole::new(self.name("a role name or `inv`")?))
        }
    }

    fn role(&mut self) -> Result<Role, SyntaxError> {
        let mut r = self.role_primary()?;
        while self.is_sym("*") {
            self.bump();
            r = Role::Star(Arc::new(r));
        }
        Ok(r)
    }

    fn role_primary(&mut self) -> Result<Role, SyntaxError> {
        if self.is_sym("(") {
            self.bump();
            let mut acc = self.role()?;
            let op = if self.is_sym(";") {
                ";"
            } else if self.is_sym("|") {
                "|"
            } else {
                self.expect_sym(")")
                    .map_err(|_| self.error(&["`;`", "`|`", "`)`"]))?;
                return Ok(acc);
            };
            while self.is_sym(op) {
                self.bump();
                let next = Arc::new(self.role()?);
                acc = if op == ";" {
                    Role::Compose(Arc::new(acc), next)
                } else {
                    Role::Union(Arc::new(acc), next)
                };
            }
            self.expect_sym(")")
                .map_err(|_| self.error(&[&format!("`{op}`"), "`)`"]))?;
            return Ok(acc);
        }
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.error(&["a role"])),
        };
        match kw.as_str() {
            "eps" => {
                self.bump();
                Ok(Role::Epsilon)
            }
            "U" => {
                self.bump();
                Ok(Role::Universal)
            }
            "inv" => {
                self.bump();
                self.expect_sym("(")?;
                let r = self.role()?;
                self.expect_sym(")")?;
                Ok(Role::Inverse(Arc::new(r)))
            }
            "test" => {
                self.bump();
                self.expect_sym("(")?;
                let c = self.concept()?;
                self.expect_sym(")")?;
                Ok(Role::Test(Arc::new(c)))
            }
            _ => Ok(Role::Atom(self.name("a role")?)),
        }
    }

    fn role_axiom(&mut self) -> Result<RoleAxiom, SyntaxError> {
        if self.is_kw("eps") {
            self.bump();
            self.expect_kw("sub")?;
            return Ok(RoleAxiom::EpsSub(self.name("a role name")?));
        }
        let mut chain = vec![self.basic()?];
        while self.is_sym(";") {
            self.bump();
            chain.push(self.basic()?);
        }
        if !self.is_kw("sub") {
            return Err(self.error(&["`;`", "`sub`"]));
        }
        self.bump();
        Ok(RoleAxiom::ChainSub(chain, self.name("a role name")?))
    }

    fn gci(&mut self) -> Result<Gci, SyntaxError> {
        let lhs = self.concept()?;
        self.expect_kw("sub")?;
        let rhs = self.concept()?;
        Ok(Gci { lhs, rhs })
    }

    fn assertion(&mut self) -> Result<Assertion, SyntaxError> {
        if self.is_sym("(") {
            self.bump();
            let a = self.name("an individual name")?;
            self.expect_sym(",")?;
            let b = self.name("an individual name")?;
            self.expect_sym(")")?;
            self.expect_sym(":")?;
            let negated = self.is_kw("not");
            if negated {
                self.bump();
            }
            let r = self.role()?;
            return Ok(if negated {
                Assertion::NegRoleOf(r, a, b)
            } else {
                Assertion::RoleOf(r, a, b)
            });
        }
        let a = self.name("an individual name or `(`")?;
        match self.bump() {
            Tok::Sym(":") => Ok(Assertion::ConceptOf(self.concept()?, a)),
            Tok::Sym("=") => Ok(Assertion::Eq(a, self.name("an individual name")?)),
            Tok::Sym("!=") => Ok(Assertion::Neq(a, self.name("an individual name")?)),
            _ => {
                self.pos -= 1;
                Err(self.error(&["`:`", "`=`", "`!=`"]))
            }
        }
    }
}

fn whole<T>(
    text: &str,
    f: impl FnOnce(&mut Parser) -> Result<T, SyntaxError>,
) -> Result<T, SyntaxError> {
    let mut p = Parser::new(text, 1)?;
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

pub fn parse_concept(text: &str) -> Result<Concept, SyntaxError> {
    whole(text, Parser::concept)
}

pub fn parse_role(text: &str) -> Result<Role, SyntaxError> {
    whole(text, Parser::role)
}

pub fn parse_role_axiom(text: &str) -> Result<RoleAxiom, SyntaxError> {
    whole(text, Parser::role_axiom)
}

pub fn parse_gci(text: &str) -> Result<Gci, SyntaxError> {
    whole(text, Parser::gci)
}

pub fn parse_assertion(text: &str) -> Result<Assertion, SyntaxError> {
    whole(text, Parser::assertion)
}

/// Parses a knowledge base written one axiom per line, each prefixed by
/// `rbox:`, `tbox:` or `abox:`. Blank lines and `#` comments are skipped.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, SyntaxError> {
    let mut kb = KnowledgeBase::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut p = Parser::new(line, i + 1)?;
        let section = match p.peek() {
            Tok::Ident(s) if matches!(s.as_str(), "rbox" | "tbox" | "abox") => s.clone(),
            _ => return Err(p.error(&["`rbox:`", "`tbox:`", "`abox:`"])),
        };
        p.bump();
        p.expect_sym(":")?;
        match section.as_str() {
            "rbox" => kb.rbox.push(p.role_axiom()?),
            "tbox" => kb.tbox.push(p.gci()?),
            _ => kb.abox.push(p.assertion()?),
        }
        p.end()?;
    }
    Ok(kb)
}
