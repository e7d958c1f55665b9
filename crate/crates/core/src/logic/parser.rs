//! Recursive descent parser for terms and formulas.
//!
//! ```text
//! term    := sum
//! sum     := prod { "+" prod }
//! prod    := unary { "." unary }
//! unary   := "~" unary | postfix
//! postfix := atom { "'" | "*" }
//! atom    := "0" | "1" | ident | "(" term ")"
//!
//! formula := "exists" ident "." formula | "forall" ident "." formula | imp
//! imp     := or [ "->" imp ]
//! or      := and { "|" and }
//! and     := lit { "&" lit }
//! lit     := "!" lit | quantified | "(" formula ")" | term ("=" | "!=") term
//! ```

use thiserror::Error;

use super::ast::{Formula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("operator `{op}` at column {pos} is not in the De Morgan signature")]
    Signature { pos: usize, op: char },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Plus,
    Dot,
    Tilde,
    Prime,
    Star,
    LParen,
    RParen,
    Eq,
    Ne,
    And,
    Or,
    Bang,
    Arrow,
    Exists,
    Forall,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::End => "end of input".to_string(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str, sig: Signature) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '.' => Tok::Dot,
            '~' => Tok::Tilde,
            '\'' | '*' if sig == Signature::Dm => {
                return Err(ParseError::Signature { pos, op: c });
            }
            '\'' => Tok::Prime,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            '&' => Tok::And,
            '|' => Tok::Or,
            '!' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Tok::Ne
            }
            '!' => Tok::Bang,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                match lit.as_str() {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    _ => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: format!("unknown constant `{lit}`"),
                        })
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::join(t, self.prod()?);
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(Term::dmneg(self.unary()?));
        }
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Tok::Prime => t = Term::bneg(t),
                Tok::Star => t = Term::star(t),
                _ => return Ok(t),
            }
            self.bump();
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => self.error("a term"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Exists | Tok::Forall => self.quantified(),
            _ => self.implication(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let exists = self.bump() == Tok::Exists;
        let Tok::Ident(v) = self.peek().clone() else {
            return self.error("a variable after the quantifier");
        };
        self.bump();
        self.expect(Tok::Dot, "`.` after the quantified variable")?;
        let body = self.formula()?;
        Ok(if exists {
            Formula::exists(&v, body)
        } else {
            Formula::forall(&v, body)
        })
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let l = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let r = self.implication()?;
            return Ok(Formula::implies(l, r));
        }
        Ok(l)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.literal()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.literal()?);
        }
        Ok(f)
    }

    fn literal(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.literal()?))
            }
            Tok::Exists | Tok::Forall => self.quantified(),
            Tok::LParen => {
                // `(` opens either a term of an equation or a formula
                let save = self.at;
                match self.atomic() {
                    Ok(f) => Ok(f),
                    Err(term_err) => {
                        let term_at = self.at;
                        self.at = save;
                        self.bump();
                        let inner = self.formula().and_then(|f| {
                            self.expect(Tok::RParen, "`)`")?;
                            Ok(f)
                        });
                        match inner {
                            Ok(f) => Ok(f),
                            Err(e) if self.at >= term_at => Err(e),
                            Err(_) => Err(term_err),
                        }
                    }
                }
            }
            _ => self.atomic(),
        }
    }

    fn atomic(&mut self) -> Result<Formula, ParseError> {
        let l = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Formula::eq(l, self.term()?))
            }
            Tok::Ne => {
                self.bump();
                Ok(Formula::ne(l, self.term()?))
            }
            _ => self.error("`=` or `!=`"),
        }
    }
}

pub fn parse_term(text: &str, sig: Signature) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text, sig)?,
        at: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return p.error("end of input");
    }
    Ok(t)
}

pub fn parse_formula(text: &str, sig: Signature) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text, sig)?,
        at: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.error("end of input");
    }
    Ok(f)
}

/// What to parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Term,
    Formula,
}

/// A parsed term or formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Term(Term),
    Formula(Formula),
}

impl std::fmt::Display for Ast {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ast::Term(t) => t.fmt(f),
            Ast::Formula(g) => g.fmt(f),
        }
    }
}

pub fn parse(text: &str, sig: Signature, kind: Kind) -> Result<Ast, ParseError> {
    match kind {
        Kind::Term => parse_term(text, sig).map(Ast::Term),
        Kind::Formula => parse_formula(text, sig).map(Ast::Formula),
    }
}
