//! Concrete grammar.
//!
//! ```text
//! formula := imp ('↔' formula)?
//! imp     := or ('→' imp)?
//! or      := and ('∨' and)*
//! and     := unary ('∧' unary)*
//! unary   := '¬' unary | ('∀' | '∃') var (',' var)* '.'? formula | atom
//! atom    := '(' formula ')' | P_i '(' terms ')' | V '(' terms ')'
//!          | V ('=' | '≠') V | term ('=' | '≠') term
//!          | '[' V ':=' θ_n ']' '(' formula ')'        -- templates only
//! ```
//!
//! ASCII spellings: `forall`, `exists`, `~` or `!`, `&`, `|`, `->`, `<->`,
//! `!=`, `theta_n`. Quantifier scope extends as far right as possible.
//!
//! Identifiers `x<n>` and `X<n>` name variables by index, `P<n>`, `f<n>` and
//! `c<n>` name signature symbols. Any other identifier starting with a
//! lowercase letter is an individual variable and any other starting with an
//! uppercase letter is a relation variable; these get indices above every
//! explicit index, in order of first appearance. `X<n>^k` gives the arity
//! (default 1); an occurrence without a caret refers to the innermost binder
//! of the same name, if any.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{FoVar, Formula, Signature, SoVar, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(char),
    Unexpected { expected: String, found: String },
    UnexpectedEnd { expected: String },
    ArityMismatch { symbol: String, expected: usize, found: usize },
    UnknownSymbol(String),
    IdentityDisabled,
    SchematicNotAllowed,
}

/// A parse failure with the character offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: ", self.pos + 1)?;
        match &self.kind {
            ParseErrorKind::Lexical(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::ArityMismatch {
                symbol,
                expected,
                found,
            } => write!(f, "{symbol} expects {expected} argument(s), got {found}"),
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol {s}"),
            ParseErrorKind::IdentityDisabled => f.write_str("identity is disabled in this signature"),
            ParseErrorKind::SchematicNotAllowed => {
                f.write_str("schematic instantiation is only allowed inside templates")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Caret,
    Assign,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Forall,
    Exists,
    Eq,
    Neq,
    Theta,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier {s}"),
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBrack => f.write_str("'['"),
            Tok::RBrack => f.write_str("']'"),
            Tok::Comma => f.write_str("','"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Assign => f.write_str("':='"),
            Tok::Not => f.write_str("'¬'"),
            Tok::And => f.write_str("'∧'"),
            Tok::Or => f.write_str("'∨'"),
            Tok::Imp => f.write_str("'→'"),
            Tok::Iff => f.write_str("'↔'"),
            Tok::Forall => f.write_str("'∀'"),
            Tok::Exists => f.write_str("'∃'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Neq => f.write_str("'≠'"),
            Tok::Theta => f.write_str("'θ_n'"),
        }
    }
}

fn subscript_digit(c: char) -> Option<char> {
    let d = (c as u32).checked_sub('₀' as u32)?;
    if d < 10 {
        char::from_digit(d, 10)
    } else {
        None
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos, c| ParseError {
        pos,
        kind: ParseErrorKind::Lexical(c),
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let next = chars.get(i + 1).copied();
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '^' => Some(Tok::Caret),
            '∀' => Some(Tok::Forall),
            '∃' => Some(Tok::Exists),
            '¬' | '~' => Some(Tok::Not),
            '∧' | '&' => Some(Tok::And),
            '∨' | '|' => Some(Tok::Or),
            '→' => Some(Tok::Imp),
            '↔' => Some(Tok::Iff),
            '=' => Some(Tok::Eq),
            '≠' => Some(Tok::Neq),
            _ => None,
        };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
            continue;
        }
        match c {
            '!' => {
                if next == Some('=') {
                    out.push((Tok::Neq, start));
                    i += 2;
                } else {
                    out.push((Tok::Not, start));
                    i += 1;
                }
            }
            '-' if next == Some('>') => {
                out.push((Tok::Imp, start));
                i += 2;
            }
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => {
                out.push((Tok::Iff, start));
                i += 3;
            }
            ':' if next == Some('=') => {
                out.push((Tok::Assign, start));
                i += 2;
            }
            'θ' => {
                i += 1;
                if chars.get(i) == Some(&'_') {
                    i += 1;
                }
                if chars.get(i) != Some(&'n') {
                    return Err(err(i.min(chars.len().saturating_sub(1)), 'θ'));
                }
                i += 1;
                out.push((Tok::Theta, start));
            }
            c if c.is_ascii_digit() => {
                let mut n: u32 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(chars[i].to_digit(10).unwrap()))
                        .ok_or_else(|| err(start, c))?;
                    i += 1;
                }
                out.push((Tok::Num(n), start));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while i < chars.len() {
                    let d = chars[i];
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                    } else if let Some(a) = subscript_digit(d) {
                        s.push(a);
                    } else {
                        break;
                    }
                    i += 1;
                }
                let tok = match s.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "theta_n" | "thetan" => Tok::Theta,
                    _ => Tok::Ident(s),
                };
                out.push((tok, start));
            }
            other => return Err(err(start, other)),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Pred(u32),
    Func(u32),
    Const(u32),
    Fo,
    So,
}

fn indexed(name: &str, head: char) -> Option<u32> {
    let rest = name.strip_prefix(head)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn classify(name: &str) -> Class {
    if let Some(i) = indexed(name, 'P') {
        return Class::Pred(i);
    }
    if let Some(i) = indexed(name, 'f') {
        return Class::Func(i);
    }
    if let Some(i) = indexed(name, 'c') {
        return Class::Const(i);
    }
    if name.starts_with(|c: char| c.is_ascii_uppercase()) {
        Class::So
    } else {
        Class::Fo
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    sig: &'a Signature,
    schematic: bool,
    fo_names: BTreeMap<String, u32>,
    so_names: BTreeMap<String, u32>,
    so_binders: Vec<(String, SoVar)>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature, schematic: bool) -> PResult<Self> {
        let toks = lex(text)?;
        let end = text.chars().count();
        let mut max_fo: Option<u32> = None;
        let mut max_so: Option<u32> = None;
        let mut named_fo: Vec<String> = Vec::new();
        let mut named_so: Vec<String> = Vec::new();
        for (t, _) in &toks {
            if let Tok::Ident(name) = t {
                match classify(name) {
                    Class::Fo => match indexed(name, 'x') {
                        Some(i) => max_fo = max_fo.max(Some(i)),
                        None => {
                            if !named_fo.contains(name) {
                                named_fo.push(name.clone());
                            }
                        }
                    },
                    Class::So => match indexed(name, 'X') {
                        Some(i) => max_so = max_so.max(Some(i)),
                        None => {
                            if !named_so.contains(name) {
                                named_so.push(name.clone());
                            }
                        }
                    },
                    _ => {}
                }
            }
        }
        let base_fo = max_fo.map_or(0, |m| m + 1);
        let base_so = max_so.map_or(0, |m| m + 1);
        let fo_names = named_fo
            .into_iter()
            .enumerate()
            .map(|(k, n)| (n, base_fo + k as u32))
            .collect();
        let so_names = named_so
            .into_iter()
            .enumerate()
            .map(|(k, n)| (n, base_so + k as u32))
            .collect();
        Ok(Parser {
            toks,
            at: 0,
            end,
            sig,
            schematic,
            fo_names,
            so_names,
            so_binders: Vec::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                pos: self.pos(),
                kind: ParseErrorKind::Unexpected {
                    expected: expected.to_string(),
                    found: t.to_string(),
                },
            },
            None => ParseError {
                pos: self.end,
                kind: ParseErrorKind::UnexpectedEnd {
                    expected: expected.to_string(),
                },
            },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> PResult<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.implication()?;
        if self.peek() == Some(&Tok::Iff) {
            self.at += 1;
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Imp) {
            self.at += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quantifier(),
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self) -> PResult<Formula> {
        let universal = self.bump() == Some(Tok::Forall);
        let mut vars = Vec::new();
        loop {
            vars.push(self.binder()?);
            if self.peek() == Some(&Tok::Comma) {
                self.at += 1;
                continue;
            }
            break;
        }
        if self.peek() == Some(&Tok::Dot) {
            self.at += 1;
        }
        let pushed = vars
            .iter()
            .filter(|(_, v)| matches!(v, Binder::So(_)))
            .count();
        for (name, v) in &vars {
            if let Binder::So(sv) = v {
                self.so_binders.push((name.clone(), *sv));
            }
        }
        let body = self.formula();
        for _ in 0..pushed {
            self.so_binders.pop();
        }
        let mut body = body?;
        for (_, v) in vars.into_iter().rev() {
            body = match (v, universal) {
                (Binder::Fo(x), true) => Formula::forall(x, body),
                (Binder::Fo(x), false) => Formula::exists(x, body),
                (Binder::So(x), true) => Formula::forall_so(x, body),
                (Binder::So(x), false) => Formula::exists_so(x, body),
            };
        }
        Ok(body)
    }

    fn binder(&mut self) -> PResult<(String, Binder)> {
        let pos = self.pos();
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n,
            _ => {
                self.at = self.at.saturating_sub(1);
                return Err(self.error_here("a variable"));
            }
        };
        match classify(&name) {
            Class::Fo => Ok((name.clone(), Binder::Fo(self.fo_var(&name)))),
            Class::So => {
                let arity = self.caret()?.unwrap_or(1);
                let index = self.so_index(&name);
                Ok((name, Binder::So(SoVar::new(index, arity))))
            }
            _ => Err(ParseError {
                pos,
                kind: ParseErrorKind::Unexpected {
                    expected: "a variable".to_string(),
                    found: alloc::format!("symbol {name}"),
                },
            }),
        }
    }

    fn caret(&mut self) -> PResult<Option<u32>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.at += 1;
        match self.bump() {
            Some(Tok::Num(n)) if n >= 1 => Ok(Some(n)),
            _ => {
                self.at -= 1;
                Err(self.error_here("an arity >= 1 after '^'"))
            }
        }
    }

    fn fo_var(&self, name: &str) -> FoVar {
        match indexed(name, 'x') {
            Some(i) => FoVar(i),
            None => FoVar(self.fo_names[name]),
        }
    }

    fn so_index(&self, name: &str) -> u32 {
        match indexed(name, 'X') {
            Some(i) => i,
            None => self.so_names[name],
        }
    }

    fn so_occurrence(&mut self, name: &str) -> PResult<SoVar> {
        let index = self.so_index(name);
        if let Some(arity) = self.caret()? {
            return Ok(SoVar::new(index, arity));
        }
        if let Some((_, v)) = self.so_binders.iter().rev().find(|(n, _)| n == name) {
            return Ok(*v);
        }
        Ok(SoVar::new(index, 1))
    }

    fn atom(&mut self) -> PResult<Formula> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::LBrack) => {
                if !self.schematic {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::SchematicNotAllowed,
                    });
                }
                self.at += 1;
                let name = match self.bump() {
                    Some(Tok::Ident(n)) if classify(&n) == Class::So => n,
                    _ => {
                        self.at -= 1;
                        return Err(self.error_here("a relation variable"));
                    }
                };
                let v = self.so_occurrence(&name)?;
                self.expect(Tok::Assign, "':='")?;
                self.expect(Tok::Theta, "'θ_n'")?;
                self.expect(Tok::RBrack, "']'")?;
                self.expect(Tok::LParen, "'('")?;
                self.so_binders.push((name, v));
                let body = self.formula();
                self.so_binders.pop();
                let body = body?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Formula::Inst(v, Box::new(body)))
            }
            Some(Tok::Ident(name)) => match classify(&name) {
                Class::Pred(p) => {
                    self.at += 1;
                    let arity = *self.sig.predicates.get(p as usize).ok_or(ParseError {
                        pos,
                        kind: ParseErrorKind::UnknownSymbol(name.clone()),
                    })?;
                    let args = self.arguments()?;
                    if args.len() != arity {
                        return Err(ParseError {
                            pos,
                            kind: ParseErrorKind::ArityMismatch {
                                symbol: name,
                                expected: arity,
                                found: args.len(),
                            },
                        });
                    }
                    Ok(Formula::Pred(p, args))
                }
                Class::So => {
                    self.at += 1;
                    let v = self.so_occurrence(&name)?;
                    match self.peek() {
                        Some(Tok::LParen) => {
                            let args = self.arguments()?;
                            if args.len() != v.arity as usize {
                                return Err(ParseError {
                                    pos,
                                    kind: ParseErrorKind::ArityMismatch {
                                        symbol: name,
                                        expected: v.arity as usize,
                                        found: args.len(),
                                    },
                                });
                            }
                            Ok(Formula::Apply(v, args))
                        }
                        Some(Tok::Eq) | Some(Tok::Neq) => {
                            let negated = self.bump() == Some(Tok::Neq);
                            self.identity_allowed(pos)?;
                            let rpos = self.pos();
                            let rname = match self.bump() {
                                Some(Tok::Ident(n)) if classify(&n) == Class::So => n,
                                _ => {
                                    self.at -= 1;
                                    return Err(self.error_here("a relation variable"));
                                }
                            };
                            let w = self.so_occurrence(&rname)?;
                            if w.arity != v.arity {
                                return Err(ParseError {
                                    pos: rpos,
                                    kind: ParseErrorKind::ArityMismatch {
                                        symbol: rname,
                                        expected: v.arity as usize,
                                        found: w.arity as usize,
                                    },
                                });
                            }
                            let f = Formula::SoEq(v, w);
                            Ok(if negated { Formula::not(f) } else { f })
                        }
                        _ => Err(self.error_here("'(' or '=' after a relation variable")),
                    }
                }
                _ => {
                    let lhs = self.term()?;
                    let negated = match self.peek() {
                        Some(Tok::Eq) => false,
                        Some(Tok::Neq) => true,
                        _ => return Err(self.error_here("'=' after a term")),
                    };
                    self.at += 1;
                    self.identity_allowed(pos)?;
                    let rhs = self.term()?;
                    let f = Formula::eq(lhs, rhs);
                    Ok(if negated { Formula::not(f) } else { f })
                }
            },
            _ => Err(self.error_here("a formula")),
        }
    }

    fn identity_allowed(&self, pos: usize) -> PResult<()> {
        if self.sig.identity {
            Ok(())
        } else {
            Err(ParseError {
                pos,
                kind: ParseErrorKind::IdentityDisabled,
            })
        }
    }

    fn arguments(&mut self) -> PResult<Vec<Term>> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.at += 1;
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some(Tok::Comma) => self.at += 1,
                Some(Tok::RParen) => {
                    self.at += 1;
                    return Ok(args);
                }
                _ => return Err(self.error_here("',' or ')'")),
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let pos = self.pos();
        let name = match self.peek().cloned() {
            Some(Tok::Ident(n)) => n,
            _ => return Err(self.error_here("a term")),
        };
        self.at += 1;
        match classify(&name) {
            Class::Fo => Ok(Term::Var(self.fo_var(&name))),
            Class::Const(c) => {
                if (c as usize) < self.sig.constants {
                    Ok(Term::Const(c))
                } else {
                    Err(ParseError {
                        pos,
                        kind: ParseErrorKind::UnknownSymbol(name),
                    })
                }
            }
            Class::Func(fi) => {
                let arity = *self.sig.functions.get(fi as usize).ok_or(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownSymbol(name.clone()),
                })?;
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.arguments()?
                } else {
                    Vec::new()
                };
                if args.len() != arity {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::ArityMismatch {
                            symbol: name,
                            expected: arity,
                            found: args.len(),
                        },
                    });
                }
                Ok(Term::App(fi, args))
            }
            Class::Pred(_) | Class::So => Err(ParseError {
                pos,
                kind: ParseErrorKind::Unexpected {
                    expected: "a term".to_string(),
                    found: alloc::format!("identifier {name}"),
                },
            }),
        }
    }
}

enum Binder {
    Fo(FoVar),
    So(SoVar),
}

fn run(text: &str, sig: &Signature, schematic: bool) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig, schematic)?;
    let f = p.formula()?;
    if p.at < p.toks.len() {
        return Err(p.error_here("end of input"));
    }
    Ok(f)
}

/// Parses a formula over `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    run(text, sig, false)
}

/// Like [`parse`], additionally accepting the schematic node
/// `[V := θ_n](φ)` used in omega-rule templates.
pub fn parse_schematic(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    run(text, sig, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig() -> Signature {
        "P0/1,P1/2,f0/1,c0".parse().unwrap()
    }

    #[test]
    fn definable_singletons_sentence() {
        let f = parse("∀x ∃X ∀y (X(y) ↔ x = y)", &sig()).unwrap();
        let x = FoVar(0);
        let y = FoVar(1);
        let v = SoVar::new(0, 1);
        let expected = Formula::forall(
            x,
            Formula::exists_so(
                v,
                Formula::forall(
                    y,
                    Formula::iff(
                        Formula::Apply(v, vec![Term::Var(y)]),
                        Formula::eq(Term::Var(x), Term::Var(y)),
                    ),
                ),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn ascii_spelling_matches_unicode() {
        let a = parse("forall x exists X forall y (X(y) <-> x = y)", &sig()).unwrap();
        let b = parse("∀x ∃X ∀y (X(y) ↔ x = y)", &sig()).unwrap();
        assert_eq!(a, b);
        let c = parse("~P0(x0) & P0(x1) | P0(c0) -> P0(f0(x0))", &sig()).unwrap();
        let d = parse("¬P0(x0) ∧ P0(x1) ∨ P0(c0) → P0(f0(x0))", &sig()).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn atom() {
        let f = parse("P0(x0)", &sig()).unwrap();
        assert_eq!(f, Formula::Pred(0, vec![Term::var(0)]));
    }

    #[test]
    fn relation_variable_arity_mismatch() {
        let err = parse("X2(x0, x1)", &sig()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::ArityMismatch { expected: 1, found: 2, .. }));
        assert_eq!(err.pos, 0);
        assert!(parse("X2^2(x0, x1)", &sig()).is_ok());
    }

    #[test]
    fn caretless_occurrence_follows_binder() {
        let f = parse("∀X0^2 X0(x0, x1)", &sig()).unwrap();
        let v = SoVar::new(0, 2);
        assert_eq!(
            f,
            Formula::forall_so(v, Formula::Apply(v, vec![Term::var(0), Term::var(1)]))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("P0(x0) ∧ P9(x0)", &sig()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol("P9".into()));
        assert_eq!(err.pos, 9);
        let err = parse("P0(x0) $", &sig()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Lexical('$'));
        let err = parse("P1(x0)", &sig()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::ArityMismatch { .. }));
        let err = parse("P0(x0) ∧", &sig()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedEnd { .. }));
    }

    #[test]
    fn identity_disabled() {
        let s = sig().without_identity();
        let err = parse("∀x0 x0 = x0", &s).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IdentityDisabled);
        let err = parse("X0 = X1", &s).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IdentityDisabled);
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse("∃x0 ∀x1 P0(x0) ∧ P0(x1)", &sig()).unwrap();
        assert!(f.is_sentence());
    }

    #[test]
    fn named_variables_avoid_explicit_indices() {
        let f = parse("P1(x3, y)", &sig()).unwrap();
        assert_eq!(f, Formula::Pred(1, vec![Term::var(3), Term::var(4)]));
    }

    #[test]
    fn subscripts() {
        let f = parse("P0(x₁)", &sig()).unwrap();
        assert_eq!(f, Formula::Pred(0, vec![Term::var(1)]));
    }

    #[test]
    fn schematic_node() {
        let s = sig();
        assert_eq!(
            parse("[X0 := θ_n](X0(x0))", &s).unwrap_err().kind,
            ParseErrorKind::SchematicNotAllowed
        );
        let f = parse_schematic("∀X0 X0(x0) → [X0 := theta_n](X0(x0))", &s).unwrap();
        assert!(f.is_schematic());
    }

    #[test]
    fn second_order_identity_and_negated_equality() {
        let f = parse("X0 ≠ X1 ∧ x0 != x1", &sig()).unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::not(Formula::SoEq(SoVar::new(0, 1), SoVar::new(1, 1))),
                Formula::not(Formula::eq(Term::var(0), Term::var(1)))
            )
        );
        assert!(parse("X0 = X1^2", &sig()).is_err());
    }
}
