//! Text syntax for GGD rule files (`.ggd`).
//!
//! ```text
//! GGD same_person {
//!   SOURCE { (a:person), (b:person), (a)-[w:worksAt]->(c:company), (b)-[w2:worksAt]->(c) }
//!   WHERE  { levenshtein(a.name, b.name) <= 1, a != b }
//!   =>
//!   TARGET { (a)-[s:sameAs]->(b) }
//! }
//! ```
//!
//! A vertex is declared the first time it appears; `(v)` without a label is a
//! wildcard unless the same pattern labels it elsewhere. Target constraints
//! may use every source variable. The full grammar lives in `docs/grammar.md`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::constraint::{is_identifier, quote, CompareOp, Constraint, PropertyRef};
use crate::distance::DistanceRegistry;
use crate::ggd::{Ggd, GgdError};
use crate::graph::Value;
use crate::pattern::{GraphPattern, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    Scope,
    UnknownDistance,
    KindMismatch,
    DuplicateVariable,
    DuplicateRule,
    LabelConflict,
    EmptySource,
    InvalidThreshold,
}

impl fmt::Display for DslErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DslErrorKind::Syntax => "syntax error",
            DslErrorKind::Scope => "scope error",
            DslErrorKind::UnknownDistance => "unknown distance",
            DslErrorKind::KindMismatch => "kind mismatch",
            DslErrorKind::DuplicateVariable => "duplicate variable",
            DslErrorKind::DuplicateRule => "duplicate rule",
            DslErrorKind::LabelConflict => "label conflict",
            DslErrorKind::EmptySource => "empty source pattern",
            DslErrorKind::InvalidThreshold => "invalid threshold",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, kind: DslErrorKind, message: impl Into<String>) -> DslError {
        DslError { kind, line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    Real(f64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Dot,
    Implies,
    Dash,
    RArrow,
    LArrow,
    Op(CompareOp),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "string {}", quote(s)),
            Tok::Int(i) => write!(f, "number {i}"),
            Tok::Real(r) => write!(f, "number {r}"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Implies => f.write_str("`=>`"),
            Tok::Dash => f.write_str("`-`"),
            Tok::RArrow => f.write_str("`->`"),
            Tok::LArrow => f.write_str("`<-`"),
            Tok::Op(op) => write!(f, "`{op}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer<'s> {
    chars: std::iter::Peekable<std::str::Chars<'s>>,
    pos: Pos,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str) -> Self {
        Lexer { chars: src.chars().peekable(), pos: Pos { line: 1, column: 1 } }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => self.skip_line(),
                Some('/') => {
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    if ahead.next() == Some('/') {
                        self.skip_line();
                    } else {
                        return;
                    }
                }
                _ => return,
            }
        }
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' {
                break;
            }
        }
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, Pos)>, DslError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.pos;
            let Some(c) = self.bump() else {
                out.push((Tok::Eof, start));
                return Ok(out);
            };
            let tok = match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '≤' => Tok::Op(CompareOp::Le),
                '≥' => Tok::Op(CompareOp::Ge),
                '≠' => Tok::Op(CompareOp::Ne),
                '=' if self.eat('>') => Tok::Implies,
                '=' => Tok::Op(CompareOp::Eq),
                '!' if self.eat('=') => Tok::Op(CompareOp::Ne),
                '<' if self.eat('=') => Tok::Op(CompareOp::Le),
                '<' if self.eat('-') => Tok::LArrow,
                '<' => Tok::Op(CompareOp::Lt),
                '>' if self.eat('=') => Tok::Op(CompareOp::Ge),
                '>' => Tok::Op(CompareOp::Gt),
                '-' if self.eat('>') => Tok::RArrow,
                '-' => Tok::Dash,
                '"' => Tok::Str(self.string(start)?),
                c if c.is_ascii_digit() => self.number(c, start)?,
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::from(c);
                    while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                        s.push(c);
                        self.bump();
                    }
                    Tok::Ident(s)
                }
                other => return Err(start.error(DslErrorKind::Syntax, format!("unexpected character {other:?}"))),
            };
            out.push((tok, start));
        }
    }

    fn string(&mut self, start: Pos) -> Result<String, DslError> {
        let mut s = String::new();
        loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(start.error(DslErrorKind::Syntax, "unterminated string")),
                Some('"') => return Ok(s),
                Some('\\') => match self.bump() {
                    Some('"') => s.push('"'),
                    Some('\\') => s.push('\\'),
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some('r') => s.push('\r'),
                    Some('u') => {
                        if !self.eat('{') {
                            return Err(at.error(DslErrorKind::Syntax, "expected `{` after `\\u`"));
                        }
                        let mut hex = String::new();
                        while let Some(c) = self.bump() {
                            if c == '}' {
                                break;
                            }
                            hex.push(c);
                        }
                        let ch = u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32);
                        s.push(ch.ok_or_else(|| at.error(DslErrorKind::Syntax, format!("invalid escape \\u{{{hex}}}")))?);
                    }
                    other => {
                        return Err(at.error(DslErrorKind::Syntax, format!("invalid escape sequence {other:?}")))
                    }
                },
                Some(c) => s.push(c),
            }
        }
    }

    fn number(&mut self, first: char, start: Pos) -> Result<Tok, DslError> {
        let mut s = String::from(first);
        let mut real = false;
        let digits = |lx: &mut Self, s: &mut String| {
            while let Some(c) = lx.peek().filter(char::is_ascii_digit) {
                s.push(c);
                lx.bump();
            }
        };
        digits(self, &mut s);
        if self.peek() == Some('.') {
            let mut ahead = self.chars.clone();
            ahead.next();
            if ahead.peek().is_some_and(char::is_ascii_digit) {
                real = true;
                s.push('.');
                self.bump();
                digits(self, &mut s);
            }
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            real = true;
            s.push('e');
            self.bump();
            if let Some(sign) = self.peek().filter(|c| *c == '+' || *c == '-') {
                s.push(sign);
                self.bump();
            }
            let before = s.len();
            digits(self, &mut s);
            if s.len() == before {
                return Err(start.error(DslErrorKind::Syntax, "malformed exponent"));
            }
        }
        if real {
            let r: f64 = s.parse().map_err(|_| start.error(DslErrorKind::Syntax, format!("malformed number {s}")))?;
            if !r.is_finite() {
                return Err(start.error(DslErrorKind::Syntax, format!("number {s} is out of range")));
            }
            Ok(Tok::Real(r))
        } else {
            s.parse()
                .map(Tok::Int)
                .map_err(|_| start.error(DslErrorKind::Syntax, format!("integer {s} is out of range")))
        }
    }
}

const KEYWORDS: [&str; 4] = ["GGD", "SOURCE", "TARGET", "WHERE"];

/// Pattern under construction; labels may be given at any occurrence.
#[derive(Default)]
struct PatternBuilder {
    vertices: Vec<(String, Option<Label>)>,
    edges: Vec<(String, String, String, Label)>,
}

impl PatternBuilder {
    fn declares(&self, name: &str) -> bool {
        self.vertices.iter().any(|(v, _)| v == name) || self.edges.iter().any(|(e, ..)| e == name)
    }

    fn vertex(&mut self, name: String, label: Option<Label>, pos: Pos) -> Result<String, DslError> {
        if self.edges.iter().any(|(e, ..)| *e == name) {
            return Err(pos.error(DslErrorKind::DuplicateVariable, format!("`{name}` is already an edge variable")));
        }
        match self.vertices.iter_mut().find(|(v, _)| *v == name) {
            Some((_, existing)) => match (existing.as_ref(), label) {
                (Some(old), Some(new)) if *old != new => {
                    return Err(pos.error(
                        DslErrorKind::LabelConflict,
                        format!("`{name}` is labelled `{old}` and `{new}`"),
                    ))
                }
                (None, Some(new)) => *existing = Some(new),
                _ => {}
            },
            None => self.vertices.push((name.clone(), label)),
        }
        Ok(name)
    }

    fn edge(&mut self, name: String, src: String, dst: String, label: Label, pos: Pos) -> Result<(), DslError> {
        if self.declares(&name) {
            return Err(pos.error(DslErrorKind::DuplicateVariable, format!("`{name}` is declared twice")));
        }
        self.edges.push((name, src, dst, label));
        Ok(())
    }

    fn build(self) -> GraphPattern {
        let mut p = GraphPattern::new();
        for (name, label) in self.vertices {
            p.add_vertex(name, label.unwrap_or(Label::Wildcard)).expect("names checked while parsing");
        }
        for (name, src, dst, label) in self.edges {
            p.add_edge(name, src, dst, label).expect("endpoints declared while parsing");
        }
        p
    }
}

enum Term {
    Prop(PropertyRef),
    Lit(Value),
}

struct Parser<'r> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    registry: &'r DistanceRegistry,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        self.pos().error(DslErrorKind::Syntax, format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, DslError> {
        if *self.peek() == tok {
            Ok(self.next().1)
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.next().1),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), DslError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) && s != "true" && s != "false" => {
                let s = s.clone();
                Ok((s, self.next().1))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn label(&mut self) -> Result<Label, DslError> {
        match self.peek().clone() {
            Tok::Dash => {
                self.next();
                Ok(Label::Wildcard)
            }
            Tok::Str(s) => {
                self.next();
                Ok(Label::Named(s))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(Label::Named(s))
            }
            _ => Err(self.unexpected("a label")),
        }
    }

    fn file(&mut self) -> Result<Vec<Ggd>, DslError> {
        let mut rules = Vec::new();
        let mut names = HashSet::new();
        while *self.peek() != Tok::Eof {
            let pos = self.pos();
            let rule = self.rule()?;
            if !names.insert(rule.name().to_string()) {
                return Err(pos.error(DslErrorKind::DuplicateRule, format!("rule `{}` is defined twice", rule.name())));
            }
            rules.push(rule);
        }
        Ok(rules)
    }

    fn rule(&mut self) -> Result<Ggd, DslError> {
        let rule_pos = self.keyword("GGD")?;
        let (name, _) = self.ident("a rule name")?;
        self.expect(Tok::LBrace)?;

        let source_pos = self.keyword("SOURCE")?;
        let source = self.pattern_block()?;
        if source.vertices().is_empty() {
            return Err(source_pos.error(DslErrorKind::EmptySource, format!("rule `{name}` has an empty source pattern")));
        }
        let source_constraints = self.where_block(&[&source])?;

        self.expect(Tok::Implies)?;
        self.keyword("TARGET")?;
        let target_pos = self.pos();
        let target = self.pattern_block()?;
        for var in target.variables() {
            if let (Some(s), Some(t)) = (source.kind_of(var), target.kind_of(var)) {
                if s != t {
                    return Err(target_pos.error(
                        DslErrorKind::KindMismatch,
                        format!("`{var}` is a {s} in the source pattern but a {t} in the target pattern"),
                    ));
                }
            }
        }
        let target_constraints = self.where_block(&[&source, &target])?;
        self.expect(Tok::RBrace)?;

        Ggd::new(name, source, source_constraints, target, target_constraints).map_err(|e| {
            let kind = match e {
                GgdError::EmptySource { .. } => DslErrorKind::EmptySource,
                GgdError::Scope { .. } => DslErrorKind::Scope,
                GgdError::KindMismatch { .. } => DslErrorKind::KindMismatch,
                GgdError::UnknownDistance { .. } => DslErrorKind::UnknownDistance,
                GgdError::InvalidThreshold { .. } => DslErrorKind::InvalidThreshold,
            };
            rule_pos.error(kind, e.to_string())
        })
    }

    fn pattern_block(&mut self) -> Result<GraphPattern, DslError> {
        self.expect(Tok::LBrace)?;
        let mut b = PatternBuilder::default();
        while *self.peek() != Tok::RBrace {
            self.path(&mut b)?;
            if *self.peek() == Tok::Comma {
                self.next();
            } else if *self.peek() != Tok::RBrace {
                return Err(self.unexpected("`,` or `}`"));
            }
        }
        self.next();
        Ok(b.build())
    }

    fn node(&mut self, b: &mut PatternBuilder) -> Result<String, DslError> {
        self.expect(Tok::LParen)?;
        let (name, pos) = self.ident("a vertex variable")?;
        let label = if *self.peek() == Tok::Colon {
            self.next();
            Some(self.label()?)
        } else {
            None
        };
        self.expect(Tok::RParen)?;
        b.vertex(name, label, pos)
    }

    fn path(&mut self, b: &mut PatternBuilder) -> Result<(), DslError> {
        let mut left = self.node(b)?;
        loop {
            let outgoing = match self.peek() {
                Tok::Dash => true,
                Tok::LArrow => false,
                _ => return Ok(()),
            };
            self.next();
            self.expect(Tok::LBracket)?;
            let (edge, pos) = self.ident("an edge variable")?;
            let label = if *self.peek() == Tok::Colon {
                self.next();
                self.label()?
            } else {
                Label::Wildcard
            };
            self.expect(Tok::RBracket)?;
            self.expect(if outgoing { Tok::RArrow } else { Tok::Dash })?;
            let right = self.node(b)?;
            let (src, dst) = if outgoing { (left, right.clone()) } else { (right.clone(), left) };
            b.edge(edge, src, dst, label, pos)?;
            left = right;
        }
    }

    fn where_block(&mut self, scope: &[&GraphPattern]) -> Result<Vec<Constraint>, DslError> {
        if !self.at_keyword("WHERE") {
            return Ok(Vec::new());
        }
        self.next();
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        while *self.peek() != Tok::RBrace {
            out.push(self.constraint(scope)?);
            if *self.peek() == Tok::Comma {
                self.next();
            } else if *self.peek() != Tok::RBrace {
                return Err(self.unexpected("`,` or `}`"));
            }
        }
        self.next();
        Ok(out)
    }

    fn check_var(&self, var: &str, pos: Pos, scope: &[&GraphPattern]) -> Result<(), DslError> {
        if scope.iter().any(|p| p.kind_of(var).is_some()) {
            Ok(())
        } else {
            Err(pos.error(DslErrorKind::Scope, format!("variable `{var}` is not declared in scope")))
        }
    }

    fn constraint(&mut self, scope: &[&GraphPattern]) -> Result<Constraint, DslError> {
        let (head, head_pos) = self.ident("a constraint")?;
        match self.peek() {
            Tok::Op(op @ (CompareOp::Eq | CompareOp::Ne)) => {
                let negated = *op == CompareOp::Ne;
                self.next();
                self.check_var(&head, head_pos, scope)?;
                let (other, other_pos) = self.ident("a variable")?;
                self.check_var(&other, other_pos, scope)?;
                Ok(Constraint::Identity { left: head, right: other, negated })
            }
            Tok::LParen => {
                if !self.registry.contains(&head) {
                    return Err(head_pos.error(DslErrorKind::UnknownDistance, format!("unknown distance function `{head}`")));
                }
                self.next();
                let first = self.term(scope)?;
                self.expect(Tok::Comma)?;
                let second = self.term(scope)?;
                self.expect(Tok::RParen)?;
                let op = match *self.peek() {
                    Tok::Op(op) => {
                        self.next();
                        op
                    }
                    _ => return Err(self.unexpected("a comparison operator")),
                };
                let threshold = self.threshold()?;
                let distance = head;
                match (first, second) {
                    (Term::Prop(left), Term::Prop(right)) => Ok(Constraint::VarVar { left, right, distance, op, threshold }),
                    (Term::Prop(prop), Term::Lit(constant)) => {
                        Ok(Constraint::VarConst { prop, distance, op, constant, threshold, constant_first: false })
                    }
                    (Term::Lit(constant), Term::Prop(prop)) => {
                        Ok(Constraint::VarConst { prop, distance, op, constant, threshold, constant_first: true })
                    }
                    (Term::Lit(_), Term::Lit(_)) => Err(head_pos.error(
                        DslErrorKind::Syntax,
                        "a distance constraint needs at least one `var.key` argument",
                    )),
                }
            }
            _ => Err(self.unexpected("`(`, `=` or `!=`")),
        }
    }

    fn threshold(&mut self) -> Result<f64, DslError> {
        match self.next() {
            (Tok::Int(i), _) if i >= 0 => Ok(i as f64),
            (Tok::Real(r), _) => Ok(r),
            (Tok::Dash, pos) => Err(pos.error(DslErrorKind::InvalidThreshold, "thresholds must be non-negative")),
            (tok, pos) => Err(pos.error(DslErrorKind::Syntax, format!("expected a threshold, found {tok}"))),
        }
    }

    fn term(&mut self, scope: &[&GraphPattern]) -> Result<Term, DslError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Str(s) => Ok(Term::Lit(Value::Text(s))),
            Tok::Int(i) => Ok(Term::Lit(Value::Integer(i))),
            Tok::Real(r) => Ok(Term::Lit(Value::Real(r))),
            Tok::Ident(b) if b == "true" || b == "false" => Ok(Term::Lit(Value::Boolean(b == "true"))),
            Tok::Dash => match self.next() {
                (Tok::Int(i), _) => Ok(Term::Lit(Value::Integer(-i))),
                (Tok::Real(r), _) => Ok(Term::Lit(Value::Real(-r))),
                (tok, pos) => Err(pos.error(DslErrorKind::Syntax, format!("expected a number after `-`, found {tok}"))),
            },
            Tok::Ident(var) if !KEYWORDS.contains(&var.as_str()) => {
                self.check_var(&var, pos, scope)?;
                self.expect(Tok::Dot)?;
                let key = match self.next() {
                    (Tok::Ident(k), _) | (Tok::Str(k), _) => k,
                    (tok, pos) => return Err(pos.error(DslErrorKind::Syntax, format!("expected a property key, found {tok}"))),
                };
                Ok(Term::Prop(PropertyRef { var, key }))
            }
            tok => Err(pos.error(DslErrorKind::Syntax, format!("expected `var.key` or a literal, found {tok}"))),
        }
    }
}

/// Parses a rule file. Distance names are resolved against `registry`.
pub fn parse_ggd_file(text: &str, registry: &DistanceRegistry) -> Result<Vec<Ggd>, DslError> {
    let toks = Lexer::new(text).tokenize()?;
    Parser { toks, at: 0, registry }.file()
}

fn fmt_label(l: &Label) -> String {
    match l {
        Label::Wildcard => "-".to_string(),
        Label::Named(s) if is_identifier(s) => s.clone(),
        Label::Named(s) => quote(s),
    }
}

fn fmt_pattern(p: &GraphPattern) -> String {
    let vs = p.vertices().iter().map(|v| format!("({}:{})", v.name, fmt_label(&v.label)));
    let es = p.edges().iter().map(|e| format!("({})-[{}:{}]->({})", e.src, e.name, fmt_label(&e.label), e.dst));
    vs.chain(es).collect::<Vec<_>>().join(", ")
}

fn fmt_constraints(cs: &[Constraint]) -> String {
    cs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Ggd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GGD {} {{", self.name())?;
        writeln!(f, "  SOURCE {{ {} }}", fmt_pattern(self.source()))?;
        if !self.source_constraints().is_empty() {
            writeln!(f, "  WHERE {{ {} }}", fmt_constraints(self.source_constraints()))?;
        }
        writeln!(f, "  =>")?;
        if self.target().is_empty() {
            writeln!(f, "  TARGET {{ }}")?;
        } else {
            writeln!(f, "  TARGET {{ {} }}", fmt_pattern(self.target()))?;
        }
        if !self.target_constraints().is_empty() {
            writeln!(f, "  WHERE {{ {} }}", fmt_constraints(self.target_constraints()))?;
        }
        write!(f, "}}")
    }
}

/// Prints rules in the syntax accepted by [`parse_ggd_file`].
pub fn print_ggds(rules: &[Ggd]) -> String {
    rules.iter().map(|r| format!("{r}\n")).collect::<Vec<_>>().join("\n")
}
