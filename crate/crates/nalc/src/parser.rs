//! The line-oriented text format for knowledge bases and queries.
//!
//! ```text
//! # comment
//! assert (some Support war_x)(p1) >= 0.6 <= 0.5
//! assert Likes(ann, bob) <= 1/3 >= 0.5
//! spec war_x < War
//! define Pacifist = (not (some Support War))
//! ```
//!
//! Concepts are S-expressions over `top`, `bot`, names and the operators
//! `and`, `or`, `not`, `all`, `some`. Degrees are decimals or fractions and
//! are read exactly.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use nalc_core::kb::Unfolder;
use nalc_core::{
    Assertion, AxiomKind, Concept, Degree, DegreeError, KnowledgeBase, NeutrosophicAssertion, Object, Sign,
    TerminologicalAxiom, Violation,
};

/// Position of a token; line and column are 1-based and count characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Lex,
    Syntax,
    DegreeRange,
    DuplicateDefinition,
    /// A well-formed knowledge base rejected by validation, such as a cyclic
    /// terminology.
    Invalid,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lex => "lex",
            ErrorKind::Syntax => "syntax",
            ErrorKind::DegreeRange => "degree-range",
            ErrorKind::DuplicateDefinition => "duplicate-definition",
            ErrorKind::Invalid => "invalid",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {kind} error: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub kind: ErrorKind,
}

impl ParseError {
    fn new(span: SourceSpan, kind: ErrorKind, message: impl Into<String>) -> Self {
        ParseError { span, message: message.into(), kind }
    }

    /// The error with the offending source line and a caret underline.
    pub fn render(&self, source: &str) -> String {
        let mut out = format!("{self}\n");
        if let Some(text) = source.lines().nth(self.span.line - 1) {
            let _ = writeln!(out, "  | {text}");
            let _ = writeln!(
                out,
                "  | {}{}",
                " ".repeat(self.span.column - 1),
                "^".repeat(self.span.length.max(1))
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Geq,
    Leq,
    Less,
    Equals,
    Word(String),
    Number(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Geq => f.write_str("`>=`"),
            Tok::Leq => f.write_str("`<=`"),
            Tok::Less => f.write_str("`<`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn is_word_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '*'
}

fn is_number_char(c: char) -> bool {
    c.is_ascii_digit() || c == '.' || c == '/'
}

/// Tokens of one line, up to a `#` comment.
fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let span = |start: usize, end: usize| SourceSpan { line, column: start + 1, length: end - start };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            '=' => Tok::Equals,
            '>' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Tok::Geq
            }
            '>' => {
                return Err(ParseError::new(span(i, i + 1), ErrorKind::Lex, "expected `>=`"));
            }
            '<' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Tok::Leq
            }
            '<' => Tok::Less,
            c if is_word_start(c) => {
                while i + 1 < chars.len() && is_word_char(chars[i + 1]) {
                    i += 1;
                }
                Tok::Word(chars[start..=i].iter().collect())
            }
            c if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) => {
                while i + 1 < chars.len() && is_number_char(chars[i + 1]) {
                    i += 1;
                }
                Tok::Number(chars[start..=i].iter().collect())
            }
            other => {
                return Err(ParseError::new(
                    span(i, i + 1),
                    ErrorKind::Lex,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        i += 1;
        out.push(Token { tok, span: span(start, i) });
    }
    Ok(out)
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.len() <= 18 && s.bytes().all(|b| b.is_ascii_digit())
}

/// An exact degree from a decimal such as `0.6` or a fraction `p/q`.
fn parse_degree(text: &str, span: SourceSpan) -> Result<Degree, ParseError> {
    let malformed = || ParseError::new(span, ErrorKind::Lex, format!("malformed degree `{text}`"));
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (numer, denom) = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return Err(malformed());
        }
        (p.parse::<i64>().map_err(|_| malformed())?, q.parse::<i64>().map_err(|_| malformed())?)
    } else {
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if !digits(int) || (body.contains('.') && !digits(frac)) || int.len() + frac.len() > 18 {
            return Err(malformed());
        }
        let numer: i64 = format!("{int}{frac}").parse().map_err(|_| malformed())?;
        (numer, 10i64.pow(frac.len() as u32))
    };
    let numer = if negative { -numer } else { numer };
    Degree::new(numer, denom).map_err(|e| match e {
        DegreeError::OutOfRange { .. } => {
            ParseError::new(span, ErrorKind::DegreeRange, format!("degree `{text}` lies outside [0, 1]"))
        }
        DegreeError::ZeroDenominator => {
            ParseError::new(span, ErrorKind::Lex, format!("degree `{text}` has a zero denominator"))
        }
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Where an unexpected end of input is reported.
    end: SourceSpan,
}

const OPERATORS: &str = "`and`, `or`, `not`, `all` or `some`";

impl Parser {
    fn new(tokens: Vec<Token>, line: usize, line_len: usize) -> Self {
        let end = SourceSpan { line, column: line_len + 1, length: 1 };
        Parser { tokens, pos: 0, end }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Token, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::new(
                self.end,
                ErrorKind::Syntax,
                format!("expected {expected}, found end of line"),
            )),
        }
    }

    fn unexpected(t: &Token, expected: &str) -> ParseError {
        ParseError::new(t.span, ErrorKind::Syntax, format!("expected {expected}, found {}", t.tok))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Token, ParseError> {
        let t = self.next(expected)?;
        if t.tok == tok {
            Ok(t)
        } else {
            Err(Self::unexpected(&t, expected))
        }
    }

    fn name(&mut self, expected: &str) -> Result<(String, SourceSpan), ParseError> {
        let t = self.next(expected)?;
        match t.tok {
            Tok::Word(w) => Ok((w, t.span)),
            _ => Err(Self::unexpected(&t, expected)),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(Self::unexpected(t, "end of line")),
        }
    }

    fn concept(&mut self) -> Result<(Concept, SourceSpan), ParseError> {
        let t = self.next("a concept")?;
        let start = t.span;
        let c = match t.tok {
            Tok::Word(w) if w == "top" => Concept::Top,
            Tok::Word(w) if w == "bot" => Concept::Bottom,
            Tok::Word(w) => Concept::Atomic(w),
            Tok::Open => {
                let op = self.next(OPERATORS)?;
                let c = match &op.tok {
                    Tok::Word(w) if w == "and" || w == "or" => {
                        let (l, _) = self.concept()?;
                        let (r, _) = self.concept()?;
                        if w == "and" {
                            Concept::and(l, r)
                        } else {
                            Concept::or(l, r)
                        }
                    }
                    Tok::Word(w) if w == "not" => Concept::not(self.concept()?.0),
                    Tok::Word(w) if w == "all" || w == "some" => {
                        let (role, _) = self.name("a role name")?;
                        let (filler, _) = self.concept()?;
                        if w == "all" {
                            Concept::forall(role, filler)
                        } else {
                            Concept::exists(role, filler)
                        }
                    }
                    _ => return Err(Self::unexpected(&op, OPERATORS)),
                };
                let close = self.expect(Tok::Close, "`)`")?;
                return Ok((c, cover(start, close.span)));
            }
            _ => return Err(Self::unexpected(&t, "a concept")),
        };
        Ok((c, start))
    }

    /// `C(a)` or `R(a, b)`.
    fn assertion(&mut self) -> Result<Assertion, ParseError> {
        let (c, span) = self.concept()?;
        self.expect(Tok::Open, "`(`")?;
        let (a, _) = self.name("an individual")?;
        let t = self.next("`)` or `,`")?;
        match t.tok {
            Tok::Close => Ok(Assertion::concept(c, Object::individual(a))),
            Tok::Comma => {
                let (b, _) = self.name("an individual")?;
                self.expect(Tok::Close, "`)`")?;
                match c {
                    Concept::Atomic(role) => {
                        Ok(Assertion::role(role, Object::individual(a), Object::individual(b)))
                    }
                    _ => Err(ParseError::new(span, ErrorKind::Syntax, "a role assertion needs a role name")),
                }
            }
            _ => Err(Self::unexpected(&t, "`)` or `,`")),
        }
    }

    fn degree(&mut self) -> Result<Degree, ParseError> {
        let t = self.next("a degree")?;
        match &t.tok {
            Tok::Number(text) => parse_degree(text, t.span),
            _ => Err(Self::unexpected(&t, "a degree")),
        }
    }

    fn bounds(&mut self) -> Result<(Sign, Degree, Degree), ParseError> {
        const BOUNDS: &str = "`>= n <= m` or `<= n >= m`";
        let t = self.next(BOUNDS)?;
        let (sign, second) = match t.tok {
            Tok::Geq => (Sign::GeqLeq, Tok::Leq),
            Tok::Leq => (Sign::LeqGeq, Tok::Geq),
            _ => return Err(Self::unexpected(&t, BOUNDS)),
        };
        let n = self.degree()?;
        let expected = second.to_string();
        self.expect(second, &expected)?;
        let m = self.degree()?;
        Ok((sign, n, m))
    }

    fn neutrosophic_assertion(&mut self) -> Result<NeutrosophicAssertion, ParseError> {
        let a = self.assertion()?;
        let (sign, n, m) = self.bounds()?;
        Ok(NeutrosophicAssertion::new(a, sign, n, m))
    }

    /// Skips a leading `assert`, if present.
    fn optional_assert(&mut self) {
        if matches!(self.peek(), Some(Token { tok: Tok::Word(w), .. }) if w == "assert") {
            self.pos += 1;
        }
    }
}

fn cover(a: SourceSpan, b: SourceSpan) -> SourceSpan {
    if a.line != b.line {
        return a;
    }
    SourceSpan { line: a.line, column: a.column, length: b.column + b.length - a.column }
}

fn single_line(text: &str) -> Result<Parser, ParseError> {
    let line = text.trim_end_matches(['\n', '\r']);
    if line.contains('\n') {
        let at = line.find('\n').unwrap_or(0);
        return Err(ParseError::new(
            SourceSpan { line: 1, column: at + 1, length: 1 },
            ErrorKind::Syntax,
            "expected a single line",
        ));
    }
    Ok(Parser::new(lex_line(line, 1)?, 1, line.chars().count()))
}

/// A degree literal on its own, such as `0.6` or `1/3`.
pub fn parse_degree_literal(text: &str) -> Result<Degree, ParseError> {
    parse_degree(text.trim(), SourceSpan { line: 1, column: 1, length: text.trim().chars().count() })
}

pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let mut p = single_line(text)?;
    let (c, _) = p.concept()?;
    p.finish()?;
    Ok(c)
}

/// A bare assertion `C(a)` or `R(a, b)`, optionally preceded by `assert`.
pub fn parse_assertion_expr(text: &str) -> Result<Assertion, ParseError> {
    let mut p = single_line(text)?;
    p.optional_assert();
    let a = p.assertion()?;
    p.finish()?;
    Ok(a)
}

/// An assertion with bounds, optionally preceded by `assert`.
pub fn parse_assertion(text: &str) -> Result<NeutrosophicAssertion, ParseError> {
    let mut p = single_line(text)?;
    p.optional_assert();
    let a = p.neutrosophic_assertion()?;
    p.finish()?;
    Ok(a)
}

enum Statement {
    Assertion(NeutrosophicAssertion),
    Axiom(TerminologicalAxiom, SourceSpan),
}

fn statement(p: &mut Parser) -> Result<Statement, ParseError> {
    const KEYWORDS: &str = "`assert`, `spec` or `define`";
    let (keyword, span) = p.name(KEYWORDS)?;
    let s = match keyword.as_str() {
        "assert" => Statement::Assertion(p.neutrosophic_assertion()?),
        "spec" | "define" => {
            let (lhs, lhs_span) = p.name("a concept name")?;
            if lhs == "top" || lhs == "bot" {
                return Err(ParseError::new(
                    lhs_span,
                    ErrorKind::Syntax,
                    format!("`{lhs}` cannot be defined"),
                ));
            }
            let (kind, op) = if keyword == "spec" {
                (AxiomKind::Specialization, Tok::Less)
            } else {
                (AxiomKind::Definition, Tok::Equals)
            };
            let expected = op.to_string();
            p.expect(op, &expected)?;
            let (rhs, _) = p.concept()?;
            Statement::Axiom(TerminologicalAxiom { lhs, kind, rhs }, lhs_span)
        }
        _ => {
            return Err(ParseError::new(
                span,
                ErrorKind::Syntax,
                format!("expected {KEYWORDS}, found `{keyword}`"),
            ))
        }
    };
    p.finish()?;
    Ok(s)
}

/// Parses and validates a knowledge base, reporting every error found.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut kb = KnowledgeBase::default();
    let mut lhs_spans: BTreeMap<String, SourceSpan> = BTreeMap::new();
    let mut assertion_spans = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        let tokens = match lex_line(line, number) {
            Ok(t) if t.is_empty() => continue,
            Ok(t) => t,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        let whole = SourceSpan {
            line: number,
            column: tokens[0].span.column,
            length: tokens.last().map_or(1, |t| t.span.column + t.span.length - tokens[0].span.column),
        };
        let mut p = Parser::new(tokens, number, line.chars().count());
        match statement(&mut p) {
            Ok(Statement::Assertion(a)) => {
                assertion_spans.push(whole);
                kb.assertions.push(a);
            }
            Ok(Statement::Axiom(ax, span)) => {
                if lhs_spans.contains_key(&ax.lhs) {
                    errors.push(ParseError::new(
                        span,
                        ErrorKind::DuplicateDefinition,
                        format!("`{}` already appears on the left of an axiom", ax.lhs),
                    ));
                } else {
                    lhs_spans.insert(ax.lhs.clone(), span);
                    kb.terminology.push(ax);
                }
            }
            Err(e) => errors.push(e),
        }
    }

    if let Err(violations) = kb.validate() {
        for v in violations {
            let span = match &v {
                Violation::DuplicateLhs(_) => continue,
                Violation::Cycle(path) => lhs_spans[&path[0]],
                Violation::StarredNameCollision(name) => kb
                    .assertions
                    .iter()
                    .zip(&assertion_spans)
                    .find(|(a, _)| a.assertion.concept_expr().is_some_and(|c| c.atoms().contains(name)))
                    .map_or(SourceSpan { line: 1, column: 1, length: 1 }, |(_, s)| *s),
                Violation::VariableSubject(_) => SourceSpan { line: 1, column: 1, length: 1 },
            };
            errors.push(ParseError::new(span, ErrorKind::Invalid, v.to_string()));
        }
    }

    if errors.is_empty() {
        debug_assert!(Unfolder::new(&kb.terminology).is_ok());
        Ok(kb)
    } else {
        errors.sort_by_key(|e| e.span);
        Err(errors)
    }
}

pub fn format_concept(c: &Concept) -> String {
    let mut out = String::new();
    write_concept(&mut out, c);
    out
}

fn write_concept(out: &mut String, c: &Concept) {
    match c {
        Concept::Top => out.push_str("top"),
        Concept::Bottom => out.push_str("bot"),
        Concept::Atomic(a) => out.push_str(a),
        Concept::And(l, r) | Concept::Or(l, r) => {
            out.push_str(if matches!(c, Concept::And(..)) { "(and " } else { "(or " });
            write_concept(out, l);
            out.push(' ');
            write_concept(out, r);
            out.push(')');
        }
        Concept::Not(x) => {
            out.push_str("(not ");
            write_concept(out, x);
            out.push(')');
        }
        Concept::Forall(r, x) | Concept::Exists(r, x) => {
            let op = if matches!(c, Concept::Forall(..)) { "all" } else { "some" };
            let _ = write!(out, "({op} {r} ");
            write_concept(out, x);
            out.push(')');
        }
    }
}

pub fn format_assertion_expr(a: &Assertion) -> String {
    match a {
        Assertion::Concept { concept, subject } => format!("{}({subject})", format_concept(concept)),
        Assertion::Role { role, subject, object } => format!("{role}({subject}, {object})"),
    }
}

pub fn format_assertion(a: &NeutrosophicAssertion) -> String {
    let (first, second) = match a.sign {
        Sign::GeqLeq => (">=", "<="),
        Sign::LeqGeq => ("<=", ">="),
    };
    format!("assert {} {first} {} {second} {}", format_assertion_expr(&a.assertion), a.bounds.n, a.bounds.m)
}

pub fn format_axiom(ax: &TerminologicalAxiom) -> String {
    match ax.kind {
        AxiomKind::Specialization => format!("spec {} < {}", ax.lhs, format_concept(&ax.rhs)),
        AxiomKind::Definition => format!("define {} = {}", ax.lhs, format_concept(&ax.rhs)),
    }
}

/// One statement per line: assertions first, then axioms.
pub fn format_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for a in &kb.assertions {
        out.push_str(&format_assertion(a));
        out.push('\n');
    }
    for ax in &kb.terminology {
        out.push_str(&format_axiom(ax));
        out.push('\n');
    }
    out
}
