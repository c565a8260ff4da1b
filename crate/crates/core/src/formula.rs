//! Formula syntax: abstract syntax tree, concrete grammar, parser, printer,
//! and the negation-prefix classification.
//!
//! The concrete grammar (authoritative for both the parser and the printer):
//!
//! ```text
//! formula  := iff
//! iff      := imp ("<->" imp)*
//! imp      := or ("->" imp)?
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := ("~" | "[]" | "<>") unary | quant | atomexpr
//! quant    := ("forall" | "exists") IDENT "." unary
//! atomexpr := IDENT | IDENT "(" IDENT ")" | "false" | "(" formula ")"
//! ```
//!
//! `¬` is accepted as a synonym for `~` and `_|_` for `false`. Precedence is
//! `~,[],<>` over `&` over `|` over `->,<->`; implication is right-associative
//! and `<->` chains associate to the left.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A formula of the propositional / monadic first-order / modal language.
///
/// The first-order fragment is monadic by construction: a predicate is always
/// applied to exactly one variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Propositional atom.
    Atom(String),
    /// Monadic predicate applied to a variable, `f(x)`.
    Pred(String, String),
    /// Absurdity, `false`.
    Falsum,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Modal necessity, `[]p`.
    Box(Box<Formula>),
    /// Modal possibility, `<>p`.
    Dia(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn pred(name: impl Into<String>, var: impl Into<String>) -> Self {
        Formula::Pred(name.into(), var.into())
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Neg(std::boxed::Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(std::boxed::Box::new(a), std::boxed::Box::new(b))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(std::boxed::Box::new(f))
    }

    pub fn dia(f: Formula) -> Self {
        Formula::Dia(std::boxed::Box::new(f))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), std::boxed::Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), std::boxed::Box::new(body))
    }

    /// Wrap the formula in one negation. No simplification is performed;
    /// the operation may be iterated to build arbitrarily long prefixes.
    pub fn negate(self) -> Self {
        Formula::neg(self)
    }

    /// Names of propositional atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Atom(name) = f {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
        });
        out.sort();
        out
    }

    /// Names of predicates occurring in the formula, sorted.
    pub fn predicates(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Pred(name, _) = f {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
        });
        out.sort();
        out
    }

    /// Variables with at least one free occurrence, sorted.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Pred(_, v) => {
                    if !bound.iter().any(|b| b == v) && !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Formula::Forall(v, body) | Formula::Exists(v, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                Formula::Neg(a) | Formula::Box(a) | Formula::Dia(a) => go(a, bound, out),
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Imp(a, b)
                | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Atom(_) | Formula::Falsum => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Every identifier used anywhere in the formula (atoms, predicates,
    /// variables). Useful for picking fresh names.
    pub fn idents(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            let mut push = |s: &String| {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            };
            match f {
                Formula::Atom(a) => push(a),
                Formula::Pred(p, v) => {
                    push(p);
                    push(v);
                }
                Formula::Forall(v, _) | Formula::Exists(v, _) => push(v),
                _ => {}
            }
        });
        out.sort();
        out
    }

    /// Replace free occurrences of `var` with `with`, respecting binders.
    pub fn subst_var(&self, var: &str, with: &str) -> Formula {
        match self {
            Formula::Pred(p, v) if v == var => Formula::pred(p.clone(), with),
            Formula::Forall(v, _) | Formula::Exists(v, _) if v == var => self.clone(),
            Formula::Forall(v, body) => Formula::forall(v.clone(), body.subst_var(var, with)),
            Formula::Exists(v, body) => Formula::exists(v.clone(), body.subst_var(var, with)),
            Formula::Neg(a) => Formula::neg(a.subst_var(var, with)),
            Formula::Box(a) => Formula::boxed(a.subst_var(var, with)),
            Formula::Dia(a) => Formula::dia(a.subst_var(var, with)),
            Formula::And(a, b) => Formula::and(a.subst_var(var, with), b.subst_var(var, with)),
            Formula::Or(a, b) => Formula::or(a.subst_var(var, with), b.subst_var(var, with)),
            Formula::Imp(a, b) => Formula::imp(a.subst_var(var, with), b.subst_var(var, with)),
            Formula::Iff(a, b) => Formula::iff(a.subst_var(var, with), b.subst_var(var, with)),
            _ => self.clone(),
        }
    }

    pub fn has_quantifiers(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| {
            if matches!(f, Formula::Forall(..) | Formula::Exists(..)) {
                found = true;
            }
        });
        found
    }

    pub fn has_modalities(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| {
            if matches!(f, Formula::Box(_) | Formula::Dia(_)) {
                found = true;
            }
        });
        found
    }

    pub fn has_predicates(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| {
            if matches!(f, Formula::Pred(..)) {
                found = true;
            }
        });
        found
    }

    /// No quantifiers, predicates or modalities.
    pub fn is_propositional(&self) -> bool {
        !self.has_quantifiers() && !self.has_modalities() && !self.has_predicates()
    }

    /// Monadic first-order fragment: no modalities.
    pub fn is_monadic_fo(&self) -> bool {
        !self.has_modalities()
    }

    /// Propositional modal fragment: no quantifiers or predicates.
    pub fn is_propositional_modal(&self) -> bool {
        !self.has_quantifiers() && !self.has_predicates()
    }

    /// Total number of subformula occurrences (nodes in the tree).
    pub fn subformula_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Number of connective nodes (everything except leaves).
    pub fn connective_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |f| {
            if !matches!(f, Formula::Atom(_) | Formula::Pred(..) | Formula::Falsum) {
                n += 1;
            }
        });
        n
    }

    fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::Neg(a) | Formula::Box(a) | Formula::Dia(a) => a.walk(visit),
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.walk(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            Formula::Atom(_) | Formula::Pred(..) | Formula::Falsum => {}
        }
    }

    /// Length of the maximal outer `~` prefix.
    pub fn neg_prefix_len(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Formula::Neg(inner) = cur {
            n += 1;
            cur = inner;
        }
        n
    }

    /// The formula under the maximal outer `~` prefix.
    pub fn neg_prefix_core(&self) -> &Formula {
        let mut cur = self;
        while let Formula::Neg(inner) = cur {
            cur = inner;
        }
        cur
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_formula(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

// Formulas serialize as their rendered text; this keeps JSON fixtures and
// reports readable and round-trips through the parser.
impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&render_formula(self))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_formula(&text).map_err(D::Error::custom)
    }
}

/// Three-way classification of a formula by its outer negation prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NegationClass {
    Affirmative,
    Negative,
    DoublyNegated,
}

/// Outer negation prefix of a formula together with its collapsed class.
///
/// Iterated negation produces unboundedly many syntactically distinct
/// formulas, but up to intuitionistic equivalence a prefix of length `n >= 3`
/// collapses onto the representative with prefix 1 (odd `n`) or 2 (even `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegationProfile {
    pub class: NegationClass,
    pub raw_prefix_count: usize,
}

/// Classify a formula by its maximal outer negation prefix: length 0 is
/// affirmative, odd length is negative, even length at least 2 is doubly
/// negated.
pub fn classify_negation_profile(f: &Formula) -> NegationProfile {
    let n = f.neg_prefix_len();
    let class = if n == 0 {
        NegationClass::Affirmative
    } else if n % 2 == 1 {
        NegationClass::Negative
    } else {
        NegationClass::DoublyNegated
    };
    NegationProfile {
        class,
        raw_prefix_count: n,
    }
}

/// The intuitionistically equivalent representative with negation prefix
/// collapsed to length at most 2.
pub fn collapse_negation_prefix(f: &Formula) -> Formula {
    let n = f.neg_prefix_len();
    let core = f.neg_prefix_core().clone();
    match (n, n % 2) {
        (0 | 1 | 2, _) => f.clone(),
        (_, 1) => Formula::neg(core),
        (_, _) => Formula::neg(Formula::neg(core)),
    }
}

/// Parse error: position is a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: found {found}, expected {}", expected.join(" or "))]
pub struct ParseError {
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Neg,
    And,
    Or,
    Imp,
    Iff,
    BoxOp,
    DiaOp,
    Falsum,
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Neg => "`~`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Imp => "`->`",
            Tok::Iff => "`<->`",
            Tok::BoxOp => "`[]`",
            Tok::DiaOp => "`<>`",
            Tok::Falsum => "`false`",
            Tok::Forall => "`forall`",
            Tok::Exists => "`exists`",
            Tok::Dot => "`.`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
        };
        f.write_str(s)
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &input[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '¬' {
            toks.push((i, Tok::Neg));
            i += c.len_utf8();
            continue;
        }
        let tok = match c {
            '~' => Some((1, Tok::Neg)),
            '&' => Some((1, Tok::And)),
            '|' => Some((1, Tok::Or)),
            '-' if rest.starts_with("->") => Some((2, Tok::Imp)),
            '<' if rest.starts_with("<->") => Some((3, Tok::Iff)),
            '<' if rest.starts_with("<>") => Some((2, Tok::DiaOp)),
            '[' if rest.starts_with("[]") => Some((2, Tok::BoxOp)),
            '_' if rest.starts_with("_|_") => Some((3, Tok::Falsum)),
            '.' => Some((1, Tok::Dot)),
            '(' => Some((1, Tok::LParen)),
            ')' => Some((1, Tok::RParen)),
            _ => None,
        };
        if let Some((len, tok)) = tok {
            toks.push((i, tok));
            i += len;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut end = i;
            for ch in rest.chars() {
                if ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'' {
                    end += ch.len_utf8();
                } else {
                    break;
                }
            }
            let word = &input[start..end];
            let tok = match word {
                "false" => Tok::Falsum,
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word.to_string()),
            };
            toks.push((start, tok));
            i = end;
            continue;
        }
        return Err(ParseError {
            position: i,
            found: format!("`{c}`"),
            expected: vec!["a formula token".to_string()],
        });
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        let (position, found) = match self.toks.get(self.pos) {
            Some((p, t)) => (*p, t.to_string()),
            None => (self.input_len, "end of input".to_string()),
        };
        ParseError {
            position,
            found,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, want: &Tok, name: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&[name]))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.peek() == Some(&Tok::Iff) {
            self.pos += 1;
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            self.pos += 1;
            let rhs = self.imp()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Neg) => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::BoxOp) => {
                self.pos += 1;
                Ok(Formula::boxed(self.unary()?))
            }
            Some(Tok::DiaOp) => {
                self.pos += 1;
                Ok(Formula::dia(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quant(),
            _ => self.atomexpr(),
        }
    }

    fn quant(&mut self) -> Result<Formula, ParseError> {
        let univ = matches!(self.bump(), Some(Tok::Forall));
        let var = match self.bump() {
            Some(Tok::Ident(v)) => v,
            _ => {
                self.pos -= 1;
                return Err(self.err(&["a bound variable"]));
            }
        };
        self.expect(&Tok::Dot, "`.`")?;
        let body = self.unary()?;
        Ok(if univ {
            Formula::forall(var, body)
        } else {
            Formula::exists(var, body)
        })
    }

    fn atomexpr(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Falsum) => {
                self.pos += 1;
                Ok(Formula::Falsum)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let var = match self.bump() {
                        Some(Tok::Ident(v)) => v,
                        _ => {
                            self.pos -= 1;
                            return Err(self.err(&["a variable"]));
                        }
                    };
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Formula::pred(name, var))
                } else {
                    Ok(Formula::Atom(name))
                }
            }
            _ => Err(self.err(&["an atom", "`false`", "`(`", "`~`", "`forall`", "`exists`"])),
        }
    }
}

/// Parse a formula from its concrete syntax.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        input_len: input.len(),
    };
    let f = parser.formula()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err(&["end of input"]));
    }
    Ok(f)
}

// Precedence levels used by the printer; a formula is parenthesized whenever
// its own level is below the minimum its context requires.
const LVL_IFF: u8 = 0;
const LVL_IMP: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_UNARY: u8 = 4;

/// Render a formula with minimal parentheses; `parse_formula` inverts it.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    render_at(f, LVL_IFF, &mut out);
    out
}

fn render_at(f: &Formula, min: u8, out: &mut String) {
    let level = match f {
        Formula::Iff(..) => LVL_IFF,
        Formula::Imp(..) => LVL_IMP,
        Formula::Or(..) => LVL_OR,
        Formula::And(..) => LVL_AND,
        _ => LVL_UNARY,
    };
    let wrap = level < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::Pred(p, v) => {
            out.push_str(p);
            out.push('(');
            out.push_str(v);
            out.push(')');
        }
        Formula::Falsum => out.push_str("false"),
        Formula::Neg(a) => {
            out.push('~');
            render_at(a, LVL_UNARY, out);
        }
        Formula::Box(a) => {
            out.push_str("[]");
            render_at(a, LVL_UNARY, out);
        }
        Formula::Dia(a) => {
            out.push_str("<>");
            render_at(a, LVL_UNARY, out);
        }
        Formula::And(a, b) => {
            render_at(a, LVL_AND, out);
            out.push_str(" & ");
            render_at(b, LVL_UNARY, out);
        }
        Formula::Or(a, b) => {
            render_at(a, LVL_OR, out);
            out.push_str(" | ");
            render_at(b, LVL_AND, out);
        }
        Formula::Imp(a, b) => {
            render_at(a, LVL_OR, out);
            out.push_str(" -> ");
            render_at(b, LVL_IMP, out);
        }
        Formula::Iff(a, b) => {
            render_at(a, LVL_IFF, out);
            out.push_str(" <-> ");
            render_at(b, LVL_IMP, out);
        }
        Formula::Forall(v, body) => {
            out.push_str("forall ");
            out.push_str(v);
            out.push_str(". ");
            render_at(body, LVL_UNARY, out);
        }
        Formula::Exists(v, body) => {
            out.push_str("exists ");
            out.push_str(v);
            out.push_str(". ");
            render_at(body, LVL_UNARY, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_double_negation_implication() {
        assert_eq!(
            p("~~p -> p"),
            Formula::imp(
                Formula::neg(Formula::neg(Formula::atom("p"))),
                Formula::atom("p")
            )
        );
    }

    #[test]
    fn parses_quantified_double_negation() {
        assert_eq!(
            p("forall x. ~~f(x)"),
            Formula::forall(
                "x",
                Formula::neg(Formula::neg(Formula::pred("f", "x")))
            )
        );
    }

    #[test]
    fn parses_excluded_middle() {
        assert_eq!(
            p("p | ~p"),
            Formula::or(Formula::atom("p"), Formula::neg(Formula::atom("p")))
        );
    }

    #[test]
    fn parses_unicode_negation_and_bottom() {
        assert_eq!(p("¬¬p"), p("~~p"));
        assert_eq!(p("_|_"), Formula::Falsum);
    }

    #[test]
    fn quantifier_body_binds_tighter_than_implication() {
        // exists x. f(x) -> forall x. f(x) reads as an implication between
        // the two quantified formulas.
        assert_eq!(
            p("exists x. f(x) -> forall x. f(x)"),
            Formula::imp(
                Formula::exists("x", Formula::pred("f", "x")),
                Formula::forall("x", Formula::pred("f", "x"))
            )
        );
    }

    #[test]
    fn renders_with_minimal_parentheses() {
        assert_eq!(render_formula(&p("~~p")), "~~p");
        assert_eq!(
            render_formula(&Formula::imp(
                Formula::atom("p"),
                Formula::imp(Formula::atom("q"), Formula::atom("p"))
            )),
            "p -> q -> p"
        );
        assert_eq!(
            render_formula(&Formula::imp(
                Formula::imp(Formula::atom("p"), Formula::atom("q")),
                Formula::atom("p")
            )),
            "(p -> q) -> p"
        );
        assert_eq!(
            render_formula(&Formula::forall("x", Formula::pred("f", "x"))),
            "forall x. f(x)"
        );
        assert_eq!(render_formula(&p("p & q | r")), "p & q | r");
        assert_eq!(render_formula(&p("p & (q | r)")), "p & (q | r)");
        assert_eq!(render_formula(&p("p -> (q <-> r)")), "p -> (q <-> r)");
        assert_eq!(render_formula(&p("p <-> q <-> r")), "p <-> q <-> r");
    }

    #[test]
    fn iff_chain_is_left_associative() {
        assert_eq!(
            p("p <-> q <-> r"),
            Formula::iff(
                Formula::iff(Formula::atom("p"), Formula::atom("q")),
                Formula::atom("r")
            )
        );
    }

    #[test]
    fn rejects_trailing_garbage_with_position() {
        let e = parse_formula("p q").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_formula("p ->").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(!e.expected.is_empty());
    }

    #[test]
    fn negation_profiles() {
        let cases = [
            ("p", NegationClass::Affirmative, 0),
            ("~p", NegationClass::Negative, 1),
            ("~~p", NegationClass::DoublyNegated, 2),
            ("~~~p", NegationClass::Negative, 3),
            ("~~~~p", NegationClass::DoublyNegated, 4),
        ];
        for (text, class, count) in cases {
            let profile = classify_negation_profile(&p(text));
            assert_eq!(profile.class, class, "{text}");
            assert_eq!(profile.raw_prefix_count, count, "{text}");
        }
    }

    #[test]
    fn negate_adds_exactly_one_prefix() {
        let f = p("~p");
        assert_eq!(f.clone().negate(), p("~~p"));
        assert_eq!(Formula::Falsum.negate(), p("~false"));
        let before = classify_negation_profile(&f).raw_prefix_count;
        let after = classify_negation_profile(&f.negate().negate()).raw_prefix_count;
        assert_eq!(after, before + 2);
    }

    #[test]
    fn collapse_keeps_short_prefixes_and_shortens_long_ones() {
        assert_eq!(collapse_negation_prefix(&p("~~p")), p("~~p"));
        assert_eq!(collapse_negation_prefix(&p("~~~p")), p("~p"));
        assert_eq!(collapse_negation_prefix(&p("~~~~p")), p("~~p"));
        assert_eq!(collapse_negation_prefix(&p("~~~~~p")), p("~p"));
    }

    #[test]
    fn substitution_respects_binders() {
        let f = p("f(x) & forall x. f(x)");
        assert_eq!(f.subst_var("x", "c"), p("f(c) & forall x. f(x)"));
    }

    #[test]
    fn formula_serde_uses_rendered_text() {
        let f = p("~~p -> p");
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "\"~~p -> p\"");
        let back: Formula = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
