//! Alphabets, words and the textual token grammar for ZF and ZF′ formulas.
//!
//! The surface syntax is ASCII and whitespace separated:
//!
//! ```text
//! in  =  !  ->  <->  &  |  E  A  (  )  ;
//! x1 x2 ...             set variables (no leading zeros, index >= 1)
//! ?x ?y ?z ?a ?b ?c ?y1 new variables
//! SUS OPA ...           predicate names (uppercase identifiers other than A and E)
//! ```
//!
//! `(`, `)` and `;` also delimit themselves. A `#` starts a comment that runs
//! to the end of the line. Lengths are always counted in symbols, never in
//! characters.

mod bracket;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

pub use bracket::{bracket_subsequence, good_bracketing, Bracket};
pub use parse::{
    classify, is_sentence, occurrences, parse, parse_text, parse_zf, Case, Connective, Formula,
    FormulaKind, Occurrence, OccurrenceStatus, Quantifier, Reading, Span,
};

/// One of the new variables `x, y, z, a, b, c, y1, y2, ...`.
///
/// New variables only serve as predicate arguments and are never quantified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NewVar {
    X,
    Y,
    Z,
    A,
    B,
    C,
    /// `y_k` for `k >= 1`.
    Indexed(usize),
}

impl fmt::Display for NewVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NewVar::X => f.write_str("?x"),
            NewVar::Y => f.write_str("?y"),
            NewVar::Z => f.write_str("?z"),
            NewVar::A => f.write_str("?a"),
            NewVar::B => f.write_str("?b"),
            NewVar::C => f.write_str("?c"),
            NewVar::Indexed(k) => write!(f, "?y{k}"),
        }
    }
}

/// A variable that may appear in an atomic formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// The set variable `x_k`, `k >= 1`.
    Set(usize),
    New(NewVar),
}

impl Variable {
    pub fn symbol(self) -> Symbol {
        match self {
            Variable::Set(k) => Symbol::SetVar(k),
            Variable::New(v) => Symbol::NewVar(v),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Set(k) => write!(f, "x{k}"),
            Variable::New(v) => v.fmt(f),
        }
    }
}

impl FromStr for Variable {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match lex_token(s, 0)? {
            Symbol::SetVar(k) => Ok(Variable::Set(k)),
            Symbol::NewVar(v) => Ok(Variable::New(v)),
            _ => Err(SyntaxError::MalformedVariable {
                token: s.to_string(),
                offset: 0,
            }),
        }
    }
}

/// A letter of the extended alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    SetVar(usize),
    NewVar(NewVar),
    Membership,
    Equality,
    Negation,
    Implication,
    Biconditional,
    Conjunction,
    Disjunction,
    Exists,
    Forall,
    LeftParen,
    RightParen,
    Semicolon,
    Predicate(String),
}

impl Symbol {
    pub fn as_variable(&self) -> Option<Variable> {
        match *self {
            Symbol::SetVar(k) => Some(Variable::Set(k)),
            Symbol::NewVar(v) => Some(Variable::New(v)),
            _ => None,
        }
    }

    /// True for the symbols of the plain ZF alphabet (no `;`, new variables or predicates).
    pub fn is_zf(&self) -> bool {
        !matches!(
            self,
            Symbol::NewVar(_) | Symbol::Semicolon | Symbol::Predicate(_)
        )
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::SetVar(k) => write!(f, "x{k}"),
            Symbol::NewVar(v) => v.fmt(f),
            Symbol::Membership => f.write_str("in"),
            Symbol::Equality => f.write_str("="),
            Symbol::Negation => f.write_str("!"),
            Symbol::Implication => f.write_str("->"),
            Symbol::Biconditional => f.write_str("<->"),
            Symbol::Conjunction => f.write_str("&"),
            Symbol::Disjunction => f.write_str("|"),
            Symbol::Exists => f.write_str("E"),
            Symbol::Forall => f.write_str("A"),
            Symbol::LeftParen => f.write_str("("),
            Symbol::RightParen => f.write_str(")"),
            Symbol::Semicolon => f.write_str(";"),
            Symbol::Predicate(name) => f.write_str(name),
        }
    }
}

/// A finite sequence of symbols. The empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    /// `|u|_a`: the number of positions holding `symbol`.
    pub fn count(&self, symbol: &Symbol) -> usize {
        self.0.iter().filter(|s| *s == symbol).count()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, symbol: Symbol) {
        self.0.push(symbol);
    }

    /// Symbol at the 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<&Symbol> {
        i.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn is_zf(&self) -> bool {
        self.0.iter().all(Symbol::is_zf)
    }

    pub fn has_predicate(&self) -> bool {
        self.0.iter().any(|s| matches!(s, Symbol::Predicate(_)))
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Extend<Symbol> for Word {
    fn extend<I: IntoIterator<Item = Symbol>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl FromStr for Word {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        tokenize(s)
    }
}

/// Renders the word in the token grammar, one space between symbols.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            s.fmt(f)?;
        }
        Ok(())
    }
}

pub fn render_text(word: &[Symbol]) -> String {
    let mut out = String::new();
    for (i, s) in word.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&s.to_string());
    }
    out
}

/// A predicate name together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredicateSignature {
    pub name: String,
    pub arity: usize,
}

impl PredicateSignature {
    pub fn new(name: impl Into<String>, arity: usize) -> Result<Self, SyntaxError> {
        let name = name.into();
        if !is_predicate_name(&name) {
            return Err(SyntaxError::BadSignature {
                name,
                reason: "not an uppercase identifier",
            });
        }
        if arity == 0 {
            return Err(SyntaxError::BadSignature {
                name,
                reason: "arity must be at least 1",
            });
        }
        Ok(PredicateSignature { name, arity })
    }
}

/// A set of predicate signatures with distinct names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signatures(BTreeMap<String, usize>);

impl Signatures {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_signatures(
        sigs: impl IntoIterator<Item = PredicateSignature>,
    ) -> Result<Self, SyntaxError> {
        let mut out = Signatures::empty();
        for sig in sigs {
            out.insert(sig)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, sig: PredicateSignature) -> Result<(), SyntaxError> {
        if self.0.contains_key(&sig.name) {
            return Err(SyntaxError::BadSignature {
                name: sig.name,
                reason: "duplicate predicate name",
            });
        }
        self.0.insert(sig.name, sig.arity);
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.0.get(name).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("unknown token `{token}` at offset {offset}")]
    UnknownToken { token: String, offset: usize },
    #[error("malformed variable `{token}` at offset {offset}")]
    MalformedVariable { token: String, offset: usize },
    #[error("not a formula: {reason} at position {position}")]
    NotAFormula {
        /// 1-based symbol position; `len + 1` means the input ended early.
        position: usize,
        reason: String,
    },
    #[error("predicate {name} at position {position} expects {expected} arguments, found {found}")]
    ArityMismatch {
        name: String,
        position: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown predicate {name} at position {position}")]
    UnknownPredicate { name: String, position: usize },
    #[error("bad predicate signature {name}: {reason}")]
    BadSignature { name: String, reason: &'static str },
}

fn is_predicate_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
        && s != "A"
        && s != "E"
}

/// Parses a decimal index `>= 1` without leading zeros.
fn parse_index(digits: &str) -> Option<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

fn lex_token(token: &str, offset: usize) -> Result<Symbol, SyntaxError> {
    let malformed = || SyntaxError::MalformedVariable {
        token: token.to_string(),
        offset,
    };
    let sym = match token {
        "in" => Symbol::Membership,
        "=" => Symbol::Equality,
        "!" => Symbol::Negation,
        "->" => Symbol::Implication,
        "<->" => Symbol::Biconditional,
        "&" => Symbol::Conjunction,
        "|" => Symbol::Disjunction,
        "E" => Symbol::Exists,
        "A" => Symbol::Forall,
        "(" => Symbol::LeftParen,
        ")" => Symbol::RightParen,
        ";" => Symbol::Semicolon,
        _ => {
            if let Some(rest) = token.strip_prefix('?') {
                let var = match rest {
                    "x" => NewVar::X,
                    "y" => NewVar::Y,
                    "z" => NewVar::Z,
                    "a" => NewVar::A,
                    "b" => NewVar::B,
                    "c" => NewVar::C,
                    _ => {
                        let digits = rest.strip_prefix('y').ok_or_else(malformed)?;
                        NewVar::Indexed(parse_index(digits).ok_or_else(malformed)?)
                    }
                };
                Symbol::NewVar(var)
            } else if let Some(rest) = token.strip_prefix('x') {
                Symbol::SetVar(parse_index(rest).ok_or_else(malformed)?)
            } else if is_predicate_name(token) {
                Symbol::Predicate(token.to_string())
            } else {
                return Err(SyntaxError::UnknownToken {
                    token: token.to_string(),
                    offset,
                });
            }
        }
    };
    Ok(sym)
}

/// Splits `text` into symbols. Offsets in errors are byte offsets into `text`.
pub fn tokenize(text: &str) -> Result<Word, SyntaxError> {
    let mut word = Word::new();
    let mut start: Option<usize> = None;
    let mut comment = false;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if comment {
            if b == b'\n' {
                comment = false;
            }
            continue;
        }
        let delim = matches!(b, b'(' | b')' | b';' | b'#') || b.is_ascii_whitespace();
        if delim {
            if let Some(s) = start.take() {
                word.push(lex_token(&text[s..i], s)?);
            }
            match b {
                b'(' => word.push(Symbol::LeftParen),
                b')' => word.push(Symbol::RightParen),
                b';' => word.push(Symbol::Semicolon),
                b'#' => comment = true,
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        word.push(lex_token(&text[s..], s)?);
    }
    Ok(word)
}
