use std::collections::BTreeSet;
use std::fmt;

use super::{tokenize, NewVar, Signatures, Symbol, SyntaxError, Variable, Word};

/// A closed interval `[start, end]` of 1-based symbol positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn is_disjoint(&self, other: &Span) -> bool {
        self.end < other.start || other.end < self.start
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    Implies,
    Iff,
    And,
    Or,
}

impl Connective {
    pub fn symbol(self) -> Symbol {
        match self {
            Connective::Implies => Symbol::Implication,
            Connective::Iff => Symbol::Biconditional,
            Connective::And => Symbol::Conjunction,
            Connective::Or => Symbol::Disjunction,
        }
    }

    fn from_symbol(s: &Symbol) -> Option<Self> {
        Some(match s {
            Symbol::Implication => Connective::Implies,
            Symbol::Biconditional => Connective::Iff,
            Symbol::Conjunction => Connective::And,
            Symbol::Disjunction => Connective::Or,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn symbol(self) -> Symbol {
        match self {
            Quantifier::Exists => Symbol::Exists,
            Quantifier::Forall => Symbol::Forall,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    /// `( a in b )`
    Member(Variable, Variable),
    /// `( a = b )`
    Equal(Variable, Variable),
    /// `q ( a1 ; ... ; ak )`
    Predicate {
        name: String,
        args: Vec<Variable>,
    },
    Not(Box<Formula>),
    Binary {
        connective: Connective,
        left: Box<Formula>,
        right: Box<Formula>,
    },
    /// Quantifiers only ever bind set variables; the index is the `k` of `x_k`.
    Quantified {
        quantifier: Quantifier,
        variable: usize,
        body: Box<Formula>,
    },
}

/// Parse tree of a ZF′ formula. Every node carries its span in the parsed word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    kind: FormulaKind,
    span: Span,
}

impl Formula {
    pub fn kind(&self) -> &FormulaKind {
        &self.kind
    }

    pub fn span(&self) -> Span {
        self.span
    }

    /// Length in symbols.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.span.len()
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self.kind,
            FormulaKind::Member(..) | FormulaKind::Equal(..) | FormulaKind::Predicate { .. }
        )
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::new();
        self.write_symbols(&mut w);
        w
    }

    fn write_symbols(&self, out: &mut Word) {
        match &self.kind {
            FormulaKind::Member(a, b) | FormulaKind::Equal(a, b) => {
                let op = if matches!(self.kind, FormulaKind::Member(..)) {
                    Symbol::Membership
                } else {
                    Symbol::Equality
                };
                out.extend([
                    Symbol::LeftParen,
                    a.symbol(),
                    op,
                    b.symbol(),
                    Symbol::RightParen,
                ]);
            }
            FormulaKind::Predicate { name, args } => {
                out.push(Symbol::Predicate(name.clone()));
                out.push(Symbol::LeftParen);
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(Symbol::Semicolon);
                    }
                    out.push(a.symbol());
                }
                out.push(Symbol::RightParen);
            }
            FormulaKind::Not(child) => {
                out.push(Symbol::Negation);
                child.write_symbols(out);
            }
            FormulaKind::Binary {
                connective,
                left,
                right,
            } => {
                out.push(Symbol::LeftParen);
                left.write_symbols(out);
                out.push(connective.symbol());
                right.write_symbols(out);
                out.push(Symbol::RightParen);
            }
            FormulaKind::Quantified {
                quantifier,
                variable,
                body,
            } => {
                out.extend([
                    Symbol::LeftParen,
                    quantifier.symbol(),
                    Symbol::SetVar(*variable),
                ]);
                body.write_symbols(out);
                out.push(Symbol::RightParen);
            }
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match &self.kind {
            FormulaKind::Not(c) => vec![c],
            FormulaKind::Binary { left, right, .. } => vec![left, right],
            FormulaKind::Quantified { body, .. } => vec![body],
            _ => vec![],
        }
    }

    /// All subformulas in preorder, starting with `self`.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            stack.extend(f.children().into_iter().rev());
        }
        out
    }

    /// Predicate atoms in left-to-right order, as `(name, args, span)`.
    pub fn predicate_atoms(&self) -> Vec<(&str, &[Variable], Span)> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match &f.kind {
                FormulaKind::Predicate { name, args } => Some((name.as_str(), &args[..], f.span)),
                _ => None,
            })
            .collect()
    }

    pub fn has_predicate(&self) -> bool {
        !self.predicate_atoms().is_empty()
    }

    /// Indices `j` of all set variables `x_j` used anywhere in the formula.
    pub fn set_variable_indices(&self) -> BTreeSet<usize> {
        occurrences(self)
            .into_iter()
            .filter_map(|o| match o.variable {
                Variable::Set(k) => Some(k),
                Variable::New(_) => None,
            })
            .collect()
    }

    pub fn new_variables(&self) -> BTreeSet<NewVar> {
        occurrences(self)
            .into_iter()
            .filter_map(|o| match o.variable {
                Variable::New(v) => Some(v),
                Variable::Set(_) => None,
            })
            .collect()
    }

    pub fn free_variables(&self) -> BTreeSet<Variable> {
        occurrences(self)
            .into_iter()
            .filter(|o| o.status == OccurrenceStatus::Free)
            .map(|o| o.variable)
            .collect()
    }

    pub fn count(&self, symbol: &Symbol) -> usize {
        self.to_word().count(symbol)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

struct Parser<'a> {
    word: &'a [Symbol],
    pos: usize,
    sigs: &'a Signatures,
    allow_new_vars: bool,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, position: usize, reason: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::NotAFormula {
            position,
            reason: reason.into(),
        })
    }

    fn peek(&self) -> Option<&'a Symbol> {
        self.word.get(self.pos)
    }

    /// Current 1-based position.
    fn here(&self) -> usize {
        self.pos + 1
    }

    fn expect(&mut self, want: &Symbol) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(s) if s == want => {
                self.pos += 1;
                Ok(())
            }
            Some(s) => self.fail(self.here(), format!("expected `{want}`, found `{s}`")),
            None => self.fail(self.here(), format!("expected `{want}`, input ended")),
        }
    }

    fn variable(&mut self) -> Result<Variable, SyntaxError> {
        match self.peek().and_then(Symbol::as_variable) {
            Some(Variable::New(_)) if !self.allow_new_vars => {
                self.fail(self.here(), "new variables are not ZF symbols")
            }
            Some(v) => {
                self.pos += 1;
                Ok(v)
            }
            None => match self.peek() {
                Some(s) => self.fail(self.here(), format!("expected a variable, found `{s}`")),
                None => self.fail(self.here(), "expected a variable, input ended"),
            },
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let start = self.here();
        match self.peek() {
            Some(Symbol::Negation) => {
                self.pos += 1;
                let child = self.formula()?;
                Ok(Formula {
                    span: Span {
                        start,
                        end: child.span.end,
                    },
                    kind: FormulaKind::Not(Box::new(child)),
                })
            }
            Some(Symbol::Predicate(name)) => self.predicate_atom(name),
            Some(Symbol::LeftParen) => {
                self.pos += 1;
                let kind = match self.peek() {
                    Some(Symbol::Exists) | Some(Symbol::Forall) => {
                        let quantifier = if self.peek() == Some(&Symbol::Exists) {
                            Quantifier::Exists
                        } else {
                            Quantifier::Forall
                        };
                        self.pos += 1;
                        let variable = match self.peek() {
                            Some(Symbol::SetVar(k)) => *k,
                            Some(Symbol::NewVar(_)) => {
                                return self.fail(self.here(), "new variables cannot be quantified")
                            }
                            Some(s) => {
                                return self.fail(
                                    self.here(),
                                    format!(
                                        "expected a set variable after quantifier, found `{s}`"
                                    ),
                                )
                            }
                            None => return self.fail(self.here(), "input ended after quantifier"),
                        };
                        self.pos += 1;
                        let body = self.formula()?;
                        FormulaKind::Quantified {
                            quantifier,
                            variable,
                            body: Box::new(body),
                        }
                    }
                    Some(s) if s.as_variable().is_some() => {
                        let left = self.variable()?;
                        let is_member = match self.peek() {
                            Some(Symbol::Membership) => true,
                            Some(Symbol::Equality) => false,
                            Some(s) => {
                                return self.fail(
                                    self.here(),
                                    format!("expected `in` or `=`, found `{s}`"),
                                )
                            }
                            None => return self.fail(self.here(), "input ended inside atom"),
                        };
                        self.pos += 1;
                        let right = self.variable()?;
                        if is_member {
                            FormulaKind::Member(left, right)
                        } else {
                            FormulaKind::Equal(left, right)
                        }
                    }
                    _ => {
                        let left = self.formula()?;
                        let connective = match self.peek().and_then(Connective::from_symbol) {
                            Some(c) => c,
                            None => match self.peek() {
                                Some(s) => {
                                    return self.fail(
                                        self.here(),
                                        format!("expected a connective, found `{s}`"),
                                    )
                                }
                                None => {
                                    return self
                                        .fail(self.here(), "expected a connective, input ended")
                                }
                            },
                        };
                        self.pos += 1;
                        let right = self.formula()?;
                        FormulaKind::Binary {
                            connective,
                            left: Box::new(left),
                            right: Box::new(right),
                        }
                    }
                };
                self.expect(&Symbol::RightParen)?;
                Ok(Formula {
                    kind,
                    span: Span {
                        start,
                        end: self.pos,
                    },
                })
            }
            Some(s) => self.fail(start, format!("a formula cannot start with `{s}`")),
            None => self.fail(start, "expected a formula, input ended"),
        }
    }

    fn predicate_atom(&mut self, name: &str) -> Result<Formula, SyntaxError> {
        let start = self.here();
        let Some(arity) = self.sigs.arity(name) else {
            return Err(SyntaxError::UnknownPredicate {
                name: name.to_string(),
                position: start,
            });
        };
        self.pos += 1;
        self.expect(&Symbol::LeftParen)?;
        let mut args = vec![self.variable()?];
        while self.peek() == Some(&Symbol::Semicolon) {
            self.pos += 1;
            args.push(self.variable()?);
        }
        self.expect(&Symbol::RightParen)?;
        if args.len() != arity {
            return Err(SyntaxError::ArityMismatch {
                name: name.to_string(),
                position: start,
                expected: arity,
                found: args.len(),
            });
        }
        Ok(Formula {
            kind: FormulaKind::Predicate {
                name: name.to_string(),
                args,
            },
            span: Span {
                start,
                end: self.pos,
            },
        })
    }
}

fn run_parser(
    word: &[Symbol],
    sigs: &Signatures,
    allow_new_vars: bool,
) -> Result<Formula, SyntaxError> {
    let mut p = Parser {
        word,
        pos: 0,
        sigs,
        allow_new_vars,
    };
    let f = p.formula()?;
    if p.pos != word.len() {
        return p.fail(p.here(), "trailing symbols after a complete formula");
    }
    Ok(f)
}

/// Parses a ZF′ formula over `sigs`.
///
/// New variables are accepted in atoms; predicates must be registered in
/// `sigs` with the arity they are applied to. Errors report the earliest
/// failing 1-based position.
pub fn parse(word: &[Symbol], sigs: &Signatures) -> Result<Formula, SyntaxError> {
    run_parser(word, sigs, true)
}

/// Parses a plain ZF formula: no predicates, no new variables.
pub fn parse_zf(word: &[Symbol]) -> Result<Formula, SyntaxError> {
    run_parser(word, &Signatures::empty(), false)
}

/// Tokenizes and parses in one step.
pub fn parse_text(text: &str, sigs: &Signatures) -> Result<Formula, SyntaxError> {
    parse(&tokenize(text)?, sigs)
}

/// The eight cases of the unique reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Atomic,
    Negation,
    Implication,
    Biconditional,
    Conjunction,
    Disjunction,
    Existential,
    Universal,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Atomic => "atomic",
            Case::Negation => "negation",
            Case::Implication => "implication",
            Case::Biconditional => "biconditional",
            Case::Conjunction => "conjunction",
            Case::Disjunction => "disjunction",
            Case::Existential => "existential",
            Case::Universal => "universal",
        })
    }
}

/// The top-level case of a formula together with its immediate constituents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading<'a> {
    Atomic(&'a Formula),
    Negation(&'a Formula),
    Binary {
        connective: Connective,
        left: &'a Formula,
        right: &'a Formula,
    },
    Quantified {
        quantifier: Quantifier,
        variable: usize,
        body: &'a Formula,
    },
}

impl Reading<'_> {
    pub fn case(&self) -> Case {
        match self {
            Reading::Atomic(_) => Case::Atomic,
            Reading::Negation(_) => Case::Negation,
            Reading::Binary { connective, .. } => match connective {
                Connective::Implies => Case::Implication,
                Connective::Iff => Case::Biconditional,
                Connective::And => Case::Conjunction,
                Connective::Or => Case::Disjunction,
            },
            Reading::Quantified { quantifier, .. } => match quantifier {
                Quantifier::Exists => Case::Existential,
                Quantifier::Forall => Case::Universal,
            },
        }
    }
}

pub fn classify(tree: &Formula) -> Reading<'_> {
    match &tree.kind {
        FormulaKind::Member(..) | FormulaKind::Equal(..) | FormulaKind::Predicate { .. } => {
            Reading::Atomic(tree)
        }
        FormulaKind::Not(c) => Reading::Negation(c),
        FormulaKind::Binary {
            connective,
            left,
            right,
        } => Reading::Binary {
            connective: *connective,
            left,
            right,
        },
        FormulaKind::Quantified {
            quantifier,
            variable,
            body,
        } => Reading::Quantified {
            quantifier: *quantifier,
            variable: *variable,
            body,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OccurrenceStatus {
    Free,
    Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub variable: Variable,
    /// 1-based position in the word the formula was parsed from.
    pub position: usize,
    pub status: OccurrenceStatus,
}

/// Every variable occurrence, in word order.
///
/// The variable right after a quantifier counts as a bound occurrence.
pub fn occurrences(tree: &Formula) -> Vec<Occurrence> {
    fn walk(f: &Formula, bound: &mut Vec<usize>, out: &mut Vec<Occurrence>) {
        let status = |v: Variable, bound: &[usize]| match v {
            Variable::Set(k) if bound.contains(&k) => OccurrenceStatus::Bound,
            _ => OccurrenceStatus::Free,
        };
        let start = f.span.start;
        match &f.kind {
            FormulaKind::Member(a, b) | FormulaKind::Equal(a, b) => {
                for (v, position) in [(*a, start + 1), (*b, start + 3)] {
                    out.push(Occurrence {
                        variable: v,
                        position,
                        status: status(v, bound),
                    });
                }
            }
            FormulaKind::Predicate { args, .. } => {
                for (i, v) in args.iter().enumerate() {
                    out.push(Occurrence {
                        variable: *v,
                        position: start + 2 + 2 * i,
                        status: status(*v, bound),
                    });
                }
            }
            FormulaKind::Not(c) => walk(c, bound, out),
            FormulaKind::Binary { left, right, .. } => {
                walk(left, bound, out);
                walk(right, bound, out);
            }
            FormulaKind::Quantified { variable, body, .. } => {
                out.push(Occurrence {
                    variable: Variable::Set(*variable),
                    position: start + 2,
                    status: OccurrenceStatus::Bound,
                });
                bound.push(*variable);
                walk(body, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(tree, &mut Vec::new(), &mut out);
    out
}

pub fn is_sentence(tree: &Formula) -> bool {
    occurrences(tree)
        .iter()
        .all(|o| o.status == OccurrenceStatus::Bound)
}
