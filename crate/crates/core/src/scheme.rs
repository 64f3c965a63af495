//! Well-formed abbreviation schemes and their forward expansion.
//!
//! A scheme is an ordered list of shortcuts `q_i(params) := body_i`. It is
//! well formed when every body only mentions earlier predicates (`R(i) < {i}`)
//! and the sets `V(i)` of set-variable indices used by the bodies are
//! increasing (strict mode) or pairwise disjoint (relaxed mode). Forward
//! expansion then replaces each predicate atom by the earlier expansion with
//! its parameters renamed to the actual arguments, which yields a
//! predicate-free formula for every shortcut.
//!
//! The text format is one shortcut per line:
//!
//! ```text
//! # comment
//! SUS ( ?x ; ?y ) := ( A x1 ( ( x1 in ?x ) -> ( x1 in ?y ) ) )
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::subst::{self, Interval};
use crate::syntax::{
    parse, tokenize, Formula, NewVar, PredicateSignature, Signatures, Symbol, SyntaxError,
    Variable, Word,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SchemeMode {
    /// `V(1) < V(2) < ... < V(l)`.
    #[default]
    Strict,
    /// The `V(i)` only need to be pairwise disjoint.
    Relaxed,
}

impl FromStr for SchemeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(SchemeMode::Strict),
            "relaxed" => Ok(SchemeMode::Relaxed),
            _ => Err(format!(
                "unknown scheme mode `{s}` (expected strict or relaxed)"
            )),
        }
    }
}

/// A predicate definition `q(params) := body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortcut {
    pub signature: PredicateSignature,
    pub params: Vec<NewVar>,
    pub body: Formula,
}

impl Shortcut {
    pub fn name(&self) -> &str {
        &self.signature.name
    }
}

impl fmt::Display for Shortcut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (", self.signature.name)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(" ;")?;
            }
            write!(f, " {p}")?;
        }
        write!(f, " ) := {}", self.body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: SyntaxError },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("predicate {0} is defined more than once")]
    DuplicatePredicate(String),
    #[error("shortcut {shortcut}: {reason}")]
    InvalidParameters { shortcut: String, reason: String },
    #[error("shortcut {shortcut} refers to {referenced}, which is not defined before it")]
    CircularReference {
        shortcut: String,
        referenced: String,
    },
    #[error("shortcut {shortcut} uses undefined predicate {referenced}")]
    UnknownPredicate {
        shortcut: String,
        referenced: String,
    },
    #[error("shortcut {shortcut} applies {referenced} to {found} arguments, expected {expected}")]
    ArityMismatch {
        shortcut: String,
        referenced: String,
        expected: usize,
        found: usize,
    },
    #[error("variable sets of {first} and {second} violate the {mode:?} ordering condition")]
    VariableClash {
        first: String,
        second: String,
        mode: SchemeMode,
    },
    #[error("shortcut {shortcut} has a free occurrence of x{variable}")]
    FreeSetVariable { shortcut: String, variable: usize },
    #[error("shortcut {shortcut} uses {variable}, which is not one of its parameters")]
    ForeignNewVariable { shortcut: String, variable: NewVar },
    #[error("parameter {0} is not assigned")]
    UncoveredParameter(NewVar),
    #[error("expanding {predicate} would capture x{variable}; use set variables the scheme does not bind")]
    VariableCapture { predicate: String, variable: usize },
    #[error("instantiation failed: {0}")]
    Instantiation(String),
}

/// A validated scheme with its `R` and `V` sets and a lazily built expansion cache.
#[derive(Clone, Debug)]
pub struct Scheme {
    shortcuts: Vec<Shortcut>,
    references: Vec<BTreeSet<usize>>,
    variables: Vec<BTreeSet<usize>>,
    mode: SchemeMode,
    expansions: OnceLock<Vec<Formula>>,
}

fn check_params(sc: &Shortcut) -> Result<(), SchemeError> {
    let bad = |reason: String| SchemeError::InvalidParameters {
        shortcut: sc.name().to_string(),
        reason,
    };
    if sc.params.len() != sc.signature.arity {
        return Err(bad(format!(
            "{} parameters for arity {}",
            sc.params.len(),
            sc.signature.arity
        )));
    }
    let distinct: BTreeSet<_> = sc.params.iter().collect();
    if distinct.len() != sc.params.len() {
        return Err(bad("parameters must be distinct".into()));
    }
    let xyz = sc
        .params
        .iter()
        .all(|p| matches!(p, NewVar::X | NewVar::Y | NewVar::Z));
    let indexed = sc.params.iter().all(|p| matches!(p, NewVar::Indexed(_)));
    if xyz && sc.params.len() > 3 {
        return Err(bad(
            "?x ?y ?z parameters are only allowed up to arity 3".into()
        ));
    }
    if !xyz && !indexed {
        return Err(bad(
            "parameters must be all from ?x ?y ?z or all of the form ?y<k>".into(),
        ));
    }
    Ok(())
}

/// Checks every shortcut and the well-formedness conditions, returning the annotated scheme.
pub fn validate_scheme(shortcuts: Vec<Shortcut>, mode: SchemeMode) -> Result<Scheme, SchemeError> {
    let names: Vec<&str> = shortcuts.iter().map(Shortcut::name).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(SchemeError::DuplicatePredicate(n.to_string()));
        }
    }

    let mut references = Vec::with_capacity(shortcuts.len());
    let mut variables = Vec::with_capacity(shortcuts.len());
    for (i, sc) in shortcuts.iter().enumerate() {
        check_params(sc)?;
        let name = sc.name().to_string();
        for v in sc.body.free_variables() {
            match v {
                Variable::Set(k) => {
                    return Err(SchemeError::FreeSetVariable {
                        shortcut: name,
                        variable: k,
                    })
                }
                Variable::New(nv) if !sc.params.contains(&nv) => {
                    return Err(SchemeError::ForeignNewVariable {
                        shortcut: name,
                        variable: nv,
                    })
                }
                Variable::New(_) => {}
            }
        }
        let mut refs = BTreeSet::new();
        for (pred, args, _) in sc.body.predicate_atoms() {
            let Some(k) = names.iter().position(|n| *n == pred) else {
                return Err(SchemeError::UnknownPredicate {
                    shortcut: name,
                    referenced: pred.to_string(),
                });
            };
            let expected = shortcuts[k].signature.arity;
            if args.len() != expected {
                return Err(SchemeError::ArityMismatch {
                    shortcut: name,
                    referenced: pred.to_string(),
                    expected,
                    found: args.len(),
                });
            }
            if k >= i {
                return Err(SchemeError::CircularReference {
                    shortcut: name,
                    referenced: pred.to_string(),
                });
            }
            refs.insert(k + 1);
        }
        references.push(refs);
        variables.push(sc.body.set_variable_indices());
    }

    for j in 0..shortcuts.len() {
        for i in 0..j {
            let (a, b): (&BTreeSet<usize>, &BTreeSet<usize>) = (&variables[i], &variables[j]);
            let ok = match mode {
                SchemeMode::Strict => match (a.last(), b.first()) {
                    (Some(max_a), Some(min_b)) => max_a < min_b,
                    _ => true,
                },
                SchemeMode::Relaxed => a.is_disjoint(b),
            };
            if !ok {
                return Err(SchemeError::VariableClash {
                    first: names[i].to_string(),
                    second: names[j].to_string(),
                    mode,
                });
            }
        }
    }

    Ok(Scheme {
        shortcuts,
        references,
        variables,
        mode,
        expansions: OnceLock::new(),
    })
}

impl Scheme {
    /// Parses the text format and validates the result.
    pub fn from_text(text: &str, mode: SchemeMode) -> Result<Self, SchemeError> {
        validate_scheme(parse_scheme(text)?, mode)
    }

    pub fn shortcuts(&self) -> &[Shortcut] {
        &self.shortcuts
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.shortcuts.len()
    }

    pub fn mode(&self) -> SchemeMode {
        self.mode
    }

    /// `R(i)` for the shortcut at 0-based position `i`; members are 1-based scheme indices.
    pub fn references(&self, i: usize) -> &BTreeSet<usize> {
        &self.references[i]
    }

    /// `V(i)` for the shortcut at 0-based position `i`.
    pub fn variables(&self, i: usize) -> &BTreeSet<usize> {
        &self.variables[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.shortcuts.iter().position(|s| s.name() == name)
    }

    pub fn signatures(&self) -> Signatures {
        Signatures::from_signatures(self.shortcuts.iter().map(|s| s.signature.clone()))
            .expect("validated scheme has distinct names")
    }

    /// The forward expansions `E_1 ... E_l`, computed once and cached.
    pub fn expansions(&self) -> &[Formula] {
        self.expansions.get_or_init(|| self.forward_expansion())
    }

    pub fn expansion(&self, name: &str) -> Option<&Formula> {
        self.position(name).map(|i| &self.expansions()[i])
    }

    /// Replaces every predicate atom of `formula` by the instantiated expansion.
    ///
    /// Fails if an expansion would bind a set variable that `formula` uses.
    pub fn expand(&self, formula: &Formula) -> Result<Formula, SchemeError> {
        for (name, args, _) in formula.predicate_atoms() {
            let k = self
                .position(name)
                .ok_or_else(|| SchemeError::UnknownPredicate {
                    shortcut: "<formula>".into(),
                    referenced: name.to_string(),
                })?;
            let expected = self.shortcuts[k].signature.arity;
            if args.len() != expected {
                return Err(SchemeError::ArityMismatch {
                    shortcut: "<formula>".into(),
                    referenced: name.to_string(),
                    expected,
                    found: args.len(),
                });
            }
        }
        let word = self.splice(formula, self.expansions())?;
        parse(&word, &Signatures::empty()).map_err(|e| SchemeError::Instantiation(e.to_string()))
    }

    fn splice(&self, host: &Formula, done: &[Formula]) -> Result<Word, SchemeError> {
        let atoms = host.predicate_atoms();
        if atoms.is_empty() {
            return Ok(host.to_word());
        }
        let host_vars = host.set_variable_indices();
        let mut patches = Vec::with_capacity(atoms.len());
        for (pred, args, span) in atoms {
            let k = self
                .position(pred)
                .expect("predicate checked by the caller");
            let callee = &self.shortcuts[k];
            let inserted = &done[k];
            if let Some(&variable) = inserted
                .set_variable_indices()
                .intersection(&host_vars)
                .next()
            {
                return Err(SchemeError::VariableCapture {
                    predicate: callee.name().to_string(),
                    variable,
                });
            }
            let renaming: Vec<(Symbol, Symbol)> = callee
                .params
                .iter()
                .zip(args)
                .map(|(p, a)| (Symbol::NewVar(*p), a.symbol()))
                .collect();
            let m = subst::sub1(&inserted.to_word(), &renaming).expect("distinct parameters");
            patches.push((m, Interval::from(span)));
        }
        Ok(subst::sub2(&host.to_word(), &patches)
            .expect("predicate atoms of a formula are disjoint")
            .into())
    }

    fn forward_expansion(&self) -> Vec<Formula> {
        let no_predicates = Signatures::empty();
        let mut done: Vec<Formula> = Vec::with_capacity(self.shortcuts.len());
        for sc in &self.shortcuts {
            let word = self
                .splice(&sc.body, &done)
                .expect("well-formedness rules out variable capture");
            let e = parse(&word, &no_predicates).expect("expansion of a valid scheme is a formula");
            done.push(e);
        }
        done
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sc in &self.shortcuts {
            writeln!(f, "{sc}")?;
        }
        Ok(())
    }
}

/// Renames the free new variables of `formula` and re-parses the result.
///
/// Every free new variable must be assigned. Lengths are preserved.
pub fn instantiate(
    formula: &Formula,
    assignment: &[(NewVar, Variable)],
) -> Result<Formula, SchemeError> {
    for v in formula.free_variables() {
        if let Variable::New(nv) = v {
            if !assignment.iter().any(|(p, _)| *p == nv) {
                return Err(SchemeError::UncoveredParameter(nv));
            }
        }
    }
    let renaming: Vec<(Symbol, Symbol)> = assignment
        .iter()
        .map(|(p, t)| (Symbol::NewVar(*p), t.symbol()))
        .collect();
    let word = subst::sub1(&formula.to_word(), &renaming)
        .map_err(|e| SchemeError::Instantiation(e.to_string()))?;
    let mut sigs = Signatures::empty();
    for (name, args, _) in formula.predicate_atoms() {
        if sigs.arity(name).is_none() {
            sigs.insert(PredicateSignature {
                name: name.to_string(),
                arity: args.len(),
            })
            .expect("checked above");
        }
    }
    parse(&word, &sigs).map_err(|e| SchemeError::Instantiation(e.to_string()))
}

struct Head {
    line: usize,
    signature: PredicateSignature,
    params: Vec<NewVar>,
    body: String,
}

fn parse_head(line: usize, text: &str) -> Result<(PredicateSignature, Vec<NewVar>), SchemeError> {
    let malformed = |reason: &str| SchemeError::Malformed {
        line,
        reason: reason.to_string(),
    };
    let word = tokenize(text).map_err(|source| SchemeError::Syntax { line, source })?;
    let (name, rest) = match word.split_first() {
        Some((Symbol::Predicate(n), rest)) => (n.clone(), rest),
        _ => return Err(malformed("a shortcut must start with a predicate name")),
    };
    let inner = match rest {
        [Symbol::LeftParen, inner @ .., Symbol::RightParen] if !inner.is_empty() => inner,
        _ => {
            return Err(malformed(
                "expected `( ?a ; ... )` after the predicate name",
            ))
        }
    };
    let mut params = Vec::new();
    for (i, s) in inner.iter().enumerate() {
        match (i % 2, s) {
            (0, Symbol::NewVar(v)) => params.push(*v),
            (1, Symbol::Semicolon) => {}
            _ => {
                return Err(malformed(
                    "parameters must be new variables separated by `;`",
                ))
            }
        }
    }
    if inner.len() % 2 == 0 {
        return Err(malformed("dangling `;` in parameter list"));
    }
    let signature = PredicateSignature::new(name, params.len())
        .map_err(|source| SchemeError::Syntax { line, source })?;
    Ok((signature, params))
}

/// Parses the scheme text format into unvalidated shortcuts.
///
/// Bodies may refer to any predicate declared in the file, in any order, so
/// that ordering problems surface from [`validate_scheme`] as circular
/// references rather than parse errors.
pub fn parse_scheme(text: &str) -> Result<Vec<Shortcut>, SchemeError> {
    let mut heads = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((head, body)) = trimmed.split_once(":=") else {
            return Err(SchemeError::Malformed {
                line,
                reason: "missing `:=`".into(),
            });
        };
        let (signature, params) = parse_head(line, head)?;
        heads.push(Head {
            line,
            signature,
            params,
            body: body.to_string(),
        });
    }
    let mut sigs = Signatures::empty();
    for h in &heads {
        if sigs.arity(&h.signature.name).is_some() {
            return Err(SchemeError::DuplicatePredicate(h.signature.name.clone()));
        }
        sigs.insert(h.signature.clone())
            .expect("duplicates checked above");
    }
    heads
        .into_iter()
        .map(|h| {
            let word = tokenize(&h.body).map_err(|source| SchemeError::Syntax {
                line: h.line,
                source,
            })?;
            let body = parse(&word, &sigs).map_err(|source| SchemeError::Syntax {
                line: h.line,
                source,
            })?;
            Ok(Shortcut {
                signature: h.signature,
                params: h.params,
                body,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# subset and singleton
SUS ( ?x ; ?y ) := ( A x1 ( ( x1 in ?x ) -> ( x1 in ?y ) ) )
SI ( ?x ; ?y ) := ( A x2 ( ( x2 in ?x ) <-> ( x2 = ?y ) ) )
SIN ( ?x ; ?y ) := ( A x3 ( SI ( x3 ; ?y ) <-> ( x3 = ?x ) ) )
";

    #[test]
    fn expand_arbitrary_formula() {
        let s = Scheme::from_text(SMALL, SchemeMode::Strict).unwrap();
        let sigs = s.signatures();
        let f = crate::syntax::parse_text("( E x9 SIN ( x9 ; x8 ) )", &sigs).unwrap();
        let e = s.expand(&f).unwrap();
        assert!(!e.has_predicate());
        assert_eq!(e.len(), 3 + s.expansions()[2].len() + 1);
        let clash = crate::syntax::parse_text("( E x3 SIN ( x3 ; x8 ) )", &sigs).unwrap();
        assert_eq!(
            s.expand(&clash),
            Err(SchemeError::VariableCapture {
                predicate: "SIN".into(),
                variable: 3
            })
        );
    }

    #[test]
    fn small_scheme_validates_and_expands() {
        let s = Scheme::from_text(SMALL, SchemeMode::Strict).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.references(0).is_empty());
        assert_eq!(s.references(2), &BTreeSet::from([2]));
        assert_eq!(s.variables(2), &BTreeSet::from([3]));
        let e = s.expansions();
        assert_eq!(e[0], s.shortcuts()[0].body);
        assert_eq!(e[2].len(), 29);
        assert_eq!(
            e[2].to_string(),
            "( A x3 ( ( A x2 ( ( x2 in x3 ) <-> ( x2 = ?y ) ) ) <-> ( x3 = ?x ) ) )"
        );
    }

    #[test]
    fn forward_reference_is_circular() {
        let text = "\
P ( ?x ; ?y ) := ( A x1 ( Q ( x1 ; ?y ) -> ( x1 in ?x ) ) )
Q ( ?x ; ?y ) := ( A x2 ( ( x2 in ?x ) -> ( x2 in ?y ) ) )
";
        match Scheme::from_text(text, SchemeMode::Strict) {
            Err(SchemeError::CircularReference {
                shortcut,
                referenced,
            }) => {
                assert_eq!(shortcut, "P");
                assert_eq!(referenced, "Q");
            }
            other => panic!("{other:?}"),
        }
        let selfref = "P ( ?x ) := ( A x1 ( P ( x1 ) -> ( x1 in ?x ) ) )";
        assert!(matches!(
            Scheme::from_text(selfref, SchemeMode::Relaxed),
            Err(SchemeError::CircularReference { .. })
        ));
    }

    #[test]
    fn shared_bound_variable_clashes_in_both_modes() {
        let text = "\
P ( ?x ) := ( A x1 ( x1 in ?x ) )
Q ( ?x ) := ( E x1 ( x1 in ?x ) )
";
        for mode in [SchemeMode::Strict, SchemeMode::Relaxed] {
            assert!(matches!(
                Scheme::from_text(text, mode),
                Err(SchemeError::VariableClash { .. })
            ));
        }
    }

    #[test]
    fn relaxed_mode_accepts_decreasing_disjoint_sets() {
        let text = "\
P ( ?x ) := ( A x5 ( x5 in ?x ) )
Q ( ?x ) := ( E x1 P ( x1 ) )
";
        assert!(matches!(
            Scheme::from_text(text, SchemeMode::Strict),
            Err(SchemeError::VariableClash { .. })
        ));
        let s = Scheme::from_text(text, SchemeMode::Relaxed).unwrap();
        assert_eq!(
            s.expansions()[1].to_string(),
            "( E x1 ( A x5 ( x5 in x1 ) ) )"
        );
    }

    #[test]
    fn body_restrictions() {
        assert!(matches!(
            Scheme::from_text("P ( ?x ) := ( x1 in ?x )", SchemeMode::Strict),
            Err(SchemeError::FreeSetVariable { variable: 1, .. })
        ));
        assert!(matches!(
            Scheme::from_text("P ( ?x ) := ( A x1 ( x1 in ?z ) )", SchemeMode::Strict),
            Err(SchemeError::ForeignNewVariable {
                variable: NewVar::Z,
                ..
            })
        ));
    }

    #[test]
    fn parameter_styles() {
        let ok = "P ( ?y1 ; ?y2 ; ?y3 ; ?y4 ) := ( A x1 ( x1 in ?y4 ) )";
        assert!(Scheme::from_text(ok, SchemeMode::Strict).is_ok());
        for bad in [
            "P ( ?x ; ?y2 ) := ( A x1 ( x1 in ?x ) )",
            "P ( ?x ; ?x ) := ( A x1 ( x1 in ?x ) )",
            "P ( ?a ) := ( A x1 ( x1 in ?a ) )",
        ] {
            assert!(
                matches!(
                    Scheme::from_text(bad, SchemeMode::Strict),
                    Err(SchemeError::InvalidParameters { .. })
                ),
                "{bad}"
            );
        }
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_scheme("P ( ?x ) ( A x1 ( x1 in ?x ) )"),
            Err(SchemeError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_scheme("\n\nP ( x1 ) := ( A x1 ( x1 in x1 ) )"),
            Err(SchemeError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_scheme("P ( ?x ) := ( A x1 ( x1 in ?x )"),
            Err(SchemeError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_scheme("P ( ?x ) := ( A x1 ( x1 in ?x ) )\nP ( ?x ) := ( A x2 ( x2 in ?x ) )"),
            Err(SchemeError::DuplicatePredicate(_))
        ));
    }

    #[test]
    fn instantiate_renames_and_checks_coverage() {
        let s = Scheme::from_text(SMALL, SchemeMode::Strict).unwrap();
        let e1 = &s.expansions()[0];
        let r = instantiate(
            e1,
            &[
                (NewVar::X, Variable::New(NewVar::A)),
                (NewVar::Y, Variable::New(NewVar::B)),
            ],
        )
        .unwrap();
        assert_eq!(r.len(), 17);
        assert_eq!(r.to_string(), "( A x1 ( ( x1 in ?a ) -> ( x1 in ?b ) ) )");
        assert_eq!(
            instantiate(e1, &[(NewVar::X, Variable::Set(4))]),
            Err(SchemeError::UncoveredParameter(NewVar::Y))
        );
    }

    #[test]
    fn display_round_trips() {
        let s = Scheme::from_text(SMALL, SchemeMode::Strict).unwrap();
        let again = Scheme::from_text(&s.to_string(), SchemeMode::Strict).unwrap();
        assert_eq!(s.shortcuts(), again.shortcuts());
    }
}
