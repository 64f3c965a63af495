//! The nine-shortcut scheme defining D-surjections and the Cantor sentence.
//!
//! The predicates are, in order, `SUS SI SIN DO DOU OPA REL FUN SUR`. The
//! sentence is `( A x18 ! ( E x19 SUR ( x19 ; x18 ) ) )` with `SUR` replaced by
//! its expansion, 494 symbols long with a single negation.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::scheme::{instantiate, Scheme, SchemeMode};
use crate::syntax::{parse_zf, tokenize, Formula, NewVar, Symbol, Variable, Word};

/// The scheme in the text format accepted by [`Scheme::from_text`].
pub const SCHEME_TEXT: &str = "\
SUS ( ?x ; ?y ) := ( A x1 ( ( x1 in ?x ) -> ( x1 in ?y ) ) )
SI ( ?x ; ?y ) := ( A x2 ( ( x2 in ?x ) <-> ( x2 = ?y ) ) )
SIN ( ?x ; ?y ) := ( A x3 ( SI ( x3 ; ?y ) <-> ( x3 = ?x ) ) )
DO ( ?x ; ?y ; ?z ) := ( A x4 ( ( x4 in ?x ) <-> ( ( x4 = ?y ) | ( x4 = ?z ) ) ) )
DOU ( ?x ; ?y ; ?z ) := ( A x5 ( DO ( x5 ; ?y ; ?z ) <-> ( x5 = ?x ) ) )
OPA ( ?x ; ?y ; ?z ) := ( E x6 ( E x7 ( DOU ( ?x ; x6 ; x7 ) & ( SIN ( x6 ; ?y ) & DOU ( x7 ; ?y ; ?z ) ) ) ) )
REL ( ?x ; ?y ) := ( A x8 ( ( x8 in ?x ) -> ( E x9 ( E x10 ( OPA ( x8 ; x9 ; x10 ) & ( ( x9 in ?y ) & SUS ( x10 ; ?y ) ) ) ) ) ) )
FUN ( ?x ; ?y ) := ( REL ( ?x ; ?y ) & ( A x11 ( ( x11 in ?y ) -> ( E x12 ( A x13 ( ( x13 = x12 ) <-> ( ( x13 in ?x ) & ( E x14 OPA ( x13 ; x11 ; x14 ) ) ) ) ) ) ) ) )
SUR ( ?x ; ?y ) := ( FUN ( ?x ; ?y ) & ( A x15 ( SUS ( x15 ; ?y ) -> ( E x16 ( E x17 ( ( x16 in ?x ) & OPA ( x16 ; x17 ; x15 ) ) ) ) ) ) )
";

pub const NAMES: [&str; 9] = ["SUS", "SI", "SIN", "DO", "DOU", "OPA", "REL", "FUN", "SUR"];

/// Published lengths `|E_1| ... |E_9|`.
pub const EXPANSION_LENGTHS: [usize; 9] = [17, 17, 29, 25, 37, 117, 165, 325, 485];

/// Published negation counts of the expansions.
pub const EXPANSION_NEGATIONS: [usize; 9] = [0; 9];

pub const PHI_LENGTH: usize = 494;
pub const PHI_NEGATIONS: usize = 1;

/// Set variables bound by the outer quantifiers of the sentence.
pub const DOMAIN_VARIABLE: usize = 18;
pub const SURJECTION_VARIABLE: usize = 19;

/// The expansions and the sentence as printed in the source article,
/// transcribed into the token grammar.
pub mod printed {
    pub const E3: &str = include_str!("../data/printed/e3.zf");
    pub const E5: &str = include_str!("../data/printed/e5.zf");
    pub const E6: &str = include_str!("../data/printed/e6.zf");
    pub const E7: &str = include_str!("../data/printed/e7.zf");
    pub const E8: &str = include_str!("../data/printed/e8.zf");
    pub const E9: &str = include_str!("../data/printed/e9.zf");
    pub const PHI: &str = include_str!("../data/printed/phi.zf");

    /// `(label, 1-based expansion index or None for the sentence, text)`.
    pub const ALL: [(&str, Option<usize>, &str); 7] = [
        ("E3", Some(3), E3),
        ("E5", Some(5), E5),
        ("E6", Some(6), E6),
        ("E7", Some(7), E7),
        ("E8", Some(8), E8),
        ("E9", Some(9), E9),
        ("phi", None, PHI),
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CantorError {
    #[error("E{index} has length {actual}, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("E{index} has {actual} negations, expected {expected}")]
    NegationMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedExpansion {
    pub name: &'static str,
    /// 1-based position in the scheme.
    pub index: usize,
    pub formula: Formula,
    pub expected_length: usize,
    pub expected_negations: usize,
}

impl NamedExpansion {
    pub fn negations(&self) -> usize {
        self.formula.count(&Symbol::Negation)
    }
}

/// The built-in scheme, validated in strict mode.
pub fn builtin_scheme() -> &'static Scheme {
    static SCHEME: OnceLock<Scheme> = OnceLock::new();
    SCHEME.get_or_init(|| {
        Scheme::from_text(SCHEME_TEXT, SchemeMode::Strict).expect("built-in scheme is well formed")
    })
}

/// `E_1 ... E_9`, each checked against the published length and negation count.
pub fn emit_expansions() -> Result<Vec<NamedExpansion>, CantorError> {
    let scheme = builtin_scheme();
    scheme
        .expansions()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let named = NamedExpansion {
                name: NAMES[i],
                index: i + 1,
                formula: e.clone(),
                expected_length: EXPANSION_LENGTHS[i],
                expected_negations: EXPANSION_NEGATIONS[i],
            };
            if named.formula.len() != named.expected_length {
                return Err(CantorError::LengthMismatch {
                    index: named.index,
                    expected: named.expected_length,
                    actual: named.formula.len(),
                });
            }
            if named.negations() != named.expected_negations {
                return Err(CantorError::NegationMismatch {
                    index: named.index,
                    expected: named.expected_negations,
                    actual: named.negations(),
                });
            }
            Ok(named)
        })
        .collect()
}

/// The Cantor sentence, a plain ZF sentence.
pub fn emit_phi() -> Formula {
    let sur = builtin_scheme().expansion("SUR").expect("SUR is defined");
    let body = instantiate(
        sur,
        &[
            (NewVar::X, Variable::Set(SURJECTION_VARIABLE)),
            (NewVar::Y, Variable::Set(DOMAIN_VARIABLE)),
        ],
    )
    .expect("SUR has parameters ?x and ?y only");
    let mut word = Word::from(vec![
        Symbol::LeftParen,
        Symbol::Forall,
        Symbol::SetVar(DOMAIN_VARIABLE),
        Symbol::Negation,
        Symbol::LeftParen,
        Symbol::Exists,
        Symbol::SetVar(SURJECTION_VARIABLE),
    ]);
    word.extend(body.to_word().into_symbols());
    word.extend([Symbol::RightParen, Symbol::RightParen]);
    parse_zf(&word).expect("the Cantor sentence is a ZF formula")
}

/// A position where a generated word differs from the printed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub position: usize,
    pub generated: Symbol,
    pub printed: Symbol,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {}: generated `{}`, printed `{}`",
            self.position, self.generated, self.printed
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenComparison {
    pub label: &'static str,
    pub generated_length: usize,
    pub printed_length: usize,
    pub divergences: Vec<Divergence>,
}

impl GoldenComparison {
    pub fn is_exact(&self) -> bool {
        self.generated_length == self.printed_length && self.divergences.is_empty()
    }
}

impl fmt::Display for GoldenComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            return write!(
                f,
                "{}: identical ({} symbols)",
                self.label, self.generated_length
            );
        }
        write!(
            f,
            "{}: {} divergence(s), lengths {} generated / {} printed",
            self.label,
            self.divergences.len(),
            self.generated_length,
            self.printed_length
        )?;
        for d in &self.divergences {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

/// Symbol-by-symbol comparison over the common prefix.
pub fn compare_words(
    label: &'static str,
    generated: &[Symbol],
    printed: &[Symbol],
) -> GoldenComparison {
    let divergences = generated
        .iter()
        .zip(printed)
        .enumerate()
        .filter(|(_, (g, p))| g != p)
        .map(|(i, (g, p))| Divergence {
            position: i + 1,
            generated: g.clone(),
            printed: p.clone(),
        })
        .collect();
    GoldenComparison {
        label,
        generated_length: generated.len(),
        printed_length: printed.len(),
        divergences,
    }
}

/// Compares every generated expansion and the sentence with the printed versions.
pub fn compare_with_printed() -> Vec<GoldenComparison> {
    let expansions = builtin_scheme().expansions();
    let phi = emit_phi().to_word();
    printed::ALL
        .iter()
        .map(|(label, index, text)| {
            let printed = tokenize(text).expect("printed transcriptions tokenize");
            let generated = match index {
                Some(i) => expansions[i - 1].to_word(),
                None => phi.clone(),
            };
            compare_words(label, &generated, &printed)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::syntax::{classify, is_sentence, Case};

    #[test]
    fn scheme_has_nine_named_shortcuts() {
        let s = builtin_scheme();
        let names: Vec<_> = s.shortcuts().iter().map(|s| s.name()).collect();
        assert_eq!(names, NAMES);
        assert_eq!(s.references(6), &BTreeSet::from([1, 6]));
        assert_eq!(s.variables(7), &BTreeSet::from([11, 12, 13, 14]));
    }

    #[test]
    fn expansion_lengths() {
        let e = emit_expansions().unwrap();
        assert_eq!(e[3].expected_length, 25);
        assert_eq!(e[3].formula.len(), 25);
        assert_eq!(e[7].formula.len(), 325);
        assert!(e.iter().all(|x| x.negations() == 0));
    }

    #[test]
    fn phi_shape() {
        let phi = emit_phi();
        assert_eq!(phi.len(), PHI_LENGTH);
        assert_eq!(phi.count(&Symbol::Negation), PHI_NEGATIONS);
        assert!(is_sentence(&phi));
        assert_eq!(classify(&phi).case(), Case::Universal);
        assert!(phi.to_word().is_zf());
    }

    #[test]
    fn compare_words_lists_positions() {
        let a = tokenize("( x1 in x2 )").unwrap();
        let b = tokenize("( x1 in ?y )").unwrap();
        let c = compare_words("t", &a, &b);
        assert!(!c.is_exact());
        assert_eq!(c.divergences.len(), 1);
        assert_eq!(c.divergences[0].position, 4);
    }
}
