use std::collections::BTreeSet;

use zf_cantor::cantor::{builtin_scheme, compare_with_printed, emit_phi, printed};
use zf_cantor::syntax::{is_sentence, parse, tokenize, NewVar, Signatures, Symbol, Variable};

#[test]
fn printed_files_round_trip() {
    for (label, _, text) in printed::ALL {
        let word = tokenize(text).unwrap();
        let f = parse(&word, &Signatures::empty()).unwrap_or_else(|e| panic!("{label}: {e}"));
        assert_eq!(f.to_word(), word, "{label}");
        let again = tokenize(&f.to_string()).unwrap();
        assert_eq!(parse(&again, &Signatures::empty()).unwrap(), f, "{label}");
    }
}

#[test]
fn expansions_match_symbol_for_symbol() {
    let report = compare_with_printed();
    assert_eq!(report.len(), 7);
    for cmp in &report[..6] {
        assert!(cmp.is_exact(), "{cmp}");
    }
}

#[test]
fn sentence_differs_only_at_the_two_residual_tokens() {
    let phi = report_for("phi");
    assert_eq!(phi.generated_length, 494);
    assert_eq!(phi.printed_length, 494);
    let at: Vec<(usize, Symbol, Symbol)> = phi
        .divergences
        .iter()
        .map(|d| (d.position, d.generated.clone(), d.printed.clone()))
        .collect();
    assert_eq!(
        at,
        vec![
            (165, Symbol::SetVar(18), Symbol::NewVar(NewVar::Y)),
            (203, Symbol::SetVar(19), Symbol::NewVar(NewVar::X)),
        ]
    );
}

fn report_for(label: &str) -> zf_cantor::cantor::GoldenComparison {
    compare_with_printed()
        .into_iter()
        .find(|c| c.label == label)
        .unwrap()
}

#[test]
fn printed_sentence_keeps_two_free_parameters() {
    let f = parse(&tokenize(printed::PHI).unwrap(), &Signatures::empty()).unwrap();
    assert!(!is_sentence(&f));
    assert_eq!(
        f.free_variables(),
        BTreeSet::from([Variable::New(NewVar::X), Variable::New(NewVar::Y)])
    );
    assert!(is_sentence(&emit_phi()));
}

#[test]
fn expansions_reparse_to_themselves() {
    for e in builtin_scheme().expansions() {
        let again = parse(&tokenize(&e.to_string()).unwrap(), &Signatures::empty()).unwrap();
        assert_eq!(&again, e);
    }
}
