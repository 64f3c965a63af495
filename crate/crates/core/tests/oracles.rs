mod common;

use common::{naive_census, Naive};
use zf_cantor::analysis::{is_cantor, is_strongly_extensive, Analyzer, CantorMethod, Predicate};
use zf_cantor::census::{census, enumerate_digraphs};
use zf_cantor::crosscheck::{tuples, ExpansionOracle};

// (total, e_n, c_n) frozen from an independent brute-force run
const FROZEN: [(usize, (u64, u64, u64)); 3] =
    [(1, (2, 1, 1)), (2, (16, 5, 11)), (3, (512, 37, 388))];

#[test]
fn census_matches_naive_definitions() {
    for (n, frozen) in FROZEN {
        assert_eq!(naive_census(n), frozen, "naive n={n}");
        assert_eq!(census(n, 3).unwrap().counts(), frozen, "census n={n}");
    }
}

#[test]
fn per_digraph_verdicts_match_naive() {
    for n in 1..=3 {
        for d in enumerate_digraphs(n).unwrap() {
            let o = Naive::new(&d);
            assert_eq!(
                is_cantor(&d, CantorMethod::Semantic),
                o.is_cantor(),
                "{d:?}"
            );
            assert_eq!(
                is_strongly_extensive(&d),
                o.is_strongly_extensive(),
                "{d:?}"
            );
        }
    }
}

#[test]
fn predicates_match_naive() {
    for n in 1..=3 {
        for d in enumerate_digraphs(n).unwrap() {
            let a = Analyzer::new(&d);
            let o = Naive::new(&d);
            for p in Predicate::ALL {
                for args in tuples(n, p.arity()) {
                    assert_eq!(
                        a.semantic_predicate(p, &args).unwrap(),
                        o.predicate(p.name(), &args),
                        "{p}{args:?} on {d:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn ordered_pairs_are_determined_by_their_vertex() {
    for n in 1..=3 {
        for d in enumerate_digraphs(n).unwrap() {
            let o = Naive::new(&d);
            let a = Analyzer::new(&d);
            for u in d.vertices() {
                let hits: Vec<(usize, usize)> = tuples(n, 2)
                    .map(|t| (t[0], t[1]))
                    .filter(|&(v, w)| o.opa(u, v, w))
                    .collect();
                assert!(hits.len() <= 1, "{u} resolves to {hits:?} in {d:?}");
                let r = a.resolve_opa(u).unwrap().map(|r| (r.first, r.second));
                assert_eq!(r, hits.first().copied());
            }
        }
    }
}

#[test]
fn subset_expansion_is_inclusion() {
    let oracle = ExpansionOracle::new();
    for n in 1..=3 {
        for d in enumerate_digraphs(n).unwrap() {
            let o = Naive::new(&d);
            for u in d.vertices() {
                for v in d.vertices() {
                    assert_eq!(
                        oracle.eval(&d, Predicate::Sus, &[u, v]),
                        o.nb(u).is_subset(o.nb(v))
                    );
                }
            }
        }
    }
}

#[test]
fn phi_agrees_with_naive_cantor_check() {
    for n in 1..=3 {
        for d in enumerate_digraphs(n).unwrap() {
            assert_eq!(
                is_cantor(&d, CantorMethod::Phi),
                Naive::new(&d).is_cantor(),
                "{d:?}"
            );
        }
    }
}
