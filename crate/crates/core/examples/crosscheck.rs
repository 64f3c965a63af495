//! Compares the graph-theoretic predicates with evaluation of their expansions.
use zf_cantor::analysis::Predicate;
use zf_cantor::crosscheck::{
    crosscheck_exhaustive, crosscheck_sampled, ExpansionOracle, DEFAULT_SEED,
};

fn main() {
    let oracle = ExpansionOracle::new();
    for n in 1..=2 {
        let r = crosscheck_exhaustive(&oracle, n, &Predicate::ALL);
        println!(
            "n={n}: {} cases, {} mismatches",
            r.checked,
            r.mismatches.len()
        );
    }
    let r = crosscheck_sampled(
        &oracle,
        3,
        &[Predicate::Rel, Predicate::Fun, Predicate::Sur],
        20,
        DEFAULT_SEED,
    );
    println!(
        "n=3 sampled REL/FUN/SUR: {} cases, {} mismatches",
        r.checked,
        r.mismatches.len()
    );
    for m in r.mismatches.iter().take(5) {
        println!("  {m}");
    }
}
