//! The nine expansions and the Cantor sentence with their sizes.
use zf_cantor::cantor::{emit_expansions, emit_phi};
use zf_cantor::syntax::{is_sentence, Symbol};

fn main() -> anyhow::Result<()> {
    for e in emit_expansions()? {
        println!(
            "E{} {:<4} length {:>3}  negations {}",
            e.index,
            e.name,
            e.formula.len(),
            e.negations()
        );
    }
    let phi = emit_phi();
    println!(
        "phi      length {}  negations {}  sentence {}",
        phi.len(),
        phi.count(&Symbol::Negation),
        is_sentence(&phi)
    );
    if std::env::args().any(|a| a == "--print") {
        println!("{phi}");
    }
    Ok(())
}
