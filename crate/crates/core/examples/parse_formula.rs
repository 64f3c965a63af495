//! Parsing, unique reading, bracket matching and variable occurrences.
//!
//! ```text
//! cargo run --example parse_formula -- "( A x1 ( ( x1 in x2 ) -> ! ( x2 = x1 ) ) )"
//! ```
use zf_cantor::syntax::{
    bracket_subsequence, classify, good_bracketing, is_sentence, occurrences, parse_text,
    Signatures,
};

fn main() -> anyhow::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "( A x1 ( ( x1 in x2 ) -> ! ( x2 = x1 ) ) )".into());
    let f = parse_text(&text, &Signatures::empty())?;

    println!("formula   {f}");
    println!("length    {}", f.len());
    println!("case      {}", classify(&f).case());
    println!("sentence  {}", is_sentence(&f));

    let brackets: Vec<_> = bracket_subsequence(&f.to_word())
        .into_iter()
        .map(|(_, b)| b)
        .collect();
    let blocks = good_bracketing(&brackets).expect("formulas are well bracketed");
    println!("bracket pairs (indices into the bracket subsequence): {blocks:?}");

    for sub in f.subformulas() {
        println!("  {:>9}  {sub}", sub.span().to_string());
    }
    for o in occurrences(&f) {
        println!("  {} at {} is {:?}", o.variable, o.position, o.status);
    }
    Ok(())
}
