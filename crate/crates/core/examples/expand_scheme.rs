//! Validates a scheme and prints its `R`/`V` sets and expansions.
//!
//! Without an argument the built-in nine-shortcut scheme is used; otherwise
//! the argument is a scheme file, optionally followed by `relaxed`.
use std::collections::BTreeSet;

use zf_cantor::cantor::SCHEME_TEXT;
use zf_cantor::scheme::{Scheme, SchemeMode};

fn set(xs: &BTreeSet<usize>) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => SCHEME_TEXT.to_string(),
    };
    let mode: SchemeMode = args
        .next()
        .as_deref()
        .unwrap_or("strict")
        .parse()
        .map_err(anyhow::Error::msg)?;
    let scheme = Scheme::from_text(&text, mode)?;

    for (i, (sc, e)) in scheme
        .shortcuts()
        .iter()
        .zip(scheme.expansions())
        .enumerate()
    {
        println!(
            "{:<4} R={:<8} V={:<16} |E{}| = {}",
            sc.name(),
            set(scheme.references(i)),
            set(scheme.variables(i)),
            i + 1,
            e.len()
        );
    }

    // an ordering violation is rejected
    let bad = "P ( ?x ) := ( A x1 ( x1 in ?x ) )\nQ ( ?x ) := ( A x1 P ( x1 ) )\n";
    if let Err(e) = Scheme::from_text(bad, SchemeMode::Strict) {
        println!("rejected: {e}");
    }
    Ok(())
}
