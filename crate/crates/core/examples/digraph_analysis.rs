//! Predicates, ordered pairs, surjections and strong extensionality on small digraphs.
//!
//! Pass a digraph file to analyze it; the default is all loops on two vertices.
use zf_cantor::analysis::{is_strongly_extensive, Analyzer, Predicate};
use zf_cantor::digraph::{load_digraph, Digraph};

fn main() -> anyhow::Result<()> {
    let d = match std::env::args().nth(1) {
        Some(path) => load_digraph(&std::fs::read_to_string(path)?)?,
        None => Digraph::all_loops(2)?,
    };
    print!("{d}");
    let a = Analyzer::new(&d);

    for u in d.vertices() {
        let pair = a
            .resolve_opa(u)?
            .map(|p| format!("<{},{}>", p.first, p.second))
            .unwrap_or_else(|| "-".into());
        println!(
            "N({u}) = {:?}  P({u}) = {:?}  pair {pair}",
            a.in_neighbors(u)?,
            a.d_power_set(u)?
        );
    }

    for u in d.vertices() {
        for v in d.vertices() {
            if a.semantic_predicate(Predicate::Sur, &[u, v])? {
                println!("{}", a.extract_surjection(u, v)?);
            }
        }
    }
    println!("cantor: {}", a.is_cantor());
    println!("strongly extensive: {}", is_strongly_extensive(&d));
    Ok(())
}
