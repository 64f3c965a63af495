use zf_cantor::analysis::compiled_phi;
use zf_cantor::digraph::{load_digraph, Digraph};
use zf_cantor::semantics::{eval, eval_sentence, Environment};
use zf_cantor::syntax::{parse_text, Signatures};

fn main() -> anyhow::Result<()> {
    let d = load_digraph("vertices 3\n1 2\n2 3\n1 3\n")?;
    let sigs = Signatures::empty();

    let checks = [
        ("( x1 in x2 )", "x1=1,x2=2"),
        ("( E x1 ( ( x1 in x2 ) & ( x1 in x3 ) ) )", "x2=2,x3=3"),
        ("( A x1 ( ( x1 in x2 ) -> ( x1 in x3 ) ) )", "x2=2,x3=3"),
        ("! ( E x1 ( x1 in x1 ) )", ""),
    ];
    for (text, assign) in checks {
        let env: Environment = assign.parse()?;
        let value = eval(&d, &parse_text(text, &sigs)?, &env)?;
        println!("{value:<5}  {text}  [{env}]");
    }

    let ext = parse_text(
        "( A x1 ( A x2 ( ( A x3 ( ( x3 in x1 ) <-> ( x3 in x2 ) ) ) -> ( x1 = x2 ) ) ) )",
        &sigs,
    )?;
    println!("extensional: {}", eval_sentence(&d, &ext)?);

    // the Cantor sentence, compiled once
    let phi = compiled_phi();
    for n in 1..=3 {
        let loops = Digraph::all_loops(n)?;
        println!(
            "all loops on [{n}] satisfies phi: {}",
            phi.eval_sentence(&loops)?
        );
    }
    Ok(())
}
