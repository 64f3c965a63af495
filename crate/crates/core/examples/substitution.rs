use zf_cantor::subst::{rep, rep0, sub1, sub2, Interval};
use zf_cantor::syntax::{tokenize, Symbol, Variable};

fn main() -> anyhow::Result<()> {
    let u = tokenize("( ( x1 in x2 ) & ( x2 = x3 ) )")?;
    let atom = tokenize("( x4 in x4 )")?;

    // replace the first conjunct, positions 2..=6
    let r = rep(&u, &atom, 2, 6)?;
    println!("rep   {}", zf_cantor::syntax::render_text(&r));

    // same, tracking where the second conjunct moves
    let (w, l, m) = rep0(&u, &tokenize("( x5 = x5 )")?, 2, 6, 8, 12)?;
    println!(
        "rep0  {}  second conjunct now at [{l},{m}]",
        zf_cantor::syntax::render_text(&w)
    );

    let renamed = sub1(
        &u,
        &[
            (Variable::Set(1).symbol(), Variable::Set(2).symbol()),
            (Variable::Set(2).symbol(), Variable::Set(1).symbol()),
        ],
    )?;
    println!("sub1  {}", zf_cantor::syntax::render_text(&renamed));

    let patches: Vec<(Vec<Symbol>, Interval)> = vec![
        (
            tokenize("( x7 = x8 )")?.into_symbols(),
            Interval::new(8, 12)?,
        ),
        (
            tokenize("! ( x6 in x6 )")?.into_symbols(),
            Interval::new(2, 6)?,
        ),
    ];
    let s = sub2(&u, &patches)?;
    println!(
        "sub2  {} (length {} -> {})",
        zf_cantor::syntax::render_text(&s),
        u.len(),
        s.len()
    );
    Ok(())
}
