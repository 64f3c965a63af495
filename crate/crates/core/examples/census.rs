//! `cargo run --release --example census -- 4 8` counts digraphs on [4] with 8 jobs.
use zf_cantor::census::census;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_n: usize = args.next().map_or(Ok(3), |s| s.parse())?;
    let jobs: usize = args.next().map_or(Ok(4), |s| s.parse())?;
    println!("n\ttotal\te_n\tc_n\tms");
    for n in 1..=max_n {
        let row = census(n, jobs)?;
        println!("{row}");
        assert!(
            row.violations.is_empty(),
            "strongly extensive but not Cantor: {:?}",
            row.violations
        );
    }
    Ok(())
}
