//! Level sizes and in-degrees of the ω-digraph prefixes.
use zf_cantor::analysis::{is_strongly_extensive, omega_levels, omega_prefix};

fn main() -> anyhow::Result<()> {
    let levels = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;
    for k in 1..=levels {
        let d = omega_prefix(k)?;
        let (lo, hi) = omega_levels(k)?[k - 1];
        println!(
            "levels {k}: vertices {:>4}  V_{k} = [{lo},{hi}]  max in-degree {:>2}  strongly extensive {}",
            d.order(),
            d.max_in_degree(),
            is_strongly_extensive(&d)
        );
    }
    Ok(())
}
