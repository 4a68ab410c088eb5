//! Exponent bounds for the counting problems, side by side with the trivial
//! ones.

use finrank::bounds::{self, CoeffFlags};

fn main() -> finrank::Result<()> {
    println!(" n  det(0) det(d) trivial  charpoly  alpha  beta");
    for n in 3..=8 {
        let flags = CoeffFlags { constant_zero: Some(false), ..Default::default() };
        let best = bounds::best_charpoly_exponent(n, flags, false)?;
        println!(
            "{n:>2} {:>6} {:>6} {:>7} {:>9} {:>6} {:>5}",
            bounds::det_exponent(n, true)?.value_text(),
            bounds::det_exponent(n, false)?.value_text(),
            n * n - 2,
            best.value_text(),
            bounds::alpha(n)?,
            bounds::rational_text(&bounds::beta(n)?),
        );
    }

    println!("\nrank exponents for 6 x m matrices:");
    for m in 2..=6 {
        let row: Vec<String> =
            (1..=m).map(|r| bounds::rank_exponent(6, m, r).map(|e| e.value_text())).collect::<Result<_, _>>()?;
        println!("  m = {m}: {}", row.join(" "));
    }

    let nd = bounds::nondegenerate_bound(3, 2)?;
    println!("\nnon-degenerate solutions, n = 3, rho = 2: 10^{}", nd.log10_text());
    Ok(())
}
