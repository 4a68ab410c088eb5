//! Counting solutions of linear equations and of the sum/sum-of-squares
//! system with variables in a finite set.

use finrank::linear::{classify_by_vanishing_subsums, count_solutions, count_system_sum_squares, kappa, EquationSpec};
use finrank::{ElementSet, FamilySpec, Field};

fn main() -> finrank::Result<()> {
    let set = FamilySpec::signed_geometric("2", 6).materialize()?;

    let homogeneous = EquationSpec::parse(Field::Q, &["1", "1", "-1", "-1"], "0")?;
    let inhomogeneous = EquationSpec::parse(Field::Q, &["1", "1", "-1"], "1")?;
    println!("x1 + x2 = x3 + x4: {}", count_solutions(&homogeneous, &set)?);
    println!("x1 + x2 - x3 = 1: {}", count_solutions(&inhomogeneous, &set)?);

    println!("\nsolutions of x1 + x2 - x3 = 1 by largest vanishing subsum:");
    for (subset, count) in &classify_by_vanishing_subsums(&inhomogeneous, &set)?.classes {
        let names: Vec<String> = subset.iter().map(|i| format!("x{}", i + 1)).collect();
        println!("  {{{}}}: {count}", names.join(","));
    }

    let units = ElementSet::parse_list(Field::Qi, &["1", "-1", "i", "-i", "2", "-2", "2i", "-2i"])?;
    for n in 2..=6 {
        println!(
            "sum = sum of squares = 0, n = {n}: {} (kappa = {})",
            count_system_sum_squares(n, &units)?,
            kappa(n as u64)?.value
        );
    }
    Ok(())
}
