//! Laplace expansions and the zero-minor audit on random matrices.

use finrank::minors::{audit_nonsingular, laplace_report, Axis};
use finrank::{FamilySpec, MatrixInstance};

fn main() -> finrank::Result<()> {
    let set = FamilySpec::geometric("2", 0, 3).materialize()?;
    let x = MatrixInstance::parse(&[&["1", "2", "4"], &["4", "1", "2"], &["2", "4", "1"]], &set)?;
    let r = laplace_report(&x, &set, Axis::Row, 2)?;
    let minors: Vec<String> = r.minors.iter().map(|m| m.to_string()).collect();
    println!("row 2 minors [{}], det {}, zeros {}", minors.join(", "), r.det, r.zero_count);

    for n in [3, 4, 5] {
        let a = audit_nonsingular(&set, n, 2000, 42)?;
        println!(
            "n = {n}: {} nonsingular of {} drawn, max zero minors {}, passed {}",
            a.nonsingular, a.trials, a.max_zero_count, a.passed
        );
    }
    Ok(())
}
