//! Determinant histograms: the 2x2 product-multiset path and a full 3x3
//! sweep.

use finrank::sweep::{count_det, fast_det2_histogram, sweep, SweepOptions};
use finrank::{FamilySpec, Field, Scalar, SweepLimits};

fn main() -> finrank::Result<()> {
    let set = FamilySpec::geometric("2", 0, 5).materialize()?;
    let hist = fast_det2_histogram(&set);
    println!("2x2 over {{1..32}}: {} distinct determinants", hist.len());
    let mut top: Vec<_> = hist.iter().collect();
    top.sort_by(|a, b| b.1.cmp(a.1));
    for (d, c) in top.iter().take(5) {
        println!("  det {d:>5}: {c}");
    }

    let small = FamilySpec::geometric("2", 1, 4).materialize()?;
    let h = sweep(&small, 3, 3, &SweepOptions::only_det())?;
    h.check_partition(Some(small.len()))?;
    println!("3x3 over {{2,4,8,16}}: {} matrices, {} singular", h.total, h.det_count(&Scalar::zero(Field::Q)));
    let d = Scalar::from_int(Field::Q, 8);
    println!("  det = 8: {}", count_det(&small, 3, &d, SweepLimits::default())?);
    Ok(())
}
