//! Rank profiles, sharded sweeps and the CSV output format.

use finrank::sweep::{merge_histograms, sweep, sweep_shard, Shard, SweepOptions};
use finrank::FamilySpec;

fn main() -> finrank::Result<()> {
    let set = FamilySpec::geometric("3", 0, 3).materialize()?;
    let opts = SweepOptions::only_rank();
    let whole = sweep(&set, 2, 3, &opts)?;
    for (r, c) in whole.rank_profile.as_ref().expect("rank requested") {
        println!("rank {r}: {c}");
    }

    // shards can run on separate machines and be merged afterwards
    let parts =
        (0..4).map(|index| sweep_shard(&set, 2, 3, &opts, Shard { index, count: 4 })).collect::<Result<Vec<_>, _>>()?;
    assert_eq!(merge_histograms(parts)?, whole);

    let all = sweep(&set, 2, 2, &SweepOptions::all())?;
    let mut csv = Vec::new();
    all.write_csv(&mut csv)?;
    let text = String::from_utf8(csv).expect("utf-8");
    for line in text.lines().take(8) {
        println!("{line}");
    }
    println!("... {} rows", text.lines().count() - 1);
    Ok(())
}
