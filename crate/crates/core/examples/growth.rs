//! Growth experiment: count over a family of sets, fit the log-log slope
//! and compare it with the exponent bound.

use finrank::growth::{analyze, ExperimentSpec};

const CONFIG: &str = r#"{
    "family": {"variant": "geometric", "base": "2", "start": 1, "stop": "2*k"},
    "k_values": [4, 6, 8, 10, 12, 14, 16],
    "statistic": {"kind": "rank", "m": 2, "n": 2, "r": 1, "cumulative": true},
    "lower_bound": "3"
}"#;

fn main() -> finrank::Result<()> {
    let spec = ExperimentSpec::from_json(CONFIG)?;
    let (run, report) = analyze(&spec)?;
    run.write_csv(std::io::stdout())?;
    print!("{}", report.to_json());
    println!(
        "slope {:.3} against {}: {}",
        report.slope,
        spec.theoretical_exponent()?.value_text(),
        report.verdict.expect("compared")
    );
    Ok(())
}
