//! The `finrank` command line.
//!
//! Exit codes: 0 success, 1 bad input or domain error, 2 budget exceeded.
//! Results go to stdout (or files); diagnostics go to stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bounds::{self, CoeffFlags, ExponentValue};
use crate::error::{Error, Result};
use crate::family::{tight_equation_coeffs, ElementSet, FamilySpec};
use crate::growth::{self, ExperimentSpec};
use crate::linear::{self, EquationSpec, JoinConfig};
use crate::matrix::CharPolyKey;
use crate::minors::{self, Axis};
use crate::scalar::{Field, Scalar};
use crate::sweep::{self, Shard, SweepLimits, SweepOptions, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "finrank", version, about = "Exact counting of matrices and unit-equation solutions over finite sets")]
pub struct Cli {
    /// Maximum number of enumerated objects per count.
    #[arg(long, global = true, env = "FINRANK_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Work units for parallel sweeps.
    #[arg(long, global = true, default_value_t = 8)]
    pub shards: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count matrices with one prescribed statistic.
    #[command(subcommand)]
    Count(CountCmd),
    /// Tally rank, determinant, characteristic polynomial and power sums in
    /// one pass and write a `statistic,key,count` CSV.
    Sweep(SweepArgs),
    /// Evaluate bound exponents.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Materialize set families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Run a growth experiment and fit its exponent.
    Growth(GrowthArgs),
    /// Audits.
    #[command(subcommand)]
    Audit(AuditCmd),
    /// Count solutions of linear equations.
    #[command(subcommand)]
    Equation(EquationCmd),
}

/// Where the element set comes from.
#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    /// Set file: `{"field":..,"elements":[..]}` or `{"family":{..}}`.
    #[arg(long, conflicts_with = "elements")]
    pub set: Option<PathBuf>,
    /// Inline comma-separated elements, e.g. `1,2,-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub elements: Option<String>,
    /// Field for inline elements.
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    pub field: Field,
}

impl SetArgs {
    fn load(&self) -> Result<ElementSet> {
        match (&self.set, &self.elements) {
            (Some(path), _) => ElementSet::load(path),
            (None, Some(list)) => {
                let items: Vec<&str> = list.split(',').map(str::trim).collect();
                ElementSet::parse_list(self.field, &items)
            }
            (None, None) => Err(Error::InvalidArgument("give --set FILE or --elements LIST".into())),
        }
    }
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    match s {
        "Q" | "q" => Ok(Field::Q),
        "Qi" | "qi" | "QI" => Ok(Field::Qi),
        _ => Err(format!("unknown field {s:?}; use Q or Qi")),
    }
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// `n x n` matrices with determinant `d`.
    Det {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// `m x n` matrices of rank `r`.
    Rank {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        r: usize,
        /// Count rank at most `r` instead.
        #[arg(long)]
        at_most: bool,
    },
    /// `n x n` matrices with characteristic polynomial `c_0,…,c_{n-1}`.
    Charpoly {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// `n x n` matrices with `tr X = t1`, `tr X² = t2`.
    Powersums {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t1: String,
        #[arg(long, allow_hyphen_values = true)]
        t2: String,
    },
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
    #[arg(long)]
    pub rank: bool,
    #[arg(long)]
    pub det: bool,
    #[arg(long)]
    pub charpoly: bool,
    #[arg(long)]
    pub powersums: bool,
    /// Run only shard `INDEX/COUNT` of the first-row range.
    #[arg(long, value_parser = parse_shard)]
    pub shard: Option<Shard>,
    /// Output CSV path (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_shard(s: &str) -> std::result::Result<Shard, String> {
    let (i, c) = s.split_once('/').ok_or("expected INDEX/COUNT")?;
    let index = i.parse().map_err(|_| "bad shard index")?;
    let count = c.parse().map_err(|_| "bad shard count")?;
    if count == 0 || index >= count {
        return Err("need INDEX < COUNT".into());
    }
    Ok(Shard { index, count })
}

#[derive(Subcommand, Debug)]
pub enum BoundCmd {
    /// Trivial exponents for determinant, characteristic polynomial, rank.
    Trivial {
        #[arg(short)]
        n: i64,
        #[arg(short, default_value_t = 1)]
        m: i64,
        #[arg(short, default_value_t = 1)]
        r: i64,
    },
    /// Rank exponent, the δ maximization and the savings against trivial.
    Rank {
        #[arg(short)]
        n: i64,
        #[arg(short)]
        m: i64,
        #[arg(short)]
        r: i64,
    },
    /// Determinant exponent and the singular lower bound.
    Det {
        #[arg(short)]
        n: i64,
        /// Target determinant is nonzero.
        #[arg(long)]
        nonzero: bool,
    },
    /// 2x2 characteristic polynomial `T² - tT + d`.
    Charpoly2 {
        #[arg(long)]
        d_zero: bool,
        #[arg(long)]
        t_zero: bool,
    },
    /// Characteristic polynomial, `n >= 3`: every candidate and the best.
    Charpoly {
        #[arg(short)]
        n: i64,
        #[arg(long)]
        c_top_zero: bool,
        #[arg(long)]
        c_second_zero: bool,
        /// `2c_{n-2} = c_{n-1}`.
        #[arg(long)]
        half_relation: bool,
        /// `f(0) = 0`.
        #[arg(long, conflicts_with = "constant_nonzero")]
        constant_zero: bool,
        #[arg(long)]
        constant_nonzero: bool,
        /// The group lies in the reals.
        #[arg(long)]
        real: bool,
    },
    /// `α, β, λ, μ, ν` at `n`.
    Table {
        #[arg(short)]
        n: i64,
    },
    /// Equation and system exponents in `n` variables.
    Equation {
        #[arg(short)]
        n: i64,
    },
    /// Cap on non-degenerate solutions, `(8n)^{4n⁴(n+ρ+1)}`.
    Nondegenerate {
        #[arg(short)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        rho: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    /// Materialize a family or set file.
    Show {
        #[command(flatten)]
        set: SetArgs,
    },
    /// `{g^s : start <= s <= stop}`.
    Geometric {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        start: i64,
        #[arg(long, allow_hyphen_values = true)]
        stop: i64,
    },
    /// `{±g^s : 0 <= s < count}`.
    Signed {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long)]
        count: i64,
    },
    /// `{±c, ±ic : c in scales}` over Q(i).
    Gaussian {
        #[arg(long, allow_hyphen_values = true)]
        scales: String,
    },
    /// Seeded sample of products of generator powers.
    Lattice {
        #[arg(long)]
        generators: String,
        /// `lo:hi` per generator, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        ranges: String,
        #[arg(long)]
        sample_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
    },
    /// Coefficients of the tight equation in `n` variables.
    Tight {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
    },
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    /// Experiment config JSON.
    #[arg(long)]
    pub config: PathBuf,
    /// Directory for `points.csv` and `report.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum AuditCmd {
    /// Random matrices: at most `n-2` zero minors on any line of a
    /// nonsingular matrix, and exact Laplace reconstruction.
    Minors {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Count only nonsingular samples towards `trials`.
        #[arg(long)]
        nonsingular: bool,
    },
    /// Minors of one matrix along a line.
    Laplace {
        #[command(flatten)]
        set: SetArgs,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// `row` or `col`.
        #[arg(long, default_value = "row")]
        axis: String,
        /// 0-based line index.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum EquationCmd {
    /// Solutions in the set.
    Count {
        #[command(flatten)]
        set: SetArgs,
        /// Equation file `{"coeffs":[..],"rhs":".."}`.
        #[arg(long)]
        eq: PathBuf,
        /// Entry cap for the half-sum multiset.
        #[arg(long)]
        max_entries: Option<usize>,
    },
    /// Solutions of `Σ x = Σ x² = 0`.
    System {
        #[command(flatten)]
        set: SetArgs,
        #[arg(short)]
        n: usize,
    },
    /// Solutions grouped by their largest vanishing subsum.
    Classify {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        eq: PathBuf,
    },
    /// `κ(n)` and its maximizers.
    Kappa {
        #[arg(short)]
        n: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_ERROR
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let limits = SweepLimits { budget: cli.budget, shards: cli.shards.max(1) };
    match &cli.command {
        Command::Count(c) => count(c, limits, out),
        Command::Sweep(a) => sweep_cmd(a, limits, out),
        Command::Bound(b) => bound(b, out),
        Command::Family(f) => family(f, out),
        Command::Growth(g) => growth_cmd(g, cli, out),
        Command::Audit(a) => audit(a, out),
        Command::Equation(e) => equation(e, cli.budget, out),
    }
}

fn count(c: &CountCmd, limits: SweepLimits, out: &mut dyn Write) -> Result<()> {
    let value = match c {
        CountCmd::Det { set, n, d } => {
            let set = set.load()?;
            let d = Scalar::parse(d, set.field())?;
            if *n == 2 {
                sweep::count_det2(&set, &d)?
            } else {
                sweep::count_det(&set, *n, &d, limits)?
            }
        }
        CountCmd::Rank { set, m, n, r, at_most } => {
            let set = set.load()?;
            if *at_most {
                sweep::count_rank_at_most(&set, *m, *n, *r, limits)?
            } else {
                sweep::count_rank(&set, *m, *n, *r, limits)?
            }
        }
        CountCmd::Charpoly { set, n, f } => {
            let set = set.load()?;
            let f = CharPolyKey::parse(f, set.field())?;
            sweep::count_charpoly(&set, *n, &f, limits)?
        }
        CountCmd::Powersums { set, n, t1, t2 } => {
            let set = set.load()?;
            let t1 = Scalar::parse(t1, set.field())?;
            let t2 = Scalar::parse(t2, set.field())?;
            sweep::count_power_sums(&set, *n, &t1, &t2, limits)?
        }
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn sweep_cmd(a: &SweepArgs, limits: SweepLimits, out: &mut dyn Write) -> Result<()> {
    let set = a.set.load()?;
    let any = a.rank || a.det || a.charpoly || a.powersums;
    let square = a.m == a.n;
    let opts = SweepOptions {
        rank: a.rank || !any,
        det: a.det || (!any && square),
        charpoly: a.charpoly,
        power_sums: a.powersums,
        limits,
    };
    let h = match a.shard {
        Some(shard) => sweep::sweep_shard(&set, a.m, a.n, &opts, shard)?,
        None => sweep::sweep(&set, a.m, a.n, &opts)?,
    };
    match &a.out {
        Some(path) => h.write_csv(fs::File::create(path)?)?,
        None => h.write_csv(&mut *out)?,
    }
    Ok(())
}

fn table_row(out: &mut dyn Write, e: &ExponentValue) -> Result<()> {
    writeln!(out, "{e}")?;
    Ok(())
}

fn bound(b: &BoundCmd, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "source\tregime\texponent")?;
    match b {
        BoundCmd::Trivial { n, m, r } => {
            for e in bounds::trivial_exponents(*n, *m, *r)? {
                table_row(out, &e)?;
            }
        }
        BoundCmd::Rank { n, m, r } => {
            table_row(out, &bounds::rank_exponent(*n, *m, *r)?)?;
            table_row(out, &bounds::trivial_exponents(*n, *m, *r)?[2])?;
            let (best, args) = bounds::delta_max(*n, *m, *r)?;
            let args: Vec<String> = args.iter().map(i64::to_string).collect();
            writeln!(out, "delta-max\tt in {{{}}}\t{best}", args.join(","))?;
            writeln!(
                out,
                "rank-savings\tagainst trivial\t{}",
                bounds::rational_text(&bounds::rank_savings(*n, *m, *r)?)
            )?;
        }
        BoundCmd::Det { n, nonzero } => {
            table_row(out, &bounds::det_exponent(*n, !nonzero)?)?;
            if !nonzero {
                table_row(out, &bounds::det_lower_exponent(*n)?)?;
            }
        }
        BoundCmd::Charpoly2 { d_zero, t_zero } => table_row(out, bounds::charpoly2_bound(*d_zero, *t_zero).exponent())?,
        BoundCmd::Charpoly { n, c_top_zero, c_second_zero, half_relation, constant_zero, constant_nonzero, real } => {
            let flags = CoeffFlags {
                c_top_zero: *c_top_zero,
                c_second_zero: *c_second_zero,
                half_relation: *half_relation,
                constant_zero: match (constant_zero, constant_nonzero) {
                    (true, _) => Some(true),
                    (_, true) => Some(false),
                    _ => None,
                },
            };
            for e in bounds::charpoly_candidates(*n, flags, *real)? {
                table_row(out, &e)?;
            }
            let best = bounds::best_charpoly_exponent(*n, flags, *real)?;
            writeln!(out, "best\t{}\t{}", best.source, best.value_text())?;
        }
        BoundCmd::Table { n } => {
            let r = |v| bounds::rational_text(&v);
            writeln!(out, "alpha\tn = {n}\t{}", bounds::alpha(*n)?)?;
            writeln!(out, "beta\tn = {n}\t{}", r(bounds::beta(*n)?))?;
            writeln!(out, "lambda\tn = {n}\t{}", r(bounds::lambda(*n)?))?;
            writeln!(out, "mu\tn = {n}\t{}", r(bounds::mu(*n)?))?;
            writeln!(out, "nu\tn = {n}\t{}", r(bounds::nu(*n)?))?;
        }
        BoundCmd::Equation { n } => {
            table_row(out, &bounds::homogeneous_equation_exponent(*n)?)?;
            table_row(out, &bounds::inhomogeneous_equation_exponent(*n)?)?;
            table_row(out, &bounds::system_exponent(*n)?)?;
        }
        BoundCmd::Nondegenerate { n, rho } => {
            let b = bounds::nondegenerate_bound(*n, *rho)?;
            writeln!(out, "nondegenerate-exponent\tn = {n}, rho = {rho}\t{}", b.exponent)?;
            writeln!(out, "nondegenerate-log10\tn = {n}, rho = {rho}\t{}", b.log10_text())?;
            if let Some(v) = b.exact {
                writeln!(out, "nondegenerate-exact\tn = {n}, rho = {rho}\t{v}")?;
            }
        }
    }
    Ok(())
}

fn family(f: &FamilyCmd, out: &mut dyn Write) -> Result<()> {
    let set = match f {
        FamilyCmd::Show { set } => set.load()?,
        FamilyCmd::Geometric { base, start, stop } => FamilySpec::geometric(base, *start, *stop).materialize()?,
        FamilyCmd::Signed { base, count } => FamilySpec::signed_geometric(base, *count).materialize()?,
        FamilyCmd::Gaussian { scales } => {
            FamilySpec::GaussianUnitsScaled { scales: scales.split(',').map(|s| s.trim().to_string()).collect() }
                .materialize()?
        }
        FamilyCmd::Lattice { generators, ranges, sample_size, seed, field } => {
            let ranges = ranges
                .split(',')
                .map(|r| {
                    let (lo, hi) = r.split_once(':').ok_or_else(|| Error::parse(r, "expected lo:hi"))?;
                    let p = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::parse(s, "bad integer"));
                    Ok((p(lo)?, p(hi)?))
                })
                .collect::<Result<Vec<_>>>()?;
            FamilySpec::LatticeBox {
                generators: generators.split(',').map(|s| s.trim().to_string()).collect(),
                ranges,
                sample_size: *sample_size,
                seed: *seed,
                field: *field,
            }
            .materialize()?
        }
        FamilyCmd::Tight { n, field } => {
            let coeffs: Vec<String> = tight_equation_coeffs(*n, *field)?.iter().map(Scalar::to_string).collect();
            writeln!(out, "{}", json!({"coeffs": coeffs, "rhs": "0", "field": field}))?;
            return Ok(());
        }
    };
    writeln!(out, "{}", set.to_json())?;
    Ok(())
}

fn growth_cmd(g: &GrowthArgs, cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let mut spec = ExperimentSpec::load(&g.config)?;
    // explicit command-line limits override the file
    if std::env::var_os("FINRANK_BUDGET").is_some() || cli.budget != DEFAULT_BUDGET {
        spec.budget = cli.budget as f64;
    }
    if cli.shards != 8 {
        spec.shards = cli.shards;
    }
    let run = growth::run_experiment(&spec)?;
    if let Some(&k) = run.skipped_over_budget.first() {
        let work = spec.statistic.work(spec.family_at(k)?.materialize()?.len());
        if let Some(dir) = &g.out {
            fs::create_dir_all(dir)?;
            run.write_csv(fs::File::create(dir.join("points.csv"))?)?;
        }
        return Err(Error::BudgetExceeded { required: work, budget: spec.limits().budget });
    }
    let pts: Vec<_> = run.points.iter().map(|p| (p.set_size, p.count.clone())).collect();
    let report =
        growth::fit_slope(&pts)?.with_comparison(spec.theoretical_exponent()?, spec.tolerance, spec.lower_exponent()?);
    match &g.out {
        Some(dir) => growth::emit(dir, &run, &report)?,
        None => {
            run.write_csv(&mut *out)?;
        }
    }
    out.write_all(report.to_json().as_bytes())?;
    Ok(())
}

fn audit(a: &AuditCmd, out: &mut dyn Write) -> Result<()> {
    match a {
        AuditCmd::Minors { set, n, trials, seed, nonsingular } => {
            let set = set.load()?;
            let summary = if *nonsingular {
                minors::audit_nonsingular(&set, *n, *trials, *seed)?
            } else {
                minors::audit_prop_zero_cofactors(&set, *n, *trials, *seed)?
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
        }
        AuditCmd::Laplace { set, matrix, axis, index } => {
            let set = set.load()?;
            let rows: Vec<Vec<&str>> = matrix.split(';').map(|r| r.split(',').map(str::trim).collect()).collect();
            let refs: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
            let x = crate::matrix::MatrixInstance::parse(&refs, &set)?;
            let axis = match axis.as_str() {
                "row" => Axis::Row,
                "col" | "column" => Axis::Col,
                other => return Err(Error::InvalidArgument(format!("axis must be row or col, got {other}"))),
            };
            let r = minors::laplace_report(&x, &set, axis, *index)?;
            let v = json!({
                "axis": r.axis,
                "index": r.index,
                "minors": r.minors.iter().map(Scalar::to_string).collect::<Vec<_>>(),
                "reconstruction": r.reconstruction.to_string(),
                "det": r.det.to_string(),
                "zero_count": r.zero_count,
                "singular": r.is_singular(),
                "within_bound": r.within_bound(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    Ok(())
}

fn equation(e: &EquationCmd, budget: u64, out: &mut dyn Write) -> Result<()> {
    let check = |set: &ElementSet, terms: usize| -> Result<()> {
        let work = num_bigint::BigUint::from(set.len()).pow(terms.div_ceil(2) as u32);
        if work > budget.into() {
            return Err(Error::BudgetExceeded { required: work, budget });
        }
        Ok(())
    };
    match e {
        EquationCmd::Count { set, eq, max_entries } => {
            let set = set.load()?;
            let eq = EquationSpec::load(eq)?;
            check(&set, eq.len())?;
            let cfg = max_entries.map_or_else(JoinConfig::default, |m| JoinConfig { max_entries: m.max(1) });
            writeln!(out, "{}", linear::count_solutions_with(&eq, &set, cfg)?)?;
        }
        EquationCmd::System { set, n } => {
            let set = set.load()?;
            check(&set, *n)?;
            writeln!(out, "{}", linear::count_system_sum_squares(*n, &set)?)?;
        }
        EquationCmd::Classify { set, eq } => {
            let set = set.load()?;
            let eq = EquationSpec::load(eq)?;
            let c = linear::classify_by_vanishing_subsums(&eq, &set)?;
            writeln!(out, "subset,count")?;
            for (subset, count) in &c.classes {
                let names: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
                writeln!(out, "\"{{{}}}\",{count}", names.join(","))?;
            }
        }
        EquationCmd::Kappa { n } => {
            let k = linear::kappa(*n)?;
            writeln!(out, "{}", json!({"n": n, "kappa": k.value, "maximizers": k.maximizers}))?;
        }
    }
    Ok(())
}
