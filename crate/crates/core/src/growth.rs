//! Counting experiments over growing families and log-log slope fits.
//!
//! An experiment materializes a family at several sizes `k`, counts one
//! statistic exactly at each size, and fits `log(count)` against
//! `log(A)` by ordinary least squares. The slope is then compared with the
//! theoretical exponent of the statistic.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Number, Value};

use crate::bounds::{self, rational_text, CoeffFlags, ExponentValue};
use crate::error::{Error, Result};
use crate::family::{ElementSet, FamilySpec};
use crate::linear::{count_solutions, count_system_sum_squares, EquationSpec};
use crate::matrix::CharPolyKey;
use crate::scalar::{Field, Scalar};
use crate::sweep::{self, sweep_work, SweepLimits};

/// Statistic counted at each size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Statistic {
    /// `n x n` matrices with determinant `target`.
    Det { n: usize, target: String },
    /// `m x n` matrices of rank `r`, or rank at most `r` when cumulative.
    Rank {
        m: usize,
        n: usize,
        r: usize,
        #[serde(default)]
        cumulative: bool,
    },
    /// `n x n` matrices with characteristic polynomial `target`, given as
    /// comma-joined `c_0,…,c_{n-1}`.
    Charpoly { n: usize, target: String },
    /// `n x n` matrices with `tr X = t1` and `tr X² = t2`.
    Powersums { n: usize, t1: String, t2: String },
    /// Solutions of `coeffs · x = rhs`.
    Equation {
        coeffs: Vec<String>,
        #[serde(default = "zero_text")]
        rhs: String,
    },
    /// Solutions of `Σ x_i = Σ x_i² = 0` in `n` variables.
    System { n: usize },
}

fn zero_text() -> String {
    "0".into()
}

impl Statistic {
    /// Work estimate for one count at set size `a`, matching the algorithm
    /// [`count_statistic`] picks.
    pub fn work(&self, a: usize) -> BigUint {
        let pow = |e: usize| BigUint::from(a).pow(e as u32);
        match self {
            Statistic::Det { n: 2, .. } | Statistic::Charpoly { n: 2, .. } => pow(2),
            Statistic::Rank { m: 2, n: 2, .. } => pow(2),
            Statistic::Det { n, .. } | Statistic::Charpoly { n, .. } | Statistic::Powersums { n, .. } => {
                sweep_work(a, *n, *n)
            }
            Statistic::Rank { m, n, .. } => sweep_work(a, *m, *n),
            Statistic::Equation { coeffs, .. } => pow(coeffs.len().div_ceil(2)),
            Statistic::System { n } => pow(n.div_ceil(2)),
        }
    }

    /// Upper-bound exponent for this statistic.
    pub fn theoretical(&self, field: Field) -> Result<ExponentValue> {
        match self {
            Statistic::Det { n, target } => {
                let d = Scalar::parse(target, field)?;
                match n {
                    1 => Ok(constant_exponent("1x1 determinant")),
                    _ => bounds::det_exponent(*n as i64, d.is_zero()),
                }
            }
            Statistic::Rank { m, n, r, cumulative } => {
                let (big, small) = ((*m).max(*n) as i64, (*m).min(*n) as i64);
                let r = *r as i64;
                if r < 1 || r > small {
                    return Err(Error::InvalidArgument(format!("rank {r} impossible for {m}x{n}")));
                }
                if small < 2 {
                    return Ok(ExponentValue {
                        value: Rational64::from_integer(big),
                        source: bounds::source::TRIVIAL_RANK,
                        regime: "single row or column".into(),
                    });
                }
                if *cumulative {
                    let all = (1..=r).map(|j| bounds::rank_exponent(big, small, j)).collect::<Result<Vec<_>>>()?;
                    Ok(all.into_iter().reduce(|a, b| if b.value > a.value { b } else { a }).expect("r >= 1"))
                } else {
                    bounds::rank_exponent(big, small, r)
                }
            }
            Statistic::Charpoly { n, target } => {
                let f = CharPolyKey::parse(target, field)?;
                if f.degree() != *n {
                    return Err(Error::InvalidArgument(format!("polynomial of degree {} for n = {n}", f.degree())));
                }
                match n {
                    1 => Ok(constant_exponent("1x1 characteristic polynomial")),
                    2 => Ok(bounds::charpoly2_bound(f.coeff(0).is_zero(), f.coeff(1).is_zero()).exponent().clone()),
                    _ => {
                        let top = f.coeff(n - 1);
                        let second = f.coeff(n - 2);
                        let two_second = &second + &second;
                        let flags = CoeffFlags {
                            c_top_zero: top.is_zero(),
                            c_second_zero: second.is_zero(),
                            half_relation: two_second == top,
                            constant_zero: Some(f.coeff(0).is_zero()),
                        };
                        bounds::best_charpoly_exponent(*n as i64, flags, field == Field::Q)
                    }
                }
            }
            Statistic::Powersums { n, .. } => Ok(ExponentValue {
                value: Rational64::from_integer((n * n) as i64 - 1),
                source: "trivial-trace",
                regime: "trace fixed".into(),
            }),
            Statistic::Equation { coeffs, rhs } => {
                let homogeneous = Scalar::parse(rhs, field)?.is_zero();
                if homogeneous {
                    bounds::homogeneous_equation_exponent(coeffs.len() as i64)
                } else {
                    bounds::inhomogeneous_equation_exponent(coeffs.len() as i64)
                }
            }
            Statistic::System { n } => bounds::system_exponent(*n as i64),
        }
    }
}

fn constant_exponent(regime: &str) -> ExponentValue {
    ExponentValue { value: Rational64::from_integer(0), source: "trivial", regime: regime.into() }
}

/// Exact count of `stat` over `set`, using the `O(A²)` paths for 2x2
/// determinant, rank and characteristic polynomial.
pub fn count_statistic(stat: &Statistic, set: &ElementSet, limits: SweepLimits) -> Result<BigUint> {
    let field = set.field();
    match stat {
        Statistic::Det { n: 2, target } => sweep::count_det2(set, &Scalar::parse(target, field)?),
        Statistic::Det { n, target } => sweep::count_det(set, *n, &Scalar::parse(target, field)?, limits),
        Statistic::Rank { m: 2, n: 2, r, cumulative } => {
            // nonzero entries: rank 1 iff det 0
            let singular = sweep::count_det2(set, &Scalar::zero(field))?;
            let all = BigUint::from(set.len()).pow(4);
            Ok(match (r, cumulative) {
                (1, _) => singular,
                (2, false) => all - singular,
                (2, true) => all,
                _ => BigUint::zero(),
            })
        }
        Statistic::Rank { m, n, r, cumulative: false } => sweep::count_rank(set, *m, *n, *r, limits),
        Statistic::Rank { m, n, r, cumulative: true } => sweep::count_rank_at_most(set, *m, *n, *r, limits),
        Statistic::Charpoly { n: 2, target } => {
            let f = CharPolyKey::parse(target, field)?;
            if f.degree() != 2 {
                return Err(Error::InvalidArgument(format!("polynomial of degree {} for n = 2", f.degree())));
            }
            sweep::count_charpoly2(set, &-f.coeff(1), &f.coeff(0))
        }
        Statistic::Charpoly { n, target } => {
            sweep::count_charpoly(set, *n, &CharPolyKey::parse(target, field)?, limits)
        }
        Statistic::Powersums { n, t1, t2 } => {
            sweep::count_power_sums(set, *n, &Scalar::parse(t1, field)?, &Scalar::parse(t2, field)?, limits)
        }
        Statistic::Equation { coeffs, rhs } => {
            let refs: Vec<&str> = coeffs.iter().map(String::as_str).collect();
            count_solutions(&EquationSpec::parse(field, &refs, rhs)?, set)
        }
        Statistic::System { n } => count_system_sum_squares(*n, set),
    }
}

/// Experiment configuration.
///
/// `family` is a family spec in which any string made only of an integer
/// linear expression in `k` (`"k"`, `"2*k"`, `"2k+1"`) stands for that
/// integer at each size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub family: Value,
    pub k_values: Vec<i64>,
    pub statistic: Statistic,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_budget")]
    pub budget: f64,
    #[serde(default = "default_shards")]
    pub shards: usize,
    /// Overrides the automatically derived upper-bound exponent.
    #[serde(default)]
    pub theoretical: Option<String>,
    /// Exponent of a known lower-bound construction for this family.
    #[serde(default)]
    pub lower_bound: Option<String>,
}

fn default_tolerance() -> f64 {
    0.2
}

fn default_budget() -> f64 {
    sweep::DEFAULT_BUDGET as f64
}

fn default_shards() -> usize {
    8
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("k_values must be strictly increasing".into()));
        }
        if self.budget.is_nan() || self.tolerance.is_nan() || self.budget < 0.0 || self.tolerance < 0.0 {
            return Err(Error::InvalidArgument("budget and tolerance must be non-negative".into()));
        }
        Ok(())
    }

    /// The family at size `k`.
    pub fn family_at(&self, k: i64) -> Result<FamilySpec> {
        Ok(serde_json::from_value(substitute_k(&self.family, k)?)?)
    }

    pub fn limits(&self) -> SweepLimits {
        SweepLimits { budget: self.budget.min(u64::MAX as f64) as u64, shards: self.shards.max(1) }
    }

    fn field(&self) -> Result<Field> {
        let k = *self.k_values.first().ok_or_else(|| Error::InvalidArgument("no k values".into()))?;
        Ok(self.family_at(k)?.field())
    }

    /// Upper-bound exponent: the override if given, else derived from the
    /// statistic.
    pub fn theoretical_exponent(&self) -> Result<ExponentValue> {
        match &self.theoretical {
            Some(text) => Ok(ExponentValue {
                value: parse_rational(text)?,
                source: "configured",
                regime: "from experiment config".into(),
            }),
            None => self.statistic.theoretical(self.field()?),
        }
    }

    pub fn lower_exponent(&self) -> Result<Option<Rational64>> {
        self.lower_bound.as_deref().map(parse_rational).transpose()
    }
}

/// `"7"`, `"-3/2"`.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    Rational64::from_str(text.trim()).map_err(|e| Error::parse(text, e.to_string()))
}

fn substitute_k(v: &Value, k: i64) -> Result<Value> {
    Ok(match v {
        Value::String(s) => match eval_linear_k(s, k) {
            Some(x) => Value::from(x?),
            None => v.clone(),
        },
        Value::Array(items) => Value::Array(items.iter().map(|x| substitute_k(x, k)).collect::<Result<_>>()?),
        Value::Object(map) => {
            let mut out = Map::new();
            for (key, x) in map {
                out.insert(key.clone(), substitute_k(x, k)?);
            }
            Value::Object(out)
        }
        _ => v.clone(),
    })
}

/// Evaluates `a*k + b` style text; `None` if `text` does not mention `k`
/// or is not such an expression.
fn eval_linear_k(text: &str, k: i64) -> Option<Result<i64>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !t.contains('k') || !t.chars().all(|c| c.is_ascii_digit() || "k+-*".contains(c)) {
        return None;
    }
    let overflow = || Error::InvalidArgument(format!("{text} overflows at k = {k}"));
    let mut total: i64 = 0;
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let value = if let Some(coef) = term.strip_suffix('k') {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c: i64 = if coef.is_empty() { 1 } else { coef.parse().ok()? };
            c.checked_mul(k)
        } else {
            Some(term.parse::<i64>().ok()?)
        };
        let Some(value) = value.and_then(|v| v.checked_mul(sign)) else {
            return Some(Err(overflow()));
        };
        let Some(t) = total.checked_add(value) else {
            return Some(Err(overflow()));
        };
        total = t;
        rest = tail;
    }
    Some(Ok(total))
}

/// One measured size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub k: i64,
    pub set_size: usize,
    pub count: BigUint,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentRun {
    pub points: Vec<Point>,
    /// Sizes skipped because their work estimate exceeded the budget.
    pub skipped_over_budget: Vec<i64>,
}

impl ExperimentRun {
    pub fn budget_exceeded(&self) -> bool {
        !self.skipped_over_budget.is_empty()
    }

    /// `k,set_size,count,elapsed_us`; only the last column is timing.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "set_size", "count", "elapsed_us"])?;
        for p in &self.points {
            w.write_record([p.k.to_string(), p.set_size.to_string(), p.count.to_string(), p.elapsed_us.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Counts the statistic at every `k`. Sizes over budget are skipped and
/// listed; the rest run concurrently and are reported in `k` order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentRun> {
    spec.validate()?;
    let limits = spec.limits();
    let sets = spec.k_values.iter().map(|&k| Ok((k, spec.family_at(k)?.materialize()?))).collect::<Result<Vec<_>>>()?;
    let (within, over): (Vec<_>, Vec<_>) =
        sets.into_iter().partition(|(_, set)| spec.statistic.work(set.len()) <= BigUint::from(limits.budget));
    let points = within
        .par_iter()
        .map(|(k, set)| {
            let start = Instant::now();
            let count = count_statistic(&spec.statistic, set, limits)?;
            Ok(Point { k: *k, set_size: set.len(), count, elapsed_us: start.elapsed().as_micros() as u64 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentRun { points, skipped_over_budget: over.into_iter().map(|(k, _)| k).collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consistent,
    UpperViolated,
    LowerAchieved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::UpperViolated => "upper-violated",
            Verdict::LowerAchieved => "lower-achieved",
        })
    }
}

/// Least-squares fit of `ln(count)` on `ln(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeReport {
    /// `(A, count)` pairs used in the fit.
    pub points: Vec<(usize, BigUint)>,
    /// Sizes whose count was zero; excluded from the fit.
    pub zero_counts: Vec<usize>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub theoretical: Option<ExponentValue>,
    pub lower_bound: Option<Rational64>,
    pub tolerance: f64,
    pub verdict: Option<Verdict>,
}

pub fn fit_slope(points: &[(usize, BigUint)]) -> Result<SlopeReport> {
    let (zero, used): (Vec<_>, Vec<_>) = points.iter().cloned().partition(|(_, c)| c.is_zero());
    if used.len() < 3 {
        return Err(Error::InvalidArgument(format!("need 3 points with nonzero count, have {}", used.len())));
    }
    let xy: Vec<(f64, f64)> = used.iter().map(|(a, c)| ((*a as f64).ln(), ln_big(c))).collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::InvalidArgument("all points have the same set size".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xy.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r2 = if syy <= f64::EPSILON * n { 1.0 } else { 1.0 - ss_res / syy };
    Ok(SlopeReport {
        points: used,
        zero_counts: zero.into_iter().map(|(a, _)| a).collect(),
        slope,
        intercept,
        r2,
        theoretical: None,
        lower_bound: None,
        tolerance: 0.0,
        verdict: None,
    })
}

fn ln_big(c: &BigUint) -> f64 {
    match c.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = c.bits();
            let shift = bits - 64;
            (c >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// `upper-violated` if the slope exceeds `exponent + tolerance`, else
/// `lower-achieved` if within `tolerance` of `lower`, else `consistent`.
pub fn compare(slope: f64, exponent: Rational64, tolerance: f64, lower: Option<Rational64>) -> Verdict {
    let as_f64 = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
    if slope > as_f64(exponent) + tolerance {
        Verdict::UpperViolated
    } else if lower.is_some_and(|l| (slope - as_f64(l)).abs() <= tolerance) {
        Verdict::LowerAchieved
    } else {
        Verdict::Consistent
    }
}

impl SlopeReport {
    pub fn with_comparison(mut self, theoretical: ExponentValue, tolerance: f64, lower: Option<Rational64>) -> Self {
        self.verdict = Some(compare(self.slope, theoretical.value, tolerance, lower));
        self.theoretical = Some(theoretical);
        self.tolerance = tolerance;
        self.lower_bound = lower;
        self
    }

    /// Report JSON; floats carry exactly six decimals.
    pub fn to_json(&self) -> String {
        let fixed = |x: f64| Value::Number(Number::from_str(&format!("{x:.6}")).expect("finite float"));
        let v = json!({
            "slope": fixed(self.slope),
            "intercept": fixed(self.intercept),
            "r2": fixed(self.r2),
            "theoretical": self.theoretical.as_ref().map(ExponentValue::value_text),
            "theoretical_source": self.theoretical.as_ref().map(|e| e.source),
            "lower_bound": self.lower_bound.as_ref().map(rational_text),
            "tolerance": fixed(self.tolerance),
            "verdict": self.verdict.map(|v| v.to_string()),
            "points": self.points.iter().map(|(a, c)| json!({"set_size": a, "count": c.to_string()})).collect::<Vec<_>>(),
            "zero_counts": self.zero_counts,
        });
        serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
    }
}

/// Runs, fits and compares in one go.
pub fn analyze(spec: &ExperimentSpec) -> Result<(ExperimentRun, SlopeReport)> {
    let run = run_experiment(spec)?;
    let pts: Vec<(usize, BigUint)> = run.points.iter().map(|p| (p.set_size, p.count.clone())).collect();
    let report = fit_slope(&pts)?.with_comparison(spec.theoretical_exponent()?, spec.tolerance, spec.lower_exponent()?);
    Ok((run, report))
}

/// Writes `points.csv` and `report.json` into `dir`.
pub fn emit(dir: impl AsRef<Path>, run: &ExperimentRun, report: &SlopeReport) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    run.write_csv(fs::File::create(dir.join("points.csv"))?)?;
    fs::write(dir.join("report.json"), report.to_json())?;
    Ok(())
}
