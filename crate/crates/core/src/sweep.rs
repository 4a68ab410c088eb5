//! Exhaustive joint tallies over all `m x n` matrices with entries from a set.
//!
//! Matrices are visited in row-major odometer order. Once the first `m - 1`
//! rows are fixed, every tracked statistic of the full matrix is a sum of
//! per-coordinate contributions of the last row:
//!
//! * the determinant and each node value `det(t·D·I - V)` are linear in the
//!   last row (cofactor expansion);
//! * reducing the last row against an echelon form of the prefix is a linear
//!   map, and the last row lies in the prefix span iff the image vanishes;
//! * `tr X` and `tr X²` split into a prefix constant plus one term per last
//!   row entry.
//!
//! So each prefix builds a table of contributions and the last-row loop only
//! adds table entries. Arithmetic is checked `i128` on Gaussian integers
//! scaled by the set's common denominator, falling back to `BigInt` per
//! prefix or per matrix when a value does not fit.
//!
//! Work is sharded by the assignment of the first row; shard results merge
//! by pointwise addition, so the outcome does not depend on the sharding.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::family::ElementSet;
use crate::matrix::{interpolate_scaled, CharPolyKey};
use crate::ring::{det_bareiss, BigGauss, ExactRing, GKey, ScaledSet, SmallGauss};
use crate::scalar::{Field, Scalar};

/// Default cap on the number of matrices one sweep may visit.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Enumeration guardrails shared by all sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepLimits {
    /// Maximum number of matrices to visit.
    pub budget: u64,
    /// Number of work units the first-row range is split into.
    pub shards: usize,
}

impl Default for SweepLimits {
    fn default() -> Self {
        SweepLimits { budget: DEFAULT_BUDGET, shards: 8 }
    }
}

/// Which histograms a sweep maintains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub rank: bool,
    pub det: bool,
    pub charpoly: bool,
    pub power_sums: bool,
    pub limits: SweepLimits,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { rank: true, det: true, charpoly: false, power_sums: false, limits: SweepLimits::default() }
    }
}

impl SweepOptions {
    pub fn all() -> Self {
        SweepOptions { rank: true, det: true, charpoly: true, power_sums: true, limits: SweepLimits::default() }
    }

    pub fn only_rank() -> Self {
        SweepOptions { rank: true, det: false, charpoly: false, power_sums: false, limits: SweepLimits::default() }
    }

    pub fn only_det() -> Self {
        SweepOptions { rank: false, det: true, charpoly: false, power_sums: false, limits: SweepLimits::default() }
    }

    pub fn only_charpoly() -> Self {
        SweepOptions { rank: false, det: false, charpoly: true, power_sums: false, limits: SweepLimits::default() }
    }

    pub fn only_power_sums() -> Self {
        SweepOptions { rank: false, det: false, charpoly: false, power_sums: true, limits: SweepLimits::default() }
    }

    pub fn with_limits(mut self, limits: SweepLimits) -> Self {
        self.limits = limits;
        self
    }
}

/// One slice of the first-row range: first-row codes `c` with
/// `c % count == index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

/// Joint tallies from one enumeration pass.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepHistogram {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    pub total: BigUint,
    /// Nonzero counts per rank.
    pub rank_profile: Option<BTreeMap<usize, BigUint>>,
    pub det: Option<BTreeMap<Scalar, BigUint>>,
    pub charpoly: Option<BTreeMap<CharPolyKey, BigUint>>,
    /// Keyed by `(tr X, tr X²)`.
    pub power_sums: Option<BTreeMap<(Scalar, Scalar), BigUint>>,
}

impl SweepHistogram {
    /// Checks that every maintained histogram sums to `total`, and that
    /// `total = A^{mn}` when `set_size` is given.
    pub fn check_partition(&self, set_size: Option<usize>) -> Result<()> {
        if let Some(a) = set_size {
            let expected = BigUint::from(a).pow((self.rows * self.cols) as u32);
            if self.total != expected {
                return Err(Error::Invariant(format!("total {} != A^(mn) = {expected}", self.total)));
            }
        }
        let sums = [
            ("rank", self.rank_profile.as_ref().map(|h| h.values().sum::<BigUint>())),
            ("det", self.det.as_ref().map(|h| h.values().sum::<BigUint>())),
            ("charpoly", self.charpoly.as_ref().map(|h| h.values().sum::<BigUint>())),
            ("powersums", self.power_sums.as_ref().map(|h| h.values().sum::<BigUint>())),
        ];
        for (name, sum) in sums {
            if let Some(s) = sum {
                if s != self.total {
                    return Err(Error::Invariant(format!("{name} histogram sums to {s}, total is {}", self.total)));
                }
            }
        }
        Ok(())
    }

    pub fn rank_count(&self, r: usize) -> BigUint {
        lookup(self.rank_profile.as_ref(), &r)
    }

    pub fn det_count(&self, d: &Scalar) -> BigUint {
        lookup(self.det.as_ref(), d)
    }

    pub fn charpoly_count(&self, f: &CharPolyKey) -> BigUint {
        lookup(self.charpoly.as_ref(), f)
    }

    pub fn power_sums_count(&self, t1: &Scalar, t2: &Scalar) -> BigUint {
        lookup(self.power_sums.as_ref(), &(t1.clone(), t2.clone()))
    }

    /// Writes `statistic,key,count` rows. Rank keys are integers, scalar keys
    /// use scalar text, polynomial and power-sum keys are comma-joined.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["statistic", "key", "count"])?;
        w.write_record(["total", "", &self.total.to_string()])?;
        if let Some(h) = &self.rank_profile {
            for (r, c) in h {
                w.write_record(["rank", &r.to_string(), &c.to_string()])?;
            }
        }
        if let Some(h) = &self.det {
            for (d, c) in h {
                w.write_record(["det", &d.to_string(), &c.to_string()])?;
            }
        }
        if let Some(h) = &self.charpoly {
            for (f, c) in h {
                w.write_record(["charpoly", &f.to_string(), &c.to_string()])?;
            }
        }
        if let Some(h) = &self.power_sums {
            for ((t1, t2), c) in h {
                w.write_record(["powersums", &format!("{t1},{t2}"), &c.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn lookup<K: Ord>(map: Option<&BTreeMap<K, BigUint>>, key: &K) -> BigUint {
    map.and_then(|h| h.get(key)).cloned().unwrap_or_default()
}

/// `A^{mn}`, the number of matrices a sweep visits.
pub fn sweep_work(set_size: usize, rows: usize, cols: usize) -> BigUint {
    BigUint::from(set_size).pow((rows * cols) as u32)
}

fn check_budget(set: &ElementSet, rows: usize, cols: usize, limits: &SweepLimits) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::Dimensions("matrix must have at least one row and column".into()));
    }
    let work = sweep_work(set.len(), rows, cols);
    if work > BigUint::from(limits.budget) {
        return Err(Error::BudgetExceeded { required: work, budget: limits.budget });
    }
    Ok(())
}

fn check_square(rows: usize, cols: usize, opts: &SweepOptions) -> Result<()> {
    if rows != cols && (opts.det || opts.charpoly || opts.power_sums) {
        return Err(Error::Dimensions(format!(
            "determinant, characteristic polynomial and power sums need a square shape, got {rows}x{cols}"
        )));
    }
    Ok(())
}

/// Full sweep, parallel over `opts.limits.shards` shards.
pub fn sweep(set: &ElementSet, rows: usize, cols: usize, opts: &SweepOptions) -> Result<SweepHistogram> {
    check_budget(set, rows, cols, &opts.limits)?;
    check_square(rows, cols, opts)?;
    let scaled = ScaledSet::new(set);
    let count = opts.limits.shards.max(1);
    let merged = (0..count)
        .into_par_iter()
        .map(|index| run_shard(&scaled, rows, cols, opts, Shard { index, count }))
        .reduce(|| Tally::new(rows, cols), Tally::merge);
    merged.into_histogram(&scaled, rows, cols, opts)
}

/// A single shard; merging all shards of a partition with
/// [`merge_histograms`] reproduces [`sweep`].
pub fn sweep_shard(
    set: &ElementSet,
    rows: usize,
    cols: usize,
    opts: &SweepOptions,
    shard: Shard,
) -> Result<SweepHistogram> {
    check_budget(set, rows, cols, &opts.limits)?;
    check_square(rows, cols, opts)?;
    if shard.count == 0 || shard.index >= shard.count {
        return Err(Error::InvalidArgument(format!("bad shard {}/{}", shard.index, shard.count)));
    }
    let scaled = ScaledSet::new(set);
    run_shard(&scaled, rows, cols, opts, shard).into_histogram(&scaled, rows, cols, opts)
}

pub fn merge_histograms(parts: Vec<SweepHistogram>) -> Result<SweepHistogram> {
    let mut iter = parts.into_iter();
    let mut acc = iter.next().ok_or_else(|| Error::InvalidArgument("nothing to merge".into()))?;
    for part in iter {
        if (part.rows, part.cols, part.field) != (acc.rows, acc.cols, acc.field) {
            return Err(Error::InvalidArgument("merging sweeps of different shapes".into()));
        }
        acc.total += part.total;
        merge_map(&mut acc.rank_profile, part.rank_profile);
        merge_map(&mut acc.det, part.det);
        merge_map(&mut acc.charpoly, part.charpoly);
        merge_map(&mut acc.power_sums, part.power_sums);
    }
    Ok(acc)
}

fn merge_map<K: Ord>(acc: &mut Option<BTreeMap<K, BigUint>>, part: Option<BTreeMap<K, BigUint>>) {
    if let (Some(a), Some(p)) = (acc.as_mut(), part) {
        for (k, v) in p {
            *a.entry(k).or_default() += v;
        }
    }
}

pub fn count_det(set: &ElementSet, n: usize, d: &Scalar, limits: SweepLimits) -> Result<BigUint> {
    same_field(set, d)?;
    let h = sweep(set, n, n, &SweepOptions::only_det().with_limits(limits))?;
    Ok(h.det_count(d))
}

pub fn count_rank(set: &ElementSet, rows: usize, cols: usize, r: usize, limits: SweepLimits) -> Result<BigUint> {
    let h = sweep(set, rows, cols, &SweepOptions::only_rank().with_limits(limits))?;
    Ok(h.rank_count(r))
}

/// Matrices of rank at most `r`.
pub fn count_rank_at_most(
    set: &ElementSet,
    rows: usize,
    cols: usize,
    r: usize,
    limits: SweepLimits,
) -> Result<BigUint> {
    let h = sweep(set, rows, cols, &SweepOptions::only_rank().with_limits(limits))?;
    Ok((1..=r).map(|j| h.rank_count(j)).sum())
}

pub fn count_charpoly(set: &ElementSet, n: usize, f: &CharPolyKey, limits: SweepLimits) -> Result<BigUint> {
    if f.degree() != n {
        return Err(Error::InvalidArgument(format!("polynomial of degree {} for n = {n}", f.degree())));
    }
    if f.field() != set.field() {
        return Err(Error::FieldMismatch { expected: set.field(), found: f.field() });
    }
    let h = sweep(set, n, n, &SweepOptions::only_charpoly().with_limits(limits))?;
    Ok(h.charpoly_count(f))
}

/// Matrices with `tr X = t1` and `tr X² = t2`.
pub fn count_power_sums(set: &ElementSet, n: usize, t1: &Scalar, t2: &Scalar, limits: SweepLimits) -> Result<BigUint> {
    same_field(set, t1)?;
    same_field(set, t2)?;
    let h = sweep(set, n, n, &SweepOptions::only_power_sums().with_limits(limits))?;
    Ok(h.power_sums_count(t1, t2))
}

fn same_field(set: &ElementSet, x: &Scalar) -> Result<()> {
    if x.field() != set.field() {
        return Err(Error::FieldMismatch { expected: set.field(), found: x.field() });
    }
    Ok(())
}

/// Determinant histogram of all 2x2 matrices via the multiset of products
/// `{xy}`: `det = p - q` for two independent products.
pub fn fast_det2_histogram(set: &ElementSet) -> BTreeMap<Scalar, BigUint> {
    let scaled = ScaledSet::new(set);
    let products = product_multiset(&scaled);
    let mut hist: FxHashMap<GKey, u128> = FxHashMap::default();
    for (p, cp) in &products {
        let pb = p.to_big();
        for (q, cq) in &products {
            let diff = match (p, q) {
                (GKey::Small(a), GKey::Small(b)) => a.sub(b).map(GKey::Small),
                _ => None,
            }
            .unwrap_or_else(|| GKey::from_big(pb.sub(&q.to_big()).unwrap()));
            *hist.entry(diff).or_insert(0) += (*cp as u128) * (*cq as u128);
        }
    }
    hist.into_iter().map(|(k, c)| (scaled.unscale(&k.to_big(), 2), BigUint::from(c))).collect()
}

/// Number of 2x2 matrices with determinant `d`, in time linear in the number
/// of distinct products.
pub fn count_det2(set: &ElementSet, d: &Scalar) -> Result<BigUint> {
    same_field(set, d)?;
    let scaled = ScaledSet::new(set);
    // d·D² must be a Gaussian integer to be a difference of scaled products
    let den2 = Scalar::from_bigint(set.field(), &scaled.den * &scaled.den);
    let target = d.try_mul(&den2)?;
    if !num_traits::One::is_one(target.denom()) {
        return Ok(BigUint::zero());
    }
    let target = BigGauss { re: target.re_numer().clone(), im: target.im_numer().clone() };
    let products = product_multiset(&scaled);
    let mut total: u128 = 0;
    for (p, cp) in &products {
        let q = GKey::from_big(p.to_big().sub(&target).unwrap());
        if let Some(cq) = products.get(&q) {
            total += (*cp as u128) * (*cq as u128);
        }
    }
    Ok(BigUint::from(total))
}

/// Number of 2x2 matrices with characteristic polynomial `T² - tT + d`:
/// pairs on the diagonal summing to `t`, matched against the product
/// multiset of the off-diagonal pair.
pub fn count_charpoly2(set: &ElementSet, t: &Scalar, d: &Scalar) -> Result<BigUint> {
    same_field(set, t)?;
    same_field(set, d)?;
    let scaled = ScaledSet::new(set);
    let den = Scalar::from_bigint(set.field(), scaled.den.clone());
    let (Some(t_scaled), Some(d_scaled)) =
        (gaussian_integer(&t.try_mul(&den)?), gaussian_integer(&d.try_mul(&den.square())?))
    else {
        return Ok(BigUint::zero());
    };
    let products = product_multiset(&scaled);
    let mut total: u128 = 0;
    for a in &scaled.big {
        for b in &scaled.big {
            if a.add(b).unwrap() != t_scaled {
                continue;
            }
            let need = GKey::from_big(a.mul(b).unwrap().sub(&d_scaled).unwrap());
            total += products.get(&need).copied().unwrap_or(0) as u128;
        }
    }
    Ok(BigUint::from(total))
}

fn gaussian_integer(x: &Scalar) -> Option<BigGauss> {
    num_traits::One::is_one(x.denom()).then(|| BigGauss { re: x.re_numer().clone(), im: x.im_numer().clone() })
}

fn product_multiset(scaled: &ScaledSet) -> FxHashMap<GKey, u64> {
    let mut products: FxHashMap<GKey, u64> = FxHashMap::default();
    for a in &scaled.big {
        for b in &scaled.big {
            *products.entry(GKey::from_big(a.mul(b).unwrap())).or_insert(0) += 1;
        }
    }
    products
}

// ---------------------------------------------------------------------------
// kernel

/// Shard-local tallies with unscaled integer keys.
struct Tally {
    total: u64,
    rank: Vec<u64>,
    det: FxHashMap<GKey, u64>,
    charpoly: FxHashMap<Vec<GKey>, u64>,
    power: FxHashMap<(GKey, GKey), u64>,
    violations: u64,
}

impl Tally {
    fn new(rows: usize, cols: usize) -> Self {
        Tally {
            total: 0,
            rank: vec![0; rows.min(cols) + 1],
            det: FxHashMap::default(),
            charpoly: FxHashMap::default(),
            power: FxHashMap::default(),
            violations: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        for (a, b) in self.rank.iter_mut().zip(other.rank) {
            *a += b;
        }
        for (k, v) in other.det {
            *self.det.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.charpoly {
            *self.charpoly.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.power {
            *self.power.entry(k).or_insert(0) += v;
        }
        self.violations += other.violations;
        self
    }

    fn into_histogram(
        self,
        scaled: &ScaledSet,
        rows: usize,
        cols: usize,
        opts: &SweepOptions,
    ) -> Result<SweepHistogram> {
        if self.violations > 0 {
            return Err(Error::Invariant(format!(
                "{} matrices violated rank >= 1 or (rank = n iff det != 0)",
                self.violations
            )));
        }
        let n = cols as u32;
        let big = |c: u64| BigUint::from(c);
        Ok(SweepHistogram {
            rows,
            cols,
            field: scaled.field,
            total: big(self.total),
            rank_profile: opts
                .rank
                .then(|| self.rank.iter().enumerate().filter(|(_, c)| **c > 0).map(|(r, c)| (r, big(*c))).collect()),
            det: opts.det.then(|| self.det.iter().map(|(k, c)| (scaled.unscale(&k.to_big(), n), big(*c))).collect()),
            charpoly: opts.charpoly.then(|| {
                self.charpoly
                    .iter()
                    .map(|(k, c)| {
                        let nodes: Vec<BigGauss> = k.iter().map(GKey::to_big).collect();
                        (interpolate_scaled(&nodes, scaled), big(*c))
                    })
                    .collect()
            }),
            power_sums: opts.power_sums.then(|| {
                self.power
                    .iter()
                    .map(|((a, b), c)| ((scaled.unscale(&a.to_big(), 1), scaled.unscale(&b.to_big(), 2)), big(*c)))
                    .collect()
            }),
        })
    }
}

/// Positions of each statistic inside the contribution vector.
#[derive(Clone, Copy)]
struct Layout {
    /// Components of the last row left after reduction against the prefix.
    rank: usize,
    det: Option<usize>,
    charpoly: Option<usize>,
    power: Option<usize>,
    width: usize,
}

/// Per-prefix contribution tables: the statistic vector of the matrix with
/// last row `(x_0..x_{n-1})` is `constant + Σ_j table[j][x_j]`.
struct Contributions<R> {
    constant: Vec<R>,
    /// `table[(j * A + x) * width + c]`
    table: Vec<R>,
    prefix_rank: usize,
}

fn run_shard(scaled: &ScaledSet, rows: usize, cols: usize, opts: &SweepOptions, shard: Shard) -> Tally {
    let mut tally = Tally::new(rows, cols);
    let a = scaled.big.len();
    let n = cols;
    if rows == 1 {
        if shard.index == 0 {
            process_prefix(scaled, &[], rows, cols, opts, &mut tally);
        }
        return tally;
    }
    let first_rows = (a as u128).pow(n as u32);
    let mut prefix = vec![0usize; (rows - 1) * n];
    let mut code = shard.index as u128;
    while code < first_rows {
        let mut c = code;
        for j in (0..n).rev() {
            prefix[j] = (c % a as u128) as usize;
            c /= a as u128;
        }
        // odometer over rows 1..rows-1
        for v in prefix[n..].iter_mut() {
            *v = 0;
        }
        loop {
            process_prefix(scaled, &prefix, rows, cols, opts, &mut tally);
            if !odometer_step(&mut prefix[n..], a) {
                break;
            }
        }
        code += shard.count as u128;
    }
    tally
}

fn odometer_step(digits: &mut [usize], base: usize) -> bool {
    for d in (0..digits.len()).rev() {
        digits[d] += 1;
        if digits[d] < base {
            return true;
        }
        digits[d] = 0;
    }
    false
}

fn process_prefix(
    scaled: &ScaledSet,
    prefix: &[usize],
    rows: usize,
    cols: usize,
    opts: &SweepOptions,
    tally: &mut Tally,
) {
    let small = scaled.small.as_ref().and_then(|vals| {
        let p: Vec<SmallGauss> = prefix.iter().map(|&k| vals[k]).collect();
        contributions(&p, vals, &small_den(scaled)?, rows, cols, opts)
    });
    let big_vals = || {
        let p: Vec<BigGauss> = prefix.iter().map(|&k| scaled.big[k].clone()).collect();
        let den = BigGauss { re: scaled.den.clone(), im: 0.into() };
        contributions(&p, &scaled.big, &den, rows, cols, opts).expect("bigint arithmetic does not overflow")
    };
    match small {
        Some((layout, contrib)) => {
            let mut fallback: Option<Contributions<BigGauss>> = None;
            enumerate_last_row(&contrib, scaled.big.len(), cols, layout, |choice, sum| {
                let key = match sum {
                    Some(s) => assemble(s, layout, &contrib, cols, opts, GKey::Small),
                    None => {
                        let big = fallback.get_or_insert_with(|| big_vals().1);
                        let s = direct_sum(big, choice, scaled.big.len(), layout.width);
                        assemble(&s, layout, big, cols, opts, GKey::from_big)
                    }
                };
                key.record(tally, rows, cols);
            });
        }
        None => {
            let (layout, contrib) = big_vals();
            enumerate_last_row(&contrib, scaled.big.len(), cols, layout, |_, sum| {
                let s = sum.expect("bigint arithmetic does not overflow");
                assemble(s, layout, &contrib, cols, opts, GKey::from_big).record(tally, rows, cols);
            });
        }
    }
}

fn small_den(scaled: &ScaledSet) -> Option<SmallGauss> {
    BigGauss { re: scaled.den.clone(), im: 0.into() }.to_small()
}

/// Statistics of one matrix, ready to be tallied.
struct MatrixKeys {
    rank: Option<usize>,
    det: Option<GKey>,
    charpoly: Option<Vec<GKey>>,
    power: Option<(GKey, GKey)>,
}

impl MatrixKeys {
    fn record(self, tally: &mut Tally, rows: usize, cols: usize) {
        tally.total += 1;
        if let Some(r) = self.rank {
            tally.rank[r] += 1;
            let det_zero = self.det.as_ref().map(|d| matches!(d, GKey::Small(s) if s.is_zero()));
            if r == 0 || (rows == cols && det_zero.is_some_and(|z| z == (r == cols))) {
                tally.violations += 1;
            }
        }
        if let Some(d) = self.det {
            *tally.det.entry(d).or_insert(0) += 1;
        }
        if let Some(f) = self.charpoly {
            *tally.charpoly.entry(f).or_insert(0) += 1;
        }
        if let Some(p) = self.power {
            *tally.power.entry(p).or_insert(0) += 1;
        }
    }
}

fn assemble<R: ExactRing>(
    sum: &[R],
    layout: Layout,
    contrib: &Contributions<R>,
    cols: usize,
    opts: &SweepOptions,
    key: impl Fn(R) -> GKey,
) -> MatrixKeys {
    let rank = opts.rank.then(|| {
        let independent = sum[..layout.rank].iter().any(|v| !v.is_zero());
        (contrib.prefix_rank + usize::from(independent)).min(cols)
    });
    MatrixKeys {
        rank,
        det: layout.det.map(|i| key(sum[i].clone())),
        charpoly: layout.charpoly.map(|i| sum[i..=i + cols].iter().cloned().map(&key).collect()),
        power: layout.power.map(|i| (key(sum[i].clone()), key(sum[i + 1].clone()))),
    }
}

fn direct_sum<R: ExactRing>(c: &Contributions<R>, choice: &[usize], a: usize, width: usize) -> Vec<R> {
    let mut s = c.constant.clone();
    for (j, &x) in choice.iter().enumerate() {
        let base = (j * a + x) * width;
        for (k, v) in s.iter_mut().enumerate() {
            *v = v.add(&c.table[base + k]).expect("bigint arithmetic does not overflow");
        }
    }
    s
}

/// Visits every last row in odometer order with its summed contribution
/// vector, or `None` when the running sum overflowed.
fn enumerate_last_row<R: ExactRing>(
    c: &Contributions<R>,
    a: usize,
    n: usize,
    layout: Layout,
    mut visit: impl FnMut(&[usize], Option<&[R]>),
) {
    let w = layout.width;
    let mut choice = vec![0usize; n];
    // partial[d] = constant + Σ_{j<d} table[j][choice_j]
    let mut partial: Vec<R> = Vec::with_capacity((n + 1) * w);
    partial.extend_from_slice(&c.constant);
    partial.resize((n + 1) * w, R::zero());
    let mut valid = vec![true; n + 1];
    let refresh = |partial: &mut Vec<R>, valid: &mut Vec<bool>, choice: &[usize], from: usize| {
        for d in from..n {
            let base = (d * a + choice[d]) * w;
            let mut ok = valid[d];
            if ok {
                for k in 0..w {
                    match partial[d * w + k].add(&c.table[base + k]) {
                        Some(v) => partial[(d + 1) * w + k] = v,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            valid[d + 1] = ok;
        }
    };
    refresh(&mut partial, &mut valid, &choice, 0);
    loop {
        if valid[n] {
            visit(&choice, Some(&partial[n * w..]));
        } else {
            visit(&choice, None);
        }
        let mut d = n;
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            choice[d] += 1;
            if choice[d] < a {
                break;
            }
            choice[d] = 0;
        }
        refresh(&mut partial, &mut valid, &choice, d);
    }
}

/// Builds the contribution tables for a fixed `(rows-1) x cols` prefix.
/// `None` on overflow.
fn contributions<R: ExactRing>(
    prefix: &[R],
    values: &[R],
    den: &R,
    rows: usize,
    cols: usize,
    opts: &SweepOptions,
) -> Option<(Layout, Contributions<R>)> {
    let n = cols;
    let m1 = rows - 1;
    // per-column linear functionals: stat = constant + Σ_j w_j · coef[j]
    let mut constant: Vec<R> = Vec::new();
    let mut coef: Vec<Vec<R>> = vec![Vec::new(); n];
    // extra per-entry terms that are not linear (w_j²)
    let mut square_slot: Option<(usize, usize)> = None;

    let mut prefix_rank = 0;
    let mut rank_width = 0;
    if opts.rank {
        let (r0, residual) = reduction_map(prefix, m1, n)?;
        prefix_rank = r0;
        rank_width = residual.len() / n.max(1);
        // residual[c * n + j] = image of e_j in component c
        for c in 0..rank_width {
            constant.push(R::zero());
            for (j, coef_j) in coef.iter_mut().enumerate() {
                coef_j.push(residual[c * n + j].clone());
            }
        }
    }
    let det = if opts.det {
        let idx = constant.len();
        let cof = cofactors(prefix, n)?;
        constant.push(R::zero());
        for (j, coef_j) in coef.iter_mut().enumerate() {
            coef_j.push(cof[j].clone());
        }
        Some(idx)
    } else {
        None
    };
    let charpoly = if opts.charpoly {
        let idx = constant.len();
        for t in 0..=n as i64 {
            let td = R::from_int(t).mul(den)?;
            // shifted prefix: t·D·e_i - row_i
            let mut shifted = Vec::with_capacity(prefix.len());
            for (k, v) in prefix.iter().enumerate() {
                let neg = v.neg()?;
                shifted.push(if k / n == k % n { td.add(&neg)? } else { neg });
            }
            let cof = cofactors(&shifted, n)?;
            // last row of the shifted matrix is t·D·e_{n-1} - w
            constant.push(td.mul(&cof[n - 1])?);
            for (j, coef_j) in coef.iter_mut().enumerate() {
                coef_j.push(cof[j].neg()?);
            }
        }
        Some(idx)
    } else {
        None
    };
    let power = if opts.power_sums {
        let idx = constant.len();
        let mut t1 = R::zero();
        let mut t2 = R::zero();
        for i in 0..m1 {
            t1 = t1.add(&prefix[i * n + i])?;
            for j in 0..m1 {
                t2 = t2.add(&prefix[i * n + j].mul(&prefix[j * n + i])?)?;
            }
        }
        constant.push(t1);
        constant.push(t2);
        let two = R::from_int(2);
        for (j, coef_j) in coef.iter_mut().enumerate() {
            coef_j.push(if j == n - 1 { R::one() } else { R::zero() });
            // 2·w_j·X[j][n-1] for j < n-1; w_{n-1}² handled separately
            coef_j.push(if j < n - 1 { two.mul(&prefix[j * n + n - 1])? } else { R::zero() });
        }
        square_slot = Some((n - 1, idx + 1));
        Some(idx)
    } else {
        None
    };

    let width = constant.len();
    let a = values.len();
    let mut table = Vec::with_capacity(n * a * width);
    for (j, coef_j) in coef.iter().enumerate() {
        for x in values {
            for (k, cf) in coef_j.iter().enumerate() {
                let mut v = x.mul(cf)?;
                if square_slot == Some((j, k)) {
                    v = v.add(&x.mul(x)?)?;
                }
                table.push(v);
            }
        }
    }
    let layout = Layout { rank: rank_width, det, charpoly, power, width };
    Some((layout, Contributions { constant, table, prefix_rank }))
}

/// Cofactors of the last row of an `n x n` matrix whose first `n-1` rows are
/// `prefix`: `det = Σ_j w_j · cof[j]`.
fn cofactors<R: ExactRing>(prefix: &[R], n: usize) -> Option<Vec<R>> {
    let m1 = n - 1;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<R> = (0..m1)
            .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
            .map(|(i, c)| prefix[i * n + c].clone())
            .collect();
        let d = det_bareiss(minor, m1)?;
        out.push(if (m1 + j).is_multiple_of(2) { d } else { d.neg()? });
    }
    Some(out)
}

/// Echelonizes the prefix and returns its rank together with the matrix of
/// the linear map sending a row `w` to its residual on the non-pivot
/// columns: `residual[c * n + j]` is the `c`-th residual component of `e_j`.
fn reduction_map<R: ExactRing>(prefix: &[R], rows: usize, n: usize) -> Option<(usize, Vec<R>)> {
    let mut a = prefix.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    let mut prev = R::one();
    for c in 0..n {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * n + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..n {
                a.swap(r * n + j, p * n + j);
            }
        }
        let pivot = a[r * n + c].clone();
        for i in r + 1..rows {
            let lead = a[i * n + c].clone();
            for j in c + 1..n {
                let t = pivot.mul(&a[i * n + j])?.sub(&lead.mul(&a[r * n + j])?)?;
                a[i * n + j] = t.div_exact(&prev)?;
            }
            a[i * n + c] = R::zero();
        }
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.iter().any(|&(_, pc)| pc == *c)).collect();
    let mut residual = vec![R::zero(); free.len() * n];
    for j in 0..n {
        // reduce e_j: w <- pv·w - w[pc]·row
        let mut w: Vec<R> = (0..n).map(|k| if k == j { R::one() } else { R::zero() }).collect();
        for &(row, pc) in &pivots {
            let pv = a[row * n + pc].clone();
            let lead = w[pc].clone();
            for k in 0..n {
                w[k] = pv.mul(&w[k])?.sub(&lead.mul(&a[row * n + k])?)?;
            }
        }
        for (ci, &c) in free.iter().enumerate() {
            residual[ci * n + j] = w[c].clone();
        }
    }
    Some((r, residual))
}

/// Number of first-row codes; the natural upper bound for shard counts.
pub fn first_row_count(set_size: usize, cols: usize) -> Option<u64> {
    BigUint::from(set_size).pow(cols as u32).to_u64()
}
