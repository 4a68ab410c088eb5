//! Laplace expansions and the zero-minor audit.
//!
//! A nonsingular matrix with nonzero entries has at most `n - 2` vanishing
//! minors along any row or column. The audit samples random matrices over a
//! set and checks every row and column expansion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::ElementSet;
use crate::matrix::MatrixInstance;
use crate::ring::{det_auto, BigGauss, ExactRing, ScaledSet};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Row,
    Col,
}

/// Expansion of the determinant along one row or column.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorReport {
    pub axis: Axis,
    pub index: usize,
    /// Unsigned minors along the line, in order.
    pub minors: Vec<Scalar>,
    /// `Σ_k (-1)^{i+k} x · minor`, which must equal `det`.
    pub reconstruction: Scalar,
    pub det: Scalar,
    pub zero_count: usize,
}

impl MinorReport {
    pub fn is_singular(&self) -> bool {
        self.det.is_zero()
    }

    /// `zero_count <= n - 2`; vacuous for singular matrices.
    pub fn within_bound(&self) -> bool {
        self.is_singular() || self.zero_count + 2 <= self.minors.len()
    }
}

/// Minors along row or column `index` (0-based).
pub fn laplace_report(x: &MatrixInstance, set: &ElementSet, axis: Axis, index: usize) -> Result<MinorReport> {
    x.require_square()?;
    let n = x.rows();
    if index >= n {
        return Err(Error::InvalidArgument(format!("line {index} out of range for n = {n}")));
    }
    let scaled = ScaledSet::new(set);
    let line = expand(x.entries(), n, &scaled, axis, index);
    let minors = line.minors.iter().map(|m| scaled.unscale(m, (n - 1) as u32)).collect();
    Ok(MinorReport {
        axis,
        index,
        minors,
        reconstruction: scaled.unscale(&line.reconstruction, n as u32),
        det: scaled.unscale(&line.det, n as u32),
        zero_count: line.minors.iter().filter(|m| m.is_zero()).count(),
    })
}

/// A line expansion in scaled integers.
struct Line {
    minors: Vec<BigGauss>,
    reconstruction: BigGauss,
    det: BigGauss,
}

fn expand(idx: &[usize], n: usize, scaled: &ScaledSet, axis: Axis, index: usize) -> Line {
    let mut minors = Vec::with_capacity(n);
    let mut reconstruction = BigGauss::zero();
    for k in 0..n {
        let (row, col) = match axis {
            Axis::Row => (index, k),
            Axis::Col => (k, index),
        };
        let sub: Vec<usize> = (0..n)
            .filter(|&i| i != row)
            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| idx[i * n + j]))
            .collect();
        let minor = if n == 1 {
            BigGauss::from_int(1)
        } else {
            det_auto(scaled.small_matrix(&sub), || scaled.big_matrix(&sub), n - 1)
        };
        let term = scaled.big[idx[row * n + col]].mul(&minor).unwrap();
        reconstruction =
            if (row + col) % 2 == 0 { reconstruction.add(&term) } else { reconstruction.sub(&term) }.unwrap();
        minors.push(minor);
    }
    let det = det_auto(scaled.small_matrix(idx), || scaled.big_matrix(idx), n);
    Line { minors, reconstruction, det }
}

/// A matrix with too many vanishing minors on one line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Entries in scalar text, row-major.
    pub entries: Vec<String>,
    pub axis: Axis,
    pub index: usize,
    pub zero_count: usize,
}

/// Outcome of [`audit_prop_zero_cofactors`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub n: usize,
    pub set_size: usize,
    pub seed: u64,
    pub trials: u64,
    pub nonsingular: u64,
    pub singular_skipped: u64,
    /// Largest zero count over all lines of nonsingular samples.
    pub max_zero_count: usize,
    pub violations: u64,
    pub reconstruction_mismatches: u64,
    /// First few violating samples.
    pub counterexamples: Vec<Counterexample>,
    pub passed: bool,
}

const CHUNK: u64 = 512;
const MAX_COUNTEREXAMPLES: usize = 10;

/// Samples `trials` uniform matrices over `set` and checks every row and
/// column expansion of the nonsingular ones. Deterministic in `seed`
/// regardless of thread count: chunk `c` draws from stream `c`.
pub fn audit_prop_zero_cofactors(set: &ElementSet, n: usize, trials: u64, seed: u64) -> Result<AuditSummary> {
    audit(set, n, trials, seed, false)
}

/// Like [`audit_prop_zero_cofactors`], but keeps sampling until `target`
/// nonsingular matrices were checked. Gives up after `1000 * target` draws.
pub fn audit_nonsingular(set: &ElementSet, n: usize, target: u64, seed: u64) -> Result<AuditSummary> {
    audit(set, n, target, seed, true)
}

fn audit(set: &ElementSet, n: usize, trials: u64, seed: u64, until_nonsingular: bool) -> Result<AuditSummary> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let scaled = ScaledSet::new(set);
    let chunks = trials.div_ceil(CHUNK);
    let parts: Vec<AuditSummary> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(trials - c * CHUNK);
            audit_chunk(set, &scaled, n, len, seed, c, until_nonsingular)
        })
        .collect();
    let mut total = empty_summary(n, set.len(), seed);
    for p in parts {
        total.trials += p.trials;
        total.nonsingular += p.nonsingular;
        total.singular_skipped += p.singular_skipped;
        total.max_zero_count = total.max_zero_count.max(p.max_zero_count);
        total.violations += p.violations;
        total.reconstruction_mismatches += p.reconstruction_mismatches;
        for ce in p.counterexamples {
            if total.counterexamples.len() < MAX_COUNTEREXAMPLES {
                total.counterexamples.push(ce);
            }
        }
    }
    total.passed = total.violations == 0 && total.reconstruction_mismatches == 0;
    Ok(total)
}

fn empty_summary(n: usize, set_size: usize, seed: u64) -> AuditSummary {
    AuditSummary {
        n,
        set_size,
        seed,
        trials: 0,
        nonsingular: 0,
        singular_skipped: 0,
        max_zero_count: 0,
        violations: 0,
        reconstruction_mismatches: 0,
        counterexamples: Vec::new(),
        passed: true,
    }
}

fn audit_chunk(
    set: &ElementSet,
    scaled: &ScaledSet,
    n: usize,
    len: u64,
    seed: u64,
    chunk: u64,
    until_nonsingular: bool,
) -> AuditSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut s = empty_summary(n, set.len(), seed);
    let a = set.len();
    loop {
        let done = if until_nonsingular { s.nonsingular >= len || s.trials >= 1000 * len } else { s.trials >= len };
        if done {
            break;
        }
        s.trials += 1;
        let idx: Vec<usize> = (0..n * n).map(|_| rng.gen_range(0..a)).collect();
        let mut singular = None;
        for axis in [Axis::Row, Axis::Col] {
            for index in 0..n {
                let line = expand(&idx, n, scaled, axis, index);
                if line.reconstruction != line.det {
                    s.reconstruction_mismatches += 1;
                }
                let is_singular = *singular.get_or_insert(line.det.is_zero());
                if is_singular {
                    continue;
                }
                let zeros = line.minors.iter().filter(|m| m.is_zero()).count();
                s.max_zero_count = s.max_zero_count.max(zeros);
                if zeros + 2 > n {
                    s.violations += 1;
                    if s.counterexamples.len() < MAX_COUNTEREXAMPLES {
                        s.counterexamples.push(Counterexample {
                            entries: idx.iter().map(|&k| set.elements()[k].to_string()).collect(),
                            axis,
                            index,
                            zero_count: zeros,
                        });
                    }
                }
            }
        }
        if singular == Some(true) {
            s.singular_skipped += 1;
        } else {
            s.nonsingular += 1;
        }
    }
    s
}
