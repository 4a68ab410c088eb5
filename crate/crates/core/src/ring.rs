//! Gaussian-integer kernels behind the matrix statistics.
//!
//! Matrices over an [`ElementSet`] are scaled by the common denominator `D`
//! of the set so that every entry becomes a Gaussian integer. Determinants
//! and ranks are then computed fraction-free (Bareiss) in `i128` with checked
//! arithmetic; any overflow reruns the same computation over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::family::ElementSet;
use crate::scalar::{Field, Scalar};

/// Exact integral domain operations, `None` meaning "does not fit".
pub(crate) trait ExactRing: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    fn from_int(v: i64) -> Self;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct SmallGauss {
    pub re: i128,
    pub im: i128,
}

impl ExactRing for SmallGauss {
    fn zero() -> Self {
        SmallGauss { re: 0, im: 0 }
    }
    fn one() -> Self {
        SmallGauss { re: 1, im: 0 }
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(SmallGauss { re: self.re.checked_add(rhs.re)?, im: self.im.checked_add(rhs.im)? })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(SmallGauss { re: self.re.checked_sub(rhs.re)?, im: self.im.checked_sub(rhs.im)? })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.im == 0 && rhs.im == 0 {
            return Some(SmallGauss { re: self.re.checked_mul(rhs.re)?, im: 0 });
        }
        let re = self.re.checked_mul(rhs.re)?.checked_sub(self.im.checked_mul(rhs.im)?)?;
        let im = self.re.checked_mul(rhs.im)?.checked_add(self.im.checked_mul(rhs.re)?)?;
        Some(SmallGauss { re, im })
    }
    fn neg(&self) -> Option<Self> {
        Some(SmallGauss { re: self.re.checked_neg()?, im: self.im.checked_neg()? })
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.im == 0 && self.im == 0 {
            debug_assert_eq!(self.re % rhs.re, 0);
            return Some(SmallGauss { re: self.re.checked_div(rhs.re)?, im: 0 });
        }
        let conj = SmallGauss { re: rhs.re, im: rhs.im.checked_neg()? };
        let num = self.mul(&conj)?;
        let norm = rhs.re.checked_mul(rhs.re)?.checked_add(rhs.im.checked_mul(rhs.im)?)?;
        debug_assert!(num.re % norm == 0 && num.im % norm == 0);
        Some(SmallGauss { re: num.re / norm, im: num.im / norm })
    }
    fn from_int(v: i64) -> Self {
        SmallGauss { re: v as i128, im: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct BigGauss {
    pub re: BigInt,
    pub im: BigInt,
}

impl BigGauss {
    pub fn from_small(v: &SmallGauss) -> Self {
        BigGauss { re: BigInt::from(v.re), im: BigInt::from(v.im) }
    }

    pub fn to_small(&self) -> Option<SmallGauss> {
        Some(SmallGauss { re: self.re.to_i128()?, im: self.im.to_i128()? })
    }
}

impl ExactRing for BigGauss {
    fn zero() -> Self {
        BigGauss { re: BigInt::zero(), im: BigInt::zero() }
    }
    fn one() -> Self {
        BigGauss { re: BigInt::one(), im: BigInt::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(BigGauss { re: &self.re + &rhs.re, im: &self.im + &rhs.im })
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(BigGauss { re: &self.re - &rhs.re, im: &self.im - &rhs.im })
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Some(BigGauss { re: &self.re * &rhs.re, im: BigInt::zero() });
        }
        Some(BigGauss { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re })
    }
    fn neg(&self) -> Option<Self> {
        Some(BigGauss { re: -&self.re, im: -&self.im })
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.im.is_zero() && self.im.is_zero() {
            return Some(BigGauss { re: &self.re / &rhs.re, im: BigInt::zero() });
        }
        let conj = BigGauss { re: rhs.re.clone(), im: -&rhs.im };
        let num = self.mul(&conj)?;
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        Some(BigGauss { re: num.re / &norm, im: num.im / &norm })
    }
    fn from_int(v: i64) -> Self {
        BigGauss { re: BigInt::from(v), im: BigInt::zero() }
    }
}

/// A Gaussian integer normalized so that values fitting `i128` are always
/// stored small; equal values therefore have equal keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum GKey {
    Small(SmallGauss),
    Big(BigGauss),
}

impl GKey {
    pub fn from_big(v: BigGauss) -> Self {
        match v.to_small() {
            Some(s) => GKey::Small(s),
            None => GKey::Big(v),
        }
    }

    pub fn to_big(&self) -> BigGauss {
        match self {
            GKey::Small(s) => BigGauss::from_small(s),
            GKey::Big(b) => b.clone(),
        }
    }
}

/// Square-matrix determinant by fraction-free elimination. `None` on overflow.
pub(crate) fn det_bareiss<R: ExactRing>(mut a: Vec<R>, n: usize) -> Option<R> {
    if n == 0 {
        return Some(R::one());
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Some(R::zero());
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let t = pivot.mul(&a[i * n + j])?.sub(&lead.mul(&a[k * n + j])?)?;
                a[i * n + j] = t.div_exact(&prev)?;
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        Some(det)
    }
}

/// Rank of an `rows x cols` matrix by fraction-free elimination with the
/// first nonzero pivot in column order. `None` on overflow.
pub(crate) fn rank_bareiss<R: ExactRing>(mut a: Vec<R>, rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev = R::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, p * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let t = pivot.mul(&a[i * cols + j])?.sub(&lead.mul(&a[rank * cols + j])?)?;
                a[i * cols + j] = t.div_exact(&prev)?;
            }
            a[i * cols + c] = R::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Determinant with the `i128` fast path and `BigInt` fallback.
pub(crate) fn det_auto(small: Option<Vec<SmallGauss>>, big: impl FnOnce() -> Vec<BigGauss>, n: usize) -> BigGauss {
    if let Some(v) = small.and_then(|m| det_bareiss(m, n)) {
        return BigGauss::from_small(&v);
    }
    det_bareiss(big(), n).expect("bigint arithmetic does not overflow")
}

pub(crate) fn rank_auto(
    small: Option<Vec<SmallGauss>>,
    big: impl FnOnce() -> Vec<BigGauss>,
    rows: usize,
    cols: usize,
) -> usize {
    if let Some(r) = small.and_then(|m| rank_bareiss(m, rows, cols)) {
        return r;
    }
    rank_bareiss(big(), rows, cols).expect("bigint arithmetic does not overflow")
}

/// An element set rescaled to Gaussian integers: element `k` equals
/// `big[k] / den`.
#[derive(Clone, Debug)]
pub(crate) struct ScaledSet {
    pub field: Field,
    pub den: BigInt,
    pub big: Vec<BigGauss>,
    pub small: Option<Vec<SmallGauss>>,
}

impl ScaledSet {
    pub fn new(set: &ElementSet) -> Self {
        Self::from_scalars(set.field(), set.elements())
    }

    pub fn from_scalars(field: Field, values: &[Scalar]) -> Self {
        let den = values.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let big: Vec<BigGauss> = values
            .iter()
            .map(|x| {
                let f = &den / x.denom();
                BigGauss { re: x.re_numer() * &f, im: x.im_numer() * &f }
            })
            .collect();
        let small = big.iter().map(BigGauss::to_small).collect();
        ScaledSet { field, den, big, small }
    }

    /// `value / den^power` as a scalar.
    pub fn unscale(&self, value: &BigGauss, power: u32) -> Scalar {
        Scalar::from_parts(
            self.field,
            value.re.clone(),
            value.im.clone(),
            num_traits::pow(self.den.clone(), power as usize),
        )
        .expect("denominator is positive")
    }

    pub fn small_matrix(&self, idx: &[usize]) -> Option<Vec<SmallGauss>> {
        let small = self.small.as_ref()?;
        Some(idx.iter().map(|&k| small[k]).collect())
    }

    pub fn big_matrix(&self, idx: &[usize]) -> Vec<BigGauss> {
        idx.iter().map(|&k| self.big[k].clone()).collect()
    }
}
