//! Brute-force oracles shared by the integration suites. They avoid the
//! library's kernels: plain Scalar arithmetic and full enumeration.
#![allow(dead_code)]

use std::collections::BTreeMap;

use finrank::{ElementSet, Field, Scalar};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(s: &str) -> Scalar {
    Scalar::parse(s, Field::Q).unwrap()
}

pub fn set_q(items: &[&str]) -> ElementSet {
    ElementSet::parse_list(Field::Q, items).unwrap()
}

/// Advances a base-`base` odometer; false after the last state.
pub fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Determinant by Laplace expansion along the first row.
pub fn laplace_det(m: &[Scalar], n: usize) -> Scalar {
    if n == 1 {
        return m[0].clone();
    }
    let field = m[0].field();
    let mut acc = Scalar::zero(field);
    for j in 0..n {
        let minor: Vec<Scalar> = (1..n)
            .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
            .map(|(i, c)| m[i * n + c].clone())
            .collect();
        let term = &m[j] * &laplace_det(&minor, n - 1);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Rank by textbook Gaussian elimination with field division.
pub fn gauss_rank(m: &[Scalar], rows: usize, cols: usize) -> usize {
    let mut a = m.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else { continue };
        for j in 0..cols {
            a.swap(r * cols + j, p * cols + j);
        }
        let inv = a[r * cols + c].inverse().unwrap();
        for i in r + 1..rows {
            let f = &a[i * cols + c] * &inv;
            for j in 0..cols {
                let t = &f * &a[r * cols + j];
                a[i * cols + j] = &a[i * cols + j] - &t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant histogram of all 2x2 matrices by the 2x2 formula.
pub fn naive_det2_histogram(set: &ElementSet) -> BTreeMap<Scalar, BigUint> {
    let e = set.elements();
    let mut h: BTreeMap<Scalar, BigUint> = BTreeMap::new();
    for a in e {
        for b in e {
            for c in e {
                for d in e {
                    *h.entry(&(a * d) - &(b * c)).or_default() += 1u32;
                }
            }
        }
    }
    h
}

/// Every `rows x cols` matrix: rank profile and (square) determinant
/// histogram.
pub fn naive_matrix_tallies(
    set: &ElementSet,
    rows: usize,
    cols: usize,
) -> (BTreeMap<usize, BigUint>, Option<BTreeMap<Scalar, BigUint>>) {
    let e = set.elements();
    let mut ranks: BTreeMap<usize, BigUint> = BTreeMap::new();
    let mut dets: BTreeMap<Scalar, BigUint> = BTreeMap::new();
    let mut idx = vec![0usize; rows * cols];
    loop {
        let m: Vec<Scalar> = idx.iter().map(|&k| e[k].clone()).collect();
        *ranks.entry(gauss_rank(&m, rows, cols)).or_default() += 1u32;
        if rows == cols {
            *dets.entry(laplace_det(&m, rows)).or_default() += 1u32;
        }
        if !odometer(&mut idx, e.len()) {
            break;
        }
    }
    (ranks, (rows == cols).then_some(dets))
}

/// Solutions of `Σ a_i x_i = a_0` by enumerating all of `A^n`. Values are
/// cleared to Gaussian integers first so the inner loop stays in `i128`.
pub fn naive_equation_count(coeffs: &[Scalar], rhs: &Scalar, set: &ElementSet) -> u64 {
    let n = coeffs.len();
    let e = set.elements();
    // term values a_i x for each i and x, plus the rhs, over one denominator
    let mut all: Vec<Scalar> = coeffs.iter().flat_map(|a| e.iter().map(move |x| a * x)).collect();
    all.push(rhs.clone());
    let den = all.iter().fold(num_bigint::BigInt::from(1), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
    let as_pair = |v: &Scalar| -> (i128, i128) {
        let f = &den / v.denom();
        let re = v.re_numer() * &f;
        let im = v.im_numer() * &f;
        (i128::try_from(re).unwrap(), i128::try_from(im).unwrap())
    };
    let terms: Vec<Vec<(i128, i128)>> =
        (0..n).map(|i| (0..e.len()).map(|k| as_pair(&all[i * e.len() + k])).collect()).collect();
    let target = as_pair(rhs);
    let mut idx = vec![0usize; n];
    let mut count = 0u64;
    loop {
        let mut s = (0i128, 0i128);
        for (i, &k) in idx.iter().enumerate() {
            s.0 += terms[i][k].0;
            s.1 += terms[i][k].1;
        }
        if s == target {
            count += 1;
        }
        if !odometer(&mut idx, e.len()) {
            break;
        }
    }
    count
}

/// Tuples in `A^n` with `Σ x = Σ x² = 0`.
pub fn naive_system_count(n: usize, set: &ElementSet) -> u64 {
    let e = set.elements();
    let zero = Scalar::zero(set.field());
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        let mut s = zero.clone();
        let mut s2 = zero.clone();
        for &k in &idx {
            s = &s + &e[k];
            s2 = &s2 + &(&e[k] * &e[k]);
        }
        if s.is_zero() && s2.is_zero() {
            count += 1;
        }
        if !odometer(&mut idx, e.len()) {
            break;
        }
    }
    count
}

/// A random set of `size` distinct nonzero rationals with small numerators
/// and denominators, biased towards collisions of products.
pub fn random_set<R: Rng>(rng: &mut R, size: usize) -> ElementSet {
    let mut pool: Vec<Scalar> = Vec::new();
    for num in -8i64..=8 {
        for den in [1i64, 2, 3, 4] {
            if num != 0 {
                let v = Scalar::ratio(Field::Q, num, den).unwrap();
                if !pool.contains(&v) {
                    pool.push(v);
                }
            }
        }
    }
    pool.shuffle(rng);
    // half the time use a geometric-flavoured pool for more collisions
    if rng.gen_bool(0.5) {
        pool.sort_by_key(|v| v.denom().clone());
        let mut smooth: Vec<Scalar> =
            [1i64, -1, 2, -2, 4, -4, 8, -8, 3, -3, 6, -6, 12].iter().map(|&v| Scalar::from_int(Field::Q, v)).collect();
        smooth.shuffle(rng);
        pool = smooth;
    }
    pool.truncate(size);
    ElementSet::new(Field::Q, pool).unwrap()
}

/// A random nonzero coefficient.
pub fn random_coeff<R: Rng>(rng: &mut R) -> Scalar {
    let choices = ["1", "-1", "1", "-1", "2", "-2", "1/2", "-1/2", "3"];
    q(choices[rng.gen_range(0..choices.len())])
}
