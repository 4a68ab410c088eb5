//! Counting solutions of linear equations with unknowns in an element set.
//!
//! `a_1 x_1 + … + a_n x_n = a_0` is counted by meet-in-the-middle: the
//! partial sums of the first `⌈n/2⌉` terms go into a multiset, and every
//! completion `a_0 - Σ_{rest}` is looked up in it. The multiset is capped at
//! a configurable number of entries; past the cap the left side is processed
//! in chunks and the right side is streamed once per chunk.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::family::ElementSet;
use crate::scalar::{FastScalar, Field, Scalar};

/// `a_1 x_1 + … + a_n x_n = a_0` with nonzero `a_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSpec {
    coeffs: Vec<Scalar>,
    rhs: Scalar,
}

impl EquationSpec {
    pub fn new(coeffs: Vec<Scalar>, rhs: Scalar) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("equation needs at least one term".into()));
        }
        let field = rhs.field();
        for a in &coeffs {
            if a.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: a.field() });
            }
            if a.is_zero() {
                return Err(Error::InvalidArgument("coefficients must be nonzero".into()));
            }
        }
        Ok(EquationSpec { coeffs, rhs })
    }

    pub fn homogeneous(coeffs: Vec<Scalar>) -> Result<Self> {
        let field = coeffs.first().map(Scalar::field).unwrap_or(Field::Q);
        Self::new(coeffs, Scalar::zero(field))
    }

    pub fn parse(field: Field, coeffs: &[&str], rhs: &str) -> Result<Self> {
        let coeffs = coeffs.iter().map(|c| Scalar::parse(c, field)).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs, Scalar::parse(rhs, field)?)
    }

    /// Reads `{"coeffs":["1","1","-1","-1"],"rhs":"0"}`, with an optional
    /// `"field"` (default `"Q"`).
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            coeffs: Vec<String>,
            rhs: String,
            #[serde(default)]
            field: Option<Field>,
        }
        let f: File = serde_json::from_str(text)?;
        let coeffs: Vec<&str> = f.coeffs.iter().map(String::as_str).collect();
        Self::parse(f.field.unwrap_or(Field::Q), &coeffs, &f.rhs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Scalar {
        &self.rhs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn field(&self) -> Field {
        self.rhs.field()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero()
    }

    /// Multiplies every coefficient and the right-hand side by `lambda`.
    pub fn scaled(&self, lambda: &Scalar) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| lambda.try_mul(a)).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs, lambda.try_mul(&self.rhs)?)
    }
}

/// Memory cap for the meet-in-the-middle multiset.
#[derive(Clone, Copy, Debug)]
pub struct JoinConfig {
    pub max_entries: usize,
}

impl Default for JoinConfig {
    fn default() -> Self {
        JoinConfig { max_entries: 1 << 22 }
    }
}

/// Exact sum key: machine-word when it fits, big otherwise. Normalized so
/// equal values always produce equal keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum SumKey {
    Fast(FastScalar),
    Big(Scalar),
}

impl SumKey {
    fn new(value: Scalar) -> Self {
        match value.to_fast() {
            Some(f) => SumKey::Fast(f),
            None => SumKey::Big(value),
        }
    }

    fn to_scalar(&self, field: Field) -> Scalar {
        match self {
            SumKey::Fast(f) => f.to_scalar(field),
            SumKey::Big(s) => s.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            SumKey::Fast(f) => f.is_zero(),
            SumKey::Big(s) => s.is_zero(),
        }
    }
}

trait Additive: Clone + Eq + std::hash::Hash + Send + Sync {
    fn add(&self, rhs: &Self, field: Field) -> Self;
}

impl Additive for SumKey {
    #[inline]
    fn add(&self, rhs: &Self, field: Field) -> Self {
        if let (SumKey::Fast(a), SumKey::Fast(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return SumKey::Fast(s);
            }
        }
        SumKey::new(&self.to_scalar(field) + &rhs.to_scalar(field))
    }
}

impl Additive for (SumKey, SumKey) {
    fn add(&self, rhs: &Self, field: Field) -> Self {
        (self.0.add(&rhs.0, field), self.1.add(&rhs.1, field))
    }
}

/// Enumerates `start + Σ_j tables[j][choice_j]` over all choices in
/// odometer order (last table fastest).
struct SumOdometer<'a, K> {
    tables: &'a [Vec<K>],
    field: Field,
    idx: Vec<usize>,
    partial: Vec<K>,
    done: bool,
}

impl<'a, K: Additive> SumOdometer<'a, K> {
    fn new(start: K, tables: &'a [Vec<K>], field: Field) -> Self {
        let mut partial = Vec::with_capacity(tables.len() + 1);
        partial.push(start);
        for t in tables {
            let next = partial.last().unwrap().add(&t[0], field);
            partial.push(next);
        }
        let done = tables.iter().any(Vec::is_empty);
        SumOdometer { tables, field, idx: vec![0; tables.len()], partial, done }
    }
}

impl<K: Additive> Iterator for SumOdometer<'_, K> {
    type Item = K;

    fn next(&mut self) -> Option<K> {
        if self.done {
            return None;
        }
        let out = self.partial.last().unwrap().clone();
        // advance
        let mut d = self.tables.len();
        loop {
            if d == 0 {
                self.done = true;
                break;
            }
            d -= 1;
            self.idx[d] += 1;
            if self.idx[d] < self.tables[d].len() {
                break;
            }
            self.idx[d] = 0;
        }
        if !self.done {
            for j in d..self.tables.len() {
                self.partial[j + 1] = self.partial[j].add(&self.tables[j][self.idx[j]], self.field);
            }
        }
        Some(out)
    }
}

fn join_count<K: Additive>(
    left: &[Vec<K>],
    right: &[Vec<K>],
    zero: K,
    target: K,
    field: Field,
    cfg: JoinConfig,
) -> u128 {
    let cap = cfg.max_entries.max(1);
    let mut left_iter = SumOdometer::new(zero, left, field).peekable();
    let mut total: u128 = 0;
    while left_iter.peek().is_some() {
        let mut multiset: FxHashMap<K, u64> = FxHashMap::default();
        let mut taken = 0usize;
        for key in left_iter.by_ref() {
            *multiset.entry(key).or_insert(0) += 1;
            taken += 1;
            if taken >= cap {
                break;
            }
        }
        total += stream_right(&multiset, right, &target, field);
    }
    total
}

fn stream_right<K: Additive>(multiset: &FxHashMap<K, u64>, right: &[Vec<K>], target: &K, field: Field) -> u128 {
    let lookup = |k: K| multiset.get(&k).copied().unwrap_or(0) as u128;
    match right.split_first() {
        None => lookup(target.clone()),
        Some((first, rest)) => first
            .par_iter()
            .map(|t| {
                let start = target.add(t, field);
                SumOdometer::new(start, rest, field).map(lookup).sum::<u128>()
            })
            .sum(),
    }
}

fn check_field(eq_field: Field, set: &ElementSet) -> Result<()> {
    if eq_field != set.field() {
        return Err(Error::FieldMismatch { expected: eq_field, found: set.field() });
    }
    Ok(())
}

/// Number of `(x_1..x_n) ∈ Aⁿ` with `Σ a_i x_i = a_0`.
pub fn count_solutions(eq: &EquationSpec, set: &ElementSet) -> Result<BigUint> {
    count_solutions_with(eq, set, JoinConfig::default())
}

pub fn count_solutions_with(eq: &EquationSpec, set: &ElementSet, cfg: JoinConfig) -> Result<BigUint> {
    let field = eq.field();
    check_field(field, set)?;
    let n = eq.len();
    let split = n.div_ceil(2);
    let table = |a: &Scalar, sign: bool| -> Vec<SumKey> {
        set.elements()
            .iter()
            .map(|x| {
                let t = a * x;
                SumKey::new(if sign { -t } else { t })
            })
            .collect()
    };
    let left: Vec<Vec<SumKey>> = eq.coeffs[..split].iter().map(|a| table(a, false)).collect();
    let right: Vec<Vec<SumKey>> = eq.coeffs[split..].iter().map(|a| table(a, true)).collect();
    let zero = SumKey::new(Scalar::zero(field));
    let target = SumKey::new(eq.rhs.clone());
    Ok(BigUint::from(join_count(&left, &right, zero, target, field, cfg)))
}

/// Number of `(x_1..x_n) ∈ Aⁿ` with `Σ x_i = Σ x_i² = 0`.
pub fn count_system_sum_squares(n: usize, set: &ElementSet) -> Result<BigUint> {
    count_system_sum_squares_with(n, set, JoinConfig::default())
}

pub fn count_system_sum_squares_with(n: usize, set: &ElementSet, cfg: JoinConfig) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let field = set.field();
    let pair = |x: &Scalar, sign: bool| {
        let (a, b) = (x.clone(), x.square());
        if sign {
            (SumKey::new(-a), SumKey::new(-b))
        } else {
            (SumKey::new(a), SumKey::new(b))
        }
    };
    let split = n.div_ceil(2);
    let make = |sign| -> Vec<(SumKey, SumKey)> { set.elements().iter().map(|x| pair(x, sign)).collect() };
    let left: Vec<_> = (0..split).map(|_| make(false)).collect();
    let right: Vec<_> = (split..n).map(|_| make(true)).collect();
    let z = SumKey::new(Scalar::zero(field));
    let zero = (z.clone(), z);
    Ok(BigUint::from(join_count(&left, &right, zero.clone(), zero, field, cfg)))
}

/// Solution counts grouped by the maximal vanishing subsum.
///
/// Each solution `x` is assigned the largest index set `I` (0-based) with
/// `Σ_{i∈I} a_i x_i = 0`; among sets of that size the lexicographically
/// smallest wins. The empty set collects solutions with no vanishing subsum.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SubsumClassification {
    pub classes: BTreeMap<Vec<usize>, BigUint>,
}

impl SubsumClassification {
    pub fn total(&self) -> BigUint {
        self.classes.values().sum()
    }

    pub fn get(&self, indices: &[usize]) -> BigUint {
        self.classes.get(indices).cloned().unwrap_or_default()
    }
}

pub const MAX_CLASSIFY_TERMS: usize = 10;
const MAX_CLASSIFY_TUPLES: u64 = 1 << 26;

pub fn classify_by_vanishing_subsums(eq: &EquationSpec, set: &ElementSet) -> Result<SubsumClassification> {
    let field = eq.field();
    check_field(field, set)?;
    let n = eq.len();
    if n > MAX_CLASSIFY_TERMS {
        return Err(Error::InvalidArgument(format!(
            "classification enumerates all tuples; n = {n} exceeds {MAX_CLASSIFY_TERMS}"
        )));
    }
    let work = (set.len() as u64).checked_pow(n as u32).filter(|w| *w <= MAX_CLASSIFY_TUPLES);
    if work.is_none() {
        return Err(Error::BudgetExceeded {
            required: BigUint::from(set.len()).pow(n as u32),
            budget: MAX_CLASSIFY_TUPLES,
        });
    }
    let terms: Vec<Vec<SumKey>> =
        eq.coeffs.iter().map(|a| set.elements().iter().map(|x| SumKey::new(a * x)).collect()).collect();
    let rhs = SumKey::new(eq.rhs.clone());
    let zero = SumKey::new(Scalar::zero(field));
    let subsets = subsets_by_preference(n);

    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut choice = vec![0usize; n];
    let mut values: Vec<SumKey> = vec![zero.clone(); n];
    loop {
        for i in 0..n {
            values[i] = terms[i][choice[i]].clone();
        }
        let total = values.iter().fold(zero.clone(), |acc, v| acc.add(v, field));
        if total == rhs {
            let class = subsets
                .iter()
                .find(|s| s.iter().fold(zero.clone(), |acc, &i| acc.add(&values[i], field)).is_zero())
                .expect("the empty subset always vanishes");
            *counts.entry(class.clone()).or_insert(0) += 1;
        }
        if !advance(&mut choice, set.len()) {
            break;
        }
    }
    Ok(SubsumClassification { classes: counts.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect() })
}

/// All subsets of `0..n`, largest first, lexicographic within a size.
fn subsets_by_preference(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect();
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    all
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for d in (0..choice.len()).rev() {
        choice[d] += 1;
        if choice[d] < base {
            return true;
        }
        choice[d] = 0;
    }
    false
}

/// `κ_n = max_{0≤k≤⌊n/2⌋} min(⌊(n+k)/3⌋, ⌊(n-k)/2⌋)` together with every
/// maximizing `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa {
    pub value: u64,
    pub maximizers: Vec<u64>,
}

pub fn kappa(n: u64) -> Result<Kappa> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let objective = |k: u64| ((n + k) / 3).min((n - k) / 2);
    let value = (0..=n / 2).map(objective).max().expect("range is nonempty");
    let maximizers = (0..=n / 2).filter(|&k| objective(k) == value).collect();
    Ok(Kappa { value, maximizers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn set(items: &[&str]) -> ElementSet {
        ElementSet::parse_list(Field::Q, items).unwrap()
    }

    fn eq(coeffs: &[&str], rhs: &str) -> EquationSpec {
        EquationSpec::parse(Field::Q, coeffs, rhs).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_solutions(&eq(&["1", "-1"], "0"), &set(&["1", "2", "4"])).unwrap(), 3u32.into());
        assert_eq!(count_solutions(&eq(&["1", "1"], "3"), &set(&["1", "2"])).unwrap(), 2u32.into());
        assert_eq!(count_solutions(&eq(&["1"], "2"), &set(&["1", "2"])).unwrap(), 1u32.into());
        assert_eq!(count_solutions(&eq(&["3"], "2"), &set(&["1", "2"])).unwrap(), 0u32.into());
    }

    #[test]
    fn pairing_construction_lower_bound() {
        let a = FamilySpec::geometric("2", 1, 4).materialize().unwrap();
        let c = count_solutions(&eq(&["1", "1", "-1", "-1"], "0"), &a).unwrap();
        assert!(c >= 16u32.into());
    }

    #[test]
    fn chunked_join_matches_single_pass() {
        let a = FamilySpec::geometric("3", 0, 6).materialize().unwrap();
        let e = eq(&["1", "2", "-1", "-1", "-2"], "0");
        let whole = count_solutions(&e, &a).unwrap();
        for cap in [1, 7, 50, 343] {
            assert_eq!(count_solutions_with(&e, &a, JoinConfig { max_entries: cap }).unwrap(), whole);
        }
    }

    #[test]
    fn field_mismatch() {
        let a = ElementSet::parse_list(Field::Qi, &["1", "i"]).unwrap();
        assert!(matches!(count_solutions(&eq(&["1"], "1"), &a), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn equation_json() {
        let e = EquationSpec::from_json(r#"{"coeffs":["1","1","-1","-1"],"rhs":"0"}"#).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.is_homogeneous());
        assert!(EquationSpec::from_json(r#"{"coeffs":["1","0"],"rhs":"0"}"#).is_err());
        assert!(EquationSpec::from_json(r#"{"coeffs":[],"rhs":"0"}"#).is_err());
    }

    #[test]
    fn sum_of_squares_small_n() {
        let a = set(&["1", "-1", "2", "-2", "1/3"]);
        assert_eq!(count_system_sum_squares(1, &a).unwrap(), 0u32.into());
        assert_eq!(count_system_sum_squares(2, &a).unwrap(), 0u32.into());
        assert_eq!(count_system_sum_squares(3, &a).unwrap(), 0u32.into());
        let units = FamilySpec::GaussianUnitsScaled { scales: vec!["1".into()] }.materialize().unwrap();
        // x + y = 0 and x^2 + y^2 = 0 force 2x^2 = 0
        assert_eq!(count_system_sum_squares(2, &units).unwrap(), 0u32.into());
        assert!(count_system_sum_squares(4, &units).unwrap() > 0u32.into());
    }

    #[test]
    fn classification_examples() {
        let c = classify_by_vanishing_subsums(&eq(&["1", "1"], "1"), &set(&["1", "2"])).unwrap();
        assert_eq!(c.total(), 0u32.into());

        let c = classify_by_vanishing_subsums(&eq(&["1", "-1", "1"], "1"), &set(&["1", "2"])).unwrap();
        // (1,1,1) and (2,2,1) vanish on {x1, x2}; (1,2,2) vanishes on {x2, x3}
        assert_eq!(c.get(&[0, 1]), 2u32.into());
        assert_eq!(c.get(&[1, 2]), 1u32.into());
        assert_eq!(c.total(), 3u32.into());
    }

    #[test]
    fn classification_homogeneous_full_set() {
        let c = classify_by_vanishing_subsums(&eq(&["1", "-1"], "0"), &set(&["1", "2", "4"])).unwrap();
        assert_eq!(c.get(&[0, 1]), 3u32.into());
        assert_eq!(c.classes.len(), 1);
    }

    #[test]
    fn classification_rejects_large_n() {
        let coeffs = vec!["1"; 11];
        let e = eq(&coeffs, "0");
        assert!(classify_by_vanishing_subsums(&e, &set(&["1"])).is_err());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(5).unwrap(), Kappa { value: 2, maximizers: vec![1] });
        let k10 = kappa(10).unwrap();
        assert_eq!(k10.value, 4);
        assert_eq!(k10.maximizers, vec![2]);
        assert_eq!(kappa(1).unwrap().value, 0);
        assert!(kappa(0).is_err());
    }

    #[test]
    fn preference_order() {
        let s = subsets_by_preference(3);
        assert_eq!(s[0], vec![0, 1, 2]);
        assert_eq!(s[1], vec![0, 1]);
        assert_eq!(s[2], vec![0, 2]);
        assert_eq!(s[3], vec![1, 2]);
        assert_eq!(s.last().unwrap(), &Vec::<usize>::new());
    }
}
