//! Exact statistics of a single matrix with entries from an element set.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::ElementSet;
use crate::ring::{det_auto, rank_auto, BigGauss, ExactRing, ScaledSet, SmallGauss};
use crate::scalar::{Field, Scalar};

/// An `rows x cols` matrix stored as row-major indices into an [`ElementSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixInstance {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl MatrixInstance {
    pub fn new(rows: usize, cols: usize, entries: Vec<usize>, set: &ElementSet) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimensions("matrix must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimensions(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(&bad) = entries.iter().find(|&&k| k >= set.len()) {
            return Err(Error::InvalidArgument(format!("entry index {bad} outside a set of {}", set.len())));
        }
        Ok(MatrixInstance { rows, cols, entries })
    }

    /// Builds the index matrix from entry values; each value must be in `set`.
    pub fn from_values(rows: usize, cols: usize, values: &[Scalar], set: &ElementSet) -> Result<Self> {
        let entries = values
            .iter()
            .map(|v| {
                set.elements()
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::InvalidArgument(format!("{v} is not in the element set")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, cols, entries, set)
    }

    /// Convenience for tests and examples: parse the entries as text.
    pub fn parse(rows: &[&[&str]], set: &ElementSet) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimensions("ragged rows".into()));
        }
        let values = rows
            .iter()
            .flat_map(|row| row.iter())
            .map(|s| Scalar::parse(s, set.field()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(r, c, &values, set)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn values(&self, set: &ElementSet) -> Vec<Scalar> {
        self.entries.iter().map(|&k| set.elements()[k].clone()).collect()
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimensions(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `T^n + c_{n-1} T^{n-1} + … + c_0`,
/// stored as `[c_0, …, c_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPolyKey {
    coeffs: Vec<Scalar>,
}

impl CharPolyKey {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("characteristic polynomial needs degree >= 1".into()));
        }
        let field = coeffs[0].field();
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch { expected: field, found: bad.field() });
        }
        Ok(CharPolyKey { coeffs })
    }

    /// Parses the comma-joined form `c_0,…,c_{n-1}` used in histogram dumps.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let coeffs = text.split(',').map(|c| Scalar::parse(c.trim(), field)).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `[c_0, …, c_{n-1}]`; the leading coefficient 1 is implicit.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    /// Coefficient of `T^k` (`k <= n`).
    pub fn coeff(&self, k: usize) -> Scalar {
        if k == self.coeffs.len() {
            Scalar::one(self.field())
        } else {
            self.coeffs[k].clone()
        }
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::one(self.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

impl fmt::Display for CharPolyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn det(x: &MatrixInstance, set: &ElementSet) -> Result<Scalar> {
    x.require_square()?;
    let scaled = ScaledSet::new(set);
    Ok(det_scaled(x, &scaled))
}

pub(crate) fn det_scaled(x: &MatrixInstance, scaled: &ScaledSet) -> Scalar {
    let n = x.rows;
    let value = det_auto(scaled.small_matrix(&x.entries), || scaled.big_matrix(&x.entries), n);
    scaled.unscale(&value, n as u32)
}

pub fn rank(x: &MatrixInstance, set: &ElementSet) -> usize {
    let scaled = ScaledSet::new(set);
    rank_auto(scaled.small_matrix(&x.entries), || scaled.big_matrix(&x.entries), x.rows, x.cols)
}

/// Characteristic polynomial `det(T·I - X)` from its values at
/// `T = 0, 1, …, n` followed by exact interpolation.
pub fn charpoly(x: &MatrixInstance, set: &ElementSet) -> Result<CharPolyKey> {
    x.require_square()?;
    let scaled = ScaledSet::new(set);
    let n = x.rows;
    let nodes: Vec<BigGauss> = (0..=n as i64)
        .map(|t| {
            let small = scaled.small_matrix(&x.entries).and_then(|m| shifted_small(m, n, t, &scaled));
            det_auto(small, || shifted_big(scaled.big_matrix(&x.entries), n, t, &scaled), n)
        })
        .collect();
    Ok(interpolate_scaled(&nodes, &scaled))
}

/// `t·D·I - V` for the scaled entry matrix `V`.
fn shifted_small(mut m: Vec<SmallGauss>, n: usize, t: i64, scaled: &ScaledSet) -> Option<Vec<SmallGauss>> {
    let diag = SmallGauss::from_int(t).mul(&BigGauss { re: scaled.den.clone(), im: 0.into() }.to_small()?)?;
    for (k, v) in m.iter_mut().enumerate() {
        let neg = v.neg()?;
        *v = if k / n == k % n { diag.add(&neg)? } else { neg };
    }
    Some(m)
}

fn shifted_big(mut m: Vec<BigGauss>, n: usize, t: i64, scaled: &ScaledSet) -> Vec<BigGauss> {
    let diag = BigGauss { re: &scaled.den * t, im: 0.into() };
    for (k, v) in m.iter_mut().enumerate() {
        let neg = v.neg().unwrap();
        *v = if k / n == k % n { diag.add(&neg).unwrap() } else { neg };
    }
    m
}

/// Given `p(t) = det(t·D·I - V) = D^n χ(t)` at `t = 0..=n`, recovers the
/// monic `χ`.
pub(crate) fn interpolate_scaled(nodes: &[BigGauss], scaled: &ScaledSet) -> CharPolyKey {
    let n = nodes.len() - 1;
    let values: Vec<Scalar> = nodes.iter().map(|v| scaled.unscale(v, n as u32)).collect();
    let coeffs = interpolate_integer_nodes(&values);
    debug_assert!(coeffs[n].is_one(), "characteristic polynomial must be monic");
    CharPolyKey { coeffs: coeffs[..n].to_vec() }
}

/// Coefficients (constant first) of the unique polynomial of degree `<= n`
/// through `(k, values[k])` for `k = 0..=n`, via Newton divided differences.
fn interpolate_integer_nodes(values: &[Scalar]) -> Vec<Scalar> {
    let field = values[0].field();
    let n = values.len() - 1;
    let mut dd = values.to_vec();
    for level in 1..=n {
        let inv = Scalar::ratio(field, 1, level as i64).expect("nonzero");
        for k in (level..=n).rev() {
            dd[k] = &(&dd[k] - &dd[k - 1]) * &inv;
        }
    }
    // Horner on the Newton form: p(t) = dd0 + (t-0)(dd1 + (t-1)(dd2 + …))
    let mut poly = vec![dd[n].clone()];
    for k in (0..n).rev() {
        // poly <- poly * (t - k) + dd[k]
        let shift = Scalar::from_int(field, -(k as i64));
        let mut next = vec![Scalar::zero(field); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] = &next[d + 1] + c;
            next[d] = &next[d] + &(c * &shift);
        }
        next[0] = &next[0] + &dd[k];
        poly = next;
    }
    poly
}

/// Characteristic polynomial by the Faddeev–LeVerrier trace recursion,
/// computed directly on scalar matrices. Independent of [`charpoly`].
pub fn charpoly_trace_recursion(x: &MatrixInstance, set: &ElementSet) -> Result<CharPolyKey> {
    x.require_square()?;
    let n = x.rows;
    let field = set.field();
    let a = x.values(set);
    let mul = |p: &[Scalar], q: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(field); n * n];
        for i in 0..n {
            for k in 0..n {
                if p[i * n + k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = &out[i * n + j] + &(&p[i * n + k] * &q[k * n + j]);
                }
            }
        }
        out
    };
    let trace = |m: &[Scalar]| (0..n).fold(Scalar::zero(field), |acc, i| &acc + &m[i * n + i]);
    // M_1 = I, c_{n-1} = -tr(A); M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    let mut coeffs = vec![Scalar::zero(field); n];
    let mut m: Vec<Scalar> =
        (0..n * n).map(|k| if k / n == k % n { Scalar::one(field) } else { Scalar::zero(field) }).collect();
    for k in 1..=n {
        let am = mul(&a, &m);
        let c = -(&trace(&am) * &Scalar::ratio(field, 1, k as i64)?);
        coeffs[n - k] = c.clone();
        m = am;
        for i in 0..n {
            m[i * n + i] = &m[i * n + i] + &c;
        }
    }
    CharPolyKey::new(coeffs)
}

/// `(t_1, t_2) = (tr X, tr X²)` from `c_{n-1}` and `c_{n-2}`.
pub fn power_sums_from_coeffs(c_top: &Scalar, c_second: &Scalar) -> Result<(Scalar, Scalar)> {
    let t1 = -c_top;
    let two = Scalar::from_int(c_top.field(), 2);
    let t2 = t1.square().try_sub(&two.try_mul(c_second)?)?;
    Ok((t1, t2))
}

/// `(c_{n-1}, c_{n-2})` from `(t_1, t_2)`.
pub fn coeffs_from_power_sums(t1: &Scalar, t2: &Scalar) -> Result<(Scalar, Scalar)> {
    let half = Scalar::ratio(t1.field(), 1, 2)?;
    Ok((-t1, half.try_mul(&t1.square().try_sub(t2)?)?))
}

/// `(tr X, tr X²)` computed directly from the entries.
pub fn power_sums(x: &MatrixInstance, set: &ElementSet) -> Result<(Scalar, Scalar)> {
    x.require_square()?;
    let n = x.rows;
    let field = set.field();
    let v = x.values(set);
    let mut t1 = Scalar::zero(field);
    let mut t2 = Scalar::zero(field);
    for i in 0..n {
        t1 = &t1 + &v[i * n + i];
        for j in 0..n {
            t2 = &t2 + &(&v[i * n + j] * &v[j * n + i]);
        }
    }
    Ok((t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> Scalar {
        Scalar::parse(s, Field::Q).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, set: &ElementSet) -> MatrixInstance {
        let entries = (0..n * n).map(|_| rng.gen_range(0..set.len())).collect();
        MatrixInstance::new(n, n, entries, set).unwrap()
    }

    #[test]
    fn det_examples() {
        let a = ElementSet::parse_list(Field::Q, &["1", "2"]).unwrap();
        let m = |rows: &[&[&str]]| MatrixInstance::parse(rows, &a).unwrap();
        assert_eq!(det(&m(&[&["1", "1"], &["1", "1"]]), &a).unwrap(), q("0"));
        assert_eq!(det(&m(&[&["1", "2"], &["2", "1"]]), &a).unwrap(), q("-3"));
        let x = m(&[&["1", "1", "1"], &["1", "2", "1"], &["1", "1", "2"]]);
        assert_eq!(det(&x, &a).unwrap(), q("1"));
        let wide = MatrixInstance::new(1, 2, vec![0, 1], &a).unwrap();
        assert!(matches!(det(&wide, &a), Err(Error::Dimensions(_))));
    }

    #[test]
    fn det_with_fractions_and_gaussians() {
        let a = ElementSet::parse_list(Field::Q, &["1/2", "1/3", "2"]).unwrap();
        let x = MatrixInstance::parse(&[&["1/2", "1/3"], &["2", "1/2"]], &a).unwrap();
        assert_eq!(det(&x, &a).unwrap(), q("1/4 - 2/3"));
        let g = ElementSet::parse_list(Field::Qi, &["1+i", "1-i", "1", "i/2"]).unwrap();
        let y = MatrixInstance::parse(&[&["1+i", "1"], &["i/2", "1-i"]], &g).unwrap();
        assert_eq!(det(&y, &g).unwrap(), Scalar::parse("2 - i/2", Field::Qi).unwrap());
    }

    #[test]
    fn rank_examples() {
        let a = ElementSet::parse_list(Field::Q, &["1", "2", "4"]).unwrap();
        let m = |rows: &[&[&str]]| MatrixInstance::parse(rows, &a).unwrap();
        assert_eq!(rank(&m(&[&["1", "2"], &["2", "4"]]), &a), 1);
        assert_eq!(rank(&m(&[&["1", "2"], &["2", "1"]]), &a), 2);
        assert_eq!(rank(&m(&[&["1", "2", "4", "1"]]), &a), 1);
        assert_eq!(rank(&m(&[&["1", "2", "4"], &["2", "4", "1"]]), &a), 2);
    }

    #[test]
    fn charpoly_examples() {
        let a = ElementSet::parse_list(Field::Q, &["1", "2"]).unwrap();
        let ones = MatrixInstance::parse(&[&["1", "1"], &["1", "1"]], &a).unwrap();
        assert_eq!(charpoly(&ones, &a).unwrap().to_string(), "0,-2");
        let one = MatrixInstance::parse(&[&["1"]], &a).unwrap();
        assert_eq!(charpoly(&one, &a).unwrap().to_string(), "-1");
    }

    #[test]
    fn charpoly_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sets = [
            ElementSet::parse_list(Field::Q, &["1", "-2", "3/2", "5", "-1/3"]).unwrap(),
            ElementSet::parse_list(Field::Qi, &["1", "i", "1+i", "-2", "(1-i)/2"]).unwrap(),
        ];
        for step in 0..200 {
            let set = &sets[step % 2];
            let n = 1 + step % 5;
            let x = random_matrix(&mut rng, n, set);
            let p = charpoly(&x, set).unwrap();
            assert_eq!(p, charpoly_trace_recursion(&x, set).unwrap());
            // c_{n-1} = -tr X and c_0 = (-1)^n det X
            let (t1, t2) = power_sums(&x, set).unwrap();
            assert_eq!(p.coeff(n - 1), -&t1);
            let d = det(&x, set).unwrap();
            let sign = if n % 2 == 0 { d.clone() } else { -&d };
            assert_eq!(p.coeff(0), sign);
            if n >= 2 {
                assert_eq!(power_sums_from_coeffs(&p.coeff(n - 1), &p.coeff(n - 2)).unwrap(), (t1, t2));
            }
        }
    }

    #[test]
    fn power_sum_conversions() {
        assert_eq!(power_sums_from_coeffs(&q("0"), &q("0")).unwrap(), (q("0"), q("0")));
        assert_eq!(power_sums_from_coeffs(&q("-3"), &q("2")).unwrap(), (q("3"), q("5")));
        assert_eq!(coeffs_from_power_sums(&q("3"), &q("5")).unwrap(), (q("-3"), q("2")));
    }

    #[test]
    fn large_entries_take_the_bigint_path() {
        let a = ElementSet::parse_list(Field::Q, &["2^100", "3^70", "5"]).unwrap();
        let x = MatrixInstance::parse(&[&["2^100", "3^70"], &["5", "2^100"]], &a).unwrap();
        assert_eq!(det(&x, &a).unwrap(), q("2^200 - 5*3^70"));
        assert_eq!(charpoly(&x, &a).unwrap(), charpoly_trace_recursion(&x, &a).unwrap());
    }

    #[test]
    fn bad_entries_rejected() {
        let a = ElementSet::parse_list(Field::Q, &["1", "2"]).unwrap();
        assert!(MatrixInstance::new(2, 2, vec![0, 1, 2, 0], &a).is_err());
        assert!(MatrixInstance::new(2, 2, vec![0, 1, 0], &a).is_err());
        assert!(MatrixInstance::parse(&[&["3"]], &a).is_err());
    }
}
