//! Exact scalars over the rationals and the Gaussian rationals.
//!
//! A [`Scalar`] stores `(re + im·i) / den` with integer numerators and a
//! positive common denominator, always reduced so that
//! `gcd(re, im, den) = 1`. Because the representation is canonical, derived
//! equality and hashing coincide with value equality, and
//! [`Scalar::canonical_key`] is injective on values.
//!
//! [`FastScalar`] is the machine-word counterpart used in hot loops; it
//! reports overflow instead of wrapping.

mod fast;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fast::FastScalar;

/// The coefficient field of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    /// The rationals.
    Q,
    /// The Gaussian rationals `Q(i)`.
    Qi,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => f.write_str("Q"),
            Field::Qi => f.write_str("Qi"),
        }
    }
}

/// An exact element of `Q` or `Q(i)` in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar { field, re: BigInt::zero(), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn one(field: Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: Field, value: i64) -> Self {
        Scalar { field, re: BigInt::from(value), im: BigInt::zero(), den: BigInt::one() }
    }

    pub fn from_bigint(field: Field, value: BigInt) -> Self {
        Scalar { field, re: value, im: BigInt::zero(), den: BigInt::one() }
    }

    /// The Gaussian unit `i`.
    pub fn i() -> Self {
        Scalar { field: Field::Qi, re: BigInt::zero(), im: BigInt::one(), den: BigInt::one() }
    }

    pub fn ratio(field: Field, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::from_parts(field, num.into(), BigInt::zero(), den.into())
    }

    /// Builds `(re + im·i) / den` and reduces it. A nonzero imaginary part
    /// is rejected over `Q`.
    pub fn from_parts(field: Field, re: BigInt, im: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if field == Field::Q && !im.is_zero() {
            return Err(Error::FieldMismatch { expected: Field::Q, found: Field::Qi });
        }
        Ok(Self::normalized(field, re, im, den))
    }

    fn normalized(field: Field, mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        let g = re.gcd(&im).gcd(&den);
        if !g.is_one() {
            re /= &g;
            im /= &g;
            den /= &g;
        }
        Scalar { field, re, im, den }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Numerator of the real part over the common denominator.
    pub fn re_numer(&self) -> &BigInt {
        &self.re
    }

    /// Numerator of the imaginary part over the common denominator.
    pub fn im_numer(&self) -> &BigInt {
        &self.im
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.den.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Same value, tagged with another field. Fails when moving a non-real
    /// value into `Q`.
    pub fn in_field(&self, field: Field) -> Result<Self> {
        if field == Field::Q && !self.is_real() {
            return Err(Error::FieldMismatch { expected: Field::Q, found: Field::Qi });
        }
        let mut out = self.clone();
        out.field = field;
        Ok(out)
    }

    fn check_field(&self, other: &Scalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field, found: other.field });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_field(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_field(rhs)?;
        Ok(self.add_unchecked(&rhs.neg_ref()))
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_field(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_field(rhs)?;
        Ok(self.mul_unchecked(&rhs.inverse()?))
    }

    fn add_unchecked(&self, rhs: &Scalar) -> Scalar {
        if self.den == rhs.den {
            return Self::normalized(self.field, &self.re + &rhs.re, &self.im + &rhs.im, self.den.clone());
        }
        let re = &self.re * &rhs.den + &rhs.re * &self.den;
        let im = &self.im * &rhs.den + &rhs.im * &self.den;
        Self::normalized(self.field, re, im, &self.den * &rhs.den)
    }

    fn mul_unchecked(&self, rhs: &Scalar) -> Scalar {
        let (re, im) = if self.im.is_zero() && rhs.im.is_zero() {
            (&self.re * &rhs.re, BigInt::zero())
        } else {
            (&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
        };
        Self::normalized(self.field, re, im, &self.den * &rhs.den)
    }

    fn neg_ref(&self) -> Scalar {
        Scalar { field: self.field, re: -&self.re, im: -&self.im, den: self.den.clone() }
    }

    pub fn square(&self) -> Scalar {
        self.mul_unchecked(self)
    }

    /// Complex conjugate (identity over `Q`).
    pub fn conj(&self) -> Scalar {
        Scalar { field: self.field, re: self.re.clone(), im: -&self.im, den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InverseOfZero);
        }
        // den / (re + im i) = den (re - im i) / (re^2 + im^2)
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Self::normalized(self.field, &self.den * &self.re, -(&self.den * &self.im), norm))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one(self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        Ok(acc)
    }

    /// Byte encoding that is injective on values (field tag included).
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16);
        out.push(match self.field {
            Field::Q => 0u8,
            Field::Qi => 1u8,
        });
        for part in [&self.re, &self.im, &self.den] {
            let bytes = part.to_signed_bytes_le();
            out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }

    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        parse::parse(text, field)
    }

    pub fn to_fast(&self) -> Option<FastScalar> {
        FastScalar::from_scalar(self)
    }

    /// Real part as an `f64`, for display and fitting only.
    pub fn re_f64(&self) -> f64 {
        ratio_f64(&self.re, &self.den)
    }

    pub fn im_f64(&self) -> f64 {
        ratio_f64(&self.im, &self.den)
    }
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let r = num_rational::BigRational::new(num.clone(), den.clone());
            r.to_f64().unwrap_or(f64::NAN)
        }
    }
}

/// Orders by field, then real part, then imaginary part.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| (&self.re * &other.den).cmp(&(&other.re * &self.den)))
            .then_with(|| (&self.im * &other.den).cmp(&(&other.im * &self.den)))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The operator impls panic on field mismatch; use the `try_*` methods when
/// operands come from untrusted input.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return if self.den.is_one() { write!(f, "{}", self.re) } else { write!(f, "{}/{}", self.re, self.den) };
        }
        let mut numer = String::new();
        if !self.re.is_zero() {
            numer.push_str(&self.re.to_string());
            numer.push(if self.im.is_negative() { '-' } else { '+' });
        } else if self.im.is_negative() {
            numer.push('-');
        }
        let abs_im = self.im.abs();
        if abs_im.is_one() {
            numer.push('i');
        } else {
            numer.push_str(&abs_im.to_string());
            numer.push_str("*i");
        }
        if self.den.is_one() {
            f.write_str(&numer)
        } else {
            write!(f, "({})/{}", numer, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> Scalar {
        Scalar::parse(s, Field::Q).unwrap()
    }

    fn qi(s: &str) -> Scalar {
        Scalar::parse(s, Field::Qi).unwrap()
    }

    fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
        let re: i64 = rng.gen_range(-50..=50);
        let im: i64 = if field == Field::Qi { rng.gen_range(-50..=50) } else { 0 };
        let den: i64 = rng.gen_range(1..=30);
        Scalar::from_parts(field, re.into(), im.into(), den.into()).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&q("1/2") + &q("1/2"), q("1"));
        assert_eq!(&q("2/4") + &Scalar::zero(Field::Q), q("1/2"));
        assert_eq!(&qi("1+i") + &qi("1-i"), qi("2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(qi("1+i").square(), qi("2*i"));
        assert_eq!(q("2").inverse().unwrap(), q("1/2"));
        assert!(matches!(Scalar::zero(Field::Q).inverse(), Err(Error::InverseOfZero)));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let field = if rng.gen() { Field::Q } else { Field::Qi };
            let a = random_scalar(&mut rng, field);
            if a.is_zero() {
                continue;
            }
            assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let err = q("1").try_add(&qi("i")).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }));
        assert!(q("1").try_mul(&qi("1")).is_err());
    }

    #[test]
    fn keys() {
        assert_eq!(q("2/4").canonical_key(), q("1/2").canonical_key());
        assert_ne!(q("1").canonical_key(), q("-1").canonical_key());
        assert_ne!(qi("i").canonical_key(), qi("1").canonical_key());
        assert_ne!(q("1").canonical_key(), qi("1").canonical_key());
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let field = if rng.gen() { Field::Q } else { Field::Qi };
            let a = random_scalar(&mut rng, field);
            let b = random_scalar(&mut rng, field);
            let c = random_scalar(&mut rng, field);
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }

    #[test]
    fn key_injective_on_random_samples() {
        use std::collections::HashMap;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen: HashMap<Vec<u8>, Scalar> = HashMap::new();
        for _ in 0..100_000 {
            let field = if rng.gen() { Field::Q } else { Field::Qi };
            let a = random_scalar(&mut rng, field);
            if let Some(prev) = seen.insert(a.canonical_key(), a.clone()) {
                assert_eq!(prev, a);
            }
        }
    }

    #[test]
    fn ordering_is_numeric_over_q() {
        assert!(q("-3") < q("1/2"));
        assert!(q("1/3") < q("1/2"));
        assert_eq!(q("2/4").cmp(&q("1/2")), Ordering::Equal);
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "-7", "3/2", "i", "-i", "1+i", "(1+i)/2", "(3-2*i)/5", "-4*i", "(-1-i)/3"] {
            let a = qi(text);
            assert_eq!(qi(&a.to_string()), a, "{text} -> {a}");
        }
        assert_eq!(qi("(1+i)/2").to_string(), "(1+i)/2");
        assert_eq!(q("6/-4").to_string(), "-3/2");
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(q("2").pow(-3).unwrap(), q("1/8"));
        assert_eq!(qi("i").pow(4).unwrap(), qi("1"));
        assert!(Scalar::zero(Field::Q).pow(-1).is_err());
    }
}
