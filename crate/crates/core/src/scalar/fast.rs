use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{Field, Scalar};

/// Machine-word Gaussian rational `(re + im·i) / den`, reduced, `den > 0`.
///
/// Every operation returns `None` when the exact result does not fit; it
/// never wraps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FastScalar {
    re: i64,
    im: i64,
    den: i64,
}

impl FastScalar {
    pub const ZERO: FastScalar = FastScalar { re: 0, im: 0, den: 1 };

    pub fn from_int(value: i64) -> Self {
        FastScalar { re: value, im: 0, den: 1 }
    }

    pub fn new(re: i64, im: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Self::reduce(re as i128, im as i128, den as i128)
    }

    fn reduce(mut re: i128, mut im: i128, mut den: i128) -> Option<Self> {
        if den < 0 {
            re = re.checked_neg()?;
            im = im.checked_neg()?;
            den = den.checked_neg()?;
        }
        let g = re.gcd(&im).gcd(&den);
        if g > 1 {
            re /= g;
            im /= g;
            den /= g;
        }
        Some(FastScalar { re: i64::try_from(re).ok()?, im: i64::try_from(im).ok()?, den: i64::try_from(den).ok()? })
    }

    pub fn from_scalar(value: &Scalar) -> Option<Self> {
        Some(FastScalar { re: value.re.to_i64()?, im: value.im.to_i64()?, den: value.den.to_i64()? })
    }

    pub fn to_scalar(self, field: Field) -> Scalar {
        Scalar::normalized(field, BigInt::from(self.re), BigInt::from(self.im), BigInt::from(self.den))
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn parts(self) -> (i64, i64, i64) {
        (self.re, self.im, self.den)
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        let (a, b) = (self.widen(), rhs.widen());
        if a.2 == b.2 {
            return Self::reduce(a.0 + b.0, a.1 + b.1, a.2);
        }
        let re = (a.0 * b.2).checked_add(b.0 * a.2)?;
        let im = (a.1 * b.2).checked_add(b.1 * a.2)?;
        Self::reduce(re, im, a.2 * b.2)
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_neg(self) -> Option<Self> {
        Some(FastScalar { re: self.re.checked_neg()?, im: self.im.checked_neg()?, den: self.den })
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let (a, b) = (self.widen(), rhs.widen());
        let re = (a.0 * b.0).checked_sub(a.1 * b.1)?;
        let im = (a.0 * b.1).checked_add(a.1 * b.0)?;
        Self::reduce(re, im, a.2 * b.2)
    }

    pub fn checked_square(self) -> Option<Self> {
        self.checked_mul(self)
    }

    /// `None` on zero input as well as on overflow.
    pub fn checked_inverse(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (re, im, den) = self.widen();
        let norm = (re * re).checked_add(im * im)?;
        Self::reduce(den.checked_mul(re)?, den.checked_mul(im)?.checked_neg()?, norm)
    }

    fn widen(self) -> (i128, i128, i128) {
        (self.re as i128, self.im as i128, self.den as i128)
    }
}
