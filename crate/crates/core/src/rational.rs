//! Exact rational arithmetic. All quantities in the library (probabilities,
//! game values, stopping values) are `Q`; no floating point appears anywhere
//! on a certified path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An arbitrary-precision rational, kept in lowest terms with a positive
/// denominator (both guaranteed by the underlying representation).
///
/// Serializes as the string `"num/den"` (e.g. `"3/4"`, `"1/1"`) so that JSON
/// files can never be misread as floats.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Q {
        Q(BigRational::zero())
    }

    pub fn one() -> Q {
        Q(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True iff the value lies in the closed unit interval.
    pub fn in_unit(&self) -> bool {
        !self.is_negative() && self.0 <= BigRational::one()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "reciprocal of zero");
        Q(self.0.recip())
    }

    pub fn min(self, other: Q) -> Q {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Q) -> Q {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses `"num/den"` or a bare integer `"num"`.
impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Q, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(n).map_err(|_| format!("bad rational numerator in {s:?}"))?;
        let den = BigInt::from_str(d).map_err(|_| format!("bad rational denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Q(BigRational::new(num, den)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Q, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                Q((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                Q((&self.0).$method(&rhs.0))
            }
        }
        impl $assign_trait for Q {
            fn $assign_method(&mut self, rhs: Q) {
                (self.0).$assign_method(rhs.0);
            }
        }
        impl<'a> $assign_trait<&'a Q> for Q {
            fn $assign_method(&mut self, rhs: &Q) {
                (self.0).$assign_method(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

/// Shorthand constructor used pervasively in tests.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

/// Exact comparison helper for sorting keys that happen to be rationals.
pub fn cmp_q(a: &Q, b: &Q) -> Ordering {
    a.cmp(b)
}
