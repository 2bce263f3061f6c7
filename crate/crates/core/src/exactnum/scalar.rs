//! The coefficient universe for all series: either a big rational or a
//! cyclotomic number. Cyclotomic values that reduce to rationals are demoted
//! on construction, so the rational/cyclotomic split is itself canonical and
//! equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::Cyclotomic;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(n.into()))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Scalar::Rational(Rational::from_integer(n))
    }

    /// `zeta_order^exponent`, demoted to a rational when it is one
    /// (so e.g. `zeta(4, 2)` is the rational `-1`).
    pub fn zeta(order: u32, exponent: i64) -> Self {
        Scalar::from_cyclotomic(Cyclotomic::zeta_power(order, exponent))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        match c.try_rational() {
            Some(r) => Scalar::Rational(r),
            None => Scalar::Cyclotomic(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            // canonical form: a cyclotomic variant is never rational-valued
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// `Some(n)` when the value is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    fn promote(&self, order: u32) -> Cyclotomic {
        match self {
            Scalar::Rational(r) => Cyclotomic::from_rational(order, r.clone()),
            Scalar::Cyclotomic(c) => c.clone(),
        }
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (a, b) => {
                let order = a.cyclotomic_order().max(b.cyclotomic_order());
                Scalar::from_cyclotomic(a.promote(order).add(&b.promote(order)))
            }
        }
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Cyclotomic(b)) => {
                Scalar::from_cyclotomic(b.scale(a))
            }
            (Scalar::Cyclotomic(a), Scalar::Rational(b)) => {
                Scalar::from_cyclotomic(a.scale(b))
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                Scalar::from_cyclotomic(a.mul(b))
            }
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        match self {
            Scalar::Rational(a) => Scalar::Rational(a * r),
            Scalar::Cyclotomic(c) => Scalar::from_cyclotomic(c.scale(r)),
        }
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, r: &Rational) -> Scalar {
        assert!(!r.is_zero(), "division by zero rational");
        self.mul_rational(&r.recip())
    }

    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone()),
            Scalar::Cyclotomic(c) => Scalar::from_cyclotomic(c.conjugate()),
        }
    }

    pub fn pow(&self, exp: u64) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                Scalar::Rational(r.pow(i32::try_from(exp).expect("exponent too large")))
            }
            Scalar::Cyclotomic(c) => Scalar::from_cyclotomic(c.pow(exp)),
        }
    }

    fn cyclotomic_order(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 1,
            Scalar::Cyclotomic(c) => c.order(),
        }
    }

    /// Canonical rendering: integers as `n`, fractions as `a/b`, cyclotomics
    /// as polynomial strings in `z` with the order stated. Contains no commas,
    /// so the string can be embedded in a CSV cell unquoted.
    pub fn canonical_string(&self) -> String {
        match self {
            Scalar::Rational(r) => r.to_string(),
            Scalar::Cyclotomic(c) => c.to_string(),
        }
    }

    /// `true` when the value is a nonnegative rational integer.
    pub fn is_nonnegative_integer(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_integer() && !r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inherent(rhs)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inherent(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

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
