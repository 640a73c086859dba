//! Exact arithmetic in `Q(sqrt 2)`.

use crate::linalg::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `a + b sqrt(2)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: Q,
    pub b: Q,
}

impl QSqrt2 {
    pub fn new(a: Q, b: Q) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: Q) -> Self {
        QSqrt2 { a, b: Q::zero() }
    }

    pub fn sqrt2() -> Self {
        QSqrt2 { a: Q::zero(), b: Q::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a - b sqrt(2)`.
    pub fn conjugate(&self) -> Self {
        QSqrt2 { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> Q {
        self.a.clone() * self.a.clone() - Q::from_integer(BigInt::from(2)) * self.b.clone() * self.b.clone()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt 2)");
        QSqrt2 { a: self.a.clone() / n.clone(), b: -self.b.clone() / n }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = QSqrt2::rational(Q::one());
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }
}

impl From<Q> for QSqrt2 {
    fn from(a: Q) -> Self {
        QSqrt2::rational(a)
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        if self.b.is_zero() && o.b.is_zero() {
            return QSqrt2::rational(self.a * o.a);
        }
        let two = Q::from_integer(BigInt::from(2));
        QSqrt2 {
            a: self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl Div for QSqrt2 {
    type Output = QSqrt2;
    fn div(self, o: QSqrt2) -> QSqrt2 {
        if self.b.is_zero() && o.b.is_zero() {
            return QSqrt2::rational(self.a / o.a);
        }
        self * o.inv()
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { a: -self.a, b: -self.b }
    }
}

impl crate::linalg::Field for QSqrt2 {
    fn zero() -> Self {
        QSqrt2 { a: <Q as Zero>::zero(), b: <Q as Zero>::zero() }
    }
    fn one() -> Self {
        QSqrt2 { a: <Q as One>::one(), b: <Q as Zero>::zero() }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn from_int(v: i64) -> Self {
        QSqrt2::rational(Q::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt(2)", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{} - {}*sqrt(2)", self.a, -self.b.clone()),
            (false, false) => write!(f, "{} + {}*sqrt(2)", self.a, self.b),
        }
    }
}
