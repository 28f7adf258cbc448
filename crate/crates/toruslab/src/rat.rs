//! Exact rational scalars, points and lattice vectors.
//!
//! Every geometric predicate in this crate runs on `BigRational`; there are
//! no epsilon comparisons anywhere in the exact kernel.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a decimal-free rational of the form `"num/den"` or `"num"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Render a rational as `"num/den"`, or `"num"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn rat_frac(r: &Rat) -> Rat {
    r - Rat::from_integer(rat_floor(r))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Good enough for diagnostics and SVG output; exact paths never use it.
    let n = r.numer();
    let d = r.denom();
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// A point (or vector) of exact rational coordinates in the plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoint {
    pub x: Rat,
    pub y: Rat,
}

impl QPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        QPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QPoint::new(rat_i(x), rat_i(y))
    }

    pub fn zero() -> Self {
        QPoint::new(Rat::zero(), Rat::zero())
    }

    pub fn cross(&self, other: &QPoint) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &QPoint) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, s: &Rat) -> QPoint {
        QPoint::new(&self.x * s, &self.y * s)
    }

    pub fn lattice_shift(&self, v: IVec) -> QPoint {
        QPoint::new(&self.x + rat_i(v.0), &self.y + rat_i(v.1))
    }

    /// Reduce mod Z^2 into the fundamental square [0,1)^2.
    pub fn frac(&self) -> QPoint {
        QPoint::new(rat_frac(&self.x), rat_frac(&self.y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }
}

impl fmt::Debug for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.x), format_rat(&self.y))
    }
}

impl<'a> Add for &'a QPoint {
    type Output = QPoint;
    fn add(self, rhs: &'a QPoint) -> QPoint {
        QPoint::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub for &'a QPoint {
    type Output = QPoint;
    fn sub(self, rhs: &'a QPoint) -> QPoint {
        QPoint::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for QPoint {
    type Output = QPoint;
    fn neg(self) -> QPoint {
        QPoint::new(-self.x, -self.y)
    }
}

/// An integer lattice vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IVec(pub i64, pub i64);

impl IVec {
    pub fn is_zero(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    pub fn det(&self, other: IVec) -> i64 {
        self.0 * other.1 - self.1 * other.0
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.0.gcd(&self.1) == 1
    }

    pub fn to_qpoint(&self) -> QPoint {
        QPoint::from_ints(self.0, self.1)
    }

    /// Sign-normalized representative of {v, -v}.
    pub fn canonical_sign(&self) -> IVec {
        if self.0 < 0 || (self.0 == 0 && self.1 < 0) {
            IVec(-self.0, -self.1)
        } else {
            *self
        }
    }
}

impl Add for IVec {
    type Output = IVec;
    fn add(self, rhs: IVec) -> IVec {
        IVec(self.0 + rhs.0, self.1 + rhs.1)
    }
}

impl Sub for IVec {
    type Output = IVec;
    fn sub(self, rhs: IVec) -> IVec {
        IVec(self.0 - rhs.0, self.1 - rhs.1)
    }
}

impl Neg for IVec {
    type Output = IVec;
    fn neg(self) -> IVec {
        IVec(-self.0, -self.1)
    }
}

impl Mul<i64> for IVec {
    type Output = IVec;
    fn mul(self, rhs: i64) -> IVec {
        IVec(self.0 * rhs, self.1 * rhs)
    }
}

/// A 2x2 integer matrix, column major: columns are images of the basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IMat {
    pub a: i64, // row 0, col 0
    pub b: i64, // row 0, col 1
    pub c: i64, // row 1, col 0
    pub d: i64, // row 1, col 1
}

impl IMat {
    pub const IDENTITY: IMat = IMat { a: 1, b: 0, c: 0, d: 1 };

    pub fn from_cols(u: IVec, v: IVec) -> IMat {
        IMat { a: u.0, b: v.0, c: u.1, d: v.1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a unimodular matrix (det = +-1).
    pub fn inverse_unimodular(&self) -> IMat {
        let s = self.det();
        assert!(s == 1 || s == -1, "matrix is not unimodular");
        IMat {
            a: s * self.d,
            b: -s * self.b,
            c: -s * self.c,
            d: s * self.a,
        }
    }

    pub fn apply_ivec(&self, v: IVec) -> IVec {
        IVec(self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    pub fn apply_point(&self, p: &QPoint) -> QPoint {
        QPoint::new(
            &p.x * rat_i(self.a) + &p.y * rat_i(self.b),
            &p.x * rat_i(self.c) + &p.y * rat_i(self.d),
        )
    }

    /// Exact rational inverse for any invertible integer matrix.
    pub fn apply_inverse_point(&self, p: &QPoint) -> QPoint {
        let det = self.det();
        assert!(det != 0, "matrix is singular");
        let det = rat_i(det);
        QPoint::new(
            (&p.x * rat_i(self.d) - &p.y * rat_i(self.b)) / det.clone(),
            (&p.y * rat_i(self.a) - &p.x * rat_i(self.c)) / det,
        )
    }

    pub fn mul(&self, rhs: &IMat) -> IMat {
        IMat {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_round_trip() {
        for s in ["0", "1/2", "-3/7", "5", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn frac_reduces_into_unit_square() {
        let p = QPoint::new(rat(-3, 2), rat(7, 3));
        let f = p.frac();
        assert_eq!(f, QPoint::new(rat(1, 2), rat(1, 3)));
    }

    #[test]
    fn unimodular_inverse() {
        let m = IMat { a: 2, b: 1, c: 1, d: 1 };
        let inv = m.inverse_unimodular();
        assert_eq!(m.mul(&inv), IMat::IDENTITY);
    }
}
