//! Numbers of the form `a + b√m` with rational `a`, `b` and a square-free radicand.
//!
//! Values are kept canonical: the radicand is square-free (square factors are
//! pulled into `b`), and a rational value always has `b = 0` and `m = 0`.
//! Equality of canonical values is therefore structural. Arithmetic between two
//! irrational values is only defined inside one field `Q(√m)`; mixing fields
//! panics in the operator impls and returns `None` from the `checked_*` forms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{format_rational, to_f64, Rational};

// Trial division bound used when splitting off square factors. Radicands whose
// cube root exceeds this are canonical only up to prime squares beyond it.
const TRIAL_LIMIT: u64 = 1 << 21;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    a: Rational,
    b: Rational,
    m: BigUint,
}

impl QuadraticIrrational {
    /// Builds `a + b√m`, canonicalizing the radicand.
    pub fn new(a: Rational, b: Rational, m: BigUint) -> Self {
        if b.is_zero() || m.is_zero() {
            return QuadraticIrrational::rational(a);
        }
        let (square, free) = square_free_split(&m);
        let b = b * Rational::from_integer(BigInt::from(square));
        if free.is_one() {
            return QuadraticIrrational::rational(a + b);
        }
        QuadraticIrrational { a, b, m: free }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticIrrational { a, b: Rational::zero(), m: BigUint::zero() }
    }

    pub fn zero() -> Self {
        QuadraticIrrational::rational(Rational::zero())
    }

    /// `√r` for a non-negative rational `r`.
    pub fn sqrt(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        // √(p/q) = √(pq)/q
        let pq = (r.numer() * r.denom()).to_biguint()?;
        Some(QuadraticIrrational::new(
            Rational::zero(),
            Rational::new(BigInt::one(), r.denom().clone()),
            pq,
        ))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand; `0` for rational values.
    pub fn m(&self) -> &BigUint {
        &self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadraticIrrational { a: self.a.clone(), b: -self.b.clone(), m: self.m.clone() }
    }

    /// `a² − b²m`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.m.clone()))
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: the larger magnitude wins, and a² = b²m is impossible for square-free m > 1
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * Rational::from_integer(BigInt::from(self.m.clone()));
        if a2 > b2m {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> Option<BigUint> {
        if self.is_rational() {
            Some(other.m.clone())
        } else if other.is_rational() || self.m == other.m {
            Some(self.m.clone())
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let m = self.same_field(other)?;
        Some(QuadraticIrrational::new(&self.a + &other.a, &self.b + &other.b, m))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let m = self.same_field(other)?;
        let mq = Rational::from_integer(BigInt::from(m.clone()));
        let a = &self.a * &other.a + &self.b * &other.b * mq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(QuadraticIrrational::new(a, b, m))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.same_field(other)?;
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.checked_mul(&other.conjugate())?;
        Some(QuadraticIrrational::new(num.a / &n, num.b / &n, num.m))
    }

    pub fn recip(&self) -> Option<Self> {
        QuadraticIrrational::rational(Rational::one()).checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadraticIrrational::rational(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadraticIrrational::new(&self.a * r, &self.b * r, self.m.clone())
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return to_f64(&self.a);
        }
        let root = self.m.to_f64().unwrap_or(f64::INFINITY).sqrt();
        let a = to_f64(&self.a);
        let b = to_f64(&self.b);
        if (a < 0.0) != (b < 0.0) && a != 0.0 {
            // a + b√m = (a² − b²m)/(a − b√m) avoids cancellation
            to_f64(&self.norm()) / (a - b * root)
        } else {
            a + b * root
        }
    }
}

/// Splits `n = s²·t` with `t` square-free.
fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > rest {
            break;
        }
        let p2 = &pb * &pb;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            square *= &pb;
        }
        if (&rest % &pb).is_zero() {
            rest /= &pb;
            free *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // what remains has no prime factor below its cube root: p, pq or p²
    let r = rest.sqrt();
    if &r * &r == rest {
        square *= r;
    } else {
        free *= rest;
    }
    (square, free)
}

impl PartialOrd for QuadraticIrrational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).map(|d| d.signum())
    }
}

impl From<Rational> for QuadraticIrrational {
    fn from(r: Rational) -> Self {
        QuadraticIrrational::rational(r)
    }
}

impl From<&Rational> for QuadraticIrrational {
    fn from(r: &Rational) -> Self {
        QuadraticIrrational::rational(r.clone())
    }
}

impl Neg for &QuadraticIrrational {
    type Output = QuadraticIrrational;

    fn neg(self) -> QuadraticIrrational {
        QuadraticIrrational { a: -self.a.clone(), b: -self.b.clone(), m: self.m.clone() }
    }
}

impl Neg for QuadraticIrrational {
    type Output = QuadraticIrrational;

    fn neg(self) -> QuadraticIrrational {
        -&self
    }
}

macro_rules! field_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadraticIrrational> for &QuadraticIrrational {
            type Output = QuadraticIrrational;

            fn $method(self, rhs: &QuadraticIrrational) -> QuadraticIrrational {
                self.$checked(rhs).unwrap_or_else(|| {
                    panic!("{} on incompatible quadratic values {self} and {rhs}", stringify!($method))
                })
            }
        }

        impl $tr<QuadraticIrrational> for QuadraticIrrational {
            type Output = QuadraticIrrational;

            fn $method(self, rhs: QuadraticIrrational) -> QuadraticIrrational {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&QuadraticIrrational> for QuadraticIrrational {
            type Output = QuadraticIrrational;

            fn $method(self, rhs: &QuadraticIrrational) -> QuadraticIrrational {
                (&self).$method(rhs)
            }
        }

        impl $tr<&Rational> for &QuadraticIrrational {
            type Output = QuadraticIrrational;

            fn $method(self, rhs: &Rational) -> QuadraticIrrational {
                self.$method(&QuadraticIrrational::from(rhs))
            }
        }

        impl $tr<&Rational> for QuadraticIrrational {
            type Output = QuadraticIrrational;

            fn $method(self, rhs: &Rational) -> QuadraticIrrational {
                (&self).$method(&QuadraticIrrational::from(rhs))
            }
        }
    };
}

field_op!(Add, add, checked_add);
field_op!(Sub, sub, checked_sub);
field_op!(Mul, mul, checked_mul);
field_op!(Div, div, checked_div);

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let babs = self.b.abs();
        let coeff = if babs.is_one() { String::new() } else { format!("{}*", format_rational(&babs)) };
        write!(f, "{} {sign} {coeff}sqrt({})", format_rational(&self.a), self.m)
    }
}

impl fmt::Debug for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
