use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Element `a + b*sqrt(d)` of a real quadratic field, with rational `a`, `b`
/// and square-free `d > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

/// Writes `n = s^2 * d` with `d` square-free. Requires `n > 0`.
pub fn square_free_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "square-free part of a non-positive integer");
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while rest.is_multiple_of(&pp) {
            rest /= &pp;
            square *= &p;
        }
        if rest.is_multiple_of(&p) {
            rest /= &p;
            free *= &p;
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    (square, free * rest)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl QuadNum {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self, ExactError> {
        if d <= BigInt::one() || square_free_decomposition(&d).0 != BigInt::one() {
            return Err(ExactError::NotSquareFree(d.to_string()));
        }
        Ok(QuadNum { a, b, d })
    }

    pub(crate) fn new_unchecked(a: BigRational, b: BigRational, d: BigInt) -> Self {
        QuadNum { a, b, d }
    }

    pub fn from_rational(a: BigRational, d: &BigInt) -> Self {
        QuadNum { a, b: BigRational::zero(), d: d.clone() }
    }

    pub fn from_int(a: i64, d: &BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(a.into()), d)
    }

    pub fn zero(d: &BigInt) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: &BigInt) -> Self {
        Self::from_int(1, d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: &BigInt) -> Self {
        QuadNum { a: BigRational::zero(), b: BigRational::one(), d: d.clone() }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadNum { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    /// Exact sign: compares `a^2` with `b^2 d` after splitting on the signs of `a` and `b`.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins; magnitudes never tie since d is not a square.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "reciprocal of zero");
        QuadNum { a: &self.a / &n, b: -(&self.b / &n), d: self.d.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let approx = a + b * d.sqrt();
        // Guard against cancellation: if a and b*sqrt(d) nearly cancel, use the conjugate form.
        if a != 0.0 && b != 0.0 && a.signum() != b.signum() {
            let n = self.norm().to_f64().unwrap_or(f64::NAN);
            let conj = a - b * d.sqrt();
            if conj != 0.0 {
                return n / conj;
            }
        }
        approx
    }

    /// Rational approximation using `sqrt(d)` truncated to `bits` binary digits.
    pub fn approx_fixed(&self, bits: u32) -> BigRational {
        let scale = BigInt::one() << bits;
        let root = (&self.d * &scale * &scale).sqrt();
        &self.a + &self.b * BigRational::new(root, scale)
    }

    fn check_field(&self, other: &QuadNum) {
        assert_eq!(self.d, other.d, "quadratic numbers from different fields");
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.check_field(rhs);
        QuadNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d.clone() }
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.check_field(rhs);
        QuadNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d.clone() }
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.check_field(rhs);
        let d = BigRational::from_integer(self.d.clone());
        QuadNum {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
}

impl Div for &QuadNum {
    type Output = QuadNum;
    fn div(self, rhs: &QuadNum) -> QuadNum {
        self * &rhs.recip()
    }
}

impl Mul<&BigRational> for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &BigRational) -> QuadNum {
        QuadNum { a: &self.a * rhs, b: &self.b * rhs, d: self.d.clone() }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a, b: -self.b, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadNum {
            type Output = QuadNum;
            fn $m(self, rhs: QuadNum) -> QuadNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> QuadNum {
        QuadNum::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            d.into(),
        )
        .unwrap()
    }

    #[test]
    fn square_free_parts() {
        assert_eq!(square_free_decomposition(&BigInt::from(5)), (1.into(), 5.into()));
        assert_eq!(square_free_decomposition(&BigInt::from(12)), (2.into(), 3.into()));
        assert_eq!(square_free_decomposition(&BigInt::from(32)), (4.into(), 2.into()));
        assert_eq!(square_free_decomposition(&BigInt::from(21)), (1.into(), 21.into()));
        assert!(is_perfect_square(&BigInt::from(49)));
        assert!(!is_perfect_square(&BigInt::from(5)));
    }

    #[test]
    fn rejects_non_square_free_radicand() {
        assert!(QuadNum::new(BigRational::zero(), BigRational::one(), 8.into()).is_err());
        assert!(QuadNum::new(BigRational::zero(), BigRational::one(), 1.into()).is_err());
    }

    #[test]
    fn signs_near_cancellation() {
        // 3 - sqrt(8) would not be allowed; use 3*1 - 1*sqrt(5)*... : 9 vs 5 -> positive.
        assert_eq!(q((3, 1), (-1, 1), 5).sign(), 1);
        assert_eq!(q((-3, 1), (1, 1), 5).sign(), -1);
        // 2 - sqrt(5) < 0
        assert_eq!(q((2, 1), (-1, 1), 5).sign(), -1);
        // Pell-type near miss: 161 - 72 sqrt(5) > 0, tiny.
        let x = q((161, 1), (-72, 1), 5);
        assert_eq!(x.sign(), 1);
        assert!(x.to_f64() > 0.0 && x.to_f64() < 0.01);
        assert_eq!(q((0, 1), (0, 1), 5).sign(), 0);
    }

    #[test]
    fn golden_ratio_identities() {
        let d = BigInt::from(5);
        let phi = q((1, 2), (1, 2), 5);
        let lhs = &phi * &phi;
        let rhs = &phi + &QuadNum::one(&d);
        assert_eq!(lhs, rhs);
        let inv = phi.recip();
        assert_eq!(&phi * &inv, QuadNum::one(&d));
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn sign_agrees_with_high_precision_shadow(a in -10_000i64..10_000, b in -10_000i64..10_000, den in 1i64..50, d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 21, 77])) {
            let x = q((a, den), (b, 1), d);
            let shadow = x.approx_fixed(200);
            let s = if shadow.is_positive() { 1 } else if shadow.is_negative() { -1 } else { 0 };
            prop_assert_eq!(x.sign(), s);
        }

        #[test]
        fn field_axioms_hold(a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50) {
            let x = q((a, 1), (b, 1), 3);
            let y = q((c, 1), (e, 1), 3);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
        }
    }
}
