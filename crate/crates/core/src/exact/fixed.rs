use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arithmetic needed by routines that run both in `f64` and in extended precision.
pub trait Real:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn from_i64(x: i64) -> Self;
    fn sqrt(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self {
        if self.to_f64() < 0.0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(x: i64) -> Self {
        x as f64
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// Binary fixed-point real `mantissa / 2^BITS`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fixed<const BITS: u32> {
    mantissa: BigInt,
}

impl<const BITS: u32> Fixed<BITS> {
    pub fn from_mantissa(mantissa: BigInt) -> Self {
        Fixed { mantissa }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn from_rational(x: &BigRational) -> Self {
        let scaled = (x.numer() << BITS) / x.denom();
        Fixed { mantissa: scaled }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::from(1) << BITS)
    }

    pub fn signum(&self) -> i8 {
        if self.mantissa.is_positive() {
            1
        } else if self.mantissa.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl<const BITS: u32> PartialOrd for Fixed<BITS> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.mantissa.cmp(&other.mantissa))
    }
}

impl<const BITS: u32> Add for Fixed<BITS> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fixed { mantissa: self.mantissa + rhs.mantissa }
    }
}

impl<const BITS: u32> Sub for Fixed<BITS> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fixed { mantissa: self.mantissa - rhs.mantissa }
    }
}

impl<const BITS: u32> Mul for Fixed<BITS> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fixed { mantissa: (self.mantissa * rhs.mantissa) >> BITS }
    }
}

impl<const BITS: u32> Div for Fixed<BITS> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.mantissa.is_zero(), "fixed-point division by zero");
        Fixed { mantissa: (self.mantissa << BITS) / rhs.mantissa }
    }
}

impl<const BITS: u32> Neg for Fixed<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        Fixed { mantissa: -self.mantissa }
    }
}

impl<const BITS: u32> Real for Fixed<BITS> {
    fn from_f64(x: f64) -> Self {
        let r = BigRational::from_float(x).expect("finite value");
        Self::from_rational(&r)
    }
    fn from_i64(x: i64) -> Self {
        Fixed { mantissa: BigInt::from(x) << BITS }
    }
    fn sqrt(&self) -> Self {
        assert!(!self.mantissa.is_negative(), "square root of a negative number");
        Fixed { mantissa: (&self.mantissa << BITS).sqrt() }
    }
    fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Fixed { mantissa: self.mantissa.abs() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_to_many_digits() {
        let two = Fixed::<256>::from_i64(2);
        let r = two.sqrt();
        let back = r.clone() * r;
        let err = (back - Fixed::<256>::from_i64(2)).abs();
        assert!(err.to_f64() < 1e-70);
        assert!((Fixed::<256>::from_i64(2).sqrt().to_f64() - std::f64::consts::SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn division_round_trip() {
        let a = Fixed::<128>::from_i64(7);
        let b = Fixed::<128>::from_i64(3);
        let q = a.clone() / b.clone();
        assert!(((q * b) - a).abs().to_f64() < 1e-35);
    }
}
