//! Number tower: exact values in Q(√5) for diagram and folding data, plain
//! `f64` for everything spectral.
//!
//! `c = 2cos(π/30)` lives in a much larger field and is only ever handled as a
//! float.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute tolerance for float comparisons unless a caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Internal convergence tolerance of the eigen-solvers.
pub const EIGEN_TOL: f64 = 1e-12;

/// The golden ratio τ = (1 + √5)/2 as a float.
pub fn tau_f64() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// The conjugate σ = (1 − √5)/2 as a float.
pub fn sigma_f64() -> f64 {
    (1.0 - 5f64.sqrt()) / 2.0
}

/// An exact element `a + b√5` of the golden field with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenScalar {
    a: BigRational,
    b: BigRational,
}

impl GoldenScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// `(a_num/a_den) + (b_num/b_den)√5`.
    pub fn from_ratios(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        Self {
            a: BigRational::new(BigInt::from(a_num), BigInt::from(a_den)),
            b: BigRational::new(BigInt::from(b_num), BigInt::from(b_den)),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratios(n, 1, 0, 1)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// √5 itself.
    pub fn sqrt5() -> Self {
        Self::from_ratios(0, 1, 1, 1)
    }

    pub fn tau() -> Self {
        Self::from_ratios(1, 2, 1, 2)
    }

    pub fn sigma() -> Self {
        Self::from_ratios(1, 2, -1, 2)
    }

    /// Rational part.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of √5.
    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a − b√5` (swaps τ and σ).
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − 5b²`, zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        let n = rhs.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conjugate();
        Ok(Self {
            a: num.a / &n,
            b: num.b / &n,
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let s5 = 5f64.sqrt();
        // Opposite signs cancel; go through the norm instead.
        if self.a.is_positive() == self.b.is_negative() && !self.a.is_zero() && !self.b.is_zero() {
            let n = self.norm().to_f64().unwrap_or(f64::NAN);
            n / (a - b * s5)
        } else {
            a + b * s5
        }
    }
}

impl From<i64> for GoldenScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√5", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}√5", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}√5", self.a, self.b)
                }
            }
        }
    }
}

impl<'a> Add<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, rhs: &GoldenScalar) -> GoldenScalar {
        let five = BigRational::from_integer(BigInt::from(5));
        GoldenScalar {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        -&self
    }
}

impl Zero for GoldenScalar {
    fn zero() -> Self {
        GoldenScalar::zero()
    }
    fn is_zero(&self) -> bool {
        GoldenScalar::is_zero(self)
    }
}

impl One for GoldenScalar {
    fn one() -> Self {
        GoldenScalar::one()
    }
}

/// A float paired with the absolute tolerance used to compare it.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub value: f64,
    pub tol: f64,
}

impl Approx {
    pub fn new(value: f64) -> Self {
        Self {
            value,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(value: f64, tol: f64) -> Self {
        Self { value, tol }
    }

    pub fn matches(&self, other: f64) -> bool {
        (self.value - other).abs() <= self.tol
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        (self.value - other.value).abs() <= self.tol.max(other.tol)
    }
}

impl PartialEq<f64> for Approx {
    fn eq(&self, other: &f64) -> bool {
        self.matches(*other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tau_sigma_identities() {
        let t = GoldenScalar::tau();
        let s = GoldenScalar::sigma();
        assert_eq!(&t * &s, GoldenScalar::from_int(-1));
        assert_eq!(&t + &s, GoldenScalar::one());
        assert_eq!(&t * &t, &t + &GoldenScalar::one());
    }

    #[test]
    fn two_plus_tau_times_two_plus_sigma_is_five() {
        // 4 + 2(τ+σ) + τσ = 4 + 2 − 1
        let two = GoldenScalar::from_int(2);
        let lhs = &(&two + &GoldenScalar::tau()) * &(&two + &GoldenScalar::sigma());
        assert_eq!(lhs, GoldenScalar::from_int(5));
    }

    #[test]
    fn division() {
        let t = GoldenScalar::tau();
        let inv = GoldenScalar::one().try_div(&t).unwrap();
        assert_eq!(inv, &t - &GoldenScalar::one());
        assert_eq!(
            t.try_div(&GoldenScalar::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn float_conversion() {
        assert!((GoldenScalar::tau().to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        assert_eq!(GoldenScalar::zero().to_f64(), 0.0);
        assert!((GoldenScalar::sigma().to_f64() - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
        // τ^-20 is tiny and suffers cancellation in a + b√5.
        let small = GoldenScalar::sigma().pow(20);
        assert!((small.to_f64() - sigma_f64().powi(20)).abs() < 1e-18);
    }

    #[test]
    fn tau_powers_are_fibonacci() {
        let t = GoldenScalar::tau();
        let (mut f_prev, mut f) = (0i64, 1i64);
        for n in 1..=20u32 {
            let expected = &(&GoldenScalar::from_int(f) * &t) + &GoldenScalar::from_int(f_prev);
            assert_eq!(t.pow(n), expected, "n = {n}");
            (f_prev, f) = (f, f + f_prev);
        }
    }

    #[test]
    fn display() {
        assert_eq!(GoldenScalar::tau().to_string(), "1/2 + 1/2√5");
        assert_eq!(GoldenScalar::sigma().to_string(), "1/2 - 1/2√5");
        assert_eq!(GoldenScalar::from_int(-3).to_string(), "-3");
    }

    #[test]
    fn approx_compare() {
        assert!(Approx::new(1.0) == 1.0 + 5e-10);
        assert!(Approx::new(1.0) != 1.0 + 2e-9);
    }

    fn golden() -> impl Strategy<Value = GoldenScalar> {
        (-1000i64..=1000, 1i64..=50, -1000i64..=1000, 1i64..=50)
            .prop_map(|(a, da, b, db)| GoldenScalar::from_ratios(a, da, b, db))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn float_is_a_ring_homomorphism(x in golden(), y in golden()) {
            let exact = (&x * &y).to_f64();
            let approx = x.to_f64() * y.to_f64();
            prop_assert!((exact - approx).abs() <= 1e-12 * exact.abs());
        }

        #[test]
        fn division_inverts_multiplication(x in golden(), y in golden()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!((&x * &y).try_div(&y).unwrap(), x);
        }
    }
}
