//! Configurable-precision real arithmetic.
//!
//! [`Real`] wraps an `astro_float::BigFloat` together with the binary
//! precision it was created at. Binary operators round to the larger of the
//! two operand precisions, so values that all come from one
//! [`PrecisionContext`] stay at that context's precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra bits carried beyond the requested decimal digits.
const GUARD_BITS: usize = 16;

pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 16;
pub const MAX_DIGITS: u32 = 200;

/// Working precision shared by every value in one computation.
///
/// The context is immutable once built. It caches π and √π at its own
/// precision so no constant cache needs to be mutated later.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    digits: u32,
    bits: usize,
    pi: Real,
    sqrt_pi: Real,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
            return Err(Error::InvalidPrecision { digits });
        }
        // ceil(digits * log2(10))
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS;
        let mut consts = Consts::new().map_err(|_| Error::Arithmetic("constant cache"))?;
        let pi = consts.pi(bits, RM);
        let sqrt_pi = pi.sqrt(bits, RM);
        let pi = Real::wrap(pi, bits);
        let sqrt_pi = Real::wrap(sqrt_pi, bits);
        Ok(Self {
            digits,
            bits,
            pi,
            sqrt_pi,
        })
    }

    /// Decimal significant digits requested by the caller.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision actually used for every operation.
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Unit roundoff 2^(1-bits).
    pub fn eps(&self) -> Real {
        self.int(2).powi(self.bits as u32 - 1).recip()
    }

    /// `10^-(digits - lost)`, the tolerance used when `lost` decimal digits
    /// are allowed to be consumed by cancellation.
    pub fn tolerance(&self, lost: u32) -> Real {
        let exp = self.digits.saturating_sub(lost);
        self.int(10).powi(exp).recip()
    }

    pub fn pi(&self) -> &Real {
        &self.pi
    }

    pub fn sqrt_pi(&self) -> &Real {
        &self.sqrt_pi
    }

    pub fn zero(&self) -> Real {
        self.int(0)
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Real {
        Real::wrap(BigFloat::from_i64(v, self.bits), self.bits)
    }

    /// Exact conversion of a binary double.
    pub fn real(&self, v: f64) -> Real {
        Real::wrap(BigFloat::from_f64(v, self.bits), self.bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        &self.int(num) / &self.int(den)
    }

    /// Parses a decimal literal at full context precision, so that inputs
    /// such as `0.1` are not limited to double precision.
    pub fn parse(&self, literal: &str) -> Result<Real> {
        let v = BigFloat::parse(
            literal.trim(),
            astro_float::Radix::Dec,
            self.bits,
            RM,
            &mut Consts::new().map_err(|_| Error::Arithmetic("constant cache"))?,
        );
        if v.is_nan() || v.is_inf() {
            return Err(Error::Arithmetic("unparseable decimal literal"));
        }
        Ok(Real::wrap(v, self.bits))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS).expect("default precision is valid")
    }
}

/// An arbitrary-precision real number.
#[derive(Clone, Debug)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    fn wrap(value: BigFloat, bits: usize) -> Self {
        Self { value, bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    pub fn is_negative(&self) -> bool {
        !self.value.is_zero() && self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.is_positive()
    }

    pub fn abs(&self) -> Real {
        Self::wrap(self.value.abs(), self.bits)
    }

    pub fn sqrt(&self) -> Real {
        Self::wrap(self.value.sqrt(self.bits, RM), self.bits)
    }

    pub fn recip(&self) -> Real {
        Self::wrap(self.value.reciprocal(self.bits, RM), self.bits)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut exp: u32) -> Real {
        let mut base = self.clone();
        let mut acc = Self::wrap(BigFloat::from_i64(1, self.bits), self.bits);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn max<'a>(&'a self, other: &'a Real) -> &'a Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest double (via the decimal expansion, which carries every bit).
    pub fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf() {
            return if self.value.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        self.value.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Scientific decimal expansion with every digit the binary value holds.
    pub fn to_scientific(&self) -> String {
        self.value.to_string()
    }

    /// Exact equality of value and sign of zero ignored; NaN is never equal.
    pub fn bit_eq(&self, other: &Real) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.bit_eq(other)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let bits = self.bits.max(rhs.bits);
                Real::wrap(self.value.$op(&rhs.value, bits, RM), bits)
            }
        }

        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }

        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, mul);
impl_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.value), self.bits)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// Sum of an iterator of reals at the precision of `ctx`.
pub fn sum<'a, I>(ctx: &PrecisionContext, terms: I) -> Real
where
    I: IntoIterator<Item = &'a Real>,
{
    terms.into_iter().fold(ctx.zero(), |acc, t| acc + t)
}
