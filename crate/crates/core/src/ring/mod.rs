//! Exact arithmetic in `Z[q^±1, s^±1]`, its fraction field, and balanced
//! q-combinatorics.

mod frac;
mod gcd;
mod laurent;
mod qnum;

use num_traits::Zero;
use thiserror::Error;

pub use frac::{cross_equal, Frac, RatFunc};
pub use gcd::gcd;
pub use laurent::{Exponent, Laurent, LaurentPoly, LkbPoly, Qs, Tq, Variables};
pub(crate) use qnum::qbinom_unchecked;
pub use qnum::{qbinom, qfactorial, qint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("q-integer of negative argument {0}")]
    NegativeQInteger(i64),
    #[error("q-binomial [{n} choose {j}] out of range")]
    BinomialRange { n: i64, j: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SpecializeError {
    #[error("specialization point has a zero coordinate")]
    ZeroPoint,
    #[error("denominator vanishes at the specialization point")]
    VanishingDenominator,
}

/// Commutative ring elements a matrix may hold: Laurent polynomials in
/// either variable pair, or fractions of them.
pub trait RingElem:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + num_traits::Zero
    + num_traits::One
    + std::ops::Neg<Output = Self>
    + for<'a> std::ops::Add<&'a Self, Output = Self>
    + for<'a> std::ops::Sub<&'a Self, Output = Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + serde::Serialize
    + 'static
{
    /// `self / d` when the quotient exists in this ring.
    fn try_div(&self, d: &Self) -> Option<Self>;

    fn is_invertible(&self) -> bool;
}

impl<V: Variables> RingElem for Laurent<V> {
    fn try_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        self.div_exact(d)
    }

    fn is_invertible(&self) -> bool {
        self.is_unit()
    }
}

impl<V: Variables> RingElem for Frac<V> {
    fn try_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|inv| self * &inv)
    }

    fn is_invertible(&self) -> bool {
        !self.is_zero()
    }
}

/// Coefficient domains over `(q, s)` a tensor vector may live over: the
/// Laurent ring itself, or its fraction field.
pub trait Scalar: RingElem + From<LaurentPoly> {
    fn mul_poly(&self, p: &LaurentPoly) -> Self;

    /// The underlying Laurent polynomial, when the value lies in the ring.
    fn as_laurent(&self) -> Option<LaurentPoly>;
}

impl Scalar for LaurentPoly {
    fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self * p
    }

    fn as_laurent(&self) -> Option<LaurentPoly> {
        Some(self.clone())
    }
}

impl Scalar for RatFunc {
    fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self.mul_laurent(p)
    }

    fn as_laurent(&self) -> Option<LaurentPoly> {
        self.to_laurent()
    }
}
