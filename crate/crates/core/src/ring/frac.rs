use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::gcd;
use super::laurent::{Laurent, Qs, Variables};
use super::SpecializeError;

/// An element of the fraction field of a two-variable Laurent ring.
///
/// Stored with the integer content and monomial part removed, the
/// denominator shifted to minimal exponents zero with positive leading
/// coefficient, and the denominator dropped whenever it divides the
/// numerator. Common polynomial factors are only cancelled by
/// [`Frac::canonical`]; equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct Frac<V: Variables> {
    num: Laurent<V>,
    den: Laurent<V>,
}

pub type RatFunc = Frac<Qs>;

impl<V: Variables> Frac<V> {
    /// Panics on a zero denominator.
    pub fn new(num: Laurent<V>, den: Laurent<V>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::reduce(num, den)
    }

    pub fn try_new(num: Laurent<V>, den: Laurent<V>) -> Option<Self> {
        (!den.is_zero()).then(|| Self::reduce(num, den))
    }

    fn reduce(num: Laurent<V>, den: Laurent<V>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_monomial() {
            if let Some(p) = num.div_exact(&den) {
                return Frac {
                    num: p,
                    den: Laurent::one(),
                };
            }
        }
        Self::normalize(num, den)
    }

    fn normalize(num: Laurent<V>, den: Laurent<V>) -> Self {
        let c = num.content().gcd(&den.content());
        let (num, den) = (
            num.div_integer_exact(&c).expect("content divides"),
            den.div_integer_exact(&c).expect("content divides"),
        );
        let ((lo0, lo1), _) = den.exponent_box().expect("nonzero denominator");
        let (mut num, mut den) = (num.mul_monomial(-lo0, -lo1), den.mul_monomial(-lo0, -lo1));
        if den.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Frac { num, den }
    }

    pub fn numer(&self) -> &Laurent<V> {
        &self.num
    }

    pub fn denom(&self) -> &Laurent<V> {
        &self.den
    }

    /// The Laurent polynomial this fraction equals, if it lies in the ring.
    pub fn to_laurent(&self) -> Option<Laurent<V>> {
        self.num.div_exact(&self.den)
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Fully reduced form: numerator and denominator coprime. Two canonical
    /// forms are structurally equal exactly when the fractions are equal.
    pub fn canonical(&self) -> Self {
        if self.num.is_zero() || self.den.is_one() {
            return self.clone();
        }
        let g = gcd(&self.num, &self.den);
        Self::normalize(
            self.num.div_exact(&g).expect("gcd divides numerator"),
            self.den.div_exact(&g).expect("gcd divides denominator"),
        )
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn specialize(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational, SpecializeError> {
        let d = self.den.specialize(x0, y0)?;
        if d.is_zero() {
            return Err(SpecializeError::VanishingDenominator);
        }
        Ok(self.num.specialize(x0, y0)? / d)
    }

    pub fn mul_laurent(&self, p: &Laurent<V>) -> Self {
        if p.is_monomial() {
            let (&(a, b), c) = p.terms().next().expect("monomial");
            if c.abs().is_one() {
                return Frac {
                    num: self.num.mul_monomial(a, b).scale(c),
                    den: self.den.clone(),
                };
            }
        }
        Self::reduce(&self.num * p, self.den.clone())
    }
}

impl<V: Variables> PartialEq for Frac<V> {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        cross_equal(self, other)
    }
}

impl<V: Variables> Eq for Frac<V> {}

impl<V: Variables> From<Laurent<V>> for Frac<V> {
    fn from(p: Laurent<V>) -> Self {
        Frac {
            num: p,
            den: Laurent::one(),
        }
    }
}

impl<V: Variables> Zero for Frac<V> {
    fn zero() -> Self {
        Frac {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<V: Variables> One for Frac<V> {
    fn one() -> Self {
        Frac {
            num: Laurent::one(),
            den: Laurent::one(),
        }
    }
}

impl<'b, V: Variables> Add<&'b Frac<V>> for &Frac<V> {
    type Output = Frac<V>;
    fn add(self, rhs: &'b Frac<V>) -> Frac<V> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Frac::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(k) = rhs.den.div_exact(&self.den) {
            return Frac::reduce(&self.num * &k + &rhs.num, rhs.den.clone());
        }
        if let Some(k) = self.den.div_exact(&rhs.den) {
            return Frac::reduce(&self.num + &rhs.num * &k, self.den.clone());
        }
        Frac::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'b, V: Variables> Sub<&'b Frac<V>> for &Frac<V> {
    type Output = Frac<V>;
    fn sub(self, rhs: &'b Frac<V>) -> Frac<V> {
        self + &(-rhs)
    }
}

impl<'b, V: Variables> Mul<&'b Frac<V>> for &Frac<V> {
    type Output = Frac<V>;
    fn mul(self, rhs: &'b Frac<V>) -> Frac<V> {
        if self.is_zero() || rhs.is_zero() {
            return Frac::zero();
        }
        if rhs.den.is_one() {
            return self.mul_laurent(&rhs.num);
        }
        if self.den.is_one() {
            return rhs.mul_laurent(&self.num);
        }
        Frac::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'b, V: Variables> Div<&'b Frac<V>> for &Frac<V> {
    type Output = Frac<V>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'b Frac<V>) -> Frac<V> {
        self * &rhs.inv().expect("division by zero fraction")
    }
}

impl<V: Variables> Neg for &Frac<V> {
    type Output = Frac<V>;
    fn neg(self) -> Frac<V> {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<V: Variables> Neg for Frac<V> {
    type Output = Frac<V>;
    fn neg(self) -> Frac<V> {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<V: Variables> $tr<Frac<V>> for Frac<V> {
            type Output = Frac<V>;
            fn $method(self, rhs: Frac<V>) -> Frac<V> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, V: Variables> $tr<&'a Frac<V>> for Frac<V> {
            type Output = Frac<V>;
            fn $method(self, rhs: &'a Frac<V>) -> Frac<V> {
                (&self).$method(rhs)
            }
        }
        impl<'a, V: Variables> $tr<Frac<V>> for &'a Frac<V> {
            type Output = Frac<V>;
            fn $method(self, rhs: Frac<V>) -> Frac<V> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl<V: Variables> fmt::Display for Frac<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<V: Variables> fmt::Debug for Frac<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct FracJson<V: Variables> {
    num: Laurent<V>,
    den: Laurent<V>,
}

/// `{"num": <poly>, "den": <poly>}`.
impl<V: Variables> Serialize for Frac<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FracJson {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, V: Variables> Deserialize<'de> for Frac<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FracJson::<V>::deserialize(deserializer)?;
        Frac::try_new(raw.num, raw.den).ok_or_else(|| D::Error::custom("zero denominator"))
    }
}

/// Equality test by cross-multiplication.
pub fn cross_equal<V: Variables>(a: &Frac<V>, b: &Frac<V>) -> bool {
    &a.num * &b.den == &b.num * &a.den
}
