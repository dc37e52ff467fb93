use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SpecializeError;

/// Names the two variables of a Laurent ring. Rings with different variable
/// sets are different types, so `q, s` polynomials can never be added to
/// `t, Q` polynomials by accident.
pub trait Variables: Copy + Clone + Eq + Ord + Hash + Default + fmt::Debug + Send + Sync + 'static {
    const NAMES: [&'static str; 2];
}

/// The quantum group variables `q` and `s`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Qs;

impl Variables for Qs {
    const NAMES: [&'static str; 2] = ["q", "s"];
}

/// The Lawrence-Krammer variables `t` and `Q`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tq;

impl Variables for Tq {
    const NAMES: [&'static str; 2] = ["t", "Q"];
}

/// Exponent pair of a monomial, ordered lexicographically.
pub type Exponent = (i32, i32);

/// A Laurent polynomial in two variables with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<V: Variables> {
    terms: BTreeMap<Exponent, BigInt>,
    _vars: PhantomData<V>,
}

pub type LaurentPoly = Laurent<Qs>;
pub type LkbPoly = Laurent<Tq>;

impl<V: Variables> Default for Laurent<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Variables> Laurent<V> {
    fn from_map(terms: BTreeMap<Exponent, BigInt>) -> Self {
        Laurent {
            terms,
            _vars: PhantomData,
        }
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, e0: i32, e1: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e0, e1), c);
        }
        Self::from_map(terms)
    }

    /// Builds a polynomial from `(e0, e1, coefficient)` triples; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i32, i32, C)>,
        C: Into<BigInt>,
    {
        let mut terms: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e0, e1, c) in iter {
            *terms.entry((e0, e1)).or_default() += c.into();
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_map(terms)
    }

    /// The first variable (`q` or `t`).
    pub fn var0() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The second variable (`s` or `Q`).
    pub fn var1() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e0: i32, e1: i32) -> BigInt {
        self.terms.get(&(e0, e1)).cloned().unwrap_or_default()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Componentwise minimum and maximum exponents, `None` for zero.
    pub fn exponent_box(&self) -> Option<(Exponent, Exponent)> {
        let mut it = self.terms.keys();
        let &(a, b) = it.next()?;
        let (mut lo, mut hi) = ((a, b), (a, b));
        for &(x, y) in it {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        Some((lo, hi))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of the Laurent ring are exactly `±x^a y^b`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.clone(), -a, -b))
    }

    pub fn mul_monomial(&self, e0: i32, e1: i32) -> Self {
        Self::from_map(
            self.terms
                .iter()
                .map(|(&(a, b), c)| ((a + e0, b + e1), c.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_map(self.terms.iter().map(|(e, c)| (*e, c * k)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_integer_exact(&self, k: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quo, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            terms.insert(*e, quo);
        }
        Some(Self::from_map(terms))
    }

    /// Exact division in the Laurent ring; `None` when `d` does not divide
    /// `self` (or `d` is zero).
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let (&(a, b), c) = d.terms.iter().next()?;
            return self.div_integer_exact(c).map(|p| p.mul_monomial(-a, -b));
        }
        // The quotient's exponents are confined to the difference of the
        // exponent boxes; leaving that box means the division is inexact.
        let (plo, phi) = self.exponent_box()?;
        let (dlo, dhi) = d.exponent_box()?;
        let lo = (plo.0 - dlo.0, plo.1 - dlo.1);
        let hi = (phi.0 - dhi.0, phi.1 - dhi.1);
        if lo.0 > hi.0 || lo.1 > hi.1 {
            return None;
        }
        let (dlead, dcoef) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rlead, rcoef)) = rem.leading_term() {
            let e = (rlead.0 - dlead.0, rlead.1 - dlead.1);
            if e.0 < lo.0 || e.1 < lo.1 || e.1 > hi.1 || e.0 > hi.0 {
                return None;
            }
            let (c, r) = rcoef.div_rem(dcoef);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &d.mul_monomial(e.0, e.1).scale(&c);
            quot.insert(e, c);
        }
        Some(Self::from_map(quot))
    }

    /// Ring homomorphism into another Laurent ring determined by the images
    /// of the two variables, which must be units.
    pub fn substitute<W: Variables>(&self, x: &Laurent<W>, y: &Laurent<W>) -> Laurent<W> {
        let xi = x.unit_inverse().expect("substitution image must be a unit");
        let yi = y.unit_inverse().expect("substitution image must be a unit");
        let power = |base: &Laurent<W>, inv: &Laurent<W>, e: i32| {
            if e >= 0 {
                base.pow(e as u32)
            } else {
                inv.pow(e.unsigned_abs())
            }
        };
        let mut acc = Laurent::<W>::zero();
        for (&(a, b), c) in &self.terms {
            let m = &power(x, &xi, a) * &power(y, &yi, b);
            acc += &m.scale(c);
        }
        acc
    }

    /// Exact evaluation at a rational point with nonzero coordinates.
    pub fn specialize(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational, SpecializeError> {
        if x0.is_zero() || y0.is_zero() {
            return Err(SpecializeError::ZeroPoint);
        }
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * rat_pow(x0, a) * rat_pow(y0, b);
        }
        Ok(acc)
    }
}

fn rat_pow(x: &BigRational, e: i32) -> BigRational {
    num_traits::pow::Pow::pow(x, e)
}

impl LaurentPoly {
    pub fn q() -> Self {
        Self::var0()
    }

    pub fn s() -> Self {
        Self::var1()
    }

    /// `c * q^a * s^b`
    pub fn qs(c: i64, a: i32, b: i32) -> Self {
        Self::monomial(c, a, b)
    }
}

impl LkbPoly {
    pub fn t() -> Self {
        Self::var0()
    }

    /// The second LKB variable, printed as `Q`.
    pub fn big_q() -> Self {
        Self::var1()
    }
}

impl<V: Variables> Zero for Laurent<V> {
    fn zero() -> Self {
        Self::from_map(BTreeMap::new())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<V: Variables> One for Laurent<V> {
    fn one() -> Self {
        Self::constant(1)
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }
}

impl<'a, V: Variables> AddAssign<&'a Laurent<V>> for Laurent<V> {
    fn add_assign(&mut self, rhs: &'a Laurent<V>) {
        for (e, c) in &rhs.terms {
            let entry = self.terms.entry(*e).or_default();
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }
}

impl<'a, V: Variables> SubAssign<&'a Laurent<V>> for Laurent<V> {
    fn sub_assign(&mut self, rhs: &'a Laurent<V>) {
        for (e, c) in &rhs.terms {
            let entry = self.terms.entry(*e).or_default();
            *entry -= c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }
}

impl<V: Variables> AddAssign for Laurent<V> {
    fn add_assign(&mut self, rhs: Laurent<V>) {
        *self += &rhs;
    }
}

impl<V: Variables> SubAssign for Laurent<V> {
    fn sub_assign(&mut self, rhs: Laurent<V>) {
        *self -= &rhs;
    }
}

impl<'b, V: Variables> Add<&'b Laurent<V>> for &Laurent<V> {
    type Output = Laurent<V>;
    fn add(self, rhs: &'b Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'b, V: Variables> Sub<&'b Laurent<V>> for &Laurent<V> {
    type Output = Laurent<V>;
    fn sub(self, rhs: &'b Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'b, V: Variables> Mul<&'b Laurent<V>> for &Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: &'b Laurent<V>) -> Laurent<V> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if let (Some(a), Some(b)) = (small_terms(self), small_terms(rhs)) {
            return mul_small(&a, &b);
        }
        let mut terms: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                *terms.entry((a + x, b + y)).or_default() += c * d;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent::from_map(terms)
    }
}

// Coefficients below 2^40 in absolute value: products stay below 2^80, so
// an i128 accumulator cannot overflow for any realistic term count.
const SMALL: i64 = 1 << 40;

fn small_terms<V: Variables>(p: &Laurent<V>) -> Option<Vec<(Exponent, i64)>> {
    p.terms
        .iter()
        .map(|(e, c)| i64::try_from(c).ok().filter(|x| x.abs() < SMALL).map(|x| (*e, x)))
        .collect()
}

fn mul_small<V: Variables>(a: &[(Exponent, i64)], b: &[(Exponent, i64)]) -> Laurent<V> {
    let mut prods: Vec<(Exponent, i128)> = Vec::with_capacity(a.len() * b.len());
    for &((e0, e1), c) in a {
        for &((f0, f1), d) in b {
            prods.push(((e0 + f0, e1 + f1), c as i128 * d as i128));
        }
    }
    prods.sort_unstable_by_key(|(e, _)| *e);
    let mut terms = BTreeMap::new();
    let mut it = prods.into_iter().peekable();
    while let Some((e, mut c)) = it.next() {
        while let Some((_, d)) = it.next_if(|(f, _)| *f == e) {
            c += d;
        }
        if c != 0 {
            terms.insert(e, BigInt::from(c));
        }
    }
    Laurent::from_map(terms)
}

impl<V: Variables> Neg for &Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        Laurent::from_map(self.terms.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl<V: Variables> Neg for Laurent<V> {
    type Output = Laurent<V>;
    fn neg(mut self) -> Laurent<V> {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<V: Variables> $tr<Laurent<V>> for Laurent<V> {
            type Output = Laurent<V>;
            fn $method(self, rhs: Laurent<V>) -> Laurent<V> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, V: Variables> $tr<&'a Laurent<V>> for Laurent<V> {
            type Output = Laurent<V>;
            fn $method(self, rhs: &'a Laurent<V>) -> Laurent<V> {
                (&self).$method(rhs)
            }
        }
        impl<'a, V: Variables> $tr<Laurent<V>> for &'a Laurent<V> {
            type Output = Laurent<V>;
            fn $method(self, rhs: Laurent<V>) -> Laurent<V> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<V: Variables> std::iter::Sum for Laurent<V> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<V: Variables> std::iter::Product for Laurent<V> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| &acc * &x)
    }
}

impl<V: Variables> From<i64> for Laurent<V> {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{e}"),
    }
}

/// Terms are printed in descending lexicographic order, e.g.
/// `q^2*s^-4 - s^-2 + 1`.
impl<V: Variables> fmt::Display for Laurent<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let [x, y] = V::NAMES;
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let has_mono = a != 0 || b != 0;
            if !mag.is_one() || !has_mono {
                write!(f, "{mag}")?;
                if has_mono {
                    write!(f, "*")?;
                }
            }
            write_var(f, x, a)?;
            if a != 0 && b != 0 {
                write!(f, "*")?;
            }
            write_var(f, y, b)?;
        }
        Ok(())
    }
}

impl<V: Variables> fmt::Debug for Laurent<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    terms: Vec<(i32, i32, String)>,
}

/// `{"terms": [[e0, e1, "coeff"], ...]}`, sorted ascending by exponent pair.
impl<V: Variables> Serialize for Laurent<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            terms: self.terms.iter().map(|(&(a, b), c)| (a, b, c.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, V: Variables> Deserialize<'de> for Laurent<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (a, b, c) in raw.terms {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((a, b, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly;

    #[test]
    fn additive_cancellation() {
        let a = P::q() + P::s();
        assert_eq!(a + (-P::q()), P::s());
    }

    #[test]
    fn difference_of_squares() {
        let a = P::q() - P::qs(1, -1, 0);
        let b = P::q() + P::qs(1, -1, 0);
        assert_eq!(a * b, P::qs(1, 2, 0) - P::qs(1, -2, 0));
    }

    #[test]
    fn zero_annihilates() {
        let p = P::from_terms([(3, -1, 7), (0, 2, -2)]);
        assert!((P::zero() * &p).is_zero());
        assert_eq!((P::zero() * &p).num_terms(), 0);
    }

    #[test]
    fn exact_division() {
        let a = P::from_terms([(1, 0, 1), (0, 1, 1), (-1, 0, 3)]);
        let b = P::from_terms([(2, -1, 2), (0, 0, -1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&P::constant(2)), None);
        assert_eq!(P::one().div_exact(&(P::q() + P::one())), None);
    }

    #[test]
    fn units() {
        assert!(P::qs(-1, 3, -2).is_unit());
        assert!(!P::qs(2, 0, 0).is_unit());
        assert!(!(P::q() + P::s()).is_unit());
        assert_eq!(P::qs(-1, 3, -2).unit_inverse(), Some(P::qs(-1, -3, 2)));
    }

    #[test]
    fn display_and_json() {
        let p = P::from_terms([(2, -4, 1), (0, -2, -1), (0, 0, 1)]);
        assert_eq!(p.to_string(), "q^2*s^-4 + 1 - s^-2");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"terms":[[0,-2,"-1"],[0,0,"1"],[2,-4,"1"]]}"#);
        let back: P = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn specialize_values() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let p = P::qs(1, 1, -1);
        assert_eq!(p.specialize(&r(2, 1), &r(3, 1)).unwrap(), r(2, 3));
        let s_minus = P::s() - P::qs(1, 0, -1);
        assert!(s_minus.specialize(&r(5, 7), &r(1, 1)).unwrap().is_zero());
        assert_eq!(p.specialize(&r(0, 1), &r(1, 1)), Err(SpecializeError::ZeroPoint));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let t = LkbPoly::t();
        let big_q = LkbPoly::big_q();
        let x = -P::qs(1, -2, 0);
        let y = P::qs(1, 0, 2);
        let img = (&t * &big_q.pow(2)).substitute(&x, &y);
        assert_eq!(img, P::qs(-1, -2, 4));
    }
}
