//! Balanced q-integers, q-factorials and q-binomials in `q` alone.

use num_traits::{One, Zero};

use super::{LaurentPoly, RingError};

/// `[n]_q = (q^n - q^-n) / (q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn qint(n: i64) -> Result<LaurentPoly, RingError> {
    if n < 0 {
        return Err(RingError::NegativeQInteger(n));
    }
    Ok(qint_unchecked(n as u32))
}

pub(crate) fn qint_unchecked(n: u32) -> LaurentPoly {
    let n = n as i32;
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 0, 1)))
}

pub fn qfactorial(n: u32) -> LaurentPoly {
    (1..=n).map(qint_unchecked).product()
}

/// Gaussian binomial `[n]_q! / ([n-j]_q! [j]_q!)`.
pub fn qbinom(n: i64, j: i64) -> Result<LaurentPoly, RingError> {
    if n < 0 || j < 0 || j > n {
        return Err(RingError::BinomialRange { n, j });
    }
    Ok(qbinom_unchecked(n as u32, j as u32))
}

pub(crate) fn qbinom_unchecked(n: u32, j: u32) -> LaurentPoly {
    if j == 0 || j == n {
        return LaurentPoly::one();
    }
    let j = j.min(n - j);
    // [n][n-1]...[n-j+1] / [j]!, divided exactly.
    let top: LaurentPoly = ((n - j + 1)..=n).map(qint_unchecked).product();
    let bottom = qfactorial(j);
    let quotient = top.div_exact(&bottom).expect("q-binomial division must be exact");
    debug_assert!(!quotient.is_zero());
    quotient
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly;

    #[test]
    fn small_qints() {
        assert!(qint(0).unwrap().is_zero());
        assert_eq!(qint(1).unwrap(), P::one());
        assert_eq!(qint(3).unwrap(), P::from_terms([(2, 0, 1), (0, 0, 1), (-2, 0, 1)]));
        assert!(qint(-1).is_err());
    }

    #[test]
    fn small_binomials() {
        for n in 0..6 {
            assert_eq!(qbinom(n, 0).unwrap(), P::one());
        }
        assert_eq!(qbinom(2, 1).unwrap(), P::from_terms([(1, 0, 1), (-1, 0, 1)]));
        assert_eq!(
            qbinom(4, 2).unwrap(),
            P::from_terms([(4, 0, 1), (2, 0, 1), (0, 0, 2), (-2, 0, 1), (-4, 0, 1)])
        );
        assert!(qbinom(3, 4).is_err());
        assert!(qbinom(3, -1).is_err());
    }

    #[test]
    fn symmetry_and_pascal() {
        for n in 1..=12i64 {
            for j in 0..=n {
                let b = qbinom(n, j).unwrap();
                assert_eq!(b, qbinom(n, n - j).unwrap());
                if j >= 1 && j < n {
                    let lhs = qbinom(n - 1, j).unwrap().mul_monomial(j as i32, 0)
                        + qbinom(n - 1, j - 1).unwrap().mul_monomial((j - n) as i32, 0);
                    assert_eq!(b, lhs, "q-Pascal at n={n} j={j}");
                }
            }
        }
    }
}
