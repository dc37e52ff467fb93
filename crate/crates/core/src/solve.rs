//! Exact linear algebra over `Q` and over `F_p`, `p = 2^61 - 1`.
//!
//! Ranks over `F_p` never exceed ranks over `Q` for the same integer (or
//! `p`-integral) matrix, so a full rank mod `p` is a certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn int_mod(x: &BigInt) -> u64 {
    let m = x.mod_floor(&BigInt::from(P));
    u64::try_from(m).expect("residue fits in u64")
}

/// Image of a rational number in `F_p`; `None` if `p` divides the
/// denominator.
pub(crate) fn reduce(x: &BigRational) -> Option<u64> {
    let d = int_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(int_mod(x.numer()), inv(d)))
}

/// Row-echelon basis over `F_p` that grows one vector at a time.
pub(crate) struct EchelonModP {
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonModP {
    pub(crate) fn new(width: usize) -> Self {
        EchelonModP {
            width,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = sub(*x, mul(f, y));
                    }
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[pivot]);
        for x in v.iter_mut() {
            *x = mul(*x, s);
        }
        // Keep the basis fully reduced at the new pivot.
        for (_, row) in self.rows.iter_mut() {
            let f = row[pivot];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    if y != 0 {
                        *x = sub(*x, mul(f, y));
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

pub(crate) fn rank_mod_p(rows: Vec<Vec<u64>>, width: usize) -> usize {
    let mut e = EchelonModP::new(width);
    for r in rows {
        e.insert(r);
        if e.rank() == width {
            break;
        }
    }
    e.rank()
}

pub(crate) fn rank_rational(mut rows: Vec<Vec<BigRational>>, width: usize) -> usize {
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let prow: Vec<BigRational> = rows[rank].iter().map(|x| x / &pivot).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&prow).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Matrix product over `F_p` for square row-major matrices of side `d`.
pub(crate) fn mat_mul(a: &[u64], b: &[u64], d: usize) -> Vec<u64> {
    let mut out = vec![0; d * d];
    for r in 0..d {
        for k in 0..d {
            let x = a[r * d + k];
            if x == 0 {
                continue;
            }
            for c in 0..d {
                let y = b[k * d + c];
                if y != 0 {
                    out[r * d + c] = add(out[r * d + c], mul(x, y));
                }
            }
        }
    }
    out
}

/// Parses `a`, `-a` or `a/b` into a rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// `a/b` or `a` in lowest terms with a positive denominator.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        debug_assert!(x.denom().is_positive());
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverses_mod_p() {
        for a in [1u64, 2, 3, 12345, P - 1] {
            assert_eq!(mul(a, inv(a)), 1);
        }
        assert_eq!(reduce(&r(1, 2)).map(|h| mul(h, 2)), Some(1));
        assert_eq!(reduce(&r(-3, 1)), Some(P - 3));
    }

    #[test]
    fn ranks_agree_on_small_systems() {
        let q = vec![
            vec![r(1, 1), r(2, 1), r(3, 1)],
            vec![r(2, 1), r(4, 1), r(6, 1)],
            vec![r(0, 1), r(1, 3), r(1, 1)],
        ];
        assert_eq!(rank_rational(q.clone(), 3), 2);
        let m: Vec<Vec<u64>> = q
            .iter()
            .map(|row| row.iter().map(|x| reduce(x).unwrap()).collect())
            .collect();
        assert_eq!(rank_mod_p(m, 3), 2);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6"), Some(r(1, 2)));
        assert_eq!(parse_rational("-4"), Some(r(-4, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&r(6, -4)), "-3/2");
    }
}
