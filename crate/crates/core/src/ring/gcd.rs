//! Gcd of two-variable polynomials over the integers.
//!
//! Laurent polynomials are shifted into the polynomial ring first; the gcd
//! there is computed by the primitive polynomial remainder sequence in
//! `Z[y][x]`, with the univariate gcd of contents computed the same way in
//! `Z[y]`. The result is only defined up to a unit of the Laurent ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::laurent::{Laurent, Variables};

/// Univariate polynomial, coefficients low degree first, no trailing zeros.
type Upoly = Vec<BigInt>;

fn trim(p: &mut Upoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn u_is_zero(p: &Upoly) -> bool {
    p.is_empty()
}

fn u_content(p: &Upoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn u_scale(p: &Upoly, k: &BigInt) -> Upoly {
    let mut out: Upoly = p.iter().map(|c| c * k).collect();
    trim(&mut out);
    out
}

fn u_div_int(p: &Upoly, k: &BigInt) -> Upoly {
    p.iter().map(|c| c / k).collect()
}

fn u_sub(a: &Upoly, b: &Upoly) -> Upoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn u_mul(a: &Upoly, b: &Upoly) -> Upoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn u_shift(p: &Upoly, k: usize) -> Upoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend(p.iter().cloned());
    out
}

/// Exact division in `Z[y]`; panics if inexact (callers only divide by
/// known factors).
fn u_div_exact(a: &Upoly, b: &Upoly) -> Upoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while !rem.is_empty() && rem.len() > db {
        let dr = rem.len() - 1;
        let (c, r) = rem[dr].div_rem(lb);
        assert!(r.is_zero(), "inexact univariate division");
        let k = dr - db;
        quot[k] = c.clone();
        let sub = u_shift(&u_scale(b, &c), k);
        rem = u_sub(&rem, &sub);
    }
    assert!(rem.is_empty(), "inexact univariate division");
    trim(&mut quot);
    quot
}

fn u_prem(a: &Upoly, b: &Upoly) -> Upoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let g = lr.gcd(lb);
        let (fa, fb) = (lb / &g, &lr / &g);
        r = u_sub(&u_scale(&r, &fa), &u_shift(&u_scale(b, &fb), dr - db));
    }
    r
}

fn u_primitive(p: &Upoly) -> Upoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = u_content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    u_div_int(p, &c)
}

fn u_gcd(a: &Upoly, b: &Upoly) -> Upoly {
    if u_is_zero(a) || u_is_zero(b) {
        let p = if u_is_zero(a) { b } else { a };
        return u_scale(&u_primitive(p), &u_content(p));
    }
    let c = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = (u_primitive(a), u_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = u_prem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    u_scale(&u_primitive(&x), &c)
}

/// Bivariate polynomial as a polynomial in `x` with coefficients in `Z[y]`.
type Bpoly = Vec<Upoly>;

fn b_trim(p: &mut Bpoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn b_content(p: &Bpoly) -> Upoly {
    p.iter().fold(Vec::new(), |g, c| u_gcd(&g, c))
}

fn b_div_u(p: &Bpoly, d: &Upoly) -> Bpoly {
    p.iter().map(|c| u_div_exact(c, d)).collect()
}

fn b_mul_u(p: &Bpoly, d: &Upoly) -> Bpoly {
    let mut out: Bpoly = p.iter().map(|c| u_mul(c, d)).collect();
    b_trim(&mut out);
    out
}

fn b_sub(a: &Bpoly, b: &Bpoly) -> Bpoly {
    let n = a.len().max(b.len());
    let empty = Vec::new();
    let mut out: Bpoly = (0..n)
        .map(|i| u_sub(a.get(i).unwrap_or(&empty), b.get(i).unwrap_or(&empty)))
        .collect();
    b_trim(&mut out);
    out
}

fn b_shift(p: &Bpoly, k: usize) -> Bpoly {
    let mut out = vec![Vec::new(); k];
    out.extend(p.iter().cloned());
    out
}

fn b_primitive(p: &Bpoly) -> Bpoly {
    if p.is_empty() {
        return Vec::new();
    }
    let c = b_content(p);
    let mut out = b_div_u(p, &c);
    // Normalize the sign of the leading integer coefficient.
    if out.last().and_then(|u| u.last()).is_some_and(|c| c.is_negative()) {
        for u in &mut out {
            for c in u.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
    }
    out
}

fn b_prem(a: &Bpoly, b: &Bpoly) -> Bpoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        r = b_sub(&b_mul_u(&r, lb), &b_shift(&b_mul_u(b, &lr), dr - db));
    }
    r
}

fn b_gcd(a: &Bpoly, b: &Bpoly) -> Bpoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = u_gcd(&b_content(a), &b_content(b));
    let (mut x, mut y) = (b_primitive(a), b_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = b_prem(&x, &y);
        x = y;
        y = b_primitive(&r);
    }
    b_mul_u(&b_primitive(&x), &c)
}

fn to_bpoly<V: Variables>(p: &Laurent<V>) -> Bpoly {
    let Some(((lo0, lo1), (hi0, _))) = p.exponent_box() else {
        return Vec::new();
    };
    let mut out: Bpoly = vec![Vec::new(); (hi0 - lo0 + 1) as usize];
    for (&(a, b), c) in p.terms() {
        let row = &mut out[(a - lo0) as usize];
        let k = (b - lo1) as usize;
        if row.len() <= k {
            row.resize(k + 1, BigInt::zero());
        }
        row[k] = c.clone();
    }
    out
}

fn from_bpoly<V: Variables>(p: &Bpoly) -> Laurent<V> {
    Laurent::from_terms(p.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (i as i32, j as i32, c.clone()))
    }))
}

/// Greatest common divisor in the Laurent ring, normalized to a polynomial
/// with minimal exponents zero and positive leading coefficient. The gcd of
/// two zeros is zero.
pub fn gcd<V: Variables>(a: &Laurent<V>, b: &Laurent<V>) -> Laurent<V> {
    if a.is_zero() && b.is_zero() {
        return Laurent::zero();
    }
    if a.is_zero() || b.is_zero() {
        let p = if a.is_zero() { b } else { a };
        return normalize(&from_bpoly(&to_bpoly(p)));
    }
    // Monomial fast path: only the integer content survives.
    if a.is_monomial() || b.is_monomial() {
        return Laurent::constant(a.content().gcd(&b.content()));
    }
    normalize(&from_bpoly(&b_gcd(&to_bpoly(a), &to_bpoly(b))))
}

fn normalize<V: Variables>(p: &Laurent<V>) -> Laurent<V> {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LaurentPoly as P;

    fn p(terms: &[(i32, i32, i64)]) -> P {
        P::from_terms(terms.iter().copied())
    }

    #[test]
    fn recovers_common_factor() {
        let f = p(&[(1, 0, 1), (0, 1, -1), (0, 0, 2)]);
        let g = p(&[(2, 1, 3), (0, 0, 1)]);
        let h = p(&[(1, 1, 1), (0, 2, 1), (0, 0, -5)]);
        let d = gcd(&(&f * &g), &(&f * &h));
        assert!(d.div_exact(&f).is_some_and(|u| u.is_unit()), "gcd = {d}");
    }

    #[test]
    fn laurent_shift_is_a_unit() {
        let f = p(&[(1, 0, 1), (-1, 0, -1)]);
        let g = p(&[(1, 0, 1), (0, 0, -1)]).mul_monomial(-3, 2);
        let d = gcd(&f, &g);
        assert!(d.div_exact(&g).is_some_and(|u| u.is_unit()));
    }

    #[test]
    fn coprime_and_contents() {
        let f = p(&[(1, 0, 2), (0, 1, 4)]);
        let g = p(&[(1, 0, 6), (0, 0, 3)]);
        assert_eq!(gcd(&f, &g), P::constant(1));
        let h = p(&[(1, 0, 4), (0, 1, 8)]);
        assert_eq!(gcd(&f, &h), p(&[(1, 0, 2), (0, 1, 4)]));
    }
}
