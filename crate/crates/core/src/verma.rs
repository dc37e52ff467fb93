//! The integral quantum group acting on the generic Verma module `V` and on
//! its tensor powers.
//!
//! `V` is free over `Z[q^±1, s^±1]` on `v_0, v_1, ...` with
//!
//! ```text
//! K v_j      = s q^(-2j) v_j
//! E v_j      = v_(j-1)                (E v_0 = 0)
//! F^(m) v_j  = [m+j choose j]_q * prod_(k<m) (s q^(-k-j) - s^-1 q^(k+j)) v_(j+m)
//! ```
//!
//! and tensor powers are acted on through the iterated coproduct
//! `Δ(K) = K⊗K`, `Δ(E) = E⊗K + 1⊗E`,
//! `Δ(F^(m)) = Σ_j q^(-j(m-j)) K^(j-m) F^(j) ⊗ F^(m-j)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cache::{Memo, OnceMap};
use crate::ring::{qbinom_unchecked, LaurentPoly, Scalar};

/// Exponents `(α_1, ..., α_n)` of a pure tensor `v_α1 ⊗ ... ⊗ v_αn`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        MultiIndex(entries.into())
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `v_j` in position `pos` (0-based), `v_0` elsewhere.
    pub fn single(n: usize, pos: usize, j: u32) -> Self {
        let mut e = vec![0; n];
        e[pos] = j;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight degree `l = Σ α_i`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// 0-based position and value of the first nonzero entry.
    pub fn first_nonzero(&self) -> Option<(usize, u32)> {
        self.0.iter().position(|&a| a != 0).map(|p| (p, self.0[p]))
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| format!("v{a}")).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// A finite linear combination of pure tensors in `V^⊗n`.
#[derive(Clone, PartialEq)]
pub struct TensorVec<S> {
    n: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> TensorVec<S> {
    pub fn zero(n: usize) -> Self {
        TensorVec {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(idx: MultiIndex) -> Self {
        let mut v = Self::zero(idx.len());
        v.terms.insert(idx, S::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, S)>>(n: usize, iter: I) -> Self {
        let mut v = Self::zero(n);
        for (idx, c) in iter {
            v.add_term(idx, &c);
        }
        v
    }

    /// Strand count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: &S) {
        assert_eq!(idx.len(), self.n, "multi-index length must match strand count");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> S {
        self.terms.get(idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common weight degree of all terms; `None` when the vector is zero or
    /// not homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(MultiIndex::total);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        TensorVec {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.clone() * k))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero(self.n);
        }
        TensorVec {
            n: self.n,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c.mul_poly(p))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "strand mismatch");
        for (i, c) in &other.terms {
            self.add_term(i.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        assert_eq!(self.n, other.n, "strand mismatch");
        for (i, c) in &other.terms {
            out.add_term(i.clone(), &-c.clone());
        }
        out
    }

    /// Keeps only the terms selected by `keep`.
    pub fn filter<F: Fn(&MultiIndex) -> bool>(&self, keep: F) -> Self {
        TensorVec {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| keep(i))
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n + other.n);
        for (i, c) in &self.terms {
            for (j, d) in &other.terms {
                out.add_term(i.concat(j), &(c.clone() * d));
            }
        }
        out
    }

    /// Changes coefficient domain, e.g. from the Laurent ring into its
    /// fraction field.
    pub fn convert<T: Scalar + From<S>>(&self) -> TensorVec<T> {
        TensorVec {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), T::from(c.clone())))
                .collect(),
        }
    }

    /// The same vector over the Laurent ring, if every coefficient lies there.
    pub fn to_laurent(&self) -> Option<TensorVec<LaurentPoly>> {
        let mut terms = BTreeMap::new();
        for (i, c) in &self.terms {
            terms.insert(i.clone(), c.as_laurent()?);
        }
        Some(TensorVec { n: self.n, terms })
    }

    /// Applies a linear map given on pure tensors.
    pub fn map_linear<F>(&self, n_out: usize, f: F) -> Self
    where
        F: Fn(&MultiIndex) -> Vec<(MultiIndex, LaurentPoly)>,
    {
        let mut out = Self::zero(n_out);
        for (idx, c) in &self.terms {
            for (j, p) in f(idx) {
                out.add_term(j, &c.mul_poly(&p));
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for TensorVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorVec[n={}]", self.n)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Scalar> fmt::Display for TensorVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {idx}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a, S> {
    idx: &'a [u32],
    coeff: &'a S,
}

/// `{"n": n, "terms": [{"idx": [...], "coeff": ...}, ...]}`, sorted by index.
impl<S: Scalar> Serialize for TensorVec<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        let terms: Vec<TermJson<'_, S>> = self
            .terms
            .iter()
            .map(|(i, c)| TermJson {
                idx: i.entries(),
                coeff: c,
            })
            .collect();
        let mut st = serializer.serialize_struct("TensorVec", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Generators of the integral algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraGen {
    K,
    KInv,
    E,
    /// Divided power `F^(m)`, `m ≥ 1`.
    F(u32),
}

/// `K^a` eigenvalue on `v_j`: `s^a q^(-2aj)`.
fn k_power_eigen(a: i32, j: u32) -> (i32, i32) {
    (-2 * a * j as i32, a)
}

fn f_cache() -> &'static OnceMap<(u32, u32), LaurentPoly> {
    static CACHE: Memo<(u32, u32), LaurentPoly> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new)
}

/// Coefficient of `v_(j+m)` in `F^(m) v_j`.
pub fn f_coefficient(m: u32, j: u32) -> LaurentPoly {
    if m == 0 {
        return LaurentPoly::one();
    }
    (*f_cache().get_or_init(&(m, j), || {
        let (m_i, j_i) = (m as i32, j as i32);
        let prod: LaurentPoly = (0..m_i)
            .map(|k| LaurentPoly::qs(1, -k - j_i, 1) - LaurentPoly::qs(1, k + j_i, -1))
            .product();
        &qbinom_unchecked(m + j, j) * &prod
    }))
    .clone()
}

/// The generator applied to a single basis vector: target index and
/// coefficient, or `None` when the result is zero.
pub fn single_action(g: AlgebraGen, j: u32) -> Option<(u32, LaurentPoly)> {
    match g {
        AlgebraGen::K => {
            let (eq, es) = k_power_eigen(1, j);
            Some((j, LaurentPoly::monomial(1, eq, es)))
        }
        AlgebraGen::KInv => {
            let (eq, es) = k_power_eigen(-1, j);
            Some((j, LaurentPoly::monomial(1, eq, es)))
        }
        AlgebraGen::E => (j > 0).then(|| (j - 1, LaurentPoly::one())),
        AlgebraGen::F(m) => {
            assert!(m >= 1, "divided powers F(m) need m ≥ 1");
            Some((j + m, f_coefficient(m, j)))
        }
    }
}

/// `g · v_j` as a one-strand tensor vector.
pub fn act_single(g: AlgebraGen, j: u32) -> TensorVec<LaurentPoly> {
    let mut v = TensorVec::zero(1);
    if let Some((k, c)) = single_action(g, j) {
        v.add_term(MultiIndex(vec![k]), &c);
    }
    v
}

/// All compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Basis of the weight space `V_(n,l)`: all compositions of `l` into `n`
/// parts, lexicographically ascending.
pub fn weight_basis(n: usize, l: u32) -> Vec<MultiIndex> {
    assert!(n >= 1, "weight spaces need at least one strand");
    compositions(l, n).into_iter().map(MultiIndex).collect()
}

/// `Δ^(n)(g)` applied to one pure tensor.
pub fn act_on_index(g: AlgebraGen, idx: &MultiIndex) -> Vec<(MultiIndex, LaurentPoly)> {
    let a = idx.entries();
    let n = a.len();
    match g {
        AlgebraGen::K | AlgebraGen::KInv => {
            let sign = if g == AlgebraGen::K { 1 } else { -1 };
            let l: u32 = a.iter().sum();
            vec![(
                idx.clone(),
                LaurentPoly::monomial(1, -2 * sign * l as i32, sign * n as i32),
            )]
        }
        AlgebraGen::E => {
            // Σ_p 1^(p-1) ⊗ E ⊗ K^(n-p)
            let mut out = Vec::new();
            let mut tail = 0u32;
            for p in (0..n).rev() {
                if a[p] > 0 {
                    let mut e = a.to_vec();
                    e[p] -= 1;
                    let k = (n - 1 - p) as i32;
                    out.push((MultiIndex(e), LaurentPoly::monomial(1, -2 * tail as i32, k)));
                }
                tail += a[p];
            }
            out
        }
        AlgebraGen::F(m) => (*f_action_cache().get_or_init(&(m, idx.clone()), || f_on_index(m, a))).clone(),
    }
}

fn f_action_cache() -> &'static OnceMap<(u32, MultiIndex), Vec<(MultiIndex, LaurentPoly)>> {
    static CACHE: Memo<(u32, MultiIndex), Vec<(MultiIndex, LaurentPoly)>> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new)
}

fn f_on_index(m: u32, a: &[u32]) -> Vec<(MultiIndex, LaurentPoly)> {
    let n = a.len();
    compositions(m, n)
        .into_iter()
        .map(|parts| {
            let mut coeff = LaurentPoly::one();
            let mut e = a.to_vec();
            let mut later: u32 = parts.iter().sum();
            let mut q_cross = 0i64;
            for p in 0..n {
                later -= parts[p];
                q_cross += parts[p] as i64 * later as i64;
                if parts[p] > 0 {
                    coeff = &coeff * &f_coefficient(parts[p], a[p]);
                }
                e[p] += parts[p];
                if later > 0 {
                    let (eq, es) = k_power_eigen(-(later as i32), e[p]);
                    coeff = coeff.mul_monomial(eq, es);
                }
            }
            (MultiIndex(e), coeff.mul_monomial(-q_cross as i32, 0))
        })
        .collect()
}

/// `Δ^(n)(g) · v`.
pub fn act_tensor<S: Scalar>(g: AlgebraGen, v: &TensorVec<S>) -> TensorVec<S> {
    v.map_linear(v.n(), |idx| act_on_index(g, idx))
}

/// `E^k · v`.
pub fn act_e_power<S: Scalar>(k: u32, v: &TensorVec<S>) -> TensorVec<S> {
    (0..k).fold(v.clone(), |acc, _| act_tensor(AlgebraGen::E, &acc))
}

/// `F^(m) · v`, with `F^(0)` the identity.
pub fn act_f<S: Scalar>(m: u32, v: &TensorVec<S>) -> TensorVec<S> {
    if m == 0 {
        v.clone()
    } else {
        act_tensor(AlgebraGen::F(m), v)
    }
}

/// The `K`-eigenvalue `s^n q^(-2l)` on `V_(n,l)`.
pub fn k_eigenvalue(n: usize, l: u32) -> LaurentPoly {
    LaurentPoly::monomial(1, -2 * l as i32, n as i32)
}
