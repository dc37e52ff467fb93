//! The Lawrence-Krammer representation on pairs `F_(i,j)`, the Burau
//! representations, and their identification with `W_(n,2)` and `W_(n,1)`.
//!
//! LKB matrices live over `Z[t^±1, Q^±1]`, a different type from `Z[q^±1, s^±1]`;
//! the only bridge is [`theta`].

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::braid::BraidError;
use crate::cache::{Memo, OnceMap};
use crate::hwspace::{hw_basis, rho_generator};
use crate::matrix::Matrix;
use crate::par;
use crate::report::{CheckItem, CheckReport};
use crate::ring::{LaurentPoly, LkbPoly};

/// Pairs `1 ≤ i < j ≤ n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

fn pair_position(n: usize, (i, j): (usize, usize)) -> usize {
    // Pairs starting below i come first.
    let before: usize = (1..i).map(|a| n - a).sum();
    before + (j - i - 1)
}

/// An LKB matrix in the pair basis; columns are images.
#[derive(Clone, Debug, PartialEq)]
pub struct LkbMatrix {
    pub n: usize,
    pub basis: Vec<(usize, usize)>,
    pub matrix: Matrix<LkbPoly>,
}

/// `{"n", "basis": ["F(1,2)", ...], "rows": [...]}` with variables `t`, `Q`.
impl Serialize for LkbMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let labels: Vec<String> = self.basis.iter().map(|(i, j)| format!("F({i},{j})")).collect();
        let mut st = serializer.serialize_struct("LkbMatrix", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("basis", &labels)?;
        st.serialize_field("rows", &self.matrix)?;
        st.end()
    }
}

fn check_generator(n: usize, i: usize) -> Result<(), BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands { n, min: 2 });
    }
    if i == 0 || i >= n {
        return Err(BraidError::LetterOutOfRange { letter: i as i32, n });
    }
    Ok(())
}

/// Image of `σ_i^-1 F_(a,b)` as (pair, coefficient) terms.
fn sigma_inverse_on_pair(i: usize, a: usize, b: usize) -> Vec<((usize, usize), LkbPoly)> {
    type T = LkbPoly;
    let qi = T::monomial(1, 0, -1);
    let one_minus = T::one() - &qi;
    let q1_q2 = &qi - &T::monomial(1, 0, -2);
    if (a, b) == (i, i + 1) {
        return vec![((i, i + 1), T::monomial(-1, -1, -2))];
    }
    if a == i + 1 {
        return vec![((i, b), T::one())];
    }
    if b == i + 1 {
        return vec![((a, i), T::one())];
    }
    if a == i {
        return vec![
            ((i + 1, b), qi),
            ((i, b), one_minus),
            ((i, i + 1), q1_q2.mul_monomial(-1, 0)),
        ];
    }
    if b == i {
        return vec![((a, i + 1), qi), ((a, i), one_minus), ((i, i + 1), -q1_q2)];
    }
    vec![((a, b), T::one())]
}

fn sigma_inverse_matrix(n: usize, i: usize) -> Matrix<LkbPoly> {
    let basis = pairs(n);
    let columns = basis
        .iter()
        .map(|&(a, b)| {
            let mut col = vec![LkbPoly::zero(); basis.len()];
            for (p, c) in sigma_inverse_on_pair(i, a, b) {
                let k = pair_position(n, p);
                col[k] = &col[k] + &c;
            }
            col
        })
        .collect();
    Matrix::from_columns(basis.len(), columns)
}

/// `σ_i^-1` on the LKB module.
pub fn lkb_sigma_inverse(n: usize, i: usize) -> Result<LkbMatrix, BraidError> {
    check_generator(n, i)?;
    Ok(LkbMatrix {
        n,
        basis: pairs(n),
        matrix: sigma_inverse_matrix(n, i),
    })
}

/// `σ_i` on the LKB module, as the exact inverse of [`lkb_sigma_inverse`].
///
/// # Panics
/// If the inverse leaves `Z[t^±1, Q^±1]`, which would be a bug.
pub fn lkb_sigma(n: usize, i: usize) -> Result<LkbMatrix, BraidError> {
    check_generator(n, i)?;
    static CACHE: Memo<(usize, usize), Matrix<LkbPoly>> = OnceLock::new();
    let m = CACHE.get_or_init(OnceMap::new).get_or_init(&(n, i), || {
        sigma_inverse_matrix(n, i)
            .inverse()
            .expect("LKB generators are invertible over the Laurent ring")
    });
    Ok(LkbMatrix {
        n,
        basis: pairs(n),
        matrix: (*m).clone(),
    })
}

/// LKB matrix of a signed letter.
pub fn lkb_letter(n: usize, letter: i32) -> Result<LkbMatrix, BraidError> {
    let i = letter.unsigned_abs() as usize;
    if letter > 0 {
        lkb_sigma(n, i)
    } else {
        lkb_sigma_inverse(n, i)
    }
}

/// Parameter identifications from `Z[t^±1, Q^±1]` to `Z[q^±1, s^±1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta {
    /// `t ↦ -q^-2`, `Q ↦ s^2`.
    Standard,
    /// `t ↦ +q^-2`; a negative control.
    WrongSign,
}

impl Theta {
    pub fn apply(self, p: &LkbPoly) -> LaurentPoly {
        let t = match self {
            Theta::Standard => LaurentPoly::qs(-1, -2, 0),
            Theta::WrongSign => LaurentPoly::qs(1, -2, 0),
        };
        p.substitute(&t, &LaurentPoly::qs(1, 0, 2))
    }
}

/// `t ↦ -q^-2`, `Q ↦ s^2`.
pub fn theta(p: &LkbPoly) -> LaurentPoly {
    Theta::Standard.apply(p)
}

/// Checks `𝓕 σ_i^-1 = σ_i 𝓕` for every generator, where `𝓕(F_(i,j)) =
/// s^(i+j) w_(i,j)` is semilinear over `θ`. In matrix form:
/// `ρ_(n,2)(σ_i) = D θ(M_i) D^-1` with `M_i` the matrix of `σ_i^-1` and
/// `D = diag(s^(i+j))`.
pub fn fork_iso_check(n: usize) -> CheckReport {
    fork_iso_check_with(Theta::Standard, n)
}

pub fn fork_iso_check_with(th: Theta, n: usize) -> CheckReport {
    let labels = hw_basis(n, 2).labels();
    let hw_pairs: Vec<(usize, usize)> = labels
        .iter()
        .map(|l| l.pair().expect("weight-two labels are pairs"))
        .collect();
    let weight = |(a, b): (usize, usize)| (a + b) as i32;
    let gens: Vec<usize> = (1..n).collect();
    let items = par::map_slice(&gens, |&i| {
        let m = sigma_inverse_matrix(n, i);
        let transported = Matrix::from_fn(labels.len(), labels.len(), |r, c| {
            let (pr, pc) = (hw_pairs[r], hw_pairs[c]);
            let x = th.apply(m.get(pair_position(n, pr), pair_position(n, pc)));
            x.mul_monomial(0, weight(pr) - weight(pc))
        });
        let rho = rho_generator(n, 2, i as i32);
        CheckItem::new(format!("F s{i}^-1 = s{i} F"), transported.first_mismatch(&rho))
    });
    let name = match th {
        Theta::Standard => "theta",
        Theta::WrongSign => "theta-wrong-sign",
    };
    CheckReport::from_items("lkb", json!({"n": n, "theta": name}), items)
}

/// Relations of `B_n` for the LKB matrices: inverse pairs, braid relations
/// and far commutation.
pub fn check_lkb_relations(n: usize) -> CheckReport {
    let m = |letter: i32| lkb_letter(n, letter).expect("letter in range").matrix;
    let dim = pairs(n).len();
    let mut items = Vec::new();
    for i in 1..n as i32 {
        items.push(CheckItem::new(
            format!("s{i} s{i}^-1 = 1"),
            m(i).mul(&m(-i)).first_mismatch(&Matrix::identity(dim)),
        ));
    }
    for i in 1..n as i32 - 1 {
        let lhs = m(i).mul(&m(i + 1)).mul(&m(i));
        let rhs = m(i + 1).mul(&m(i)).mul(&m(i + 1));
        items.push(CheckItem::new(
            format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
            lhs.first_mismatch(&rhs),
        ));
    }
    for i in 1..n as i32 {
        for j in i + 2..n as i32 {
            items.push(CheckItem::new(
                format!("s{i} s{j} = s{j} s{i}"),
                m(i).mul(&m(j)).first_mismatch(&m(j).mul(&m(i))),
            ));
        }
    }
    CheckReport::from_items("lkb-relations", json!({"n": n}), items)
}

/// Unreduced Burau matrix of `σ_i` in the basis `d_1, ..., d_n`:
/// `σ_i d_i = (1-t) d_i + d_(i+1)`, `σ_i d_(i+1) = t d_i`.
fn burau_unreduced_t(n: usize, i: usize) -> Matrix<LkbPoly> {
    let t = LkbPoly::t();
    let mut m = Matrix::identity(n);
    let (a, b) = (i - 1, i);
    m.set(a, a, LkbPoly::one() - &t);
    m.set(b, a, LkbPoly::one());
    m.set(a, b, t);
    m.set(b, b, LkbPoly::zero());
    m
}

/// Reduced Burau matrix of `σ_i` in the basis `u_j = t^-j d_j - t^-n d_n`,
/// `j < n`. A kernel vector `Σ x_j d_j` has coordinates `y_j = t^j x_j`.
fn burau_reduced_t(n: usize, i: usize) -> Matrix<LkbPoly> {
    let full = burau_unreduced_t(n, i);
    let columns = (1..n)
        .map(|c| {
            let mut u = vec![LkbPoly::zero(); n];
            u[c - 1] = LkbPoly::monomial(1, -(c as i32), 0);
            u[n - 1] = LkbPoly::monomial(-1, -(n as i32), 0);
            let image: Vec<LkbPoly> = (0..n)
                .map(|r| (0..n).fold(LkbPoly::zero(), |acc, k| acc + &(full.get(r, k).clone() * &u[k])))
                .collect();
            (1..n).map(|r| image[r - 1].mul_monomial(r as i32, 0)).collect()
        })
        .collect();
    Matrix::from_columns(n - 1, columns)
}

/// Burau generator matrices in the variable `t` (the `Q` exponent is zero).
pub fn burau_matrices_t(n: usize, reduced: bool) -> Vec<Matrix<LkbPoly>> {
    (1..n)
        .map(|i| {
            if reduced {
                burau_reduced_t(n, i)
            } else {
                burau_unreduced_t(n, i)
            }
        })
        .collect()
}

/// Burau generator matrices over `Z[q^±1, s^±1]` with `t = s^-2`.
pub fn burau_matrices(n: usize, reduced: bool) -> Vec<Matrix<LaurentPoly>> {
    static CACHE: Memo<(usize, bool), Vec<Matrix<LaurentPoly>>> = OnceLock::new();
    let v: Arc<Vec<Matrix<LaurentPoly>>> = CACHE.get_or_init(OnceMap::new).get_or_init(&(n, reduced), || {
        burau_matrices_t(n, reduced)
            .iter()
            .map(|m| m.map(|p| p.substitute(&LaurentPoly::qs(1, 0, -2), &LaurentPoly::one())))
            .collect()
    });
    (*v).clone()
}

/// `ρ_(n,1)` against reduced Burau under `u_j = s^j w_j`, `t = s^-2`, plus
/// the unreduced quotient invariant `d_j ↦ t^j`.
pub fn check_burau(n: usize) -> CheckReport {
    let labels = hw_basis(n, 1).labels();
    let idx: Vec<usize> = labels
        .iter()
        .map(|l| l.burau_index().expect("weight-one labels"))
        .collect();
    let reduced = burau_matrices(n, true);
    let mut items = Vec::new();
    for i in 1..n {
        let rho = rho_generator(n, 1, i as i32);
        let rescaled = Matrix::from_fn(n - 1, n - 1, |r, c| {
            let (br, bc) = (idx[r], idx[c]);
            rho.get(r, c).mul_monomial(0, bc as i32 - br as i32)
        });
        let target = Matrix::from_fn(n - 1, n - 1, |r, c| reduced[i - 1].get(idx[r] - 1, idx[c] - 1).clone());
        items.push(CheckItem::new(
            format!("W(n,1) s{i} = reduced Burau"),
            rescaled.first_mismatch(&target),
        ));
    }
    let t = LkbPoly::t();
    let quotient_ok = burau_matrices_t(n, false).iter().all(|m| {
        (0..n).all(|c| {
            let image = (0..n).fold(LkbPoly::zero(), |acc, r| {
                acc + &(m.get(r, c).clone() * &t.pow(r as u32 + 1))
            });
            image == t.pow(c as u32 + 1)
        })
    });
    items.push(CheckItem::flag("unreduced preserves d_j -> t^j", quotient_ok));
    CheckReport::from_items("burau", json!({"n": n}), items)
}
