//! Highest weight spaces `W_(n,l) = ker E ∩ V_(n,l)` and the braid
//! representations on them.
//!
//! `V_(n,l)` splits along pure tensors into the span of `A` (first nonzero
//! entry equal to 1, not in the last slot) and `B` (everything else). The
//! automorphism `Φ` is the identity on `B` and sends each `a_α` into `W`;
//! the images form a basis of `W`. A braid acts on that basis through
//! `π_A ∘ σ ∘ Φ`, where `π_A` drops the `B` components.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::braid::{coordinates, BraidError, BraidWord, Braiding};
use crate::cache::{Memo, OnceMap};
use crate::matrix::Matrix;
use crate::par;
use crate::report::{CheckItem, CheckReport};
use crate::ring::{LaurentPoly, Scalar};
use crate::verma::{act_e_power, act_on_index, act_tensor, weight_basis, AlgebraGen, MultiIndex, TensorVec};

/// Labels for the pure-tensor basis of `V_(n,l)` adapted to the `A`/`B`
/// splitting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ABLabel {
    /// `v_0^⊗n`, the whole of `V_(n,0)`.
    Ground {
        n: usize,
    },
    /// `a_α = v_0^⊗(j-2) ⊗ v_1 ⊗ v_α` with `α = (α_j, ..., α_n)`.
    A {
        j: usize,
        tail: Vec<u32>,
    },
    B(MultiIndex),
}

impl ABLabel {
    /// Sorts a pure tensor into the splitting.
    pub fn classify(idx: &MultiIndex) -> ABLabel {
        let n = idx.len();
        match idx.first_nonzero() {
            None => ABLabel::Ground { n },
            Some((p, 1)) if p + 1 < n => ABLabel::A {
                j: p + 2,
                tail: idx.entries()[p + 1..].to_vec(),
            },
            Some(_) => ABLabel::B(idx.clone()),
        }
    }

    pub fn index(&self) -> MultiIndex {
        match self {
            ABLabel::Ground { n } => MultiIndex::zeros(*n),
            ABLabel::A { j, tail } => {
                let mut e = vec![0; j - 2];
                e.push(1);
                e.extend_from_slice(tail);
                MultiIndex(e)
            }
            ABLabel::B(idx) => idx.clone(),
        }
    }

    pub fn is_a(&self) -> bool {
        !matches!(self, ABLabel::B(_))
    }

    /// For `l = 2` A-labels, the 1-based positions `(i, j)` of the two `v_1`.
    pub fn pair(&self) -> Option<(usize, usize)> {
        let ABLabel::A { j, tail } = self else {
            return None;
        };
        if tail.iter().sum::<u32>() != 1 {
            return None;
        }
        let k = tail.iter().position(|&a| a == 1)?;
        Some((j - 1, j + k))
    }

    /// For `l = 1` A-labels, the index `i` of `c_i`.
    pub fn burau_index(&self) -> Option<usize> {
        match self {
            ABLabel::A { j, tail } if tail.iter().all(|&a| a == 0) => Some(j - 1),
            _ => None,
        }
    }
}

/// `w(i,j)` for the weight-two basis, `w[α_j,...,α_n]@j` otherwise.
impl fmt::Display for ABLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ABLabel::Ground { .. } => write!(f, "w[]"),
            ABLabel::A { j, tail } => {
                if let Some((a, b)) = self.pair() {
                    return write!(f, "w({a},{b})");
                }
                let t: Vec<String> = tail.iter().map(u32::to_string).collect();
                write!(f, "w[{}]@{j}", t.join(","))
            }
            ABLabel::B(idx) => {
                let t: Vec<String> = idx.entries().iter().map(u32::to_string).collect();
                write!(f, "b[{}]", t.join(","))
            }
        }
    }
}

impl Serialize for ABLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

type Preimages = HashMap<MultiIndex, TensorVec<LaurentPoly>>;

/// `E^-1` on every pure tensor of `V_(n,d)`, landing in the `B` span of
/// `V_(n,d+1)`.
fn preimages(n: usize, d: u32) -> Arc<Preimages> {
    static CACHE: Memo<(usize, u32), Preimages> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new).get_or_init(&(n, d), || {
        let mut out = Preimages::new();
        if d == 0 {
            out.insert(MultiIndex::zeros(n), TensorVec::basis(MultiIndex::single(n, n - 1, 1)));
            return out;
        }
        let mut basis = weight_basis(n, d);
        // Correction terms have a larger first nonzero entry, so handle
        // those first.
        basis.sort_by_key(|idx| std::cmp::Reverse(idx.first_nonzero().map(|(_, a)| a)));
        for alpha in basis {
            let (k, _) = alpha.first_nonzero().expect("nonzero weight");
            let mut b = alpha.entries().to_vec();
            b[k] += 1;
            let b = MultiIndex(b);
            let mut acc = TensorVec::basis(b.clone());
            let mut unit = None;
            for (beta, c) in act_on_index(AlgebraGen::E, &b) {
                if beta == alpha {
                    unit = Some(c);
                } else {
                    acc = acc.sub(&out[&beta].scale(&c));
                }
            }
            let unit = unit
                .and_then(|u| u.unit_inverse())
                .expect("leading coefficient of E on the lift is a unit");
            out.insert(alpha, acc.scale(&unit));
        }
        out
    })
}

/// The unique `η` in the `B` span with `E η = v`, for `v` in `V_(n,d)`.
pub fn e_inverse_on_b<S: Scalar>(v: &TensorVec<S>) -> TensorVec<S> {
    let n = v.n();
    let Some(d) = v.degree() else {
        assert!(v.is_zero(), "E^-1 needs a homogeneous vector");
        return TensorVec::zero(n);
    };
    let pre = preimages(n, d);
    let mut out = TensorVec::zero(n);
    for (idx, c) in v.terms() {
        for (j, p) in pre[idx].terms() {
            out.add_term(j.clone(), &c.mul_poly(p));
        }
    }
    out
}

/// `Φ` on one label of `V_(n,l)`.
pub fn phi(label: &ABLabel) -> TensorVec<LaurentPoly> {
    let ABLabel::A { j, tail } = label else {
        return TensorVec::basis(label.index());
    };
    let j = *j;
    let m = tail.len();
    let n = j - 1 + m;
    let l = tail.iter().sum::<u32>() + 1;
    let v_alpha = TensorVec::<LaurentPoly>::basis(MultiIndex(tail.clone()));
    let mut out = TensorVec::zero(n);
    for k in 0..=l {
        let ke = k as i32 - 1;
        let sign = if ke.rem_euclid(2) == 0 { 1 } else { -1 };
        let coeff = LaurentPoly::monomial(sign, ke * (2 * l as i32 - k as i32 - 2), ke * (j as i32 - n as i32 - 1));
        let (head, rest) = if k == 0 {
            (MultiIndex::zeros(j - 1), e_inverse_on_b(&v_alpha))
        } else {
            let rest = act_e_power(k - 1, &v_alpha);
            (MultiIndex::single(j - 1, j - 2, k), rest)
        };
        if rest.is_zero() {
            continue;
        }
        out.add_assign(&TensorVec::basis(head).tensor(&rest).scale(&coeff));
    }
    out
}

/// Matrix of `Φ` on `V_(n,l)` in `weight_basis` order.
pub fn phi_matrix(n: usize, l: u32) -> Matrix<LaurentPoly> {
    let basis = weight_basis(n, l);
    let columns = par::map_slice(&basis, |idx| coordinates(&phi(&ABLabel::classify(idx)), &basis));
    Matrix::from_columns(basis.len(), columns)
}

/// Drops every `B` component.
pub fn project_a<S: Scalar>(v: &TensorVec<S>) -> TensorVec<S> {
    v.filter(|idx| ABLabel::classify(idx).is_a())
}

pub fn is_highest_weight<S: Scalar>(v: &TensorVec<S>) -> bool {
    act_tensor(AlgebraGen::E, v).is_zero()
}

#[derive(Clone, Debug)]
pub struct HWBasisElement {
    pub label: ABLabel,
    pub vector: TensorVec<LaurentPoly>,
}

/// The basis `Φ(a_α)` of `W_(n,l)`, ordered by tail length, then tail.
#[derive(Debug)]
pub struct HWBasis {
    pub n: usize,
    pub l: u32,
    pub elements: Vec<HWBasisElement>,
    position: HashMap<MultiIndex, usize>,
}

impl HWBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> Vec<ABLabel> {
        self.elements.iter().map(|e| e.label.clone()).collect()
    }

    /// Position of the basis element whose `A` index is `idx`.
    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.position.get(idx).copied()
    }

    /// Coordinates of a highest weight vector, read off its `A` part.
    pub fn coordinates<S: Scalar>(&self, v: &TensorVec<S>) -> Vec<S> {
        let mut out = vec![S::zero(); self.len()];
        for (idx, c) in v.terms() {
            if let Some(k) = self.position(idx) {
                out[k] = c.clone();
            }
        }
        out
    }

    /// `Σ x_k w_k`.
    pub fn combine<S: Scalar>(&self, coords: &[S]) -> TensorVec<S> {
        let mut out = TensorVec::zero(self.n);
        for (x, e) in coords.iter().zip(&self.elements) {
            if !x.is_zero() {
                out.add_assign(&e.vector.convert::<S>().scale(x));
            }
        }
        out
    }
}

pub fn hw_labels(n: usize, l: u32) -> Vec<ABLabel> {
    let mut labels: Vec<ABLabel> = weight_basis(n, l)
        .iter()
        .map(ABLabel::classify)
        .filter(ABLabel::is_a)
        .collect();
    labels.sort_by(|x, y| match (x, y) {
        (ABLabel::A { tail: a, .. }, ABLabel::A { tail: b, .. }) => (a.len(), a).cmp(&(b.len(), b)),
        _ => std::cmp::Ordering::Equal,
    });
    labels
}

pub fn hw_basis(n: usize, l: u32) -> Arc<HWBasis> {
    static CACHE: Memo<(usize, u32), HWBasis> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new).get_or_init(&(n, l), || {
        let labels = hw_labels(n, l);
        let vectors = par::map_slice(&labels, phi);
        let position = labels.iter().enumerate().map(|(k, a)| (a.index(), k)).collect();
        HWBasis {
            n,
            l,
            elements: labels
                .into_iter()
                .zip(vectors)
                .map(|(label, vector)| HWBasisElement { label, vector })
                .collect(),
            position,
        }
    })
}

/// A representation matrix in the highest weight basis.
#[derive(Clone, Debug)]
pub struct RepMatrix {
    pub n: usize,
    pub l: u32,
    pub basis: Vec<ABLabel>,
    pub matrix: Matrix<LaurentPoly>,
}

/// `{"n", "l", "basis": [labels], "rows": [[poly, ...], ...]}`.
impl Serialize for RepMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RepMatrix", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("rows", &self.matrix)?;
        st.end()
    }
}

/// Matrix of one letter on `W_(n,l)`.
pub fn rho_generator(n: usize, l: u32, letter: i32) -> Arc<Matrix<LaurentPoly>> {
    static CACHE: Memo<(usize, u32, i32), Matrix<LaurentPoly>> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new).get_or_init(&(n, l, letter), || {
        let basis = hw_basis(n, l);
        let columns = par::map_slice(&basis.elements, |e| {
            let image = Braiding::STANDARD.apply_letter(letter, &e.vector);
            let projected = project_a(&image);
            let mut col = vec![LaurentPoly::zero(); basis.len()];
            for (idx, c) in projected.terms() {
                let k = basis.position(idx).expect("A components index the basis");
                col[k] = c.clone();
            }
            col
        });
        Matrix::from_columns(basis.len(), columns)
    })
}

/// `ρ_(n,l)(w)`. Letters act in order, so `ρ(w1 w2) = ρ(w2) ρ(w1)`.
pub fn rho_matrix(n: usize, l: u32, w: &BraidWord) -> Result<RepMatrix, BraidError> {
    if w.n() != n {
        return Err(BraidError::StrandMismatch { word: w.n(), vector: n });
    }
    let basis = hw_basis(n, l);
    let matrix = w.letters().iter().fold(Matrix::identity(basis.len()), |acc, &k| {
        rho_generator(n, l, k).mul(&acc)
    });
    Ok(RepMatrix {
        n,
        l,
        basis: basis.labels(),
        matrix,
    })
}

/// Braid relations for `ρ_(n,l)` as exact matrix identities.
pub fn check_rho_relations(n: usize, l: u32) -> CheckReport {
    let mut relations: Vec<(String, Vec<i32>, Vec<i32>)> = Vec::new();
    for i in 1..n as i32 {
        relations.push((format!("s{i}*s{i}^-1 = 1"), vec![i, -i], vec![]));
    }
    for i in 1..n as i32 - 1 {
        relations.push((
            format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
            vec![i, i + 1, i],
            vec![i + 1, i, i + 1],
        ));
    }
    for i in 1..n as i32 {
        for j in i + 2..n as i32 {
            relations.push((format!("s{i} s{j} = s{j} s{i}"), vec![i, j], vec![j, i]));
        }
    }
    let word = |letters: &[i32]| {
        rho_matrix(n, l, &BraidWord::new(n, letters.to_vec()).expect("valid letters"))
            .expect("matching strands")
            .matrix
    };
    let items = par::map_slice(&relations, |(name, lhs, rhs)| {
        CheckItem::new(name.clone(), word(lhs).first_mismatch(&word(rhs)))
    });
    CheckReport::from_items("braid", json!({"n": n, "l": l, "space": "W"}), items)
}

/// `(Φ - 1)^2 = 0`, and `E ∘ Φ` kills `A` while agreeing with `E` on `B`.
pub fn check_phi(n: usize, l: u32) -> CheckReport {
    let basis = weight_basis(n, l);
    let p = phi_matrix(n, l);
    let nil = p.sub(&Matrix::identity(basis.len()));
    let mut items = vec![CheckItem::new(
        "(Phi - 1)^2 = 0",
        nil.mul(&nil).first_mismatch(&Matrix::zeros(basis.len(), basis.len())),
    )];
    let mut e_ok = true;
    for idx in &basis {
        let label = ABLabel::classify(idx);
        let e_phi = act_tensor(AlgebraGen::E, &phi(&label));
        let expect = if label.is_a() {
            TensorVec::zero(n)
        } else {
            act_tensor(AlgebraGen::E, &TensorVec::<LaurentPoly>::basis(idx.clone()))
        };
        e_ok &= e_phi == expect;
    }
    items.push(CheckItem::flag("E Phi = 0 + E|B", e_ok));
    CheckReport::from_items("phi", json!({"n": n, "l": l}), items)
}

/// The top basis vector `Φ(v_1 ⊗ v_(l-1) ⊗ v_0^⊗(n-2))`.
pub fn w_max(n: usize, l: u32) -> TensorVec<LaurentPoly> {
    let basis = hw_basis(n, l);
    basis.elements.last().expect("nonempty basis").vector.clone()
}

/// Whether `σ_1 w_max = c · w_max` with `c = (-1)^l s^(-2l) q^(l(l-1))`.
/// Holds for `l ≥ 2` and for two strands; for `l = 1` on three or more
/// strands `w_max = c_1 - s^(n-1) c_n` is not an eigenvector.
pub fn w_max_is_eigenvector(n: usize, l: u32) -> bool {
    let w = w_max(n, l);
    Braiding::STANDARD.apply_letter(1, &w) == w.scale(&w_max_eigenvalue(l))
}

/// `c` is an eigenvalue of `ρ_(n,l)(σ_1)`: `det(ρ(σ_1) - c) = 0`.
pub fn w_max_value_is_eigenvalue(n: usize, l: u32) -> bool {
    let m = rho_generator(n, l, 1);
    let c = w_max_eigenvalue(l);
    m.sub(&Matrix::identity(m.rows()).scale(&c)).determinant().is_zero()
}

/// `(-1)^l s^(-2l) q^(l(l-1))`.
pub fn w_max_eigenvalue(l: u32) -> LaurentPoly {
    let l = l as i32;
    LaurentPoly::monomial(if l % 2 == 0 { 1 } else { -1 }, l * (l - 1), -2 * l)
}

type PairCombination = Vec<((usize, usize), LaurentPoly)>;

/// Line number and right-hand side of the closed form for `σ_i · w_(a,b)`.
fn weight_two_line(i: usize, a: usize, b: usize) -> (usize, PairCombination) {
    type P = LaurentPoly;
    let one_minus = P::one() - P::qs(1, 0, -2);
    let ii = i as i32;
    let s_inv = P::qs(1, 0, -1);
    if (a, b) == (i, i + 1) {
        return (5, vec![((i, i + 1), P::qs(1, 2, -4))]);
    }
    if a == i + 1 {
        return (2, vec![((i, b), s_inv)]);
    }
    if b == i + 1 {
        return (3, vec![((a, i), s_inv)]);
    }
    if a == i {
        let j = b as i32;
        return (
            4,
            vec![
                ((i + 1, b), s_inv),
                ((i, b), one_minus.clone()),
                ((i, i + 1), -(one_minus.mul_monomial(2, ii - j - 1))),
            ],
        );
    }
    if b == i {
        let j = a as i32;
        return (
            6,
            vec![
                ((a, i + 1), s_inv),
                ((a, i), one_minus.clone()),
                ((i, i + 1), -(one_minus.mul_monomial(0, ii - j - 1))),
            ],
        );
    }
    (1, vec![((a, b), P::one())])
}

/// Compares the generator matrices on `W_(n,2)` with the six closed-form
/// lines for `σ_i · w_(a,b)`. A failing item is an erratum candidate; the
/// direct computation is taken as correct.
pub fn check_weight_two_formulas(n: usize) -> CheckReport {
    let basis = hw_basis(n, 2);
    let labels = basis.labels();
    let pos: HashMap<(usize, usize), usize> = labels
        .iter()
        .enumerate()
        .map(|(k, a)| (a.pair().expect("weight-two labels are pairs"), k))
        .collect();
    let mut per_line: Vec<(usize, bool, Option<String>)> = (1..=6).map(|k| (k, true, None)).collect();
    let mut seen = [false; 6];
    for i in 1..n {
        let m = rho_generator(n, 2, i as i32);
        for (c, label) in labels.iter().enumerate() {
            let (a, b) = label.pair().expect("pair label");
            let (line, terms) = weight_two_line(i, a, b);
            seen[line - 1] = true;
            let mut expect = vec![LaurentPoly::zero(); labels.len()];
            for (p, x) in terms {
                expect[pos[&p]] = &expect[pos[&p]] + &x;
            }
            let got = m.column(c);
            if got != expect {
                let entry = &mut per_line[line - 1];
                entry.1 = false;
                if entry.2.is_none() {
                    let r = (0..labels.len()).find(|&r| got[r] != expect[r]).expect("differs");
                    entry.2 = Some(format!(
                        "s{i}.w({a},{b}): coefficient of {} is {} but the closed form gives {}",
                        labels[r], got[r], expect[r]
                    ));
                }
            }
        }
    }
    let items = per_line
        .into_iter()
        .map(|(line, pass, note)| {
            let name = match (&note, seen[line - 1]) {
                (Some(msg), _) => format!("line {line}: erratum candidate: {msg}"),
                (None, true) => format!("line {line}: matches"),
                (None, false) => format!("line {line}: no applicable index pattern"),
            };
            CheckItem::flag(name, pass)
        })
        .collect();
    CheckReport::from_items("sigma-w", json!({"n": n, "l": 2}), items)
}
