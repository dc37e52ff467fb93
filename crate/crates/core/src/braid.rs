//! The integral R-matrix and the braid group action on tensor powers.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde_json::json;
use thiserror::Error;

use crate::cache::{Memo, OnceMap};
use crate::matrix::Matrix;
use crate::par;
use crate::report::{CheckItem, CheckReport};
use crate::ring::{LaurentPoly, Scalar};
use crate::verma::{act_tensor, f_coefficient, weight_basis, AlgebraGen, MultiIndex, TensorVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid words need at least {min} strands, got {n}")]
    TooFewStrands { n: usize, min: usize },
    #[error("letter {letter} is out of range for {n} strands")]
    LetterOutOfRange { letter: i32, n: usize },
    #[error("word on {word} strands applied to a vector on {vector} strands")]
    StrandMismatch { word: usize, vector: usize },
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// A word in the generators `σ_1, ..., σ_(n-1)`: letter `k > 0` is `σ_k`,
/// `k < 0` is `σ_|k|^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if n < 1 {
            return Err(BraidError::TooFewStrands { n, min: 1 });
        }
        for &k in &letters {
            if k == 0 || k.unsigned_abs() as usize >= n {
                return Err(BraidError::LetterOutOfRange { letter: k, n });
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// Parses whitespace- or comma-separated signed integers.
    pub fn parse(n: usize, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| i32::from_str(t).map_err(|_| BraidError::Parse(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, letters)
    }

    /// `(σ_1 σ_2 ... σ_(n-1))^n`.
    pub fn full_twist(n: usize) -> Self {
        let round: Vec<i32> = (1..n as i32).collect();
        BraidWord {
            n,
            letters: round.repeat(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse braid: reversed, with every letter inverted.
    pub fn inverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|k| -k).collect(),
        }
    }

    /// Every letter inverted, order kept: the involution `σ_i ↦ σ_i^-1`.
    pub fn mirrored(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().map(|k| -k).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "strand mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    /// Image under the inclusion `B_n → B_(n+1)`, `σ_i ↦ σ_(i+1)`.
    pub fn shift_into_next(&self) -> Self {
        BraidWord {
            n: self.n + 1,
            letters: self.letters.iter().map(|&k| k + k.signum()).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Which R-matrix to braid with. `DropTerm` omits the `m = 1` summand and
/// exists only as a negative control for the relation checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RVariant {
    #[default]
    Standard,
    DropTerm,
}

type PairTerms = Vec<((u32, u32), LaurentPoly)>;

fn pair_cache() -> &'static OnceMap<(RVariant, u32, u32), PairTerms> {
    static CACHE: Memo<(RVariant, u32, u32), PairTerms> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new)
}

fn inverse_cache() -> &'static OnceMap<(RVariant, u32), Matrix<LaurentPoly>> {
    static CACHE: Memo<(RVariant, u32), Matrix<LaurentPoly>> = OnceLock::new();
    CACHE.get_or_init(OnceMap::new)
}

fn pair_terms(variant: RVariant, i: u32, j: u32) -> Arc<PairTerms> {
    pair_cache().get_or_init(&(variant, i, j), || {
        let (ii, jj) = (i as i64, j as i64);
        (0..=i)
            .filter(|&m| !(variant == RVariant::DropTerm && m == 1))
            .map(|m| {
                let mm = m as i64;
                let qe = 2 * (ii - mm) * (jj + mm) + mm * (mm - 1) / 2;
                let c = f_coefficient(m, j).mul_monomial(qe as i32, -((i + j) as i32));
                ((j + m, i - m), c)
            })
            .collect()
    })
}

/// The block of `R` on `V_(2,d)` in the basis `v_a ⊗ v_(d-a)`, `a = 0..=d`.
fn block(variant: RVariant, d: u32) -> Matrix<LaurentPoly> {
    let mut m = Matrix::zeros(d as usize + 1, d as usize + 1);
    for a in 0..=d {
        for ((x, _), c) in pair_terms(variant, a, d - a).iter() {
            m.set(*x as usize, a as usize, c.clone());
        }
    }
    m
}

fn inverse_block(variant: RVariant, d: u32) -> Arc<Matrix<LaurentPoly>> {
    inverse_cache().get_or_init(&(variant, d), || {
        block(variant, d)
            .inverse()
            .expect("R-matrix block must be invertible over the Laurent ring")
    })
}

fn inverse_pair_terms(variant: RVariant, i: u32, j: u32) -> PairTerms {
    let d = i + j;
    let inv = inverse_block(variant, d);
    (0..=d)
        .filter_map(|x| {
            let c = inv.get(x as usize, i as usize);
            (!c.is_zero()).then(|| ((x, d - x), c.clone()))
        })
        .collect()
}

fn pair_tensor(terms: &[((u32, u32), LaurentPoly)]) -> TensorVec<LaurentPoly> {
    TensorVec::from_terms(
        2,
        terms.iter().map(|((a, b), c)| (MultiIndex::new([*a, *b]), c.clone())),
    )
}

/// `R(v_i ⊗ v_j)`.
pub fn rmatrix_pair(i: u32, j: u32) -> TensorVec<LaurentPoly> {
    pair_tensor(&pair_terms(RVariant::Standard, i, j))
}

/// `R^-1(v_i ⊗ v_j)`, from the exact inverse of the weight block.
pub fn rmatrix_pair_inverse(i: u32, j: u32) -> TensorVec<LaurentPoly> {
    pair_tensor(&inverse_pair_terms(RVariant::Standard, i, j))
}

/// Braid group action on `V^⊗n` through a chosen R-matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Braiding {
    pub variant: RVariant,
}

impl Braiding {
    pub const STANDARD: Braiding = Braiding {
        variant: RVariant::Standard,
    };

    pub fn new(variant: RVariant) -> Self {
        Braiding { variant }
    }

    /// One letter on one pure tensor.
    pub fn letter_on_index(&self, letter: i32, idx: &MultiIndex) -> Vec<(MultiIndex, LaurentPoly)> {
        let p = letter.unsigned_abs() as usize - 1;
        let e = idx.entries();
        let (a, b) = (e[p], e[p + 1]);
        let terms: PairTerms = if letter > 0 {
            (*pair_terms(self.variant, a, b)).clone()
        } else {
            inverse_pair_terms(self.variant, a, b)
        };
        terms
            .into_iter()
            .map(|((x, y), c)| {
                let mut out = e.to_vec();
                out[p] = x;
                out[p + 1] = y;
                (MultiIndex(out), c)
            })
            .collect()
    }

    pub fn apply_letter<S: Scalar>(&self, letter: i32, v: &TensorVec<S>) -> TensorVec<S> {
        assert!(
            letter != 0 && (letter.unsigned_abs() as usize) < v.n(),
            "letter {letter} out of range for {} strands",
            v.n()
        );
        v.map_linear(v.n(), |idx| self.letter_on_index(letter, idx))
    }

    /// Applies the word, first letter first.
    pub fn apply_word<S: Scalar>(&self, w: &BraidWord, v: &TensorVec<S>) -> Result<TensorVec<S>, BraidError> {
        if w.n() != v.n() {
            return Err(BraidError::StrandMismatch {
                word: w.n(),
                vector: v.n(),
            });
        }
        Ok(w.letters().iter().fold(v.clone(), |acc, &k| self.apply_letter(k, &acc)))
    }

    /// Matrix of one letter on `V_(n,l)` in `weight_basis` order; column `c`
    /// is the image of the `c`-th basis vector.
    pub fn letter_matrix(&self, n: usize, l: u32, letter: i32) -> Arc<Matrix<LaurentPoly>> {
        static CACHE: Memo<(RVariant, usize, u32, i32), Matrix<LaurentPoly>> = OnceLock::new();
        CACHE
            .get_or_init(OnceMap::new)
            .get_or_init(&(self.variant, n, l, letter), || {
                let basis = weight_basis(n, l);
                linear_map_matrix(&basis, &basis, |idx| self.letter_on_index(letter, idx))
            })
    }

    /// Matrix of a word on `V_(n,l)`.
    pub fn word_matrix(&self, n: usize, l: u32, w: &BraidWord) -> Result<Matrix<LaurentPoly>, BraidError> {
        if w.n() != n {
            return Err(BraidError::StrandMismatch { word: w.n(), vector: n });
        }
        let dim = weight_basis(n, l).len();
        Ok(w.letters()
            .iter()
            .fold(Matrix::identity(dim), |acc, &k| self.letter_matrix(n, l, k).mul(&acc)))
    }
}

/// Matrix of a map given on pure tensors, between two ordered bases.
pub fn linear_map_matrix<F>(source: &[MultiIndex], target: &[MultiIndex], f: F) -> Matrix<LaurentPoly>
where
    F: Fn(&MultiIndex) -> Vec<(MultiIndex, LaurentPoly)> + Sync + Send,
{
    let columns = par::map_slice(source, |idx| {
        let image = TensorVec::from_terms(idx.len(), f(idx));
        coordinates(&image, target)
    });
    Matrix::from_columns(target.len(), columns)
}

/// Coordinates of `v` in a sorted basis; panics if `v` leaves its span.
pub fn coordinates<S: Scalar>(v: &TensorVec<S>, basis: &[MultiIndex]) -> Vec<S> {
    let mut out = vec![S::zero(); basis.len()];
    for (idx, c) in v.terms() {
        let k = basis
            .binary_search(idx)
            .unwrap_or_else(|_| panic!("{idx:?} is outside the target basis"));
        out[k] = c.clone();
    }
    out
}

pub fn apply_word<S: Scalar>(w: &BraidWord, v: &TensorVec<S>) -> Result<TensorVec<S>, BraidError> {
    Braiding::STANDARD.apply_word(w, v)
}

/// The matrix of `σ_k` (or its inverse for `k < 0`) on `V_(n,l)`.
pub fn generator_matrix(n: usize, l: u32, letter: i32) -> Arc<Matrix<LaurentPoly>> {
    Braiding::STANDARD.letter_matrix(n, l, letter)
}

fn relation_items<F>(n: usize, mat: F) -> Vec<CheckItem>
where
    F: Fn(&[i32]) -> Matrix<LaurentPoly> + Sync,
{
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
    par::map_slice(&relations, |(name, lhs, rhs)| {
        CheckItem::new(name.clone(), mat(lhs).first_mismatch(&mat(rhs)))
    })
}

/// Braid relations as exact matrix identities on `V_(n,l)`.
pub fn check_braid_relations(n: usize, l: u32) -> CheckReport {
    check_braid_relations_with(Braiding::STANDARD, n, l)
}

pub fn check_braid_relations_with(b: Braiding, n: usize, l: u32) -> CheckReport {
    let dim = weight_basis(n, l).len();
    let items = relation_items(n, |letters| {
        letters
            .iter()
            .fold(Matrix::identity(dim), |acc, &k| b.letter_matrix(n, l, k).mul(&acc))
    });
    CheckReport::from_items(
        "braid",
        json!({"n": n, "l": l, "space": "V", "perturbed": b.variant != RVariant::Standard}),
        items,
    )
}

/// `(R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R)` on `V_(3,l)`.
pub fn check_yang_baxter(l: u32) -> CheckReport {
    let b = Braiding::STANDARD;
    let lhs = b
        .word_matrix(
            3,
            l,
            &BraidWord {
                n: 3,
                letters: vec![1, 2, 1],
            },
        )
        .expect("valid word");
    let rhs = b
        .word_matrix(
            3,
            l,
            &BraidWord {
                n: 3,
                letters: vec![2, 1, 2],
            },
        )
        .expect("valid word");
    CheckReport::from_items(
        "yangbaxter",
        json!({"l": l}),
        vec![CheckItem::new("R12 R23 R12 = R23 R12 R23", lhs.first_mismatch(&rhs))],
    )
}

/// `σ_i ∘ Δ(x) = Δ(x) ∘ σ_i` on `V_(n,l)` for `x ∈ {K, E, F}`.
pub fn check_equivariance(n: usize, l: u32) -> CheckReport {
    let src = weight_basis(n, l);
    let mut items = Vec::new();
    let gens: Vec<(AlgebraGen, &str, Option<u32>)> = vec![
        (AlgebraGen::K, "K", Some(l)),
        (AlgebraGen::E, "E", l.checked_sub(1)),
        (AlgebraGen::F(1), "F", Some(l + 1)),
    ];
    for (g, name, target_l) in gens {
        let Some(lt) = target_l else {
            items.push(CheckItem::flag(format!("{name}: V_(n,0) is killed"), true));
            continue;
        };
        let tgt = weight_basis(n, lt);
        let x = linear_map_matrix(&src, &tgt, |idx| {
            act_tensor(g, &TensorVec::<LaurentPoly>::basis(idx.clone()))
                .terms()
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect()
        });
        for i in 1..n as i32 {
            let lhs = generator_matrix(n, lt, i).mul(&x);
            let rhs = x.mul(&generator_matrix(n, l, i));
            items.push(CheckItem::new(
                format!("s{i} {name} = {name} s{i}"),
                lhs.first_mismatch(&rhs),
            ));
        }
    }
    CheckReport::from_items("equivariance", json!({"n": n, "l": l}), items)
}

/// `R · R^-1 = 1` on the block `V_(2,d)`.
pub fn block_inverse_is_exact(d: u32) -> bool {
    block(RVariant::Standard, d)
        .mul(&inverse_block(RVariant::Standard, d))
        .is_identity()
}
