use braidrep::braid::{apply_word, BraidWord};
use braidrep::decomp::{decompose, decompose_scaled};
use braidrep::hwspace::{hw_basis, rho_generator, rho_matrix};
use braidrep::lkb::{lkb_letter, pairs, theta};
use braidrep::matrix::Matrix;
use braidrep::par::{set_execution, Execution};
use braidrep::ring::{LaurentPoly, LkbPoly, RatFunc};
use braidrep::verma::{weight_basis, TensorVec};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

type P = LaurentPoly;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let letters = (1..n as i32).flat_map(|i| [i, -i]).collect::<Vec<_>>();
    prop::collection::vec(prop::sample::select(letters), 0..=max_len)
        .prop_map(move |w| BraidWord::new(n, w).expect("letters in range"))
}

fn poly() -> impl Strategy<Value = P> {
    prop::collection::vec((-5i64..=5, -3i32..=3, -3i32..=3), 0..4)
        .prop_map(|ts| ts.into_iter().map(|(c, a, b)| P::qs(c, a, b)).sum())
}

fn lkb_word(n: usize, w: &BraidWord) -> Matrix<LkbPoly> {
    let dim = pairs(n).len();
    w.letters().iter().fold(Matrix::identity(dim), |acc, &k| {
        lkb_letter(n, k).expect("letter in range").matrix.mul(&acc)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn words_compose_in_reading_order(a in word(4, 5), b in word(4, 5)) {
        let ab = rho_matrix(4, 2, &a.concat(&b)).unwrap().matrix;
        let pa = rho_matrix(4, 2, &a).unwrap().matrix;
        let pb = rho_matrix(4, 2, &b).unwrap().matrix;
        prop_assert_eq!(ab, pb.mul(&pa));
    }

    #[test]
    fn inverse_word_gives_identity(w in word(3, 6)) {
        let m = rho_matrix(3, 3, &w.concat(&w.inverse())).unwrap().matrix;
        prop_assert!(m.is_identity());
    }

    #[test]
    fn matrix_columns_match_vector_action(w in word(3, 4)) {
        let basis = hw_basis(3, 2);
        let m = rho_matrix(3, 2, &w).unwrap().matrix;
        for (c, e) in basis.elements.iter().enumerate() {
            let image = apply_word(&w, &e.vector).unwrap();
            prop_assert_eq!(basis.combine(&m.column(c)), image);
        }
    }

    #[test]
    fn weight_two_is_lkb_on_words(w in word(4, 5)) {
        // The isomorphism carries σ_i^-1 on LKB to σ_i, so ρ(w) is compared
        // with the mirrored word: ρ_rc = s^((i_r + j_r) - (i_c + j_c)) θ(M_rc).
        let rho = rho_matrix(4, 2, &w).unwrap();
        let lkb = lkb_word(4, &w.mirrored());
        let order = pairs(4);
        let pos: Vec<usize> = rho
            .basis
            .iter()
            .map(|l| {
                let p = l.pair().expect("weight two labels are pairs");
                order.iter().position(|&x| x == p).unwrap()
            })
            .collect();
        let weight = |k: usize| (order[pos[k]].0 + order[pos[k]].1) as i32;
        for r in 0..pos.len() {
            for c in 0..pos.len() {
                let expected = theta(lkb.get(pos[r], pos[c])).mul_monomial(0, weight(r) - weight(c));
                prop_assert_eq!(rho.matrix.get(r, c), &expected, "entry ({}, {})", r, c);
            }
        }
    }

    #[test]
    fn execution_mode_does_not_change_results(w in word(4, 4)) {
        set_execution(Execution::Sequential);
        let seq = rho_matrix(4, 3, &w).unwrap().matrix;
        set_execution(Execution::Parallel);
        let par = rho_matrix(4, 3, &w).unwrap().matrix;
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn small_and_large_coefficients_multiply_alike(a in poly(), b in poly(), e in 40u32..90) {
        let big = BigInt::from(3).pow(e);
        let lhs = a.scale(&big) * b.clone();
        let rhs = (a * b).scale(&big);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: P = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn decomposition_routes_agree(coeffs in prop::collection::vec(poly(), 6)) {
        let basis = weight_basis(3, 2);
        let v = TensorVec::from_terms(3, basis.into_iter().zip(coeffs));
        let scaled = decompose_scaled(&v).unwrap();
        prop_assert!(scaled.verifies(&v));
        let fractions = decompose(&v).unwrap();
        let converted = scaled.to_fractions();
        for (x, y) in fractions.components.iter().zip(&converted.components) {
            prop_assert_eq!(x, y);
        }
        prop_assert_eq!(fractions.reconstruct(), v.convert::<RatFunc>());
    }
}

#[test]
fn generators_have_unit_determinant() {
    for n in 2..=4 {
        for l in 0..=3 {
            for i in 1..n as i32 {
                let d = rho_generator(n, l, i).determinant();
                assert!(d.is_unit(), "det rho({n},{l})(s{i}) = {d}");
            }
        }
    }
}

#[test]
fn trivial_words_act_as_identity() {
    assert!(rho_matrix(2, 0, &BraidWord::identity(2)).unwrap().matrix.is_identity());
    let one = rho_matrix(2, 3, &BraidWord::parse(2, "1 -1").unwrap()).unwrap().matrix;
    assert_eq!(one.get(0, 0), &P::one());
}
