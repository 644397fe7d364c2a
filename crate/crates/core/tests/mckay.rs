mod common;

use std::collections::BTreeMap;

use common::*;
use fmoon_core::codes::{golay, BitWord};
use fmoon_core::mckaythompson::{frame_shape, monomial_action, mt_oracle, mt_series, oracle_mismatches, series_at_degree, FrameShape, MtError};
use fmoon_core::qseries::{jtheta, through};
use fmoon_core::spingroup::SignedPermutation;
use fmoon_core::{CliffordElement, Half, Matrix, Mode};
use num::{BigInt, BigRational};
use proptest::prelude::*;

// det(1 − xM) of a signed permutation, read off its cycles: a cycle of
// length L contributes 1 − x^L, or 1 + x^L = (1 − x^{2L})/(1 − x^L) when
// its signs multiply to −1
fn cycle_shape(perm: &[usize], negate: &[bool]) -> BTreeMap<i64, i64> {
    let mut seen = vec![false; perm.len()];
    let mut parts = BTreeMap::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let (mut len, mut odd, mut i) = (0i64, false, start);
        while !seen[i] {
            seen[i] = true;
            odd ^= negate[i];
            len += 1;
            i = perm[i];
        }
        if odd {
            *parts.entry(2 * len).or_insert(0) += 1;
            *parts.entry(len).or_insert(0) -= 1;
        } else {
            *parts.entry(len).or_insert(0) += 1;
        }
    }
    parts.retain(|_, p| *p != 0);
    parts
}

fn shape(s: &str) -> BTreeMap<i64, i64> {
    s.parse::<FrameShape>().unwrap().parts
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn frame_shapes_of_basic_matrices() {
    let id = Matrix::identity(24, Mode::Exact);
    assert_eq!(frame_shape(&id).unwrap().parts, shape("1^24"));
    let neg = frame_shape(&id.neg()).unwrap();
    assert_eq!(neg.parts, shape("1^-24.2^24"));
    assert_eq!(neg.m, 2);
    let lift = fmoon_core::golay_lift();
    let octad = golay().octads().next().unwrap();
    let m = lift.element(octad, Mode::Exact).unwrap().conjugation_matrix().unwrap();
    assert_eq!(m.trace().to_string(), "8");
    assert_eq!(frame_shape(&m).unwrap().parts, shape("1^8.2^8"));
}

#[test]
fn frame_shape_rejects_non_orthogonal() {
    let mut m = Matrix::identity(24, Mode::Exact);
    m.set(0, 1, fmoon_core::Scalar::one(Mode::Exact));
    assert!(matches!(frame_shape(&m), Err(MtError::NotOrthogonal)));
    assert!(matches!(frame_shape(&Matrix::identity(3, Mode::Exact)), Err(MtError::NotOrthogonal)));
}

#[test]
fn involution_preserves_the_code() {
    let p = M24_INVOLUTION;
    let g = golay();
    for w in g.generators() {
        let image = BitWord::from_indices(w.indices().into_iter().map(|i| p[i]));
        assert!(g.is_codeword(image));
    }
    assert!((0..24).all(|i| p[p[i]] == i));
    assert_eq!((0..24).filter(|&i| p[i] == i).count(), 8);
}

#[test]
fn series_of_the_identity_is_jtheta_minus_24() {
    let trunc = through(5, 1);
    let (s, data) = mt_series(&CliffordElement::one(Mode::Exact), trunc).unwrap();
    assert_eq!(data.g.to_string(), "1^24");
    assert_eq!(data.minus_g.to_string(), "1^-24.2^24");
    assert_eq!((data.chi.as_str(), data.chi_z.as_str()), ("4096", "0"));
    let expected = jtheta(trunc).unwrap().sub(&fmoon_core::QSeries::constant(24, trunc));
    assert_eq!(s, expected);
    let dims: Vec<BigRational> = (0..=4).map(|d| series_at_degree(&s, Half(d)).unwrap()).collect();
    assert_eq!(dims, [1, 0, 276, 2048, 11202].map(rat));
}

#[test]
fn series_is_symmetric_under_z() {
    let omega = CliffordElement::basis(Mode::Exact, fmoon_core::codes::OMEGA);
    let trunc = through(4, 1);
    for (name, x) in monomial_elements() {
        let (s, data) = mt_series(&x, trunc).unwrap();
        let (sz, dz) = mt_series(&omega.mul(&x).unwrap(), trunc).unwrap();
        assert_eq!(s, sz, "{name}");
        assert_eq!((data.g, data.minus_g), (dz.minus_g, dz.g), "{name}");
        assert_eq!(s.leading_exponent(), Some(-24), "{name}");
        assert_eq!(s.coeff(-24), Some(rat(1)), "{name}");
    }
}

#[test]
fn frame_shapes_of_test_elements() {
    let expected = [("one", "1^24"), ("omega", "1^-24.2^24"), ("octad", "1^8.2^8"), ("dodecad", "2^12"), ("m24-involution", "1^8.2^8")];
    for ((name, x), (n2, s)) in monomial_elements().iter().zip(expected) {
        assert_eq!(*name, n2);
        let (_, data) = mt_series(x, 48).unwrap();
        assert_eq!(data.g.to_string(), s, "{name}");
        assert_eq!(data.g.weight(), 24);
        assert_eq!(data.minus_g.weight(), 24);
    }
}

#[test]
fn oracle_matches_series_through_degree_two() {
    let t0 = std::time::Instant::now();
    for (name, x) in monomial_elements() {
        let (s, _) = mt_series(&x, through(2, 1)).unwrap();
        let oracle = mt_oracle(&x, Half(4)).unwrap();
        assert_eq!(oracle.len(), 5);
        let bad = oracle_mismatches(&s, &oracle);
        assert!(bad.is_empty(), "{name}: {bad:?} {oracle:?}");
    }
    eprintln!("oracle comparison took {:?}", t0.elapsed());
}

#[test]
fn oracle_of_identity_is_the_dimension() {
    let terms = mt_oracle(&CliffordElement::one(Mode::Exact), Half(4)).unwrap();
    let dims: Vec<String> = terms.iter().map(|t| t.trace.to_string()).collect();
    assert_eq!(dims, ["1", "0", "276", "2048", "11202"]);
}

#[test]
fn oracle_rejects_rotations_and_large_degrees() {
    // v·e_0 with v = (e_0 + e_1 + e_2 + e_3)/2 rotates by a non-monomial matrix
    let half = fmoon_core::Scalar::ratio(Mode::Exact, 1, 2);
    let v = CliffordElement::from_terms(Mode::Exact, (0..4).map(|i| (BitWord::singleton(i), half.clone()))).unwrap();
    let r = v.mul(&CliffordElement::basis(Mode::Exact, BitWord::singleton(0))).unwrap();
    assert!(r.is_spin());
    assert!(matches!(monomial_action(&r), Err(MtError::NotMonomial)));
    assert!(matches!(mt_oracle(&CliffordElement::one(Mode::Exact), Half(8)), Err(MtError::DegreeTooHigh(_))));
    let float = CliffordElement::one(Mode::Float);
    assert!(matches!(mt_series(&float, 48), Err(MtError::NotExact)));
}

fn signed_permutation() -> impl Strategy<Value = (Vec<usize>, Vec<bool>)> {
    (Just((0..24usize).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), 24))
}

fn order(perm: &[usize], negate: &[bool]) -> i64 {
    cycle_shape(perm, negate).keys().fold(1, |a, &k| num::integer::lcm(a, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frame_shape_matches_cycle_structure((perm, negate) in signed_permutation()) {
        prop_assume!(order(&perm, &negate) <= 120);
        let m = Matrix::signed_permutation(&perm, &negate, Mode::Exact);
        let f = frame_shape(&m).unwrap();
        prop_assert_eq!(&f.parts, &cycle_shape(&perm, &negate));
        prop_assert_eq!(f.weight(), 24);
        let minus: Vec<bool> = negate.iter().map(|b| !b).collect();
        let g = frame_shape(&m.neg()).unwrap();
        prop_assert_eq!(&g.parts, &cycle_shape(&perm, &minus));
        prop_assert_eq!(g.weight(), 24);
        let text = f.to_string();
        prop_assert_eq!(text.parse::<FrameShape>().unwrap().parts, f.parts);
    }

    #[test]
    fn permutation_lifts_have_rational_characters(
        swaps in prop::collection::vec((0..24usize, 0..24usize), 0..5),
        negate in prop::collection::vec(any::<bool>(), 24),
    ) {
        let mut perm: Vec<usize> = (0..24).collect();
        for (a, b) in swaps {
            perm.swap(a, b);
        }
        let sp = SignedPermutation { perm: perm.clone(), neg: BitWord::from_indices((0..24).filter(|i| negate[*i])) };
        prop_assume!(sp.determinant() == 1);
        let x = fmoon_core::spingroup::lift_signed_permutation(&sp).unwrap();
        let (s, data) = mt_series(&x, 48).unwrap();
        prop_assert_eq!(&data.g.parts, &cycle_shape(&perm, &negate));
        prop_assert_eq!(s.coeff(-24), Some(rat(1)));
    }
}
