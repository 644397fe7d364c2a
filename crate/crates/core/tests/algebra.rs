use fmoon_core::clifford::*;
use fmoon_core::codes::{golay, BitWord, OMEGA};
use fmoon_core::linalg::Matrix;
use fmoon_core::scalar::{Mode, Scalar};
use fmoon_core::spingroup::*;
use fmoon_core::spinmod::*;
use proptest::prelude::*;

const EX: Mode = Mode::Exact;

fn int(n: i64) -> Scalar {
    Scalar::from_i64(EX, n)
}

fn e(idx: &[usize]) -> CliffordElement {
    CliffordElement::basis(EX, BitWord::from_indices(idx.iter().copied()))
}

fn sparse_element() -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec((0u32..1 << 24, -3i64..4), 1..5).prop_map(|terms| {
        CliffordElement::from_terms(EX, terms.into_iter().map(|(m, c)| (BitWord(m), int(c)))).unwrap()
    })
}

fn spin_element() -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec((0usize..24, 1usize..24, 0u8..8), 1..4).prop_map(|moves| {
        let mut x = CliffordElement::one(EX);
        for (i, d, k) in moves {
            let j = (i + d) % 24;
            x = x.mul(&rotation_exact(i, j, k).unwrap()).unwrap();
        }
        x
    })
}

#[test]
fn mul_example_against_hand_expansion() {
    let a = e(&[1]).add(&e(&[2])).unwrap();
    let b = e(&[1]).sub(&e(&[2])).unwrap();
    let p = a.mul(&b).unwrap();
    assert_eq!(p, e(&[1, 2]).scale(&int(-2)).unwrap());
    assert_eq!(CliffordElement::one(EX).mul(&a).unwrap(), a);
}

#[test]
fn squares_of_code_words() {
    let g = golay();
    for c in g.octads().take(50) {
        assert_eq!(basis_mul(c, c), (1, BitWord::EMPTY));
    }
    for x in g.sigma() {
        let expected = if x.weight() % 4 == 0 { 1 } else { -1 };
        assert_eq!(basis_mul(*x, *x).0, expected);
    }
}

#[test]
fn structure_maps_on_basis() {
    assert_eq!(e(&[1, 2]).alpha(), e(&[1, 2]).neg());
    assert_eq!(e(&[1, 2, 3]).parity(), e(&[1, 2, 3]).neg());
    assert_eq!(bilinear_form(&CliffordElement::one(EX), &CliffordElement::one(EX)).unwrap(), int(1));
    assert_eq!(bilinear_form(&e(&[1]), &e(&[2])).unwrap(), int(0));
    let u = CliffordElement::vector(&[int(1), int(2), int(-2)]).unwrap();
    assert_eq!(bilinear_form(&u, &u).unwrap(), int(9));
    assert!(bilinear_form(&u, &u.to_float()).is_err());
}

#[test]
fn conjugation_matrices() {
    let m = e(&[1, 2]).conjugation_matrix().unwrap();
    for i in 0..24 {
        assert_eq!(*m.get(i, i), int(if i == 1 || i == 2 { -1 } else { 1 }));
    }
    assert_eq!(CliffordElement::one(EX).conjugation_matrix().unwrap(), Matrix::identity(24, EX));

    let theta = 0.37;
    let r = rotation(1, 2, theta, Mode::Float).unwrap();
    assert!(r.is_spin());
    let m = r.conjugation_matrix().unwrap();
    let (s, c) = (2.0 * theta).sin_cos();
    assert!((m.get(1, 1).to_f64() - c).abs() < 1e-12);
    assert!((m.get(2, 1).to_f64() - s).abs() < 1e-12);
    assert!((m.get(1, 2).to_f64() + s).abs() < 1e-12);

    let q = rotation_exact(3, 5, 1).unwrap();
    assert!(q.is_spin());
    assert_eq!(q.alpha().mul(&q).unwrap(), CliffordElement::one(EX));
    assert_eq!(q.conjugation_matrix().unwrap().det(), int(1));
}

#[test]
fn spin_membership() {
    for c in golay().octads().take(5) {
        assert!(CliffordElement::basis(EX, c).is_spin());
    }
    assert!(!e(&[1]).is_spin());
    let x = CliffordElement::one(EX).add(&e(&[1, 2])).unwrap();
    assert_eq!(x.spin_check().unwrap_err(), "α(x)x is not 𝟏");
}

#[test]
fn golay_lift_group() {
    let lift = golay_lift();
    let words: Vec<(BitWord, i8)> = lift.signed_words().collect();
    assert_eq!(words.len(), 4096);
    assert_eq!(lift.element(OMEGA, EX).unwrap(), CliffordElement::basis(EX, OMEGA));
    let gens = lift.generators();
    for a in gens {
        let ga = lift.element(*a, EX).unwrap();
        assert_eq!(ga.mul(&ga).unwrap(), CliffordElement::one(EX));
        for b in gens {
            let gb = lift.element(*b, EX).unwrap();
            assert_eq!(ga.mul(&gb).unwrap(), gb.mul(&ga).unwrap());
        }
    }
    // homomorphic closure on a sample
    for (c, _) in words.iter().step_by(37) {
        for (d, _) in words.iter().step_by(101) {
            let p = lift.element(*c, EX).unwrap().mul(&lift.element(*d, EX).unwrap()).unwrap();
            assert_eq!(p, lift.element(c.sum(*d), EX).unwrap());
        }
    }
    // −𝟏 is not in G
    assert_eq!(lift.epsilon(BitWord::EMPTY).unwrap(), 1);
    // traces 24 − 2n
    for (c, _) in &words {
        let m = CliffordElement::basis(EX, *c).conjugation_matrix().unwrap();
        assert_eq!(m.trace(), int(24 - 2 * c.weight() as i64));
    }
    let bad = fmoon_core::codes::build_hamming8();
    assert!(lift_golay(&bad).is_ok());
    let mut odd = bad.clone();
    odd.generators[1] = BitWord::from_indices([0, 1]);
    assert!(lift_golay(&odd).is_err());
}

fn perm_with(cycles: &[&[usize]], neg: &[usize]) -> SignedPermutation {
    let mut perm: Vec<usize> = (0..24).collect();
    for c in cycles {
        for k in 0..c.len() {
            perm[c[k]] = c[(k + 1) % c.len()];
        }
    }
    SignedPermutation { perm, neg: BitWord::from_indices(neg.iter().copied()) }
}

#[test]
fn signed_permutation_lifts() {
    let octad = golay().octads().next().unwrap();
    let x = lift_signed_permutation(&SignedPermutation { perm: (0..24).collect(), neg: octad }).unwrap();
    assert!(x == CliffordElement::basis(EX, octad) || x == CliffordElement::basis(EX, octad).neg());

    let cases = [
        perm_with(&[&[1, 2]], &[1]),
        perm_with(&[&[0, 5, 9]], &[]),
        perm_with(&[&[1, 2], &[3, 4]], &[7, 8]),
        perm_with(&[&[1, 2, 3, 4]], &[2]),
    ];
    for sp in &cases {
        let x = lift_signed_permutation(sp).unwrap();
        assert!(x.is_spin());
        assert_eq!(x.conjugation_matrix().unwrap(), sp.matrix(EX));
    }
    assert!(lift_signed_permutation(&perm_with(&[&[1, 2]], &[])).is_err());

    // composition up to sign
    let (p, q) = (&cases[1], &cases[2]);
    let pq_perm: Vec<usize> = (0..24).map(|i| p.perm[q.perm[i]]).collect();
    let mut pq_neg = BitWord::EMPTY;
    for i in 0..24 {
        if q.neg.contains(i) ^ p.neg.contains(q.perm[i]) {
            pq_neg = pq_neg.join(BitWord::singleton(i));
        }
    }
    let pq = lift_signed_permutation(&SignedPermutation { perm: pq_perm, neg: pq_neg }).unwrap();
    let prod = lift_signed_permutation(p).unwrap().mul(&lift_signed_permutation(q).unwrap()).unwrap();
    assert!(prod == pq || prod == pq.neg());
}

#[test]
fn central_pairs() {
    let (a, b) = central_pair(&CliffordElement::one(EX)).unwrap();
    assert_eq!(a, CliffordElement::one(EX));
    assert_eq!(b, CliffordElement::basis(EX, OMEGA));
    assert_eq!(b.mul(&b).unwrap(), CliffordElement::one(EX));
    let x = rotation_exact(2, 9, 3).unwrap();
    let (x, zx) = central_pair(&x).unwrap();
    assert_eq!(zx.conjugation_matrix().unwrap(), x.conjugation_matrix().unwrap().neg());
    assert!(central_pair(&e(&[1])).is_err());
}

#[test]
fn module_basics() {
    let lift = golay_lift();
    let ground = SpinVector::ground(EX);
    for (c, _) in lift.signed_words() {
        assert_eq!(act(&lift.element(c, EX).unwrap(), &ground).unwrap(), ground);
    }
    assert_eq!(inner(&ground, &ground).unwrap(), int(1));
    assert_eq!(inner(&SpinVector::basis(EX, 3), &SpinVector::basis(EX, 4)).unwrap(), int(0));
    let g = golay();
    for k in 0..DIM {
        let v = SpinVector::basis(EX, k);
        let expected = if g.rep(k).weight() % 2 == 0 { 1 } else { -1 };
        assert_eq!(act(&CliffordElement::basis(EX, OMEGA), &v).unwrap(), v.scale(&int(expected)).unwrap());
    }
}

#[test]
fn sigma_diagonal_and_rho() {
    let g = golay();
    for x in g.sigma() {
        let expected = if (x.weight() / 2) % 2 == 0 { 1 } else { -1 };
        assert_eq!(cocycle_sigma(*x, *x).unwrap(), expected);
        let v = SpinVector::basis(EX, 17);
        let ex = CliffordElement::basis(EX, *x);
        assert_eq!(act(&ex, &act(&ex, &v).unwrap()).unwrap(), v.scale(&int(expected as i64)).unwrap());
        assert_eq!(rho(*x, *x).unwrap(), expected);
    }
    let t = g.sigma()[500];
    let s = g.sextet_of(t).unwrap();
    for alt in &s.tetrads[1..] {
        let r = rho(t, *alt).unwrap();
        assert_eq!(r * r, 1);
        // ϱ e_X e_X' 1_G = 1_G
        let w = act(&CliffordElement::basis(EX, *alt), &SpinVector::ground(EX)).unwrap();
        let w = act(&CliffordElement::basis(EX, t), &w).unwrap();
        assert_eq!(w.scale(&int(r as i64)).unwrap(), SpinVector::ground(EX));
    }
    assert!(rho(t, BitWord::from_indices([1, 2, 3, 5])).is_err());
}

#[test]
fn chi_trace_values() {
    assert_eq!(chi_trace(&CliffordElement::one(EX)), int(4096));
    assert_eq!(chi_trace(&CliffordElement::basis(EX, OMEGA)), int(0));

    let g = golay();
    let lift = golay_lift();
    let mut checked = 0;
    for c in g.octads().take(3).chain(g.dodecads().take(3)) {
        let n = c.weight() as usize;
        // elementary symmetric functions of the eigenvalues (−1)^{[i∈C]}
        let mut poly = vec![1i64];
        for i in 0..24 {
            let lam = if i < n { -1 } else { 1 };
            let mut next = vec![0i64; poly.len() + 1];
            for (k, p) in poly.iter().enumerate() {
                next[k] += p;
                next[k + 1] += p * lam;
            }
            poly = next;
        }
        let tetrads: i64 = fmoon_core::codes::small_words(4)
            .into_iter()
            .filter(|t| t.weight() == 4)
            .map(|t| if t.meet(c).weight() % 2 == 0 { 1 } else { -1 })
            .sum();
        let oracle = poly[0] + poly[1] + poly[2] + poly[3] + tetrads / 6;
        assert_eq!(chi_trace(&lift.element(c, EX).unwrap()), int(oracle), "word {c}");
        checked += 1;
    }
    assert_eq!(checked, 6);
}

#[test]
fn chi_trace_is_a_class_function() {
    let octad = golay().octads().nth(7).unwrap();
    let x = golay_lift().element(octad, EX).unwrap();
    let hs = [
        lift_signed_permutation(&perm_with(&[&[1, 2], &[5, 11]], &[])).unwrap(),
        lift_signed_permutation(&perm_with(&[&[0, 3, 4]], &[6, 9])).unwrap(),
        golay_lift().element(golay().octads().nth(30).unwrap(), EX).unwrap(),
    ];
    for h in &hs {
        let conj = h.mul(&x).unwrap().mul(&h.inverse().unwrap()).unwrap();
        assert_eq!(chi_trace(&conj), chi_trace(&x));
    }
}

fn module_vector() -> impl Strategy<Value = SpinVector> {
    prop::collection::vec((0usize..DIM, -3i64..4), 1..6).prop_map(|entries| {
        let mut v = SpinVector::zero(EX);
        for (k, c) in entries {
            v.set(k, int(c));
        }
        v
    })
}

fn sigma_member() -> impl Strategy<Value = BitWord> {
    (0usize..2048).prop_map(|k| golay().sigma()[k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_is_associative(a in sparse_element(), b in sparse_element(), c in sparse_element()) {
        prop_assert_eq!(a.mul(&b.mul(&c).unwrap()).unwrap(), a.mul(&b).unwrap().mul(&c).unwrap());
    }

    #[test]
    fn alpha_reverses_products(a in sparse_element(), b in sparse_element()) {
        prop_assert_eq!(a.mul(&b).unwrap().alpha(), b.alpha().mul(&a.alpha()).unwrap());
    }

    #[test]
    fn anticommutation_sign(s in 0u32..1 << 24, r in 0u32..1 << 24) {
        let (s, r) = (BitWord(s), BitWord(r));
        let expected = (s.weight() * r.weight() + s.meet(r).weight()) % 2;
        let got = basis_mul(s, r).0 * basis_mul(r, s).0;
        prop_assert_eq!(got, if expected == 0 { 1 } else { -1 });
    }

    #[test]
    fn left_multiplication_by_vectors_is_skew(a in sparse_element(), b in sparse_element(), i in 0usize..24) {
        let u = CliffordElement::basis(EX, BitWord::singleton(i));
        let lhs = bilinear_form(&u.mul(&a).unwrap(), &b).unwrap();
        let rhs = bilinear_form(&a, &u.mul(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, -rhs);
    }

    #[test]
    fn conjugation_is_a_homomorphism(x in spin_element(), y in spin_element()) {
        let mx = x.conjugation_matrix().unwrap();
        let my = y.conjugation_matrix().unwrap();
        let mxy = x.mul(&y).unwrap().conjugation_matrix().unwrap();
        prop_assert_eq!(mx.mul(&my).unwrap(), mxy.clone());
        prop_assert!(mxy.is_orthogonal(0.0));
    }

    #[test]
    fn act_is_a_module_action(a in sparse_element(), b in sparse_element(), v in module_vector()) {
        let lhs = act(&a, &act(&b, &v).unwrap()).unwrap();
        let rhs = act(&a.mul(&b).unwrap(), &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parity_split(a in sparse_element(), v in module_vector()) {
        let even: CliffordElement = CliffordElement::from_terms(EX, a.terms().iter().filter(|(s, _)| s.weight() % 2 == 0).map(|(s, c)| (*s, c.clone()))).unwrap();
        let w = v.clone();
        let ve = SpinVector::from_entries(EX, (0..DIM).filter(|&k| golay().rep(k).weight() % 2 == 0).map(|k| (golay().rep(k), w.entry(k).clone()))).unwrap();
        prop_assume!(!ve.support().is_empty());
        let out = act(&even, &ve).unwrap();
        prop_assert!(out.parity() == Parity::Even);
        let odd = act(&CliffordElement::basis(EX, BitWord::singleton(3)), &ve).unwrap();
        prop_assert!(odd.parity() == Parity::Odd);
    }

    #[test]
    fn inner_adjointness(v in module_vector(), w in module_vector(), i in 0usize..24) {
        let u = CliffordElement::basis(EX, BitWord::singleton(i));
        let lhs = inner(&act(&u, &v).unwrap(), &w).unwrap();
        let rhs = inner(&v, &act(&u, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, -rhs);
    }

    #[test]
    fn cocycle_identities(x in sigma_member(), y in sigma_member()) {
        let g = golay();
        let sxy = cocycle_sigma(x, y).unwrap();
        let syx = cocycle_sigma(y, x).unwrap();
        let pairing = if x.dot(y) == 0 { 1 } else { -1 };
        prop_assert_eq!(sxy, pairing * syx);
        let xy = g.dotplus(x, y).unwrap();
        prop_assert_eq!(sxy, cocycle_sigma(x, x).unwrap() * cocycle_sigma(x, xy).unwrap());
        prop_assert_eq!(cocycle_sigma(x, BitWord::EMPTY).unwrap(), 1);
    }
}
