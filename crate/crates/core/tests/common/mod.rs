//! Search helpers shared by the integration tests.
#![allow(dead_code)]

use fmoon_core::codes::{golay, BitWord, OverlapType};
use fmoon_core::superconformal::group_closure;

pub fn tetrads() -> Vec<BitWord> {
    golay().sigma().iter().copied().filter(|x| x.weight() == 4).collect()
}

pub fn commutes(a: BitWord, b: BitWord) -> bool {
    golay().sextet_overlap_type(a, b).unwrap() == OverlapType::Commuting4
}

/// Commuting pairs `(A, B)` in Σ.
pub fn commuting_pairs(n: usize) -> Vec<(BitWord, BitWord)> {
    let ts = tetrads();
    let mut out = Vec::new();
    for (i, a) in ts.iter().enumerate().step_by(97) {
        for b in &ts[i + 1..] {
            if commutes(*a, *b) {
                out.push((*a, *b));
                break;
            }
        }
        if out.len() == n {
            break;
        }
    }
    out
}

pub fn totally_commuting_triple(a: BitWord, b: BitWord) -> Option<BitWord> {
    let g = golay();
    let ab = g.dotplus(a, b).unwrap();
    tetrads().into_iter().find(|c| {
        if [BitWord::EMPTY, a, b, ab].contains(c) {
            return false;
        }
        let elems = group_closure(&[a, b, *c]).unwrap();
        elems.iter().all(|x| x.weight() != 2)
            && elems.iter().filter(|x| !x.is_empty()).all(|x| {
                elems.iter().filter(|y| !y.is_empty() && *y != x).all(|y| commutes(*x, *y))
            })
    })
}

pub fn dodecad_pairs(d: BitWord) -> [[usize; 2]; 6] {
    let ix = d.indices();
    std::array::from_fn(|k| [ix[2 * k], ix[2 * k + 1]])
}

/// An involution of type 1^8 2^8 preserving the Golay code, found as a
/// power of a word in the generators `a ↦ a + 1`, `a ↦ −1/a` and the
/// cubing map of the quadratic residue construction.
pub const M24_INVOLUTION: [usize; 24] =
    [22, 1, 2, 7, 23, 17, 14, 3, 8, 11, 10, 9, 12, 13, 6, 18, 16, 5, 15, 21, 20, 19, 0, 4];

/// Spin elements acting monomially on the Fock basis, with labels.
pub fn monomial_elements() -> Vec<(&'static str, fmoon_core::CliffordElement)> {
    use fmoon_core::spingroup::{golay_lift, lift_signed_permutation, SignedPermutation};
    use fmoon_core::{codes::OMEGA, CliffordElement, Mode};
    let g = golay();
    let lift = golay_lift();
    let octad = g.octads().next().unwrap();
    let dodecad = g.dodecads().next().unwrap();
    let perm = SignedPermutation { perm: M24_INVOLUTION.to_vec(), neg: BitWord::EMPTY };
    vec![
        ("one", CliffordElement::one(Mode::Exact)),
        ("omega", CliffordElement::basis(Mode::Exact, OMEGA)),
        ("octad", lift.element(octad, Mode::Exact).unwrap()),
        ("dodecad", lift.element(dodecad, Mode::Exact).unwrap()),
        ("m24-involution", lift_signed_permutation(&perm).unwrap()),
    ]
}
