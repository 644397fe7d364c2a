//! Finite subgroups of the spin group: the lift of the Golay code and lifts
//! of signed permutations.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{basis_mul, CliffordElement, CliffordError};
use crate::codes::{golay, BinaryCode, BitWord, N_POINTS, OMEGA};
use crate::scalar::{Mode, QSqrt2, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinGroupError {
    #[error("code is not doubly even")]
    NotDoublyEven,
    #[error("code is not self-dual")]
    NotSelfDual,
    #[error("code does not contain the all-ones word")]
    MissingOmega,
    #[error("{0} is not a codeword")]
    NotCodeword(BitWord),
    #[error("not a permutation of 0..24")]
    BadPermutation,
    #[error("signed permutation has determinant −1 and no spin lift")]
    NegativeDeterminant,
    #[error("not a spin element: {0}")]
    NotSpin(String),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// The homomorphic lift `C ↦ g_C = ε(C)e_C` of a doubly even self-dual code.
#[derive(Clone, Debug)]
pub struct GroupLift {
    generators: Vec<BitWord>,
    coords: HashMap<u32, u16>,
    /// ε indexed by generator coordinates.
    eps: Vec<i8>,
}

impl GroupLift {
    pub fn generators(&self) -> &[BitWord] {
        &self.generators
    }

    pub fn epsilon(&self, c: BitWord) -> Result<i8, SpinGroupError> {
        let m = self.coords.get(&c.0).ok_or(SpinGroupError::NotCodeword(c))?;
        Ok(self.eps[*m as usize])
    }

    /// ε for a word already known to be a codeword.
    #[inline]
    pub fn epsilon_unchecked(&self, c: BitWord) -> i8 {
        self.eps[self.coords[&c.0] as usize]
    }

    pub fn element(&self, c: BitWord, mode: Mode) -> Result<CliffordElement, SpinGroupError> {
        let e = self.epsilon(c)?;
        Ok(CliffordElement::monomial(c, Scalar::from_i64(mode, e as i64)))
    }

    /// All `(C, ε(C))` pairs.
    pub fn signed_words(&self) -> impl Iterator<Item = (BitWord, i8)> + '_ {
        self.coords.iter().map(|(w, m)| (BitWord(*w), self.eps[*m as usize]))
    }

    pub fn z_word(&self) -> BitWord {
        OMEGA
    }
}

/// Lifts a doubly even self-dual code containing Ω, with Ω as the first
/// generator and `ε = +1` on every generator.
pub fn lift_golay(code: &BinaryCode) -> Result<GroupLift, SpinGroupError> {
    if !code.is_doubly_even() {
        return Err(SpinGroupError::NotDoublyEven);
    }
    if !code.is_self_dual() {
        return Err(SpinGroupError::NotSelfDual);
    }
    if code.length == N_POINTS && !code.words.contains(&OMEGA) {
        return Err(SpinGroupError::MissingOmega);
    }
    let full = BitWord((1u32 << code.length) - 1);
    let mut seed = vec![full];
    seed.extend_from_slice(&code.generators);
    let basis = BinaryCode::span(code.length, &seed);
    let gens = basis.generators;

    let n = 1usize << gens.len();
    let mut words = vec![BitWord::EMPTY; n];
    let mut eps = vec![1i8; n];
    for m in 1..n {
        let top = usize::BITS - 1 - m.leading_zeros();
        let prev = m & !(1 << top);
        let (s, w) = basis_mul(words[prev], gens[top as usize]);
        words[m] = w;
        eps[m] = eps[prev] * s;
    }
    let coords = words.iter().enumerate().map(|(m, w)| (w.0, m as u16)).collect();
    Ok(GroupLift { generators: gens, coords, eps })
}

static GOLAY_LIFT: OnceLock<GroupLift> = OnceLock::new();

/// The lift of the shared Golay code.
pub fn golay_lift() -> &'static GroupLift {
    GOLAY_LIFT.get_or_init(|| lift_golay(&golay().code).expect("Golay code lifts"))
}

/// A signed permutation `e_i ↦ ±e_{perm[i]}`, negated where `neg` has a bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub neg: BitWord,
}

impl SignedPermutation {
    pub fn identity() -> Self {
        SignedPermutation { perm: (0..N_POINTS).collect(), neg: BitWord::EMPTY }
    }

    pub fn validate(&self) -> Result<(), SpinGroupError> {
        let mut seen = [false; N_POINTS];
        if self.perm.len() != N_POINTS {
            return Err(SpinGroupError::BadPermutation);
        }
        for &p in &self.perm {
            if p >= N_POINTS || seen[p] {
                return Err(SpinGroupError::BadPermutation);
            }
            seen[p] = true;
        }
        Ok(())
    }

    /// Cycles of length at least two.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; N_POINTS];
        let mut out = Vec::new();
        for start in 0..N_POINTS {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                cyc.push(i);
                i = self.perm[i];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn determinant(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if (transpositions + self.neg.weight() as usize) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self, mode: Mode) -> crate::linalg::Matrix {
        let negate: Vec<bool> = (0..N_POINTS).map(|i| self.neg.contains(i)).collect();
        crate::linalg::Matrix::signed_permutation(&self.perm, &negate, mode)
    }
}

/// A spin element conjugating as the given signed permutation.
///
/// Each transposition contributes a factor `(e_a − e_b)/√2`, so the result
/// has `2^k` terms for a permutation needing `k` transpositions.
pub fn lift_signed_permutation(sp: &SignedPermutation) -> Result<CliffordElement, SpinGroupError> {
    sp.validate()?;
    if sp.determinant() != 1 {
        return Err(SpinGroupError::NegativeDeterminant);
    }
    let image_of_neg = BitWord::from_indices(sp.neg.indices().into_iter().map(|i| sp.perm[i]));
    let mut x = CliffordElement::basis(Mode::Exact, image_of_neg);
    let mut k = 0u32;
    for cyc in sp.cycles() {
        for j in (1..cyc.len()).rev() {
            let t = CliffordElement::from_terms(
                Mode::Exact,
                [
                    (BitWord::singleton(cyc[0]), Scalar::one(Mode::Exact)),
                    (BitWord::singleton(cyc[j]), Scalar::from_i64(Mode::Exact, -1)),
                ],
            )?;
            x = x.mul(&t)?;
            k += 1;
        }
    }
    // (1/√2)^k
    let half_pow = Rational::new(1, 1i64 << (k / 2 + k % 2));
    let norm = if k % 2 == 0 {
        QSqrt2::rational(half_pow)
    } else {
        QSqrt2::new(Rational::zero(), half_pow)
    };
    Ok(x.scale(&Scalar::Exact(norm))?)
}

/// The two spin elements `x` and `z·x` with `z = e_Ω`.
pub fn central_pair(x: &CliffordElement) -> Result<(CliffordElement, CliffordElement), SpinGroupError> {
    x.spin_check().map_err(SpinGroupError::NotSpin)?;
    let zx = CliffordElement::basis(x.mode(), OMEGA).mul(x)?;
    Ok((x.clone(), zx))
}
