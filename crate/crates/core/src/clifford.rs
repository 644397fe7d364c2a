//! The Clifford algebra on 24 orthonormal generators with `e_i² = −1`.
//!
//! Elements are sparse combinations of basis monomials `e_S`, where `e_S` is
//! the product of the generators in `S` taken in increasing index order.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use thiserror::Error;

use crate::codes::{BitWord, N_POINTS};
use crate::linalg::Matrix;
use crate::scalar::{Mode, QSqrt2, Rational, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("element is not invertible in the Clifford group")]
    NotInvertible,
    #[error("conjugation does not preserve the generating space")]
    LeavesGeneratingSpace,
    #[error("rotation needs two distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("angle {0} is not a multiple of π/4, so it has no exact form")]
    AngleNotExact(f64),
}

const FLOAT_TOL: f64 = 1e-9;

/// Sign and support of `e_S e_R`.
#[inline]
pub fn basis_mul(s: BitWord, r: BitWord) -> (i8, BitWord) {
    // pairs (a, b) with a ∈ S, b ∈ R, a > b, plus one factor −1 per shared index
    let mut swaps = (s.0 & r.0).count_ones();
    let mut rest = r.0;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (s.0 >> b >> 1).count_ones();
    }
    (if swaps & 1 == 0 { 1 } else { -1 }, s.sum(r))
}

/// Sign of `e_S e_S`.
pub fn square_sign(s: BitWord) -> i8 {
    let w = s.weight();
    if (w * (w + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of the Clifford algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement {
    mode: Mode,
    terms: BTreeMap<BitWord, Scalar>,
}

impl CliffordElement {
    pub fn zero(mode: Mode) -> Self {
        CliffordElement { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: Mode) -> Self {
        Self::basis(mode, BitWord::EMPTY)
    }

    /// The monomial `e_S`.
    pub fn basis(mode: Mode, s: BitWord) -> Self {
        Self::monomial(s, Scalar::one(mode))
    }

    pub fn monomial(s: BitWord, c: Scalar) -> Self {
        let mut x = CliffordElement::zero(c.mode());
        if !c.is_zero() {
            x.terms.insert(s, c);
        }
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (BitWord, Scalar)>>(
        mode: Mode,
        terms: I,
    ) -> Result<Self, CliffordError> {
        let mut x = CliffordElement::zero(mode);
        for (s, c) in terms {
            if c.mode() != mode {
                return Err(ScalarError::ModeMismatch.into());
            }
            x.add_term(s, &c);
        }
        Ok(x)
    }

    /// The generating-space vector `Σ c_i e_i`.
    pub fn vector(coeffs: &[Scalar]) -> Result<Self, CliffordError> {
        let mode = coeffs.first().map(Scalar::mode).unwrap_or(Mode::Exact);
        Self::from_terms(mode, coeffs.iter().enumerate().map(|(i, c)| (BitWord::singleton(i), c.clone())))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<BitWord, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, s: BitWord) -> Scalar {
        self.terms.get(&s).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, s: BitWord, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c.clone());
            }
        }
    }

    fn check_mode(&self, other: &Self) -> Result<(), CliffordError> {
        if self.mode != other.mode {
            return Err(ScalarError::ModeMismatch.into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CliffordError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c)
    }

    pub fn scale(&self, k: &Scalar) -> Result<Self, CliffordError> {
        if k.mode() != self.mode {
            return Err(ScalarError::ModeMismatch.into());
        }
        if k.is_zero() {
            return Ok(CliffordElement::zero(self.mode));
        }
        Ok(self.map_coeffs(|_, c| c * k))
    }

    fn map_coeffs(&self, f: impl Fn(BitWord, &Scalar) -> Scalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (*s, f(*s, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        CliffordElement { mode: self.mode, terms }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_mode(other)?;
        let mut out = CliffordElement::zero(self.mode);
        for (s, a) in &self.terms {
            for (r, b) in &other.terms {
                let (sign, p) = basis_mul(*s, *r);
                out.add_term(p, &(a * b).signed(sign));
            }
        }
        Ok(out)
    }

    /// Left multiplication by `sign·e_S`.
    pub fn left_mul_basis(&self, s: BitWord, sign: i8) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(r, c)| {
                let (t, p) = basis_mul(s, *r);
                (p, c.signed(t * sign))
            })
            .collect();
        CliffordElement { mode: self.mode, terms }
    }

    /// The reversal anti-automorphism.
    pub fn alpha(&self) -> Self {
        self.map_coeffs(|s, c| {
            let w = s.weight();
            c.signed(if (w * w.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 })
        })
    }

    /// The parity involution.
    pub fn parity(&self) -> Self {
        self.map_coeffs(|s, c| c.signed(if s.weight() % 2 == 0 { 1 } else { -1 }))
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|s| s.weight() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|s| s.weight() % 2 == 1)
    }

    /// The scalar part, if the element is a pure scalar multiple of `𝟏`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.mode)),
            1 => self.terms.get(&BitWord::EMPTY).cloned(),
            _ => None,
        }
    }

    /// Inverse of an element `x` with `α(x)x` a nonzero scalar.
    pub fn inverse(&self) -> Result<Self, CliffordError> {
        let a = self.alpha();
        let prod = a.mul(self)?;
        let norm = match self.mode {
            Mode::Exact => prod.as_scalar(),
            // float round-off leaves tiny non-scalar terms
            Mode::Float => prod
                .terms
                .iter()
                .all(|(s, c)| s.is_empty() || c.is_negligible(FLOAT_TOL))
                .then(|| prod.coeff(BitWord::EMPTY)),
        }
        .ok_or(CliffordError::NotInvertible)?;
        if norm.is_zero() {
            return Err(CliffordError::NotInvertible);
        }
        Ok(a.scale(&norm.recip()?)?)
    }

    pub fn to_float(&self) -> Self {
        CliffordElement {
            mode: Mode::Float,
            terms: self.terms.iter().map(|(s, c)| (*s, c.to_float())).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| self.coeff(*k).approx_eq(&other.coeff(*k), tol))
    }

    /// Matrix of `u ↦ x u x⁻¹` on the generating space, in the basis `e_0..e_23`.
    pub fn conjugation_matrix(&self) -> Result<Matrix, CliffordError> {
        let inv = self.inverse()?;
        let mut m = Matrix::zeros(N_POINTS, self.mode);
        for i in 0..N_POINTS {
            let col = self.mul(&CliffordElement::basis(self.mode, BitWord::singleton(i)))?.mul(&inv)?;
            for (s, c) in col.terms() {
                if self.mode == Mode::Float && c.is_negligible(FLOAT_TOL) {
                    continue;
                }
                if s.weight() != 1 {
                    return Err(CliffordError::LeavesGeneratingSpace);
                }
                m.set(s.0.trailing_zeros() as usize, i, c.clone());
            }
        }
        Ok(m)
    }

    /// Checks membership in the spin group, reporting the first failed condition.
    pub fn spin_check(&self) -> Result<(), String> {
        if !self.is_even() {
            return Err("element is not even".into());
        }
        let n = self.alpha().mul(self).map_err(|e| e.to_string())?;
        if n != CliffordElement::one(self.mode) && !(self.mode == Mode::Float && n.approx_eq(&CliffordElement::one(self.mode), FLOAT_TOL)) {
            return Err("α(x)x is not 𝟏".into());
        }
        self.conjugation_matrix().map_err(|e| e.to_string())?;
        Ok(())
    }

    pub fn is_spin(&self) -> bool {
        self.spin_check().is_ok()
    }
}

/// `⟨a, b⟩ = Σ_S a_S b_S`; the monomials are orthonormal.
pub fn bilinear_form(a: &CliffordElement, b: &CliffordElement) -> Result<Scalar, CliffordError> {
    a.check_mode(b)?;
    let mut acc = Scalar::zero(a.mode);
    for (s, x) in &a.terms {
        if let Some(y) = b.terms.get(s) {
            acc = &acc + &(x * y);
        }
    }
    Ok(acc)
}

/// `cos θ + sin θ·e_i e_j`, conjugating as a rotation by `2θ` in the `(i, j)` plane.
pub fn rotation(i: usize, j: usize, theta: f64, mode: Mode) -> Result<CliffordElement, CliffordError> {
    check_pair(i, j)?;
    match mode {
        Mode::Float => {
            let (s, c) = theta.sin_cos();
            let (sign, ij) = basis_mul(BitWord::singleton(i), BitWord::singleton(j));
            CliffordElement::from_terms(
                Mode::Float,
                [(BitWord::EMPTY, Scalar::Float(c)), (ij, Scalar::Float(s * sign as f64))],
            )
        }
        Mode::Exact => {
            let k = theta / FRAC_PI_4;
            let r = k.round();
            if (k - r).abs() > 1e-12 {
                return Err(CliffordError::AngleNotExact(theta));
            }
            rotation_exact(i, j, r.rem_euclid(8.0) as u8)
        }
    }
}

/// The rotation element for `θ = eighths·π/4`, exactly.
pub fn rotation_exact(i: usize, j: usize, eighths: u8) -> Result<CliffordElement, CliffordError> {
    check_pair(i, j)?;
    let half = QSqrt2::new(Rational::zero(), Rational::new(1, 2));
    let one = QSqrt2::one();
    let zero = QSqrt2::zero();
    // (cos, sin) at multiples of π/4
    let (c, s) = match eighths % 8 {
        0 => (one.clone(), zero.clone()),
        1 => (half.clone(), half.clone()),
        2 => (zero.clone(), one.clone()),
        3 => (-&half, half.clone()),
        4 => (-&one, zero.clone()),
        5 => (-&half, -&half),
        6 => (zero.clone(), -&one),
        _ => (half.clone(), -&half),
    };
    let (sign, ij) = basis_mul(BitWord::singleton(i), BitWord::singleton(j));
    CliffordElement::from_terms(
        Mode::Exact,
        [(BitWord::EMPTY, Scalar::Exact(c)), (ij, Scalar::Exact(s).signed(sign))],
    )
}

fn check_pair(i: usize, j: usize) -> Result<(), CliffordError> {
    for k in [i, j] {
        if k >= N_POINTS {
            return Err(CliffordError::IndexOutOfRange(k));
        }
    }
    if i == j {
        return Err(CliffordError::SameIndex(i));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sign(s: BitWord, r: BitWord) -> (i8, BitWord) {
        let mut word: Vec<usize> = s.indices();
        word.extend(r.indices());
        let mut sign = 1i8;
        // bubble sort, cancelling equal neighbours
        loop {
            let mut changed = false;
            let mut k = 0;
            while k + 1 < word.len() {
                if word[k] > word[k + 1] {
                    word.swap(k, k + 1);
                    sign = -sign;
                    changed = true;
                } else if word[k] == word[k + 1] {
                    word.drain(k..k + 2);
                    sign = -sign;
                    changed = true;
                    continue;
                }
                k += 1;
            }
            if !changed {
                break;
            }
        }
        (sign, BitWord::from_indices(word))
    }

    #[test]
    fn basis_mul_matches_naive_reduction() {
        let mut x = 0x9e3779b9u32;
        for _ in 0..2000 {
            x ^= x << 13;
            x ^= x >> 17;
            x ^= x << 5;
            let s = BitWord(x & 0xffffff);
            let r = BitWord(x.rotate_left(11) & 0xffffff);
            assert_eq!(basis_mul(s, r), naive_sign(s, r));
        }
    }

    #[test]
    fn small_products() {
        let (e1, e2) = (BitWord::singleton(1), BitWord::singleton(2));
        assert_eq!(basis_mul(e1, e1), (-1, BitWord::EMPTY));
        assert_eq!(basis_mul(e1, e2).0, 1);
        assert_eq!(basis_mul(e2, e1).0, -1);
    }

    #[test]
    fn quarter_turn_is_spin() {
        let x = rotation_exact(1, 2, 1).unwrap();
        assert!(x.is_spin());
        let y = rotation(1, 2, std::f64::consts::FRAC_PI_2, Mode::Exact).unwrap();
        assert_eq!(y, CliffordElement::basis(Mode::Exact, BitWord::from_indices([1, 2])));
        assert!(rotation(1, 2, 0.3, Mode::Exact).is_err());
    }
}
