//! The 4096-dimensional spin module induced from the trivial character of
//! the Golay lift.
//!
//! Basis vectors `e_X 1_G` are indexed by co-code classes in the canonical
//! order of [`Golay::reps`](crate::codes::Golay::reps).

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{basis_mul, CliffordElement};
use crate::codes::{golay, BitWord, CodeError, N_POINTS};
use crate::scalar::{Mode, Scalar, ScalarError};
use crate::spingroup::golay_lift;

pub const DIM: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinModError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("{0} is not a canonical co-code representative")]
    NotCanonical(BitWord),
    #[error("{alt} is not a balanced lift of the class of {x}")]
    NotBalancedLift { x: BitWord, alt: BitWord },
    #[error("vector has components of both parities")]
    MixedParity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Sign and class of `e_S e_X 1_G` for the class with index `x`.
#[inline]
pub fn act_basis(s: BitWord, x: usize) -> (i8, usize) {
    let g = golay();
    let r = g.rep(x);
    let (s0, y) = basis_mul(s, r);
    let y_class = g.class_index(y);
    let r2 = g.rep(y_class);
    let c = y.sum(r2);
    if c.is_empty() {
        return (s0, y_class);
    }
    let (s1, _) = basis_mul(r2, c);
    (s0 * s1 * golay_lift().epsilon_unchecked(c), y_class)
}

/// `e_i e_X 1_G` for every generator `i` and class `X`, precomputed.
pub struct GeneratorTable {
    table: Vec<(i8, u16)>,
}

impl GeneratorTable {
    #[inline]
    pub fn get(&self, i: usize, x: usize) -> (i8, usize) {
        let (s, y) = self.table[i * DIM + x];
        (s, y as usize)
    }
}

static GEN_TABLE: OnceLock<GeneratorTable> = OnceLock::new();

pub fn generator_table() -> &'static GeneratorTable {
    GEN_TABLE.get_or_init(|| {
        let table = (0..N_POINTS)
            .flat_map(|i| {
                (0..DIM).map(move |x| {
                    let (s, y) = act_basis(BitWord::singleton(i), x);
                    (s, y as u16)
                })
            })
            .collect();
        GeneratorTable { table }
    })
}

/// A vector of the spin module.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinVector {
    mode: Mode,
    entries: Vec<Scalar>,
}

impl SpinVector {
    pub fn zero(mode: Mode) -> Self {
        SpinVector { mode, entries: vec![Scalar::zero(mode); DIM] }
    }

    /// The generating vector `1_G`.
    pub fn ground(mode: Mode) -> Self {
        Self::basis(mode, 0)
    }

    pub fn basis(mode: Mode, class: usize) -> Self {
        let mut v = Self::zero(mode);
        v.entries[class] = Scalar::one(mode);
        v
    }

    /// Builds a vector from `(canonical representative, coefficient)` pairs.
    pub fn from_entries<I: IntoIterator<Item = (BitWord, Scalar)>>(mode: Mode, it: I) -> Result<Self, SpinModError> {
        let g = golay();
        let mut v = Self::zero(mode);
        for (rep, c) in it {
            if c.mode() != mode {
                return Err(ScalarError::ModeMismatch.into());
            }
            let k = g.class_index(rep);
            if g.rep(k) != rep {
                return Err(SpinModError::NotCanonical(rep));
            }
            v.entries[k] = &v.entries[k] + &c;
        }
        Ok(v)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn entry(&self, class: usize) -> &Scalar {
        &self.entries[class]
    }

    /// Coefficient of `e_X 1_G` for a canonical representative `X`.
    pub fn coeff(&self, rep: BitWord) -> Result<&Scalar, SpinModError> {
        let g = golay();
        let k = g.class_index(rep);
        if g.rep(k) != rep {
            return Err(SpinModError::NotCanonical(rep));
        }
        Ok(&self.entries[k])
    }

    pub fn set(&mut self, class: usize, c: Scalar) {
        assert_eq!(c.mode(), self.mode, "scalar mode mismatch");
        self.entries[class] = c;
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..DIM).filter(|&k| !self.entries[k].is_zero()).collect()
    }

    pub fn parity(&self) -> Parity {
        let g = golay();
        let (mut even, mut odd) = (false, false);
        for k in self.support() {
            if g.rep(k).weight() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SpinModError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SpinModError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self, SpinModError> {
        if self.mode != other.mode {
            return Err(ScalarError::ModeMismatch.into());
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(SpinVector { mode: self.mode, entries })
    }

    pub fn scale(&self, k: &Scalar) -> Result<Self, SpinModError> {
        if k.mode() != self.mode {
            return Err(ScalarError::ModeMismatch.into());
        }
        Ok(SpinVector { mode: self.mode, entries: self.entries.iter().map(|a| a * k).collect() })
    }

    pub fn to_float(&self) -> Self {
        SpinVector { mode: Mode::Float, entries: self.entries.iter().map(Scalar::to_float).collect() }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.entries.iter().map(Scalar::to_f64).collect()
    }

    pub fn from_f64_vec(v: &[f64]) -> Self {
        assert_eq!(v.len(), DIM);
        SpinVector { mode: Mode::Float, entries: v.iter().map(|&x| Scalar::Float(x)).collect() }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b, tol))
    }
}

/// The Clifford action on the spin module.
pub fn act(a: &CliffordElement, v: &SpinVector) -> Result<SpinVector, SpinModError> {
    if a.mode() != v.mode {
        return Err(ScalarError::ModeMismatch.into());
    }
    let support = v.support();
    let mut out = SpinVector::zero(v.mode);
    for (s, c) in a.terms() {
        for &x in &support {
            let (sign, y) = act_basis(*s, x);
            let term = (c * &v.entries[x]).signed(sign);
            out.entries[y] = &out.entries[y] + &term;
        }
    }
    Ok(out)
}

pub fn inner(v: &SpinVector, w: &SpinVector) -> Result<Scalar, SpinModError> {
    if v.mode != w.mode {
        return Err(ScalarError::ModeMismatch.into());
    }
    let mut acc = Scalar::zero(v.mode);
    for (a, b) in v.entries.iter().zip(&w.entries) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    Ok(acc)
}

/// `⟨e_C t, t⟩`, touching only the support of `t`.
pub fn matrix_element(c: BitWord, t: &SpinVector, support: &[usize]) -> Scalar {
    let mut acc = Scalar::zero(t.mode);
    for &x in support {
        let (sign, y) = act_basis(c, x);
        let ty = &t.entries[y];
        if !ty.is_zero() {
            acc = &acc + &(&t.entries[x] * ty).signed(sign);
        }
    }
    acc
}

/// The sign σ(X, Y) with `e_X e_Y 1_G = σ(X,Y) e_{X∔Y} 1_G`.
pub fn cocycle_sigma(x: BitWord, y: BitWord) -> Result<i8, SpinModError> {
    let g = golay();
    g.check_sigma(x)?;
    g.check_sigma(y)?;
    Ok(act_basis(x, g.class_index(y)).0)
}

/// The sign ϱ with `ϱ e_X e_{X'} 1_G = 1_G` for a second balanced lift `X'`.
pub fn rho(x: BitWord, alt: BitWord) -> Result<i8, SpinModError> {
    let g = golay();
    g.check_sigma(x)?;
    let c = x.sum(alt);
    if !g.is_codeword(c) || alt.weight() != x.weight() {
        return Err(SpinModError::NotBalancedLift { x, alt });
    }
    let (s, _) = basis_mul(x, alt);
    Ok(s * golay_lift().epsilon_unchecked(c))
}

/// Trace of `x` on the spin module as a literal diagonal sum.
///
/// Only codeword terms of `x` can have diagonal entries.
pub fn chi_trace(x: &CliffordElement) -> Scalar {
    let g = golay();
    let diagonal: Vec<(BitWord, &Scalar)> =
        x.terms().iter().filter(|(s, _)| g.is_codeword(**s)).map(|(s, c)| (*s, c)).collect();
    let chunks: Vec<Scalar> = (0..DIM)
        .collect::<Vec<_>>()
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = Scalar::zero(x.mode());
            for &k in chunk {
                for (s, c) in &diagonal {
                    let (sign, y) = act_basis(*s, k);
                    if y == k {
                        acc = &acc + &c.signed(sign);
                    }
                }
            }
            acc
        })
        .collect();
    chunks.iter().fold(Scalar::zero(x.mode()), |a, b| &a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::OMEGA;

    #[test]
    fn golay_fixes_ground() {
        let lift = golay_lift();
        for (c, e) in lift.signed_words().take(200) {
            let (s, y) = act_basis(c, 0);
            assert_eq!((s * e, y), (1, 0));
        }
    }

    #[test]
    fn omega_acts_by_coweight_parity() {
        let g = golay();
        for x in 0..DIM {
            let (s, y) = act_basis(OMEGA, x);
            assert_eq!(y, x);
            assert_eq!(s, if g.rep(x).weight() % 2 == 0 { 1 } else { -1 });
        }
    }
}
