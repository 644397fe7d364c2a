//! Fock basis states, sparse vectors and single fermion modes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FockError;
use crate::codes::{golay, N_POINTS};
use crate::scalar::{Mode, Rational, Scalar};
use crate::spinmod::generator_table;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(pub i32);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_int(n: i32) -> Half {
        Half(2 * n)
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0 as i64, 2)
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl std::ops::Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl std::ops::Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for Half {
    type Err = FockError;
    fn from_str(s: &str) -> Result<Half, FockError> {
        let bad = || FockError::BadHalf(s.to_string());
        match s.split_once('/') {
            Some((p, "2")) => p.trim().parse::<i32>().map(Half).map_err(|_| bad()),
            Some(_) => Err(bad()),
            None => s.trim().parse::<i32>().map(Half::from_int).map_err(|_| bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    /// Half-integer modes over the vacuum.
    Untwisted,
    /// Integer modes over the spin module.
    Twisted,
}

impl Sector {
    /// Degree of the ground states.
    pub fn ground_degree(self) -> Half {
        match self {
            Sector::Untwisted => Half::ZERO,
            Sector::Twisted => Half(3),
        }
    }

    fn accepts(self, r: Half) -> bool {
        match self {
            Sector::Untwisted => !r.is_integral(),
            Sector::Twisted => r.is_integral(),
        }
    }

    // creation level of mode r < 0, or annihilation level of r > 0
    fn level(self, r: Half) -> usize {
        let a = r.0.unsigned_abs() as usize;
        match self {
            Sector::Untwisted => (a - 1) / 2,
            Sector::Twisted => a / 2 - 1,
        }
    }

    pub(crate) fn mode_at(self, level: usize) -> Half {
        match self {
            Sector::Untwisted => Half(-(2 * level as i32 + 1)),
            Sector::Twisted => Half(-(2 * level as i32 + 2)),
        }
    }
}

/// Number of creation levels a state can carry.
pub const LEVELS: usize = 8;

/// Largest degree `enumerate_basis` will list.
pub const ENUMERATION_CAP: Half = Half(7);

/// A monomial of creation operators on a ground state.
///
/// `levels[k]` holds the indices `i` with `e_i(r)` present, where `r` is
/// the `k`-th creation mode of the sector (`-1/2, -3/2, ...` or
/// `-1, -2, ...`). Reading left to right, the operators are sorted by
/// descending level and then ascending index, so `e_i(-3/2)e_i(-1/2)𝟏`
/// is canonical.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    pub sector: Sector,
    /// Co-code class of the ground state; always 0 when untwisted.
    pub ground: u16,
    pub levels: [u32; LEVELS],
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.modes() {
            write!(f, "e{}({}) ", i, r)?;
        }
        match self.sector {
            Sector::Untwisted => write!(f, "vac"),
            Sector::Twisted => write!(f, "1_θ[{}]", golay().rep(self.ground as usize)),
        }
    }
}

impl FockState {
    pub fn vacuum() -> FockState {
        FockState { sector: Sector::Untwisted, ground: 0, levels: [0; LEVELS] }
    }

    pub fn twisted_ground(class: usize) -> FockState {
        FockState { sector: Sector::Twisted, ground: class as u16, levels: [0; LEVELS] }
    }

    /// Builds `u_1(r_1)⋯u_k(r_k)` applied to a ground state, returning the
    /// reordering sign, or `None` if a mode repeats.
    pub fn from_modes(sector: Sector, ground: usize, modes: &[(usize, Half)]) -> Result<Option<(i8, FockState)>, FockError> {
        let mut s = FockState { sector, ground: ground as u16, levels: [0; LEVELS] };
        let mut sign = 1i8;
        for &(i, r) in modes.iter().rev() {
            if r.0 >= 0 {
                return Err(FockError::NotCreation(r));
            }
            match s.create(i, r)? {
                Some((c, t)) => {
                    sign *= c;
                    s = t;
                }
                None => return Ok(None),
            }
        }
        Ok(Some((sign, s)))
    }

    pub fn mode_count(&self) -> u32 {
        self.levels.iter().map(|l| l.count_ones()).sum()
    }

    pub fn degree(&self) -> Half {
        let modes: i32 = (0..LEVELS).map(|k| self.levels[k].count_ones() as i32 * -self.sector.mode_at(k).0).sum();
        self.sector.ground_degree() + Half(modes)
    }

    /// Parity of the state inside the super space: number of modes plus, for
    /// the twisted sector, the parity of the ground class.
    pub fn is_even(&self) -> bool {
        let ground = match self.sector {
            Sector::Untwisted => 0,
            Sector::Twisted => golay().rep(self.ground as usize).weight(),
        };
        (self.mode_count() + ground) % 2 == 0
    }

    /// Modes from left to right.
    pub fn modes(&self) -> Vec<(usize, Half)> {
        let mut out = Vec::with_capacity(self.mode_count() as usize);
        for k in (0..LEVELS).rev() {
            let mut bits = self.levels[k];
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                out.push((i, self.sector.mode_at(k)));
                bits &= bits - 1;
            }
        }
        out
    }

    /// Squared norm: `2^k` for `k` modes.
    pub fn norm(&self) -> i64 {
        1 << self.mode_count()
    }

    // number of operators standing left of the slot (k, i)
    fn left_of(&self, k: usize, i: usize) -> u32 {
        let above: u32 = self.levels[k + 1..].iter().map(|l| l.count_ones()).sum();
        above + (self.levels[k] & ((1u32 << i) - 1)).count_ones()
    }

    fn create(&self, i: usize, r: Half) -> Result<Option<(i8, FockState)>, FockError> {
        let k = self.sector.level(r);
        if k >= LEVELS {
            return Err(FockError::TruncationOverflow);
        }
        if self.levels[k] >> i & 1 == 1 {
            return Ok(None);
        }
        let sign = if self.left_of(k, i) % 2 == 0 { 1 } else { -1 };
        let mut t = *self;
        t.levels[k] |= 1 << i;
        Ok(Some((sign, t)))
    }

    /// `e_i(r)` applied to this state: a factor in `{±1, ±2}` and the
    /// resulting basis state, or `None` when the result vanishes.
    pub fn apply(&self, i: usize, r: Half) -> Result<Option<(i8, FockState)>, FockError> {
        if i >= N_POINTS {
            return Err(FockError::BadIndex(i));
        }
        if !self.sector.accepts(r) {
            return Err(FockError::SectorMismatch { sector: self.sector, mode: r });
        }
        if r.0 < 0 {
            return self.create(i, r);
        }
        if r.0 == 0 {
            let (s, y) = generator_table().get(i, self.ground as usize);
            let sign = if self.mode_count() % 2 == 0 { s } else { -s };
            let mut t = *self;
            t.ground = y as u16;
            return Ok(Some((sign, t)));
        }
        let k = self.sector.level(r);
        if k >= LEVELS || self.levels[k] >> i & 1 == 0 {
            return Ok(None);
        }
        let sign = if self.left_of(k, i) % 2 == 0 { -2 } else { 2 };
        let mut t = *self;
        t.levels[k] &= !(1 << i);
        Ok(Some((sign, t)))
    }

    /// Sum of `|r|` over the modes.
    pub(crate) fn mode_degree(&self) -> Half {
        self.degree() - self.sector.ground_degree()
    }
}

/// A finite combination of basis states of one sector.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    mode: Mode,
    terms: BTreeMap<FockState, Scalar>,
}

impl FockVector {
    pub fn zero(mode: Mode) -> FockVector {
        FockVector { mode, terms: BTreeMap::new() }
    }

    pub fn basis(mode: Mode, s: FockState) -> FockVector {
        let mut v = FockVector::zero(mode);
        v.terms.insert(s, Scalar::one(mode));
        v
    }

    pub fn vacuum(mode: Mode) -> FockVector {
        FockVector::basis(mode, FockState::vacuum())
    }

    /// A spin module vector placed on the twisted ground states.
    pub fn from_spin(t: &crate::spinmod::SpinVector) -> FockVector {
        let mut v = FockVector::zero(t.mode());
        for k in t.support() {
            v.terms.insert(FockState::twisted_ground(k), t.entry(k).clone());
        }
        v
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn sector(&self) -> Option<Sector> {
        self.terms.keys().next().map(|s| s.sector)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &FockState) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn add_term(&mut self, s: FockState, c: &Scalar) -> Result<(), FockError> {
        if c.mode() != self.mode {
            return Err(crate::scalar::ScalarError::ModeMismatch.into());
        }
        if self.sector().is_some_and(|x| x != s.sector) {
            return Err(FockError::MixedSectors);
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&s) {
            Some(x) => {
                *x = x.try_add(c)?;
                if x.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c.clone());
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector, FockError> {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector, FockError> {
        self.add(&other.scale(&Scalar::from_i64(other.mode, -1))?)
    }

    pub fn scale(&self, k: &Scalar) -> Result<FockVector, FockError> {
        let mut out = FockVector::zero(self.mode);
        if k.is_zero() {
            return Ok(out);
        }
        for (s, c) in &self.terms {
            out.terms.insert(*s, c.try_mul(k)?);
        }
        Ok(out)
    }

    /// The invariant bilinear form: basis states are orthogonal with
    /// squared norm `2^k`, twisted grounds orthonormal.
    pub fn inner(&self, other: &FockVector) -> Result<Scalar, FockError> {
        let mut acc = Scalar::zero(self.mode);
        for (s, c) in &self.terms {
            if let Some(d) = other.terms.get(s) {
                acc = acc.try_add(&c.try_mul(d)?.try_mul(&Scalar::from_i64(self.mode, s.norm()))?)?;
            }
        }
        Ok(acc)
    }

    /// Drops float coefficients below `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| !c.is_negligible(tol));
    }
}

/// `e_i(r) v`.
pub fn apply_mode(i: usize, r: Half, v: &FockVector) -> Result<FockVector, FockError> {
    let mut out = FockVector::zero(v.mode);
    for (s, c) in &v.terms {
        if let Some((f, t)) = s.apply(i, r)? {
            out.add_term(t, &c.try_mul(&Scalar::from_i64(v.mode, f as i64))?)?;
        }
    }
    Ok(out)
}

/// All basis states of `sector` with the given degree, in canonical order.
pub fn enumerate_basis(sector: Sector, degree: Half) -> Result<Vec<FockState>, FockError> {
    if degree > ENUMERATION_CAP {
        return Err(FockError::CapExceeded(degree));
    }
    let budget = degree - sector.ground_degree();
    if budget.0 < 0 || (sector == Sector::Twisted && !budget.is_integral()) {
        return Ok(Vec::new());
    }
    let mut mode_sets = Vec::new();
    let mut levels = [0u32; LEVELS];
    fill_levels(sector, 0, budget.0, &mut levels, &mut mode_sets);
    let mut out = Vec::new();
    let grounds = match sector {
        Sector::Untwisted => 1,
        Sector::Twisted => crate::spinmod::DIM,
    };
    for g in 0..grounds {
        for l in &mode_sets {
            out.push(FockState { sector, ground: g as u16, levels: *l });
        }
    }
    out.sort();
    Ok(out)
}

// distributes `left` (in halves) over levels k.. as sets of indices
fn fill_levels(sector: Sector, k: usize, left: i32, levels: &mut [u32; LEVELS], out: &mut Vec<[u32; LEVELS]>) {
    if left == 0 {
        out.push(*levels);
        return;
    }
    if k >= LEVELS {
        return;
    }
    let cost = -sector.mode_at(k).0;
    if cost > left {
        return;
    }
    for count in 0..=(left / cost).min(N_POINTS as i32) {
        for set in subsets_of_size(count as usize) {
            levels[k] = set;
            fill_levels(sector, k + 1, left - count * cost, levels, out);
        }
    }
    levels[k] = 0;
}

fn subsets_of_size(m: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if m == 0 {
        return vec![0];
    }
    // Gosper's hack over 24-bit masks
    let mut x: u32 = (1 << m) - 1;
    while x < 1 << N_POINTS {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Dimensions of the even part (untwisted even plus twisted even) for
/// degrees `0, 1/2, ..., max`.
pub fn census(max: Half) -> Result<Vec<(Half, usize)>, FockError> {
    (0..=max.0)
        .map(|d| {
            let d = Half(d);
            let mut n = 0;
            for sector in [Sector::Untwisted, Sector::Twisted] {
                n += enumerate_basis(sector, d)?.iter().filter(|s| s.is_even()).count();
            }
            Ok((d, n))
        })
        .collect()
}
