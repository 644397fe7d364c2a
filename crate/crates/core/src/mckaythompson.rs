//! Frame shapes of orthogonal matrices and graded traces of spin elements
//! on the fermionic moonshine space.
//!
//! The closed form combines eta and φ quotients of the frame shapes of `g`
//! and `−g` with the spin-module characters of `x` and `z·x`; the oracle
//! takes the literal trace on the θ-fixed Fock basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{CliffordElement, CliffordError};
use crate::codes::{golay, N_POINTS, OMEGA};
use crate::fockvoa::{graded_trace, FockError, Half, MonomialAction, Sector, TraceAction};
use crate::linalg::Matrix;
use crate::qseries::{eta_quotient, Flavor, QSeries, QSeriesError, UNIT};
use crate::scalar::{Mode, Rational, Scalar};
use crate::spinmod::{act_basis, chi_trace, DIM};

/// Orders searched before giving up.
pub const ORDER_CAP: u32 = 120;

/// Largest degree the oracle will enumerate.
pub const ORACLE_DEGREE_CAP: Half = Half(6);

#[derive(Debug, Error)]
pub enum MtError {
    #[error("matrix is not a 24×24 exact orthogonal matrix")]
    NotOrthogonal,
    #[error("no finite order up to {0}")]
    InfiniteOrder(u32),
    #[error("multiplicity of k = {0} is not an integer")]
    NonIntegral(i64),
    #[error("characteristic polynomial disagrees with the frame shape at x = {0}")]
    ProductMismatch(i64),
    #[error("not a spin element: {0}")]
    NotSpin(String),
    #[error("element must be in exact mode")]
    NotExact,
    #[error("spin-module character {0} is irrational")]
    IrrationalCharacter(String),
    #[error("element does not act by a signed permutation of the generators")]
    NotMonomial,
    #[error("oracle degree {0} exceeds the cap {cap}", cap = ORACLE_DEGREE_CAP)]
    DegreeTooHigh(Half),
    #[error("malformed frame shape {0:?}")]
    BadShape(String),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Series(#[from] QSeriesError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// `{k^{p_k}}` with `det(1 − xM) = ∏ (1 − x^k)^{p_k}`, together with the
/// order of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FrameShapeJson", into = "FrameShapeJson")]
pub struct FrameShape {
    pub parts: BTreeMap<i64, i64>,
    pub m: u32,
}

#[derive(Serialize, Deserialize)]
struct FrameShapeJson {
    shape: String,
    order: u32,
}

impl From<FrameShape> for FrameShapeJson {
    fn from(f: FrameShape) -> Self {
        FrameShapeJson { shape: f.to_string(), order: f.m }
    }
}

impl TryFrom<FrameShapeJson> for FrameShape {
    type Error = MtError;
    fn try_from(j: FrameShapeJson) -> Result<Self, MtError> {
        let mut f: FrameShape = j.shape.parse()?;
        if f.parts.keys().any(|k| j.order as i64 % k != 0) {
            return Err(MtError::BadShape(j.shape));
        }
        f.m = j.order;
        Ok(f)
    }
}

impl FrameShape {
    /// `Σ k·p_k`, which is 24 for every shape of a 24×24 matrix.
    pub fn weight(&self) -> i64 {
        self.parts.iter().map(|(k, p)| k * p).sum()
    }

    /// `∏ (1 − x^k)^{p_k}` at an integer point other than ±1.
    pub fn evaluate(&self, x: i64) -> BigRational {
        let mut acc = BigRational::one();
        for (&k, &p) in &self.parts {
            let base = BigRational::one() - BigRational::from_integer(BigInt::from(x).pow(k as u32));
            acc *= num::pow::Pow::pow(&base, p as i32);
        }
        acc
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(k, p)| format!("{k}^{p}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for FrameShape {
    type Err = MtError;

    /// Parses `"1^8.2^8"`; the order is taken as the lcm of the parts.
    fn from_str(s: &str) -> Result<Self, MtError> {
        let bad = || MtError::BadShape(s.to_string());
        let mut parts = BTreeMap::new();
        for piece in s.split('.') {
            let (k, p) = piece.split_once('^').ok_or_else(bad)?;
            let k: i64 = k.trim().parse().map_err(|_| bad())?;
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            if k <= 0 || parts.insert(k, p).is_some() {
                return Err(bad());
            }
        }
        parts.retain(|_, p| *p != 0);
        let m = parts.keys().fold(1i64, |a, &k| num::integer::lcm(a, k));
        let shape = FrameShape { parts, m: m as u32 };
        if shape.weight() != 24 {
            return Err(bad());
        }
        Ok(shape)
    }
}

fn mobius(n: i64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

fn exact_rational(x: &Scalar) -> Option<BigRational> {
    match x {
        Scalar::Exact(q) if q.b.is_zero() => Some(q.a.to_big()),
        _ => None,
    }
}

fn exact_integer(x: &Scalar) -> Option<i64> {
    exact_rational(x).filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
}

/// Frame shape of an exact orthogonal matrix of finite order.
///
/// `k·p_k = Σ_{d|k} μ(k/d) tr(M^d)`; the result is then checked against
/// `det(1 − xM)` at 25 integer points, which pins down the degree-24
/// polynomial.
pub fn frame_shape(m: &Matrix) -> Result<FrameShape, MtError> {
    if m.n() != N_POINTS || m.mode() != Mode::Exact || !m.is_orthogonal(0.0) {
        return Err(MtError::NotOrthogonal);
    }
    let id = Matrix::identity(N_POINTS, Mode::Exact);
    let mut traces = vec![0i64];
    let mut power = m.clone();
    let mut order = None;
    for d in 1..=ORDER_CAP {
        let t = exact_integer(&power.trace()).ok_or(MtError::NotOrthogonal)?;
        traces.push(t);
        if power == id {
            order = Some(d);
            break;
        }
        power = power.mul(m).map_err(CliffordError::from)?;
    }
    let order = order.ok_or(MtError::InfiniteOrder(ORDER_CAP))?;
    let mut parts = BTreeMap::new();
    for k in 1..=order as i64 {
        if order as i64 % k != 0 {
            continue;
        }
        let sum: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(k / d) * traces[d as usize]).sum();
        if sum % k != 0 {
            return Err(MtError::NonIntegral(k));
        }
        if sum != 0 {
            parts.insert(k, sum / k);
        }
    }
    let shape = FrameShape { parts, m: order };
    for x in 0..=24i64 {
        let x = if x >= 1 { x + 1 } else { x };
        let shifted = char_matrix(m, x)?;
        if exact_rational(&shifted.det()) != Some(shape.evaluate(x)) {
            return Err(MtError::ProductMismatch(x));
        }
    }
    Ok(shape)
}

// 1 − xM
fn char_matrix(m: &Matrix, x: i64) -> Result<Matrix, MtError> {
    let rows = m
        .rows()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, c)| {
                    let v = &c * &Scalar::from_i64(Mode::Exact, -x);
                    if i == j {
                        &v + &Scalar::one(Mode::Exact)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows).map_err(CliffordError::from)?)
}

/// `½(φ_g + φ_{−g})`, the contribution of the untwisted sector.
pub fn untwisted_part(g: &FrameShape, minus_g: &FrameShape, trunc: i64) -> Result<QSeries, MtError> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let a = eta_quotient(&g.parts, Flavor::Phi, trunc)?;
    let b = eta_quotient(&minus_g.parts, Flavor::Phi, trunc)?;
    Ok(a.add(&b).scale(&half))
}

/// The pieces entering the closed form for one spin element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtData {
    pub g: FrameShape,
    pub minus_g: FrameShape,
    /// Trace of `x` on the spin module.
    pub chi: String,
    /// Trace of `z·x` on the spin module.
    pub chi_z: String,
}

fn spin_exact(x: &CliffordElement) -> Result<(), MtError> {
    if x.mode() != Mode::Exact {
        return Err(MtError::NotExact);
    }
    x.spin_check().map_err(MtError::NotSpin)
}

fn character(x: &CliffordElement) -> Result<BigRational, MtError> {
    let c = chi_trace(x);
    exact_rational(&c).ok_or_else(|| MtError::IrrationalCharacter(c.to_string()))
}

/// Graded trace of the spin element `x` on the θ-fixed space, from
/// `½(φ_g + φ_{−g}) + ½(χ(x) η_{−g} + χ(z·x) η_g)` with `g` the rotation
/// induced by `x`. Exponents are in units of `1/48`, below `trunc`.
pub fn mt_series(x: &CliffordElement, trunc: i64) -> Result<(QSeries, MtData), MtError> {
    spin_exact(x)?;
    let m = x.conjugation_matrix()?;
    let g = frame_shape(&m)?;
    let minus_g = frame_shape(&m.neg())?;
    let zx = CliffordElement::basis(Mode::Exact, OMEGA).mul(x)?;
    let (chi, chi_z) = (character(x)?, character(&zx)?);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let twisted = eta_quotient(&minus_g.parts, Flavor::Eta, trunc)?
        .scale(&chi)
        .add(&eta_quotient(&g.parts, Flavor::Eta, trunc)?.scale(&chi_z))
        .scale(&half);
    let series = untwisted_part(&g, &minus_g, trunc)?.add(&twisted);
    let data = MtData { g, minus_g, chi: chi.to_string(), chi_z: chi_z.to_string() };
    Ok((series, data))
}

/// Coefficient of `q^{d − 1/2}`, the degree `d` part.
pub fn series_at_degree(series: &QSeries, d: Half) -> Option<BigRational> {
    series.coeff((d.0 as i64 - 1) * UNIT / 2)
}

/// The signed permutation of generators and ground diagonal of `x`.
pub fn monomial_action(x: &CliffordElement) -> Result<MonomialAction, MtError> {
    spin_exact(x)?;
    let m = x.conjugation_matrix()?;
    let mut perm = [0usize; N_POINTS];
    let mut signs = [0i8; N_POINTS];
    for i in 0..N_POINTS {
        let mut hit = None;
        for j in 0..N_POINTS {
            let c = m.get(j, i);
            if c.is_zero() {
                continue;
            }
            let s = exact_integer(c).filter(|v| v.abs() == 1).ok_or(MtError::NotMonomial)?;
            if hit.replace((j, s as i8)).is_some() {
                return Err(MtError::NotMonomial);
            }
        }
        let (j, s) = hit.ok_or(MtError::NotMonomial)?;
        perm[i] = j;
        signs[i] = s;
    }
    // only codeword terms of x fix a class
    let g = golay();
    let diagonal_terms: Vec<_> = x.terms().iter().filter(|(s, _)| g.is_codeword(**s)).collect();
    let ground_diagonal = (0..DIM)
        .map(|k| {
            diagonal_terms.iter().fold(Scalar::zero(Mode::Exact), |acc, (s, c)| {
                let (sign, y) = act_basis(**s, k);
                debug_assert_eq!(y, k);
                &acc + &c.signed(sign)
            })
        })
        .collect();
    Ok(MonomialAction { perm, signs, ground_diagonal })
}

/// One coefficient of the literal graded trace.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleTerm {
    pub degree: Half,
    pub trace: Scalar,
}

/// Traces of `x` on the θ-fixed states of each degree `0, ½, …, max_degree`,
/// summed over both sectors by enumerating the Fock basis.
pub fn mt_oracle(x: &CliffordElement, max_degree: Half) -> Result<Vec<OracleTerm>, MtError> {
    if max_degree > ORACLE_DEGREE_CAP {
        return Err(MtError::DegreeTooHigh(max_degree));
    }
    let action = monomial_action(x)?;
    let act = TraceAction::Monomial(&action);
    let mut out = Vec::new();
    for d in 0..=max_degree.0 {
        let degree = Half(d);
        let mut trace = graded_trace(&act, Sector::Untwisted, degree, true)?;
        if degree >= Sector::Twisted.ground_degree() {
            trace = &trace + &graded_trace(&act, Sector::Twisted, degree, true)?;
        }
        out.push(OracleTerm { degree, trace });
    }
    Ok(out)
}

/// Degrees at which oracle and series disagree.
pub fn oracle_mismatches(series: &QSeries, oracle: &[OracleTerm]) -> Vec<Half> {
    oracle
        .iter()
        .filter(|t| {
            let expected = series_at_degree(series, t.degree).map(|c| Scalar::from_rational(Rational::from_big(c)));
            expected.as_ref() != Some(&t.trace)
        })
        .map(|t| t.degree)
        .collect()
}
