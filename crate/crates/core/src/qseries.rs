//! Truncated q-expansions with exact rational coefficients.
//!
//! Exponents are integers in units of 1/48. A series with truncation `trunc`
//! knows every coefficient below `q^{trunc/48}` exactly.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exponent unit: exponents are stored as multiples of `1/UNIT`.
pub const UNIT: i64 = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("series has no invertible leading term below its truncation")]
    NotInvertible,
    #[error("unsupported eta scale {num}/{den}")]
    UnsupportedScale { num: i64, den: i64 },
    #[error("frame shape weight is {0}, expected 24")]
    BadFrameShape(i64),
    #[error("malformed series: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, BigRational>,
    trunc: i64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QSeries {
    pub fn zero(trunc: i64) -> Self {
        QSeries { coeffs: BTreeMap::new(), trunc }
    }

    pub fn monomial(exp: i64, c: BigRational, trunc: i64) -> Self {
        let mut s = QSeries::zero(trunc);
        if exp < trunc && !c.is_zero() {
            s.coeffs.insert(exp, c);
        }
        s
    }

    pub fn one(trunc: i64) -> Self {
        QSeries::monomial(0, BigRational::one(), trunc)
    }

    pub fn constant(c: i64, trunc: i64) -> Self {
        QSeries::monomial(0, rat(c), trunc)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I, trunc: i64) -> Self {
        let mut s = QSeries::zero(trunc);
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of `q^{exp/48}`, or `None` beyond the truncation.
    pub fn coeff(&self, exp: i64) -> Option<BigRational> {
        (exp < self.trunc).then(|| self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Coefficient of `q^{num/den}`.
    pub fn coeff_at(&self, num: i64, den: i64) -> Option<BigRational> {
        if (num * UNIT) % den != 0 {
            return Some(BigRational::zero()).filter(|_| num * UNIT / den < self.trunc);
        }
        self.coeff(num * UNIT / den)
    }

    /// Integer coefficient of `q^{num/den}`; panics if it is not an integer.
    pub fn int_coeff_at(&self, num: i64, den: i64) -> Option<i64> {
        self.coeff_at(num, den).map(|c| {
            assert!(c.is_integer(), "coefficient {c} is not an integer");
            c.to_integer().to_i64().expect("coefficient fits in i64")
        })
    }

    fn add_term(&mut self, e: i64, c: &BigRational) {
        if e >= self.trunc || c.is_zero() {
            return;
        }
        let v = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Drops everything at or above `trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        QSeries { coeffs: self.coeffs.range(..trunc).map(|(e, c)| (*e, c.clone())).collect(), trunc }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.trunc.min(other.trunc));
        for (e, c) in &other.coeffs {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(), trunc: self.trunc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return QSeries::zero(self.trunc);
        }
        QSeries { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(), trunc: self.trunc }
    }

    /// Multiplication by `q^{e/48}`.
    pub fn shift(&self, e: i64) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|(x, c)| (x + e, c.clone())).collect(), trunc: self.trunc + e }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (la, lb) = (self.leading_exponent(), other.leading_exponent());
        let trunc = match (la, lb) {
            (Some(a), Some(b)) => (a + other.trunc).min(b + self.trunc),
            (None, Some(b)) => self.trunc + b,
            (Some(a), None) => other.trunc + a,
            (None, None) => self.trunc.max(other.trunc),
        };
        let mut out = QSeries::zero(trunc);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                if ea + eb >= trunc {
                    break;
                }
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self, QSeriesError> {
        let lead = self.leading_exponent().ok_or(QSeriesError::NotInvertible)?;
        let precision = self.trunc - lead;
        let a: Vec<(i64, BigRational)> = self.coeffs.iter().map(|(e, c)| (e - lead, c.clone())).collect();
        let a0_inv = a[0].1.recip();
        let mut b: Vec<BigRational> = vec![BigRational::zero(); precision as usize];
        b[0] = a0_inv.clone();
        for n in 1..precision {
            let mut acc = BigRational::zero();
            for (j, aj) in &a[1..] {
                if *j > n {
                    break;
                }
                let bj = &b[(n - j) as usize];
                if !bj.is_zero() {
                    acc += aj * bj;
                }
            }
            if !acc.is_zero() {
                b[n as usize] = -(acc * &a0_inv);
            }
        }
        Ok(QSeries::from_terms(
            b.into_iter().enumerate().map(|(k, c)| (k as i64 - lead, c)),
            precision - lead,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, QSeriesError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self, QSeriesError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = QSeries::one(i64::MAX / 4);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        if n == 0 {
            acc.trunc = self.trunc - self.leading_exponent().unwrap_or(0);
        }
        Ok(acc)
    }

    /// Substitutes `q ↦ q^k`.
    pub fn scale_q(&self, k: i64) -> Self {
        assert!(k > 0, "scale must be positive");
        QSeries { coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(), trunc: self.trunc * k }
    }

    /// The derivation `q d/dq`.
    pub fn q_deriv(&self) -> Self {
        QSeries::from_terms(
            self.coeffs.iter().map(|(e, c)| (*e, c * BigRational::new((*e).into(), UNIT.into()))),
            self.trunc,
        )
    }

    /// Equality of all coefficients below the smaller truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t = self.trunc.min(other.trunc);
        self.truncate(t) == other.truncate(t)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            unit: UNIT,
            terms: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, c.numer().to_string(), c.denom().to_string()))
                .collect(),
            trunc: Some(self.trunc),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self, QSeriesError> {
        if j.unit <= 0 || UNIT % j.unit != 0 {
            return Err(QSeriesError::Malformed(format!("unit {}", j.unit)));
        }
        let f = UNIT / j.unit;
        let mut terms = Vec::with_capacity(j.terms.len());
        for (e, p, q) in &j.terms {
            let p: BigInt = p.parse().map_err(|_| QSeriesError::Malformed(p.clone()))?;
            let q: BigInt = q.parse().map_err(|_| QSeriesError::Malformed(q.clone()))?;
            if q.is_zero() {
                return Err(QSeriesError::Malformed("zero denominator".into()));
            }
            terms.push((e * f, BigRational::new(p, q)));
        }
        let trunc = j.trunc.map(|t| t * f).unwrap_or_else(|| terms.iter().map(|t| t.0 + 1).max().unwrap_or(0));
        Ok(QSeries::from_terms(terms, trunc))
    }
}

/// Wire format: `{"unit":48,"terms":[[e,"p","q"],…],"trunc":t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub unit: i64,
    pub terms: Vec<(i64, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<i64>,
}

fn exponent_text(e: i64) -> String {
    let g = e.gcd(&UNIT);
    let (n, d) = (e / g, UNIT / g);
    if d == 1 {
        format!("{n}")
    } else {
        format!("{n}/{d}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "q^{}", exponent_text(*e))?,
                _ => write!(f, "{mag}q^{}", exponent_text(*e))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", exponent_text(self.trunc))
    }
}

/// Runs `build` with growing working precision until its result reaches `trunc`.
fn with_precision(trunc: i64, build: impl Fn(i64) -> Result<QSeries, QSeriesError>) -> Result<QSeries, QSeriesError> {
    let mut pad = UNIT * 2;
    loop {
        let s = build(trunc + pad)?;
        if s.trunc >= trunc {
            return Ok(s.truncate(trunc));
        }
        pad += s.trunc.abs().max(UNIT) + (trunc - s.trunc);
    }
}

/// `η(kτ/den) = q^{k/(24·den)} ∏_{n≥1} (1 − q^{kn/den})` for `den ∈ {1, 2}`.
pub fn eta(k: i64, den: i64, trunc: i64) -> Result<QSeries, QSeriesError> {
    if k <= 0 || !(den == 1 || den == 2) || (UNIT * k) % den != 0 || k > 48 {
        return Err(QSeriesError::UnsupportedScale { num: k, den });
    }
    let lead = 2 * k / den;
    let step = UNIT * k / den;
    if trunc <= lead {
        return Ok(QSeries::zero(trunc));
    }
    let degree = ((trunc - lead) + step - 1) / step;
    let poly = euler_product(degree as usize, |n| n);
    Ok(QSeries::from_terms(
        poly.into_iter().enumerate().map(|(j, c)| (lead + step * j as i64, rat(c))),
        trunc,
    ))
}

/// Coefficients of `∏ (1 − x^{f(n)})` over `n ≥ 1`, below `x^degree`.
fn euler_product(degree: usize, f: impl Fn(usize) -> usize) -> Vec<i64> {
    let mut p = vec![0i64; degree];
    if degree == 0 {
        return p;
    }
    p[0] = 1;
    let mut n = 1;
    while f(n) < degree {
        let d = f(n);
        for j in (d..degree).rev() {
            p[j] -= p[j - d];
        }
        n += 1;
    }
    p
}

/// `φ(kτ) = η(kτ/2)/η(kτ)`.
pub fn phi(k: i64, trunc: i64) -> Result<QSeries, QSeriesError> {
    with_precision(trunc, |t| eta(k, 2, t)?.div(&eta(k, 1, t)?))
}

/// `φ(kτ)` from its product form `q^{−k/48} ∏_{n≥0} (1 − q^{k(n+½)})`.
pub fn phi_product(k: i64, trunc: i64) -> Result<QSeries, QSeriesError> {
    with_precision(trunc, |t| {
        let step = UNIT * k / 2;
        let degree = ((t + k).max(0) + step - 1) / step;
        let p = euler_product(degree as usize, |n| 2 * n - 1);
        let s = QSeries::from_terms(p.into_iter().enumerate().map(|(j, c)| (step * j as i64, rat(c))), step * degree);
        Ok(s.shift(-k))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Eta,
    Phi,
}

/// `∏ η(kτ)^{p_k}` or `∏ φ(kτ)^{p_k}` over the parts of a frame shape.
pub fn eta_quotient(parts: &BTreeMap<i64, i64>, flavor: Flavor, trunc: i64) -> Result<QSeries, QSeriesError> {
    let weight: i64 = parts.iter().map(|(k, p)| k * p).sum();
    if weight != 24 {
        return Err(QSeriesError::BadFrameShape(weight));
    }
    with_precision(trunc, |t| {
        let mut acc = QSeries::one(t + 4 * UNIT * 24);
        for (&k, &p) in parts {
            if p == 0 {
                continue;
            }
            let base = match flavor {
                Flavor::Eta => eta(k, 1, t + UNIT * 24)?,
                Flavor::Phi => phi(k, t + UNIT * 24)?,
            };
            acc = acc.mul(&base.pow(p)?);
        }
        Ok(acc)
    })
}

/// `η(τ)^48 / (η(τ/2)^24 η(2τ)^24)`.
pub fn jtheta(trunc: i64) -> Result<QSeries, QSeriesError> {
    with_precision(trunc, |t| {
        let num = eta(1, 1, t + 48)?.pow(48)?;
        let den = eta(1, 2, t + 48)?.pow(24)?.mul(&eta(2, 1, t + 48)?.pow(24)?);
        num.div(&den)
    })
}

/// `−2^12 η(2τ)^24/η(τ)^24`.
pub fn jtheta_at_one(trunc: i64) -> Result<QSeries, QSeriesError> {
    with_precision(trunc, |t| {
        let q = eta(2, 1, t)?.pow(24)?.div(&eta(1, 1, t)?.pow(24)?)?;
        Ok(q.scale(&rat(-4096)))
    })
}

/// Number of vectors of each norm `2n` in the E8 lattice, for `n < count`.
pub fn e8_norm_counts(count: usize) -> Vec<u64> {
    // coordinates doubled: all even (integer part) or all odd (half-integer
    // part), coordinate sum divisible by 4, squared length 8n
    let max = 8 * count.saturating_sub(1) as i64;
    let mut total = vec![0u64; count];
    for parity in 0..2i64 {
        // state: (squared length, coordinate sum mod 4) -> count
        let mut layer: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        layer.insert((0, 0), 1);
        for _ in 0..8 {
            let mut next: BTreeMap<(i64, i64), u64> = BTreeMap::new();
            for (&(len, sum), &c) in &layer {
                let r = (((max - len) as f64).sqrt()) as i64 + 1;
                for x in -r..=r {
                    if x.rem_euclid(2) == parity && len + x * x <= max {
                        *next.entry((len + x * x, (sum + x).rem_euclid(4))).or_insert(0) += c;
                    }
                }
            }
            layer = next;
        }
        for ((len, sum), c) in layer {
            if sum == 0 && len % 8 == 0 {
                total[(len / 8) as usize] += c;
            }
        }
    }
    total
}

/// Theta series of the E8 lattice, `Σ q^{|v|²/2}`.
pub fn theta_e8(trunc: i64) -> QSeries {
    let count = ((trunc + UNIT - 1) / UNIT).max(0) as usize;
    let counts = e8_norm_counts(count);
    QSeries::from_terms(
        counts.into_iter().enumerate().map(|(n, c)| (UNIT * n as i64, rat(c as i64))),
        trunc,
    )
}

pub fn divisor_sum(n: u64, power: u32) -> u64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(power)).sum()
}

/// `1 − 24 Σ σ₁(n) qⁿ`.
pub fn eisenstein2_normalized(trunc: i64) -> QSeries {
    let count = ((trunc + UNIT - 1) / UNIT).max(0);
    let mut terms = vec![(0, BigRational::one())];
    for n in 1..count {
        terms.push((UNIT * n, rat(-24 * divisor_sum(n as u64, 1) as i64)));
    }
    QSeries::from_terms(terms, trunc)
}

/// Truncation covering all exponents up to and including `q^{num/den}`.
pub fn through(num: i64, den: i64) -> i64 {
    num * UNIT / den + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let e = eta(1, 1, 48 * 8).unwrap();
        let one = e.mul(&e.inv().unwrap());
        assert_eq!(one.truncate(one.trunc()), QSeries::one(one.trunc()));
    }

    #[test]
    fn q_deriv_of_monomial() {
        let m = QSeries::monomial(7, BigRational::one(), 100);
        let d = m.q_deriv();
        assert_eq!(d.coeff(7), Some(BigRational::new(7.into(), 48.into())));
    }

    #[test]
    fn pretty_print() {
        let j = jtheta(through(1, 2)).unwrap();
        assert_eq!(j.to_string(), "q^-1/2 + 24 + 276q^1/2 + O(q^25/48)");
    }
}
