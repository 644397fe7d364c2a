//! Checks built on the mode algebra: products of the weight 3/2 vector
//! with itself, the super-Virasoro relations, the Lie algebra on degree one
//! and graded traces.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::state::{enumerate_basis, FockState, FockVector, Half, Sector};
use super::vertex::{degree_one_basis, omega, rational_scalar, vertex_mode, virasoro, MAX_VERTEX_DEGREE};
use super::FockError;
use crate::codes::N_POINTS;
use crate::qseries::{eisenstein2_normalized, QSeries, UNIT};
use crate::scalar::{Mode, Rational, Scalar};
use crate::spinmod::{inner, Parity, SpinVector};

fn validate_unit_even(t: &SpinVector) -> Result<(), FockError> {
    if t.parity() != Parity::Even {
        return Err(FockError::OddVector);
    }
    let n = inner(t, t)?;
    let unit = match n {
        Scalar::Exact(_) => n == Scalar::one(Mode::Exact),
        Scalar::Float(x) => (x - 1.0).abs() < 1e-9,
    };
    if !unit {
        return Err(FockError::NotUnit);
    }
    Ok(())
}

fn even_basis(sector: Sector, degree: Half) -> Result<Vec<FockState>, FockError> {
    Ok(enumerate_basis(sector, degree)?.into_iter().filter(|s| s.is_even()).collect())
}

fn split_by_degree(v: &FockVector) -> BTreeMap<Half, FockVector> {
    let mut out: BTreeMap<Half, FockVector> = BTreeMap::new();
    for (s, c) in v.iter() {
        out.entry(s.degree()).or_insert_with(|| FockVector::zero(v.mode())).add_term(*s, c).expect("one sector");
    }
    out
}

fn factorial(j: usize) -> i64 {
    (1..=j as i64).product()
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `τ_m v` for untwisted even `v`, where `τ` is the twisted vector `t`:
/// `Σ_j (1/j!) (-1)^{j+m+1} L(-1)^j (v_{j+m} τ)`.
pub fn tau_on_untwisted(t: &FockVector, m: i32, v: &FockVector) -> Result<FockVector, FockError> {
    let mode = v.mode();
    let mut out = FockVector::zero(mode);
    for (d, vd) in split_by_degree(v) {
        let top = d.0 / 2 - 1 - m;
        for j in 0..=top.max(-1) {
            let mut w = vertex_mode(&vd, Half::from_int(j + m), t)?;
            for _ in 0..j {
                w = virasoro(-1, &w)?;
            }
            let k = Rational::new(sign((j + m + 1) as i64), factorial(j as usize));
            out = out.add(&w.scale(&rational_scalar(mode, &k))?)?;
        }
    }
    Ok(out)
}

/// `τ_m w` for twisted `w`, determined by its pairings with the untwisted
/// even basis: `⟨τ_m w|x⟩ = Σ_j (1/j!) (-1)^{j-m} ⟨L(1)^j w | x_{j-m+1} τ⟩`.
/// This uses `L(1)τ = 0`, which holds for every ground state `τ`.
pub fn tau_on_twisted(t: &FockVector, m: i32, w: &FockVector) -> Result<FockVector, FockError> {
    let mode = w.mode();
    let mut out = FockVector::zero(mode);
    for (dw, wd) in split_by_degree(w) {
        let d = dw + Half(1) - Half::from_int(m);
        if d.0 < 0 {
            continue;
        }
        if d > MAX_VERTEX_DEGREE {
            return Err(FockError::DegreeTooHigh(d));
        }
        let mut lowered = vec![wd];
        loop {
            let next = virasoro(1, lowered.last().expect("nonempty"))?;
            if next.is_zero() {
                break;
            }
            lowered.push(next);
        }
        let basis = even_basis(Sector::Untwisted, d)?;
        let terms: Vec<Result<Option<(FockState, Scalar)>, FockError>> = basis
            .par_iter()
            .map(|x| {
                let xv = FockVector::basis(mode, *x);
                let mut val = Scalar::zero(mode);
                for (j, lw) in lowered.iter().enumerate() {
                    let xt = vertex_mode(&xv, Half::from_int(j as i32 - m + 1), t)?;
                    let p = lw.inner(&xt)?;
                    if !p.is_zero() {
                        let k = Rational::new(sign(j as i64 - m as i64), factorial(j));
                        val = val.try_add(&p.try_mul(&rational_scalar(mode, &k))?)?;
                    }
                }
                if val.is_zero() {
                    return Ok(None);
                }
                let c = val.try_div(&Scalar::from_i64(mode, x.norm()))?;
                Ok(Some((*x, c)))
            })
            .collect();
        for r in terms {
            if let Some((x, c)) = r? {
                out.add_term(x, &c)?;
            }
        }
    }
    Ok(out)
}

/// `τ_n τ` for `n = 2, 1, 0` with `τ = √8·t` on the twisted ground states.
#[derive(Clone, Debug)]
pub struct TProducts {
    pub t2: FockVector,
    pub t1: FockVector,
    pub t0: FockVector,
}

impl TProducts {
    /// Whether the triple is `(8·𝟏, 0, 2ω)`.
    pub fn is_superconformal(&self) -> bool {
        let mode = self.t2.mode();
        let vac = FockVector::vacuum(mode).scale(&Scalar::from_i64(mode, 8)).expect("same mode");
        let two_omega = omega(mode).scale(&Scalar::from_i64(mode, 2)).expect("same mode");
        let close = |a: &FockVector, b: &FockVector| match mode {
            Mode::Exact => a == b,
            Mode::Float => {
                let mut d = a.sub(b).expect("same mode");
                d.prune(1e-9);
                d.is_zero()
            }
        };
        close(&self.t2, &vac) && self.t1.is_zero() && close(&self.t0, &two_omega)
    }
}

/// Computes `τ_n τ = Σ_u (-1)^n ⟨τ | u_{1-n} τ⟩ / ⟨u|u⟩ · u` over the even
/// untwisted basis of degree `2 - n`.
pub fn t_products(t: &SpinVector) -> Result<TProducts, FockError> {
    validate_unit_even(t)?;
    let mode = t.mode();
    let tv = FockVector::from_spin(t);
    let eight = Scalar::from_i64(mode, 8);
    let product = |n: i32| -> Result<FockVector, FockError> {
        let basis = even_basis(Sector::Untwisted, Half::from_int(2 - n))?;
        let terms: Vec<Result<Option<(FockState, Scalar)>, FockError>> = basis
            .par_iter()
            .map(|u| {
                let w = vertex_mode(&FockVector::basis(mode, *u), Half::from_int(1 - n), &tv)?;
                let p = tv.inner(&w)?;
                if p.is_zero() {
                    return Ok(None);
                }
                let c = p.try_mul(&eight)?.signed(sign(n as i64) as i8).try_div(&Scalar::from_i64(mode, u.norm()))?;
                Ok(Some((*u, c)))
            })
            .collect();
        let mut out = FockVector::zero(mode);
        for r in terms {
            if let Some((u, mut c)) = r? {
                if mode == Mode::Float && c.is_negligible(1e-12) {
                    c = Scalar::zero(mode);
                }
                out.add_term(u, &c)?;
            }
        }
        Ok(out)
    };
    Ok(TProducts { t2: product(2)?, t1: product(1)?, t0: product(0)? })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NsReport {
    pub states: usize,
    /// States where `{G(1/2), G(-1/2)} v ≠ 2 L(0) v`.
    pub failures: Vec<String>,
}

impl NsReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `{G(1/2), G(-1/2)} = 2L(0)` on even untwisted states of degree at
/// most one, with `G(r) = τ_{r+1/2}` and `τ = √8·t`.
pub fn ns_check(t: &SpinVector) -> Result<NsReport, FockError> {
    validate_unit_even(t)?;
    let mode = t.mode();
    let tv = FockVector::from_spin(t);
    let eight = Scalar::from_i64(mode, 8);
    let mut states = even_basis(Sector::Untwisted, Half::ZERO)?;
    states.extend(even_basis(Sector::Untwisted, Half(2))?);
    let results: Vec<Result<Option<String>, FockError>> = states
        .par_iter()
        .map(|s| {
            let v = FockVector::basis(mode, *s);
            let down = tau_on_untwisted(&tv, 1, &v)?;
            let up = tau_on_untwisted(&tv, 0, &v)?;
            let lhs = tau_on_twisted(&tv, 1, &up)?.add(&tau_on_twisted(&tv, 0, &down)?)?.scale(&eight)?;
            let rhs = virasoro(0, &v)?.scale(&Scalar::from_i64(mode, 2))?;
            let mut diff = lhs.sub(&rhs)?;
            diff.prune(1e-9);
            Ok((!diff.is_zero()).then(|| format!("{:?}", s)))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(NsReport { states: states.len(), failures })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VirasoroReport {
    pub states: usize,
    pub relations: usize,
    /// `(state, m, n)` for each violated relation; `m = n` marks `L(0)`.
    pub failures: Vec<(String, i32, i32)>,
}

impl VirasoroReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Central charge of the 24 fermions.
pub const CENTRAL_CHARGE: i64 = 12;

/// Checks `[L(m), L(n)] = (m-n)L(m+n) + (m³-m)/12·c·δ_{m+n,0}` for
/// `|m|, |n| ≤ range` and `L(0) = degree` on every basis state of both
/// sectors with degree at most `max_degree`.
pub fn virasoro_check(max_degree: Half, range: i32) -> Result<VirasoroReport, FockError> {
    let mut states = Vec::new();
    for d in 0..=max_degree.0 {
        for sector in [Sector::Untwisted, Sector::Twisted] {
            states.extend(enumerate_basis(sector, Half(d))?);
        }
    }
    let pairs: Vec<(i32, i32)> =
        (-range..=range).flat_map(|m| (m + 1..=range).map(move |n| (m, n))).collect();
    let results: Vec<Result<Vec<(String, i32, i32)>, FockError>> = states
        .par_iter()
        .map(|s| {
            let mode = Mode::Exact;
            let v = FockVector::basis(mode, *s);
            let mut fails = Vec::new();
            let mut cache: HashMap<i32, FockVector> = HashMap::new();
            for n in -2 * range..=2 * range {
                cache.insert(n, virasoro(n, &v)?);
            }
            let deg = s.degree();
            let expect0 = v.scale(&rational_scalar(mode, &deg.to_rational()))?;
            if cache[&0] != expect0 {
                fails.push((format!("{:?}", s), 0, 0));
            }
            for &(m, n) in &pairs {
                let lhs = virasoro(m, &cache[&n])?.sub(&virasoro(n, &cache[&m])?)?;
                let mut rhs = cache[&(m + n)].scale(&Scalar::from_i64(mode, (m - n) as i64))?;
                if m + n == 0 {
                    let central = Rational::new((m as i64).pow(3) - m as i64, 12) * Rational::from_integer(CENTRAL_CHARGE);
                    rhs = rhs.add(&v.scale(&rational_scalar(mode, &central))?)?;
                }
                if lhs != rhs {
                    fails.push((format!("{:?}", s), m, n));
                }
            }
            Ok(fails)
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(VirasoroReport { states: states.len(), relations: states.len() * (pairs.len() + 1), failures })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieReport {
    pub dim: usize,
    /// Entries where `κ(u,v) ≠ 44·P(u,v)` with `u_1 v = P(u,v)𝟏`.
    pub killing_vs_pairing_mismatches: usize,
    /// Entries where `κ(u,v) ≠ 44·⟨u|v⟩` for the positive invariant form.
    pub killing_vs_form_mismatches: usize,
    /// `κ(u,u)`, `P(u,u)` and `⟨u|u⟩` for `u = e_0(-1/2)e_1(-1/2)𝟏`.
    pub sample_killing: String,
    pub sample_pairing: String,
    pub sample_norm: String,
    pub antisymmetric: bool,
    pub jacobi_triples: usize,
    pub jacobi_failures: usize,
}

/// The degree one algebra with bracket `[u, v] = u_0 v`: its Killing form
/// against the pairing `u_1 v`, antisymmetry, and Jacobi on random triples.
pub fn lie_algebra_checks(jacobi_samples: usize, seed: u64) -> Result<LieReport, FockError> {
    let mode = Mode::Exact;
    let basis = degree_one_basis();
    let dim = basis.len();
    let index: HashMap<FockState, usize> = basis.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let vecs: Vec<FockVector> = basis.iter().map(|s| FockVector::basis(mode, *s)).collect();
    let to_rational = |c: &Scalar| -> Rational { c.as_exact().expect("exact").a.clone() };

    // ad[u] as (row, column) -> entry, and P(u, v)
    let rows: Vec<Result<(HashMap<(usize, usize), Rational>, Vec<Rational>), FockError>> = vecs
        .par_iter()
        .map(|u| {
            let mut ad = HashMap::new();
            let mut pairing = vec![Rational::zero(); dim];
            for (x, xv) in vecs.iter().enumerate() {
                for (y, c) in vertex_mode(u, Half::ZERO, xv)?.iter() {
                    ad.insert((index[y], x), to_rational(c));
                }
                let p = vertex_mode(u, Half(2), xv)?;
                pairing[x] = to_rational(&p.coeff(&FockState::vacuum()));
            }
            Ok((ad, pairing))
        })
        .collect();
    let mut ads = Vec::with_capacity(dim);
    let mut pairing = Vec::with_capacity(dim);
    for r in rows {
        let (a, p) = r?;
        ads.push(a);
        pairing.push(p);
    }
    let forty_four = Rational::from_integer(44);
    let killing = |u: usize, v: usize| -> Rational {
        let mut acc = Rational::zero();
        for (&(y, x), c) in &ads[v] {
            if let Some(d) = ads[u].get(&(x, y)) {
                acc = &acc + &(c * d);
            }
        }
        acc
    };
    let mismatches: Vec<(usize, usize)> = (0..dim)
        .into_par_iter()
        .map(|u| {
            let mut m = (0, 0);
            for v in 0..dim {
                let k = killing(u, v);
                if k != &forty_four * &pairing[u][v] {
                    m.0 += 1;
                }
                let form = if u == v { Rational::from_integer(basis[u].norm()) } else { Rational::zero() };
                if k != &forty_four * &form {
                    m.1 += 1;
                }
            }
            m
        })
        .collect();

    // [u, x] has component c along y exactly when [x, u] has -c along y
    let antisymmetric = (0..dim).all(|u| {
        ads[u].iter().all(|(&(y, x), c)| ads[x].get(&(y, u)).is_some_and(|d| *d == -c))
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_element = |rng: &mut ChaCha8Rng| -> Result<FockVector, FockError> {
        let mut v = FockVector::zero(mode);
        for _ in 0..3 {
            let k = rng.random_range(0..dim);
            v.add_term(basis[k], &Scalar::from_i64(mode, rng.random_range(-3..=3)))?;
        }
        Ok(v)
    };
    let bracket = |a: &FockVector, b: &FockVector| vertex_mode(a, Half::ZERO, b);
    let mut jacobi_failures = 0;
    for _ in 0..jacobi_samples {
        let (x, y, z) = (random_element(&mut rng)?, random_element(&mut rng)?, random_element(&mut rng)?);
        let lhs = bracket(&x, &bracket(&y, &z)?)?;
        let rhs = bracket(&bracket(&x, &y)?, &z)?.add(&bracket(&y, &bracket(&x, &z)?)?)?;
        if lhs != rhs {
            jacobi_failures += 1;
        }
    }

    Ok(LieReport {
        dim,
        killing_vs_pairing_mismatches: mismatches.iter().map(|m| m.0).sum(),
        killing_vs_form_mismatches: mismatches.iter().map(|m| m.1).sum(),
        sample_killing: killing(0, 0).to_string(),
        sample_pairing: pairing[0][0].to_string(),
        sample_norm: basis[0].norm().to_string(),
        antisymmetric,
        jacobi_triples: jacobi_samples,
        jacobi_failures,
    })
}

/// An element acting on fermions by a signed permutation,
/// `x e_i(r) x⁻¹ = signs[i] e_{perm[i]}(r)`, together with the diagonal of
/// its action on the spin module.
#[derive(Clone, Debug)]
pub struct MonomialAction {
    pub perm: [usize; N_POINTS],
    pub signs: [i8; N_POINTS],
    pub ground_diagonal: Vec<Scalar>,
}

impl MonomialAction {
    fn diagonal(&self, s: &FockState) -> Result<Scalar, FockError> {
        let mode = self.ground_diagonal[0].mode();
        let images: Vec<(usize, Half)> = s.modes().into_iter().map(|(i, r)| (self.perm[i], r)).collect();
        let Some((reorder, t)) = FockState::from_modes(s.sector, s.ground as usize, &images)? else {
            return Ok(Scalar::zero(mode));
        };
        if t.levels != s.levels {
            return Ok(Scalar::zero(mode));
        }
        let sign: i8 = s.modes().iter().map(|(i, _)| self.signs[*i]).product::<i8>() * reorder;
        let ground = match s.sector {
            Sector::Untwisted => Scalar::one(mode),
            Sector::Twisted => self.ground_diagonal[s.ground as usize].clone(),
        };
        Ok(ground.signed(sign))
    }
}

pub enum TraceAction<'a> {
    Identity,
    Monomial(&'a MonomialAction),
    /// `o(u)o(v) = u_{deg u - 1} v_{deg v - 1}` for homogeneous `u`, `v`.
    ZeroModes(&'a FockVector, &'a FockVector),
}

fn zero_mode_index(u: &FockVector) -> Result<Half, FockError> {
    let degrees: Vec<Half> = u.iter().map(|(s, _)| s.degree()).collect();
    match degrees.first() {
        Some(d) if degrees.iter().all(|e| e == d) => Ok(*d - Half(2)),
        Some(_) => Err(FockError::NotHomogeneous),
        None => Ok(Half::ZERO),
    }
}

/// Trace of `action` on the degree `degree` part of `sector`, restricted to
/// even states when `even_only`, as an exact diagonal sum.
pub fn graded_trace(action: &TraceAction<'_>, sector: Sector, degree: Half, even_only: bool) -> Result<Scalar, FockError> {
    let basis: Vec<FockState> =
        enumerate_basis(sector, degree)?.into_iter().filter(|s| !even_only || s.is_even()).collect();
    let mode = match action {
        TraceAction::Identity => Mode::Exact,
        TraceAction::Monomial(m) => m.ground_diagonal[0].mode(),
        TraceAction::ZeroModes(u, _) => u.mode(),
    };
    let (nu, nv) = match action {
        TraceAction::ZeroModes(u, v) => (zero_mode_index(u)?, zero_mode_index(v)?),
        _ => (Half::ZERO, Half::ZERO),
    };
    let partial: Vec<Result<Scalar, FockError>> = basis
        .par_chunks(512)
        .map(|chunk| {
            let mut acc = Scalar::zero(mode);
            for s in chunk {
                let d = match action {
                    TraceAction::Identity => Scalar::one(mode),
                    TraceAction::Monomial(m) => m.diagonal(s)?,
                    TraceAction::ZeroModes(u, v) => {
                        let x = FockVector::basis(mode, *s);
                        vertex_mode(u, nu, &vertex_mode(v, nv, &x)?)?.coeff(s)
                    }
                };
                acc = acc.try_add(&d)?;
            }
            Ok(acc)
        })
        .collect();
    let mut total = Scalar::zero(mode);
    for p in partial {
        total = total.try_add(&p?)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceIdentityReport {
    /// Degrees `d`; the coefficient sits at `q^{d - 1/2}`.
    pub degrees: Vec<Half>,
    pub pairs: usize,
    /// `(u, v, d, lhs, rhs)` for each mismatch.
    pub failures: Vec<(usize, usize, Half, String, String)>,
}

impl TraceIdentityReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `tr o(u)o(v) q^{L(0)-1/2}` on the even part with
/// `P(u,v)·(qD_q F/6 + E₂F/12)`, where `F` is the graded dimension and
/// `u_1 v = P(u,v)𝟏`, for pairs of degree one basis states given by index.
pub fn trace_identity_check(pairs: &[(usize, usize)], max_degree: Half) -> Result<TraceIdentityReport, FockError> {
    let mode = Mode::Exact;
    let basis = degree_one_basis();
    let dims = super::state::census(max_degree)?;
    let trunc = (max_degree.0 as i64 - 1) * UNIT / 2 + 1;
    let f = QSeries::from_terms(
        dims.iter().map(|(d, n)| ((d.0 as i64 - 1) * UNIT / 2, num::BigRational::from_integer((*n as i64).into()))),
        trunc,
    );
    let shape = f
        .q_deriv()
        .scale(&num::BigRational::new(1.into(), 6.into()))
        .add(&eisenstein2_normalized(trunc + UNIT).mul(&f).scale(&num::BigRational::new(1.into(), 12.into())));
    let degrees: Vec<Half> = (0..=max_degree.0).map(Half).collect();
    let mut failures = Vec::new();
    for &(a, b) in pairs {
        let u = FockVector::basis(mode, basis[a]);
        let v = FockVector::basis(mode, basis[b]);
        let p = vertex_mode(&u, Half(2), &v)?.coeff(&FockState::vacuum());
        let p = p.as_exact().expect("exact").a.to_big();
        for &d in &degrees {
            let mut lhs = Scalar::zero(mode);
            for sector in [Sector::Untwisted, Sector::Twisted] {
                lhs = lhs.try_add(&graded_trace(&TraceAction::ZeroModes(&u, &v), sector, d, true)?)?;
            }
            let exp = (d.0 as i64 - 1) * UNIT / 2;
            let rhs = shape.coeff(exp).expect("within truncation") * &p;
            let lhs_big = lhs.as_exact().expect("exact").a.to_big();
            if lhs_big != rhs {
                failures.push((a, b, d, lhs_big.to_string(), rhs.to_string()));
            }
        }
    }
    Ok(TraceIdentityReport { degrees, pairs: pairs.len(), failures })
}
