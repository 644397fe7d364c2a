//! Modes of vertex operators attached to low-degree untwisted states.
//!
//! For `a = e_{i1}(-m1-1/2)⋯e_{ik}(-mk-1/2)𝟏` the operator is the normally
//! ordered product of the fields `D^{(m)}u_i(z) = Σ_r C(-r-1/2, m) u_i(r)
//! z^{-r-1/2-m}`, so the mode `a_n` sums `∏ C(-r_j-1/2, m_j)
//! :u_{i1}(r_1)⋯u_{ik}(r_k):` over `Σ r_j = n + 1 - deg(a)`.

use std::collections::BTreeMap;

use std::sync::OnceLock;

use super::state::{FockState, FockVector, Half, Sector, LEVELS};
use super::FockError;
use crate::scalar::{Mode, Rational, Scalar};

/// Largest degree of `a` for which `vertex_mode` is available.
pub const MAX_VERTEX_DEGREE: Half = Half(4);

struct Monomial {
    // (index, derivative order) from left to right
    ops: Vec<(usize, u32)>,
    degree: Half,
    coeff: Scalar,
    // e_i(-3/2)e_i(-1/2)𝟏, which picks up -¼ z^{-2} on twisted states
    shifted: bool,
}

fn monomials(a: &FockVector) -> Result<Vec<Monomial>, FockError> {
    let mut out = Vec::with_capacity(a.len());
    for (s, c) in a.iter() {
        if s.sector != Sector::Untwisted {
            return Err(FockError::NotUntwisted);
        }
        let degree = s.degree();
        if degree > MAX_VERTEX_DEGREE {
            return Err(FockError::DegreeTooHigh(degree));
        }
        let ops: Vec<(usize, u32)> = s.modes().into_iter().map(|(i, r)| (i, ((-r.0 - 1) / 2) as u32)).collect();
        let shifted = ops.len() == 2 && ops[0].0 == ops[1].0 && ops[0].1 == 1 && ops[1].1 == 0;
        out.push(Monomial { ops, degree, coeff: c.clone(), shifted });
    }
    Ok(out)
}

/// `C(x, m)·2^m·m!` with `x = -r - 1/2`, an integer.
fn field_binomial_scaled(r: Half, m: u32) -> i64 {
    // x in halves
    let x2 = -r.0 as i64 - 1;
    (0..m as i64).map(|t| x2 - 2 * t).product()
}

// the denominator 2^m·m! that goes with `field_binomial_scaled`
fn binomial_denominator(m: u32) -> i64 {
    (1..=m as i64).map(|t| 2 * t).product()
}

struct Slot {
    index: usize,
    candidates: Vec<(Half, i64)>,
}

fn slots(ops: &[(usize, u32)], s: &FockState, bound: Half) -> Vec<Slot> {
    let sector = s.sector;
    ops.iter()
        .map(|&(index, order)| {
            let mut candidates = Vec::with_capacity(LEVELS);
            let mut push = |r: Half| {
                let b = field_binomial_scaled(r, order);
                if b != 0 {
                    candidates.push((r, b));
                }
            };
            for k in (0..LEVELS).rev() {
                if s.levels[k] >> index & 1 == 1 {
                    push(-sector.mode_at(k));
                }
            }
            if sector == Sector::Twisted {
                push(Half::ZERO);
            }
            let mut c = match sector {
                Sector::Untwisted => 1,
                Sector::Twisted => 2,
            };
            while c <= bound.0 {
                push(Half(-c));
                c += 2;
            }
            Slot { index, candidates }
        })
        .collect()
}

// largest mode any slot can take is an annihilator of a held mode, a zero
// mode, or the first creator; if even those fall short there is nothing to do
fn reachable(ops: &[(usize, u32)], s: &FockState, target: Half) -> bool {
    let creator = match s.sector {
        Sector::Untwisted => Half(-1),
        Sector::Twisted => Half::ZERO,
    };
    let mut top = Half::ZERO;
    for &(index, _) in ops {
        let held = (0..LEVELS).rev().find(|&k| s.levels[k] >> index & 1 == 1);
        top = top + held.map_or(creator, |k| -s.sector.mode_at(k));
    }
    top >= target
}

// sign of sorting `rs` ascending, or None for a repeated zero-mode index
fn normal_order(ops: &mut [(usize, Half)]) -> Option<i8> {
    let mut sign = 1i8;
    for a in 1..ops.len() {
        let mut b = a;
        while b > 0 && ops[b - 1].1 > ops[b].1 {
            ops.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    // a block of equal zero modes is antisymmetrized
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            if ops[a].1 == Half::ZERO && ops[b].1 == Half::ZERO && ops[a].0 == ops[b].0 {
                return None;
            }
        }
    }
    Some(sign)
}

struct Walk<'a> {
    slots: &'a [Slot],
    state: &'a FockState,
    target: Half,
    acc: &'a mut BTreeMap<FockState, i64>,
}

impl Walk<'_> {
    fn run(&mut self, depth: usize, sum: Half, picked: &mut Vec<(usize, Half)>, weight: i64) -> Result<(), FockError> {
        let slot = &self.slots[depth];
        if depth + 1 == self.slots.len() {
            let r = self.target - sum;
            let Some((_, b)) = slot.candidates.iter().find(|(c, _)| *c == r) else {
                return Ok(());
            };
            picked.push((slot.index, r));
            let res = self.apply(picked, weight * b);
            picked.pop();
            return res;
        }
        for (r, b) in &slot.candidates {
            picked.push((slot.index, *r));
            let res = self.run(depth + 1, sum + *r, picked, weight * b);
            picked.pop();
            res?;
        }
        Ok(())
    }

    fn apply(&mut self, picked: &[(usize, Half)], weight: i64) -> Result<(), FockError> {
        let mut ops = picked.to_vec();
        let Some(sign) = normal_order(&mut ops) else {
            return Ok(());
        };
        let mut factor = sign as i64;
        let mut cur = *self.state;
        for &(i, r) in ops.iter().rev() {
            match cur.apply(i, r)? {
                Some((f, t)) => {
                    factor *= f as i64;
                    cur = t;
                }
                None => return Ok(()),
            }
        }
        *self.acc.entry(cur).or_insert(0) += weight * factor;
        Ok(())
    }
}

/// The coefficient `a_n` of `z^{-n-1}` in `Y(a, z) v`.
///
/// `a` must be untwisted with every monomial of degree at most 2. On
/// twisted `v` the component of `a` along `e_i(-3/2)e_i(-1/2)𝟏` also
/// contributes `-¼` times its coefficient at `n = 1`.
pub fn vertex_mode(a: &FockVector, n: Half, v: &FockVector) -> Result<FockVector, FockError> {
    if !a.is_zero() && a.mode() != v.mode() {
        return Err(crate::scalar::ScalarError::ModeMismatch.into());
    }
    apply_monomials(&monomials(a)?, n, v)
}

fn apply_monomials(monos: &[Monomial], n: Half, v: &FockVector) -> Result<FockVector, FockError> {
    let mode = v.mode();
    let mut out = FockVector::zero(mode);
    let quarter = Rational::new(-1, 4);
    // exact rational coefficients are folded into one accumulator per term
    let rational: Option<Vec<Rational>> = monos
        .iter()
        .map(|m| m.coeff.as_exact().filter(|q| q.b.is_zero()).map(|q| q.a.clone()))
        .collect();
    let dens: Vec<i64> = monos.iter().map(|m| m.ops.iter().map(|&(_, order)| binomial_denominator(order)).product()).collect();
    let mut ints: BTreeMap<FockState, i64> = BTreeMap::new();
    let mut acc: BTreeMap<FockState, Rational> = BTreeMap::new();
    for (s, cs) in v.iter() {
        let mut merged: BTreeMap<FockState, Rational> = BTreeMap::new();
        for (k, m) in monos.iter().enumerate() {
            acc.clear();
            let target = n + Half(2) - m.degree;
            if m.ops.is_empty() {
                if target == Half::ZERO {
                    acc.insert(*s, Rational::one());
                }
            } else if reachable(&m.ops, s, target) {
                ints.clear();
                let slots = slots(&m.ops, s, s.mode_degree() - target);
                let mut walk = Walk { slots: &slots, state: s, target, acc: &mut ints };
                walk.run(0, Half::ZERO, &mut Vec::with_capacity(m.ops.len()), 1)?;
                for (t, q) in &ints {
                    if *q != 0 {
                        acc.insert(*t, Rational::new(*q, dens[k]));
                    }
                }
            }
            if m.shifted && s.sector == Sector::Twisted && n == Half(2) {
                let e = acc.entry(*s).or_insert_with(Rational::zero);
                *e = &*e + &quarter;
            }
            if acc.is_empty() {
                continue;
            }
            match (&rational, mode) {
                (Some(qs), Mode::Exact) => {
                    for (t, q) in &acc {
                        let e = merged.entry(*t).or_insert_with(Rational::zero);
                        *e = &*e + &(q * &qs[k]);
                    }
                }
                _ => {
                    let c = m.coeff.try_mul(cs)?;
                    for (t, q) in &acc {
                        if !q.is_zero() {
                            out.add_term(*t, &c.try_mul(&rational_scalar(mode, q))?)?;
                        }
                    }
                }
            }
        }
        for (t, q) in merged {
            if !q.is_zero() {
                out.add_term(t, &cs.try_mul(&Scalar::from_rational(q))?)?;
            }
        }
    }
    Ok(out)
}

pub(crate) fn rational_scalar(mode: Mode, q: &Rational) -> Scalar {
    match mode {
        Mode::Exact => Scalar::from_rational(q.clone()),
        Mode::Float => Scalar::Float(q.to_f64()),
    }
}

/// `ω = -¼ Σ_i e_i(-3/2)e_i(-1/2)𝟏`.
pub fn omega(mode: Mode) -> FockVector {
    let mut w = FockVector::zero(mode);
    let c = Scalar::ratio(mode, -1, 4);
    for i in 0..crate::codes::N_POINTS {
        let (sign, s) = FockState::from_modes(Sector::Untwisted, 0, &[(i, Half(-3)), (i, Half(-1))])
            .expect("valid modes")
            .expect("distinct modes");
        debug_assert_eq!(sign, 1);
        w.add_term(s, &c).expect("single sector");
    }
    w
}

/// `L(n) v = ω_{n+1} v`.
pub fn virasoro(n: i32, v: &FockVector) -> Result<FockVector, FockError> {
    static EXACT: OnceLock<Vec<Monomial>> = OnceLock::new();
    static FLOAT: OnceLock<Vec<Monomial>> = OnceLock::new();
    let mode = v.mode();
    let cell = match mode {
        Mode::Exact => &EXACT,
        Mode::Float => &FLOAT,
    };
    let monos = cell.get_or_init(|| monomials(&omega(mode)).expect("ω is untwisted of degree 2"));
    apply_monomials(monos, Half::from_int(n + 1), v)
}

/// `e_{i}(-1/2)e_{j}(-1/2)𝟏` for `i < j`, the monomial basis of degree one.
pub fn degree_one_basis() -> Vec<FockState> {
    let mut out = Vec::with_capacity(276);
    for i in 0..crate::codes::N_POINTS {
        for j in i + 1..crate::codes::N_POINTS {
            let (_, s) = FockState::from_modes(Sector::Untwisted, 0, &[(i, Half(-1)), (j, Half(-1))])
                .expect("valid modes")
                .expect("distinct modes");
            out.push(s);
        }
    }
    out
}
