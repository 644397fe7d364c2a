//! Superconformal vectors in the even half of the spin module: the
//! criterion, explicit families, coset contractions and the stabilizer
//! construction for the four-group family.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{basis_mul, CliffordElement};
use crate::codes::{golay, small_words, BitWord, CodeError, OverlapType};
use crate::scalar::{Mode, QSqrt2, Rational, Scalar};
use crate::spingroup::golay_lift;
use crate::spinmod::{act, act_basis, cocycle_sigma, inner, matrix_element, rho, Parity, SpinModError, SpinVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScError {
    #[error(transparent)]
    Module(#[from] SpinModError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("vector is not even")]
    OddVector,
    #[error("{0} does not have coweight 4")]
    NotCoweightFour(BitWord),
    #[error("sextets of {0} and {1} do not commute")]
    NonCommuting(BitWord, BitWord),
    #[error("{0} is not a dodecad")]
    NotDodecad(BitWord),
    #[error("pairing does not split the dodecad into six pairs")]
    BadPairing,
    #[error("{0} and {1} are not orthogonal")]
    NotIsotropic(BitWord, BitWord),
    #[error("{0} is not doubly co-even")]
    NotDoublyCoEven(BitWord),
    #[error("sign function violates the coset condition at A∔W = {x}, Z = {z}")]
    CocycleCondition { x: BitWord, z: BitWord },
    #[error("no sign function satisfies the coset condition")]
    NoSignFunction,
    #[error("vector fails the superconformal criterion")]
    NotSuperconformal,
    #[error("coefficient at {0} vanishes")]
    ZeroCoefficient(BitWord),
    #[error("second lift is not admissible: {0}")]
    InadmissibleLift(String),
    #[error("vector is not a unit vector")]
    NotUnit,
}

/// Outcome of the superconformal criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScReport {
    #[serde(rename = "isUnit")]
    pub is_unit: bool,
    pub failures: Vec<BitWord>,
}

impl ScReport {
    pub fn passes(&self) -> bool {
        self.is_unit && self.failures.is_empty()
    }
}

/// All words of weight 2 or 4.
pub fn short_even_words() -> Vec<BitWord> {
    small_words(4).into_iter().filter(|w| w.weight() == 2 || w.weight() == 4).collect()
}

/// `t` is a unit vector with `⟨e_C t, t⟩ = 0` for every `C` of weight 2 or 4.
///
/// Float vectors are compared with tolerance `tol`; exact ones exactly.
pub fn sc_check(t: &SpinVector, tol: f64) -> Result<ScReport, ScError> {
    if t.parity() != Parity::Even {
        return Err(ScError::OddVector);
    }
    let norm = inner(t, t)?;
    let is_unit = norm.approx_eq(&Scalar::one(t.mode()), tol);
    let support = t.support();
    let words = short_even_words();
    let failures: Vec<BitWord> = words
        .par_iter()
        .filter(|c| !matrix_element(**c, t, &support).is_negligible(tol))
        .copied()
        .collect();
    Ok(ScReport { is_unit, failures })
}

fn exact(p: i64, q: i64) -> Scalar {
    Scalar::Exact(QSqrt2::rational(Rational::new(p, q)))
}

/// Parameters of the explicit superconformal families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FamilyData {
    /// Commuting four group generated by two tetrad classes.
    #[serde(rename = "4")]
    Four { a: BitWord, b: BitWord, mu: [i8; 2] },
    /// Totally commuting eight group generated by three tetrad classes.
    #[serde(rename = "8")]
    Eight { a: BitWord, b: BitWord, c: BitWord, mu: [i8; 3] },
    /// Sixteen group from a dodecad split into six pairs; `mu` gives the
    /// character on the tetrads joining pair 0 to pairs 1..4.
    #[serde(rename = "16")]
    Sixteen { dodecad: BitWord, pairs: [[usize; 2]; 6], mu: [i8; 4] },
}

/// A family vector together with the group carrying its support.
#[derive(Clone, Debug)]
pub struct FamilyVector {
    pub t: SpinVector,
    /// Canonical representatives of the support group, `∅` first.
    pub gamma: Vec<BitWord>,
    /// Generators of the support group.
    pub generators: Vec<BitWord>,
    /// Set when the pairing orientation had to be flipped so that the
    /// product of the six pair monomials fixes `1_G`.
    pub orientation_flipped: bool,
}

/// Closes a set of Σ members under `∔`.
pub fn group_closure(gens: &[BitWord]) -> Result<Vec<BitWord>, ScError> {
    let g = golay();
    let mut elems = vec![BitWord::EMPTY];
    for &x in gens {
        g.check_sigma(x)?;
        if elems.contains(&x) {
            continue;
        }
        let shifted: Vec<BitWord> = elems.iter().map(|e| g.dotplus(*e, x)).collect::<Result<_, _>>()?;
        elems.extend(shifted);
    }
    Ok(elems)
}

/// Checks that every nonzero element has coweight 4 and all pairs are orthogonal.
pub fn check_doubly_coeven_isotropic(elems: &[BitWord]) -> Result<(), ScError> {
    for (k, x) in elems.iter().enumerate() {
        if !x.is_empty() && x.weight() != 4 {
            return Err(ScError::NotDoublyCoEven(*x));
        }
        for y in &elems[k + 1..] {
            if x.dot(*y) != 0 {
                return Err(ScError::NotIsotropic(*x, *y));
            }
        }
    }
    Ok(())
}

fn canonical_tetrad(w: BitWord) -> Result<BitWord, ScError> {
    let d = golay().decode(w);
    if d.coweight != 4 {
        return Err(ScError::NotCoweightFour(w));
    }
    Ok(d.canonical_rep)
}

fn check_commuting(elems: &[BitWord]) -> Result<(), ScError> {
    let g = golay();
    let nonzero: Vec<BitWord> = elems.iter().copied().filter(|x| !x.is_empty()).collect();
    for (k, x) in nonzero.iter().enumerate() {
        for y in &nonzero[k + 1..] {
            if g.sextet_overlap_type(*x, *y)? != OverlapType::Commuting4 {
                return Err(ScError::NonCommuting(*x, *y));
            }
        }
    }
    Ok(())
}

/// A 1-cocycle `χ` on a doubly co-even isotropic group with
/// `χ(X∔Y) = χ(X)χ(Y)σ(X,Y)` and prescribed values on the generators.
pub fn group_cocycle(gens: &[BitWord], seeds: &[i8]) -> Result<HashMap<BitWord, i8>, ScError> {
    let g = golay();
    let mut chi: HashMap<BitWord, i8> = HashMap::new();
    chi.insert(BitWord::EMPTY, 1);
    for (&h, &s) in gens.iter().zip(seeds) {
        if chi.contains_key(&h) {
            continue;
        }
        let known: Vec<(BitWord, i8)> = chi.iter().map(|(k, v)| (*k, *v)).collect();
        for (y, cy) in known {
            let z = g.dotplus(y, h)?;
            chi.insert(z, cy * s * cocycle_sigma(y, h)?);
        }
    }
    for (&x, &cx) in &chi {
        for (&y, &cy) in &chi {
            let z = g.dotplus(x, y)?;
            if chi[&z] != cx * cy * cocycle_sigma(x, y)? {
                return Err(ScError::CocycleCondition { x, z: y });
            }
        }
    }
    Ok(chi)
}

/// Builds one of the explicit families of superconformal vectors.
pub fn sc_family(data: &FamilyData) -> Result<FamilyVector, ScError> {
    match data {
        FamilyData::Four { a, b, mu } => cocycle_family(&[*a, *b], mu, exact(1, 2), exact(1, 2), false),
        FamilyData::Eight { a, b, c, mu } => cocycle_family(&[*a, *b, *c], mu, exact(3, 4), exact(1, 4), true),
        FamilyData::Sixteen { dodecad, pairs, mu } => dodecad_family(*dodecad, pairs, mu),
    }
}

// t = w0·1_G + w·Σ_{X≠∅} c(X) e_X 1_G with c = −χ and χ(gen) = −μ(gen)
fn cocycle_family(
    gens: &[BitWord],
    mu: &[i8],
    w0: Scalar,
    w: Scalar,
    total: bool,
) -> Result<FamilyVector, ScError> {
    let gens: Vec<BitWord> = gens.iter().map(|x| canonical_tetrad(*x)).collect::<Result<_, _>>()?;
    let gamma = group_closure(&gens)?;
    if gamma.len() != 1 << gens.len() {
        return Err(ScError::Code(CodeError::Validation("generators are dependent".into())));
    }
    check_doubly_coeven_isotropic(&gamma)?;
    if total {
        check_commuting(&gamma)?;
    } else {
        check_commuting(&gens)?;
    }
    let seeds: Vec<i8> = mu.iter().map(|m| -m.signum()).collect();
    let chi = group_cocycle(&gens, &seeds)?;
    let mut entries = vec![(BitWord::EMPTY, w0)];
    for x in gamma.iter().skip(1) {
        entries.push((*x, w.signed(-chi[x])));
    }
    let t = SpinVector::from_entries(Mode::Exact, entries)?;
    Ok(FamilyVector { t, gamma, generators: gens, orientation_flipped: false })
}

fn dodecad_family(dodecad: BitWord, pairs: &[[usize; 2]; 6], mu: &[i8; 4]) -> Result<FamilyVector, ScError> {
    let g = golay();
    if dodecad.weight() != 12 || !g.is_codeword(dodecad) {
        return Err(ScError::NotDodecad(dodecad));
    }
    let words: Vec<BitWord> = pairs.iter().map(|p| BitWord::from_indices([p[0], p[1]])).collect();
    let union = words.iter().fold(BitWord::EMPTY, |acc, w| acc.join(*w));
    if union != dodecad || words.iter().any(|w| w.weight() != 2) {
        return Err(ScError::BadPairing);
    }
    // e_{A_i} := e_a e_b for the ordered pair [a, b]
    let pair_mono = |k: usize, flip: bool| -> CliffordElement {
        let [a, b] = pairs[k];
        let (s, w) = basis_mul(BitWord::singleton(a), BitWord::singleton(b));
        let s = if flip && k == 0 { -s } else { s };
        CliffordElement::monomial(w, Scalar::from_i64(Mode::Exact, s as i64))
    };
    let product = |flip: bool| -> CliffordElement {
        (0..6).fold(CliffordElement::one(Mode::Exact), |acc, k| acc.mul(&pair_mono(k, flip)).expect("exact"))
    };
    let ground = SpinVector::ground(Mode::Exact);
    let mut flipped = false;
    if act(&product(false), &ground)? != ground {
        flipped = true;
        assert_eq!(act(&product(true), &ground)?, ground, "orientation flip fixes the ground vector");
    }
    // character values ν_i ν_j with ν_0 = 1, ν_1..ν_4 from μ and ∏ν = 1
    let mut nu = [1i8; 6];
    for k in 0..4 {
        nu[k + 1] = mu[k].signum();
    }
    nu[5] = nu[1] * nu[2] * nu[3] * nu[4];
    let quarter = exact(1, 4);
    let mut x = CliffordElement::monomial(BitWord::EMPTY, quarter.clone());
    for i in 0..6 {
        for j in i + 1..6 {
            let e = pair_mono(i, flipped).mul(&pair_mono(j, flipped)).expect("exact");
            let c = quarter.signed(nu[i] * nu[j]);
            x = x.add(&e.scale(&c).expect("exact")).expect("exact");
        }
    }
    let t = act(&x, &ground)?;
    let gens: Vec<BitWord> = (1..5).map(|j| canonical_tetrad(words[0].sum(words[j]))).collect::<Result<_, _>>()?;
    let gamma = group_closure(&gens)?;
    Ok(FamilyVector { t, gamma, generators: gens, orientation_flipped: flipped })
}

/// A subgroup `Γ` of Σ, an element `W`, and a sign function `χ` on Σ
/// satisfying the coset condition.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    pub gamma: Vec<BitWord>,
    pub w: BitWord,
    chi: Vec<i8>,
    pub transversal: Vec<BitWord>,
}

impl CosetSystem {
    pub fn chi(&self, x: BitWord) -> i8 {
        self.chi[golay().sigma_index(x).expect("member of Σ")]
    }

    pub fn w_in_gamma(&self) -> bool {
        self.gamma.contains(&self.w)
    }

    /// `u_{χ,Z} = Σ_{A∈Γ} χ(Z∔A) e_{Z∔A}`.
    pub fn u_element(&self, z: BitWord, mode: Mode) -> Result<CliffordElement, ScError> {
        let g = golay();
        let mut terms = Vec::with_capacity(self.gamma.len());
        for a in &self.gamma {
            let y = g.dotplus(z, *a)?;
            terms.push((y, Scalar::from_i64(mode, self.chi(y) as i64)));
        }
        Ok(CliffordElement::from_terms(mode, terms).expect("single mode"))
    }
}

/// Builds and validates a coset system.
///
/// `χ` is solved from the coset condition as a linear system over GF(2).
/// The values left free by the system are taken from `seeds` in order of
/// the coset elements; missing seeds count as `+1`.
pub fn build_coset_system(gamma_gens: &[BitWord], w: BitWord, seeds: &[i8]) -> Result<CosetSystem, ScError> {
    let g = golay();
    let gamma = group_closure(gamma_gens)?;
    g.check_sigma(w)?;
    let coset: Vec<BitWord> = gamma.iter().map(|a| g.dotplus(*a, w)).collect::<Result<_, _>>()?;
    check_doubly_coeven_isotropic(&coset)?;
    let sbit = |x: BitWord, z: BitWord| cocycle_sigma(x, z).expect("members of Σ") < 0;
    let bits = solve_sign_system(&coset, &sbit, seeds).ok_or(ScError::NoSignFunction)?;
    let chi: Vec<i8> = bits.iter().map(|b| if *b { -1 } else { 1 }).collect();
    let sigma = g.sigma();
    let mut marked = vec![false; sigma.len()];
    let mut transversal = Vec::new();
    for &z in sigma {
        if marked[g.sigma_index(z).unwrap()] {
            continue;
        }
        transversal.push(z);
        for a in &gamma {
            marked[g.sigma_index(g.dotplus(z, *a)?).unwrap()] = true;
        }
    }
    let cs = CosetSystem { gamma, w, chi, transversal };
    for &x in &coset {
        for &z in sigma {
            let lhs = cs.chi(x) * cocycle_sigma(x, z)?;
            let rhs = cs.chi(z) * cs.chi(g.dotplus(x, z)?);
            if lhs != rhs {
                return Err(ScError::CocycleCondition { x, z });
            }
        }
    }
    Ok(cs)
}

fn weighted_coset_sum(t: &SpinVector, gamma: &[BitWord], z: BitWord, sign: &dyn Fn(BitWord) -> i8) -> Scalar {
    let g = golay();
    let mut acc = Scalar::zero(t.mode());
    for a in gamma {
        let y = g.dotplus(z, *a).expect("members of Σ");
        let ty = t.entry(g.class_index(y));
        if !ty.is_zero() {
            acc = &acc + &ty.signed(sign(y));
        }
    }
    acc
}

fn contraction_with(t: &SpinVector, cs: &CosetSystem, sign: &dyn Fn(BitWord) -> i8) -> Scalar {
    let g = golay();
    let mut total = Scalar::zero(t.mode());
    for &z in &cs.transversal {
        let wz = g.dotplus(cs.w, z).expect("members of Σ");
        let left = weighted_coset_sum(t, &cs.gamma, z, sign);
        if left.is_zero() {
            continue;
        }
        let right = weighted_coset_sum(t, &cs.gamma, wz, sign);
        total = &total + &(&left * &right);
    }
    total
}

/// `Σ_{Z∈T} ⟨u_{χ,Z}1_G, t⟩⟨u_{χ,W∔Z}1_G, t⟩` for a superconformal `t`.
pub fn coset_contraction(t: &SpinVector, cs: &CosetSystem, tol: f64) -> Result<Scalar, ScError> {
    if !sc_check(t, tol)?.passes() {
        return Err(ScError::NotSuperconformal);
    }
    Ok(contraction_with(t, cs, &|x| cs.chi(x)))
}

/// The same contraction with `χ'' = ϱψχ` built from a second balanced lift.
///
/// `alt` maps each coweight-4 member of Σ to another tetrad of its sextet;
/// members not in the map keep themselves. `ψ` is solved for and the
/// admissibility conditions on the second lift are checked.
pub fn coset_contraction_lifted(
    t: &SpinVector,
    cs: &CosetSystem,
    alt: &HashMap<BitWord, BitWord>,
    tol: f64,
) -> Result<Scalar, ScError> {
    if !sc_check(t, tol)?.passes() {
        return Err(ScError::NotSuperconformal);
    }
    let g = golay();
    let sigma = g.sigma();
    let prime = |x: BitWord| -> BitWord { alt.get(&x).copied().unwrap_or(x) };
    let mut varrho = vec![0i8; sigma.len()];
    for (k, &x) in sigma.iter().enumerate() {
        varrho[k] = rho(x, prime(x)).map_err(|e| ScError::InadmissibleLift(e.to_string()))?;
    }
    let vr = |x: BitWord| varrho[g.sigma_index(x).unwrap()];
    let coset: Vec<BitWord> = cs.gamma.iter().map(|a| g.dotplus(*a, cs.w)).collect::<Result<_, _>>()?;
    let coset_prime: Vec<BitWord> = coset.iter().map(|x| prime(*x)).collect();
    check_doubly_coeven_isotropic(&coset_prime).map_err(|e| ScError::InadmissibleLift(e.to_string()))?;
    for (i, x) in coset.iter().enumerate() {
        for (j, y) in coset.iter().enumerate() {
            if coset_prime[i].dot(*y) != x.dot(coset_prime[j]) {
                return Err(ScError::InadmissibleLift(format!("⟨{}',{}⟩ ≠ ⟨{},{}'⟩", x, y, x, y)));
            }
        }
    }
    // ψ(X∔Z) = ψ(X)ψ(Z)f(X,Z) for X in W∔Γ, with f the lift correction
    let f = |x: BitWord, z: BitWord| -> i8 {
        let s = if x.sum(prime(x)).dot(z) == 0 { 1 } else { -1 };
        s * vr(x) * vr(z) * vr(g.dotplus(x, z).unwrap())
    };
    let fbit = |x: BitWord, z: BitWord| f(x, z) < 0;
    let psi = solve_sign_system(&coset, &fbit, &[])
        .ok_or_else(|| ScError::InadmissibleLift("no sign function ψ exists".into()))?;
    for &x in &coset {
        for &z in sigma {
            let lhs = psi_of(&psi, x) * f(x, z);
            let rhs = psi_of(&psi, z) * psi_of(&psi, g.dotplus(x, z)?);
            if lhs != rhs {
                return Err(ScError::InadmissibleLift(format!("no sign function ψ exists (fails at {x}, {z})")));
            }
        }
    }
    let sign = |x: BitWord| vr(x) * psi_of(&psi, x) * cs.chi(x);
    Ok(contraction_with(t, cs, &sign))
}

fn psi_of(psi: &[bool], x: BitWord) -> i8 {
    if psi[golay().sigma_index(x).expect("member of Σ")] {
        -1
    } else {
        1
    }
}

// GF(2) offset: bits of the unknowns ψ(X), X in the coset, plus a constant
type Offset = (u64, bool);

struct ParityForest {
    parent: Vec<usize>,
    off: Vec<Offset>,
}

impl ParityForest {
    fn find(&mut self, n: usize) -> (usize, Offset) {
        let p = self.parent[n];
        if p == n {
            return (n, (0, false));
        }
        let (root, po) = self.find(p);
        let o = self.off[n];
        self.off[n] = (o.0 ^ po.0, o.1 ^ po.1);
        self.parent[n] = root;
        (root, self.off[n])
    }

    // impose ψ(a) + ψ(b) = rel; returns a residual relation on the unknowns if a cycle closes
    fn union(&mut self, a: usize, b: usize, rel: Offset) -> Option<Offset> {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        let r = (oa.0 ^ ob.0 ^ rel.0, oa.1 ^ ob.1 ^ rel.1);
        if ra == rb {
            return (r != (0, false)).then_some(r);
        }
        self.parent[ra] = rb;
        self.off[ra] = r;
        None
    }
}

// Solves s(X)s(Z)s(X∔Z) = f(X,Z) for X in `coset` and Z in Σ, as bits
// indexed like Σ. Free unknowns among the s(X), X in the coset, take `seeds`.
fn solve_sign_system(coset: &[BitWord], fbit: &dyn Fn(BitWord, BitWord) -> bool, seeds: &[i8]) -> Option<Vec<bool>> {
    let g = golay();
    let sigma = g.sigma();
    let n = sigma.len();
    let zero_node = n;
    let mut forest = ParityForest { parent: (0..=n).collect(), off: vec![(0, false); n + 1] };
    let mut residual: Vec<Offset> = Vec::new();
    for (k, &x) in coset.iter().enumerate() {
        let xi = g.sigma_index(x).expect("member");
        residual.extend(forest.union(xi, zero_node, (1 << k, false)));
        for (zi, &z) in sigma.iter().enumerate() {
            let yi = g.sigma_index(g.dotplus(x, z).expect("members of Σ")).expect("member");
            residual.extend(forest.union(zi, yi, (1 << k, fbit(x, z))));
        }
    }
    // Gaussian elimination on the residual relations
    let mut pivots: Vec<Offset> = Vec::new();
    for mut r in residual {
        for p in &pivots {
            if r.0 & (1 << p.0.trailing_zeros()) != 0 {
                r = (r.0 ^ p.0, r.1 ^ p.1);
            }
        }
        if r.0 == 0 {
            if r.1 {
                return None;
            }
            continue;
        }
        for p in pivots.iter_mut() {
            if p.0 & (1 << r.0.trailing_zeros()) != 0 {
                *p = (p.0 ^ r.0, p.1 ^ r.1);
            }
        }
        pivots.push(r);
    }
    let leading: u64 = pivots.iter().fold(0, |acc, p| acc | 1 << p.0.trailing_zeros());
    let mut unknowns = 0u64;
    let mut next_seed = seeds.iter();
    for k in 0..coset.len() {
        if leading & (1 << k) == 0 && next_seed.next().is_some_and(|s| *s < 0) {
            unknowns |= 1 << k;
        }
    }
    for p in &pivots {
        let free = p.0 & !(1 << p.0.trailing_zeros());
        if p.1 ^ ((free & unknowns).count_ones() % 2 == 1) {
            unknowns |= 1 << p.0.trailing_zeros();
        }
    }
    let eval = |o: Offset| ((o.0 & unknowns).count_ones() % 2 == 1) ^ o.1;
    let (zero_root, zero_off) = forest.find(zero_node);
    let zero_root_value = eval(zero_off);
    Some(
        (0..n)
            .map(|i| {
                let (root, o) = forest.find(i);
                let base = if root == zero_root { zero_root_value } else { false };
                eval(o) ^ base
            })
            .collect(),
    )
}

/// First `B ∉ {∅, A}` with `t_B·t_{A∔B} ≠ 0`.
pub fn four_group_condition(t: &SpinVector, a: BitWord) -> Result<Option<BitWord>, ScError> {
    let g = golay();
    g.check_sigma(a)?;
    if t.entry(g.class_index(a)).is_zero() {
        return Err(ScError::ZeroCoefficient(a));
    }
    for &b in g.sigma() {
        if b.is_empty() || b == a {
            continue;
        }
        let ab = g.dotplus(a, b)?;
        if !t.entry(g.class_index(b)).is_zero() && !t.entry(g.class_index(ab)).is_zero() {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Builds the modified lift `g'_S` for each Golay generator and checks that
/// every one of them fixes `t`.
///
/// `g'_S = sgn(t_X)·e_X·g_S` when `X` is the unique nonzero element of `Γ`
/// orthogonal to `S`, and `g_S` when `S` is orthogonal to all of `Γ`.
pub fn stabilizer_lift_check(t: &SpinVector, gamma: &[BitWord]) -> Result<bool, ScError> {
    let g = golay();
    let group = group_closure(gamma)?;
    check_commuting(&group)?;
    let lift = golay_lift();
    for &s in lift.generators() {
        let orth: Vec<BitWord> = group.iter().copied().filter(|x| !x.is_empty() && s.dot(*x) == 0).collect();
        let gs = lift.element(s, t.mode()).expect("generator is a codeword");
        let modified = match orth.len() {
            0 => unreachable!("a homomorphism to ±1 has a kernel of index at most two"),
            1 => {
                let x = orth[0];
                let tx = t.entry(g.class_index(x));
                if tx.is_zero() {
                    return Ok(false);
                }
                let sgn = if tx.to_f64() > 0.0 { 1 } else { -1 };
                CliffordElement::monomial(x, Scalar::from_i64(t.mode(), sgn))
                    .mul(&gs)
                    .expect("same mode")
            }
            _ => gs,
        };
        if act(&modified, t)? != *t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sign of `e_C` acting on the class `X`, reexported for the ascent.
pub fn basis_action(c: BitWord, class: usize) -> (i8, usize) {
    act_basis(c, class)
}
