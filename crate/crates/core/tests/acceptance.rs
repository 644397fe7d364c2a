//! End-to-end acceptance run: one PASS/FAIL line per criterion with its
//! wall time against the budget. Runs without the libtest harness so the
//! report is always printed.

mod common;

use std::time::{Duration, Instant};

use common::*;
use fmoon_core::ascent::{orbit_ascent, random_rotation_orbit, AscentParams};
use fmoon_core::codes::{golay, BitWord};
use fmoon_core::fockvoa::{census, lie_algebra_checks, ns_check, t_products, trace_identity_check, virasoro_check};
use fmoon_core::mckaythompson::{mt_oracle, mt_series, oracle_mismatches};
use fmoon_core::qseries::{eta, jtheta, jtheta_at_one, theta_e8, through, QSeries};
use fmoon_core::spinmod::SpinVector;
use fmoon_core::superconformal::{build_coset_system, coset_contraction, sc_check, sc_family, stabilizer_lift_check, FamilyData, FamilyVector};
use fmoon_core::{Half, Mode, Scalar};
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-12;
const ASCENT_TOL: f64 = 1e-9;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn ints(s: &QSeries, halves: impl Iterator<Item = i64>) -> Vec<i64> {
    halves.map(|h| s.int_coeff_at(h, 2).unwrap_or(i64::MIN)).collect()
}

fn golay_counts() -> Result<String, String> {
    let g = golay();
    ensure(g.code.len() == 4096, "code size")?;
    let we: Vec<(u32, usize)> = g.code.weight_enumerator().into_iter().collect();
    ensure(we == [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)], format!("weights {we:?}"))?;
    let mut counts = [0usize; 5];
    for r in g.reps() {
        counts[r.weight() as usize] += 1;
    }
    ensure(counts == [1, 24, 276, 2024, 1771], format!("coweights {counts:?}"))?;
    Ok("4096 words, 1/759/2576/759/1, classes 1/24/276/2024/1771".into())
}

fn jtheta_expansions() -> Result<String, String> {
    let t = through(3, 1);
    let j = jtheta(t).map_err(|e| e.to_string())?;
    let got = ints(&j, -1..=6);
    ensure(got == [1, 24, 276, 2048, 11202, 49152, 184024, 614400], format!("jtheta {got:?}"))?;
    let ts = jtheta_at_one(t).map_err(|e| e.to_string())?;
    let got = ints(&ts, (0..=6).step_by(2));
    ensure(got == [0, -4096, -98304, -1228800], format!("other cusp {got:?}"))?;
    ensure((1..=5).step_by(2).all(|h| ts.int_coeff_at(h, 2) == Some(0)), "half-integral terms at the other cusp")?;
    Ok("exact through q^3".into())
}

fn character_census() -> Result<String, String> {
    let dims: Vec<usize> = census(Half(4)).map_err(|e| e.to_string())?.into_iter().map(|x| x.1).collect();
    ensure(dims == [1, 0, 276, 2048, 11202], format!("{dims:?}"))?;
    let j = jtheta(through(3, 2)).map_err(|e| e.to_string())?.sub(&QSeries::constant(24, through(3, 2)));
    let coeffs: Vec<usize> = ints(&j, -1..=3).into_iter().map(|c| c as usize).collect();
    ensure(coeffs == dims, format!("jtheta - 24 {coeffs:?}"))?;
    Ok(format!("{dims:?}"))
}

fn e8_identity() -> Result<String, String> {
    let t = through(10, 1);
    let pad = t + 96;
    let err = |e: fmoon_core::QSeriesError| e.to_string();
    let num = theta_e8(pad).mul(&eta(1, 1, pad).map_err(err)?.pow(8).map_err(err)?);
    let den = eta(1, 2, pad).map_err(err)?.pow(8).map_err(err)?.mul(&eta(2, 1, pad).map_err(err)?.pow(8).map_err(err)?);
    let lhs = num.div(&den).map_err(err)?.truncate(t);
    let rhs = jtheta(t).map_err(err)?.sub(&QSeries::constant(16, t));
    ensure(lhs == rhs, "series differ")?;
    ensure(ints(&lhs, -1..=2) == [1, 8, 276, 2048], "leading terms")?;
    Ok("equal through q^10".into())
}

fn ground_superconformal() -> Result<String, String> {
    let ground = SpinVector::ground(Mode::Exact);
    let r = sc_check(&ground, TOL).map_err(|e| e.to_string())?;
    ensure(r.passes(), format!("{} failing words", r.failures.len()))?;
    let p = t_products(&ground).map_err(|e| e.to_string())?;
    ensure(p.is_superconformal(), "products differ from (8, 0, 2ω)")?;
    Ok("10902 inner products zero, products (8·1, 0, 2ω)".into())
}

fn family_vectors() -> Vec<(&'static str, FamilyVector)> {
    let mut out = Vec::new();
    for (a, b) in commuting_pairs(3) {
        for mu in [[1, 1], [1, -1], [-1, -1]] {
            out.push(("4", sc_family(&FamilyData::Four { a, b, mu }).unwrap()));
        }
    }
    let mut eights = 0;
    for (a, b) in commuting_pairs(20) {
        let Some(c) = totally_commuting_triple(a, b) else { continue };
        for mu in [[1, 1, 1], [-1, 1, 1], [1, -1, -1]] {
            out.push(("8", sc_family(&FamilyData::Eight { a, b, c, mu }).unwrap()));
        }
        eights += 1;
        if eights == 1 {
            break;
        }
    }
    for d in golay().dodecads().step_by(211).take(1) {
        for mu in [[1, 1, 1, 1], [1, -1, 1, -1], [-1, -1, -1, 1]] {
            out.push(("16", sc_family(&FamilyData::Sixteen { dodecad: d, pairs: dodecad_pairs(d), mu }).unwrap()));
        }
    }
    out
}

fn coset_systems(fv: &FamilyVector) -> Vec<fmoon_core::superconformal::CosetSystem> {
    let mut systems = vec![build_coset_system(&[], BitWord::EMPTY, &[]).unwrap()];
    for w in tetrads().iter().step_by(150).take(9) {
        systems.push(build_coset_system(&[], *w, &[-1]).unwrap());
    }
    for (k, x) in fv.generators.iter().enumerate() {
        systems.push(build_coset_system(&[*x], BitWord::EMPTY, &[]).unwrap());
        systems.push(build_coset_system(&[*x], *x, &[-1]).unwrap());
        let y = fv.generators[(k + 1) % fv.generators.len()];
        if let Ok(cs) = build_coset_system(&[*x], y, &[1, -1]) {
            systems.push(cs);
        }
    }
    systems
}

fn families() -> Result<String, String> {
    let vectors = family_vectors();
    let mut per_size = std::collections::BTreeMap::new();
    let (mut contractions, mut in_gamma) = (0, 0);
    for (size, fv) in &vectors {
        *per_size.entry(*size).or_insert(0) += 1;
        let r = sc_check(&fv.t, TOL).map_err(|e| e.to_string())?;
        ensure(r.passes(), format!("|Γ| = {size}: sc_check fails"))?;
        let p = t_products(&fv.t).map_err(|e| e.to_string())?;
        ensure(p.is_superconformal(), format!("|Γ| = {size}: products"))?;
        let systems = coset_systems(fv);
        ensure(systems.len() >= 10, format!("only {} coset systems", systems.len()))?;
        for cs in &systems {
            let v = coset_contraction(&fv.t, cs, TOL).map_err(|e| e.to_string())?;
            let expected = if cs.w_in_gamma() { 1 } else { 0 };
            in_gamma += expected;
            ensure(v == Scalar::from_i64(Mode::Exact, expected), format!("contraction {v} for W = {}", cs.w))?;
            contractions += 1;
        }
        if *size == "4" {
            ensure(stabilizer_lift_check(&fv.t, &fv.generators).map_err(|e| e.to_string())?, "stabilizer lift")?;
        }
    }
    ensure(per_size.values().all(|n| *n >= 3) && per_size.len() == 3, format!("instances {per_size:?}"))?;
    Ok(format!("{per_size:?} instances, {contractions} contractions ({in_gamma} with W in Γ)"))
}

fn mt_oracle_equivalence() -> Result<String, String> {
    let mut names = Vec::new();
    for (name, x) in monomial_elements() {
        let (s, _) = mt_series(&x, through(2, 1)).map_err(|e| e.to_string())?;
        let oracle = mt_oracle(&x, Half(4)).map_err(|e| e.to_string())?;
        let bad = oracle_mismatches(&s, &oracle);
        ensure(bad.is_empty() && oracle.len() == 5, format!("{name}: degrees {bad:?}"))?;
        names.push(name);
    }
    Ok(names.join(", "))
}

fn virasoro_and_ns() -> Result<String, String> {
    let r = virasoro_check(Half(4), 2).map_err(|e| e.to_string())?;
    ensure(r.passes(), format!("{} Virasoro failures", r.failures.len()))?;
    let ns = ns_check(&SpinVector::ground(Mode::Exact)).map_err(|e| e.to_string())?;
    ensure(ns.passes(), "NS anticommutator")?;
    Ok(format!("{} states, {} relations", r.states, r.relations))
}

fn killing_and_traces() -> Result<String, String> {
    let r = lie_algebra_checks(50, 9).map_err(|e| e.to_string())?;
    ensure(r.dim == 276, format!("dim {}", r.dim))?;
    ensure(r.killing_vs_pairing_mismatches == 0, format!("{} entries with κ ≠ 44⟨u|v⟩", r.killing_vs_pairing_mismatches))?;
    ensure(r.antisymmetric && r.jacobi_failures == 0, "bracket")?;
    let pairs: Vec<(usize, usize)> = (0..276).step_by(23).flat_map(|i| [(i, i), (i, (i * 7 + 1) % 276)]).collect();
    let t = trace_identity_check(&pairs, Half(2)).map_err(|e| e.to_string())?;
    ensure(t.passes(), format!("{} trace failures", t.failures.len()))?;
    Ok(format!(
        "276×276 exact, κ(u,u) = {} for ⟨u|u⟩ = {}; {} pairs through q^1/2",
        r.sample_killing, r.sample_pairing, t.pairs
    ))
}

fn random_unit_vector(seed: u64) -> SpinVector {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = golay();
    let mut v = vec![0.0; 4096];
    for (k, x) in v.iter_mut().enumerate() {
        if g.rep(k).weight() % 2 == 0 {
            *x = rng.random_range(-1.0..1.0);
        }
    }
    let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    SpinVector::from_f64_vec(&v)
}

fn orbit_recovery() -> Result<String, String> {
    let mut recovered = 0;
    for seed in 0..100u64 {
        let (_, t) = random_rotation_orbit(20, seed);
        let r = orbit_ascent(&t, &AscentParams { seed, ..Default::default() }).map_err(|e| e.to_string())?;
        if r.converged && r.f >= 1.0 - ASCENT_TOL && r.sweeps <= 50 {
            recovered += 1;
        }
    }
    ensure(recovered >= 95, format!("{recovered}/100 recovered"))?;
    let control = random_unit_vector(7);
    let sc = sc_check(&control, ASCENT_TOL).map_err(|e| e.to_string())?;
    ensure(!sc.passes(), "random unit vector reported superconformal")?;
    Ok(format!("{recovered}/100 recovered; random unit vector rejected"))
}

fn main() {
    let criteria: [(u32, &str, Check, u64); 10] = [
        (1, "Golay code counts", golay_counts, 1),
        (2, "J_theta at both cusps", jtheta_expansions, 1),
        (3, "character census", character_census, 10),
        (4, "E8 quotient identity", e8_identity, 5),
        (5, "ground vector superconformal", ground_superconformal, 30),
        (6, "family vectors and coset contractions", families, 120),
        (7, "McKay-Thompson oracle", mt_oracle_equivalence, 300),
        (8, "Virasoro and NS relations", virasoro_and_ns, 60),
        (9, "Killing form and trace identity", killing_and_traces, 300),
        (10, "orbit ascent", orbit_recovery, 300),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (n, name, check, budget) in criteria {
        if only.is_some_and(|k| k != n) {
            continue;
        }
        let t0 = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = t0.elapsed();
        let over = took > Duration::from_secs(budget);
        let verdict = if result.is_ok() && !over { "PASS" } else { "FAIL" };
        let detail = match &result {
            Ok(s) if over => format!("{s}; over the {budget} s budget"),
            Ok(s) => s.clone(),
            Err(e) => e.clone(),
        };
        println!("criterion {n:>2} {verdict} {name} [{:.2} s / {budget} s]: {detail}", took.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
