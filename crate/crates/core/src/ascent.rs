//! Coordinate ascent of `f_t(x) = ⟨x 1_G, t⟩` over the spin group.
//!
//! The group element is kept as a word of factors and its image `x 1_G` as
//! a dense vector on the even classes, so each move costs one pass over
//! 2048 coordinates.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{rotation, CliffordElement};
use crate::codes::{golay, small_words, BitWord, N_POINTS};
use crate::scalar::{Mode, Scalar};
use crate::spinmod::{generator_table, Parity, SpinVector};
use crate::superconformal::ScError;

/// One factor of a spin group word.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SpinFactor {
    /// `cos θ + sin θ e_i e_j`
    Rotation { i: usize, j: usize, theta: f64 },
    /// `±e_S` for an even word `S`
    Monomial { word: BitWord, negate: bool },
}

/// A product of factors; the first factor acts first.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpinWord(pub Vec<SpinFactor>);

impl SpinWord {
    pub fn to_clifford(&self) -> CliffordElement {
        let mut x = CliffordElement::one(Mode::Float);
        for f in &self.0 {
            let y = match f {
                SpinFactor::Rotation { i, j, theta } => rotation(*i, *j, *theta, Mode::Float).expect("valid pair"),
                SpinFactor::Monomial { word, negate } => {
                    CliffordElement::monomial(*word, Scalar::Float(if *negate { -1.0 } else { 1.0 }))
                }
            };
            x = y.mul(&x).expect("float mode");
        }
        x
    }

    /// `x 1_G` as a float spin vector.
    pub fn apply_to_ground(&self) -> SpinVector {
        let ev = EvenTables::get();
        let mut v = vec![0.0; ev.classes.len()];
        v[0] = 1.0;
        for f in &self.0 {
            v = ev.apply_factor(f, &v);
        }
        ev.to_spin_vector(&v)
    }
}

struct EvenTables {
    classes: Vec<usize>,
    position: Vec<u16>,
    // e_i e_j on even positions, pairs in lexicographic order
    pairs: Vec<(usize, usize)>,
    pair_table: Vec<(i8, u16)>,
    tetrads: Vec<BitWord>,
}

const NONE: u16 = u16::MAX;

impl EvenTables {
    fn get() -> &'static EvenTables {
        static TABLES: OnceLock<EvenTables> = OnceLock::new();
        TABLES.get_or_init(|| {
            let g = golay();
            let classes: Vec<usize> = (0..g.reps().len()).filter(|k| g.rep(*k).weight() % 2 == 0).collect();
            let mut position = vec![NONE; g.reps().len()];
            for (p, c) in classes.iter().enumerate() {
                position[*c] = p as u16;
            }
            let gen = generator_table();
            let mut pairs = Vec::new();
            let mut pair_table = Vec::new();
            for i in 0..N_POINTS {
                for j in i + 1..N_POINTS {
                    pairs.push((i, j));
                    for &c in &classes {
                        let (s1, y) = gen.get(j, c);
                        let (s2, z) = gen.get(i, y);
                        pair_table.push((s1 * s2, position[z]));
                    }
                }
            }
            let tetrads = small_words(4).into_iter().filter(|w| w.weight() == 4).collect();
            EvenTables { classes, position, pairs, pair_table, tetrads }
        })
    }

    fn n(&self) -> usize {
        self.classes.len()
    }

    fn pair_row(&self, p: usize) -> &[(i8, u16)] {
        &self.pair_table[p * self.n()..(p + 1) * self.n()]
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        self.pairs.iter().position(|q| *q == (i, j)).expect("pair")
    }

    // e_S on even positions through the generator table
    fn word_map(&self, s: BitWord) -> Vec<(i8, u16)> {
        let gen = generator_table();
        let idx = s.indices();
        self.classes
            .iter()
            .map(|&c| {
                let mut sign = 1i8;
                let mut cur = c;
                for &i in idx.iter().rev() {
                    let (s1, y) = gen.get(i, cur);
                    sign *= s1;
                    cur = y;
                }
                (sign, self.position[cur])
            })
            .collect()
    }

    fn apply_map(map: &[(i8, u16)], v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (x, &(s, y)) in map.iter().enumerate() {
            out[y as usize] += s as f64 * v[x];
        }
        out
    }

    fn apply_factor(&self, f: &SpinFactor, v: &[f64]) -> Vec<f64> {
        match f {
            SpinFactor::Rotation { i, j, theta } => {
                let (sn, cs) = theta.sin_cos();
                let ev = Self::apply_map(self.pair_row(self.pair_index(*i, *j)), v);
                v.iter().zip(&ev).map(|(a, b)| cs * a + sn * b).collect()
            }
            SpinFactor::Monomial { word, negate } => {
                let mut out = Self::apply_map(&self.word_map(*word), v);
                if *negate {
                    out.iter_mut().for_each(|x| *x = -*x);
                }
                out
            }
        }
    }

    fn to_spin_vector(&self, v: &[f64]) -> SpinVector {
        let mut full = vec![0.0; golay().reps().len()];
        for (p, c) in self.classes.iter().enumerate() {
            full[*c] = v[p];
        }
        SpinVector::from_f64_vec(&full)
    }
}

// ⟨M v, t⟩ for a signed permutation M given as (sign, target) per source
fn paired(map: &[(i8, u16)], v: &[f64], t: &[f64]) -> f64 {
    map.iter().zip(v).map(|(&(s, y), a)| s as f64 * a * t[y as usize]).sum()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AscentParams {
    /// Stop once `f ≥ 1 − tol`.
    pub tol: f64,
    #[serde(rename = "maxSweeps")]
    pub max_sweeps: usize,
    /// Random restarts after the first trajectory stalls.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for AscentParams {
    fn default() -> Self {
        AscentParams { tol: 1e-9, max_sweeps: 50, restarts: 4, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub sweep: usize,
    pub f: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AscentResult {
    pub word: SpinWord,
    pub f: f64,
    /// Sweeps used by the trajectory that produced `word`.
    pub sweeps: usize,
    pub converged: bool,
    pub trace: Vec<TracePoint>,
}

struct Trajectory {
    word: SpinWord,
    v: Vec<f64>,
    f: f64,
    trace: Vec<TracePoint>,
    sweeps: usize,
}

impl Trajectory {
    fn push(&mut self, ev: &EvenTables, factor: SpinFactor, t: &[f64]) {
        self.v = ev.apply_factor(&factor, &self.v);
        self.word.0.push(factor);
        let f = dot(&self.v, t);
        debug_assert!(f >= self.f - 1e-9, "ascent step decreased f");
        self.f = f;
    }

    // one pass over all 276 planes; each move replaces A with √(A²+B²)
    fn sweep(&mut self, ev: &EvenTables, t: &[f64]) {
        for (p, &(i, j)) in ev.pairs.iter().enumerate() {
            let a = self.f;
            let b = paired(ev.pair_row(p), &self.v, t);
            if b.abs() < 1e-15 {
                continue;
            }
            let theta = b.atan2(a);
            self.push(ev, SpinFactor::Rotation { i, j, theta }, t);
        }
        self.sweeps += 1;
        self.trace.push(TracePoint { sweep: self.sweeps, f: self.f });
    }

    // best ±e_S over tetrads, taken only if it improves f
    fn discrete_move(&mut self, ev: &EvenTables, t: &[f64]) -> bool {
        let best = ev
            .tetrads
            .iter()
            .map(|s| (*s, paired(&ev.word_map(*s), &self.v, t)))
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()));
        match best {
            Some((word, b)) if b.abs() > self.f + 1e-12 => {
                self.push(ev, SpinFactor::Monomial { word, negate: b < 0.0 }, t);
                true
            }
            _ => false,
        }
    }
}

/// Maximizes `⟨x 1_G, t⟩` over `x` in the spin group.
///
/// Each sweep rotates in all 276 coordinate planes with the optimal angle
/// `atan2(B, A)`. When a sweep stalls, the best tetrad monomial is tried;
/// if that does not help either, the trajectory restarts from a seeded
/// random rotation product. The best trajectory is returned.
pub fn orbit_ascent(t: &SpinVector, params: &AscentParams) -> Result<AscentResult, ScError> {
    if t.parity() != Parity::Even {
        return Err(ScError::OddVector);
    }
    let ev = EvenTables::get();
    let full = t.to_f64_vec();
    let tv: Vec<f64> = ev.classes.iter().map(|c| full[*c]).collect();
    let norm = dot(&tv, &tv).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(ScError::NotUnit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut best: Option<Trajectory> = None;
    for attempt in 0..=params.restarts {
        let mut traj = Trajectory { word: SpinWord::default(), v: vec![0.0; ev.n()], f: 0.0, trace: Vec::new(), sweeps: 0 };
        traj.v[0] = 1.0;
        if attempt > 0 {
            for _ in 0..24 {
                let p = rng.random_range(0..ev.pairs.len());
                let (i, j) = ev.pairs[p];
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                traj.v = ev.apply_factor(&SpinFactor::Rotation { i, j, theta }, &traj.v);
                traj.word.0.push(SpinFactor::Rotation { i, j, theta });
            }
        }
        traj.f = dot(&traj.v, &tv);
        traj.trace.push(TracePoint { sweep: 0, f: traj.f });
        while traj.sweeps < params.max_sweeps && traj.f < 1.0 - params.tol {
            let before = traj.f;
            traj.sweep(ev, &tv);
            if traj.f - before < 1e-13 && !traj.discrete_move(ev, &tv) {
                break;
            }
        }
        let done = traj.f >= 1.0 - params.tol;
        if best.as_ref().is_none_or(|b| traj.f > b.f) {
            best = Some(traj);
        }
        if done {
            break;
        }
    }
    let traj = best.expect("at least one trajectory");
    Ok(AscentResult {
        converged: traj.f >= 1.0 - params.tol,
        word: traj.word,
        f: traj.f,
        sweeps: traj.sweeps,
        trace: traj.trace,
    })
}

/// A random product of `n` plane rotations applied to `1_G`, with the word.
pub fn random_rotation_orbit(n: usize, seed: u64) -> (SpinWord, SpinVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = SpinWord(
        (0..n)
            .map(|_| {
                let i = rng.random_range(0..N_POINTS);
                let mut j = rng.random_range(0..N_POINTS - 1);
                if j >= i {
                    j += 1;
                }
                let (i, j) = (i.min(j), i.max(j));
                SpinFactor::Rotation { i, j, theta: rng.random_range(0.0..std::f64::consts::TAU) }
            })
            .collect(),
    );
    let v = word.apply_to_ground();
    (word, v)
}
