//! Binary codes on 24 points: the Golay code, its co-code, sextets and the
//! balanced lift of the even co-code.
//!
//! Points are `0..24`, with `0` standing for the point at infinity of the
//! projective line over F23.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const N_POINTS: usize = 24;
pub const OMEGA: BitWord = BitWord((1 << 24) - 1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("expected a word of weight {expected}, got weight {got}")]
    WrongWeight { expected: u32, got: u32 },
    #[error("{0} is not a canonical even co-code representative")]
    NotInSigma(BitWord),
    #[error("malformed bit word {0:?}")]
    BadBitWord(String),
    #[error("code validation failed: {0}")]
    Validation(String),
}

/// A subset of the 24 points, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitWord(pub u32);

impl BitWord {
    pub const EMPTY: BitWord = BitWord(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        BitWord(it.into_iter().fold(0u32, |acc, i| {
            assert!(i < N_POINTS, "index {i} out of range");
            acc | (1 << i)
        }))
    }

    pub fn singleton(i: usize) -> Self {
        BitWord::from_indices([i])
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn sum(self, other: BitWord) -> BitWord {
        BitWord(self.0 ^ other.0)
    }

    pub fn meet(self, other: BitWord) -> BitWord {
        BitWord(self.0 & other.0)
    }

    pub fn join(self, other: BitWord) -> BitWord {
        BitWord(self.0 | other.0)
    }

    pub fn complement(self) -> BitWord {
        BitWord(OMEGA.0 & !self.0)
    }

    /// Parity of `|self ∩ other|`.
    pub fn dot(self, other: BitWord) -> u32 {
        (self.0 & other.0).count_ones() & 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.0 >> i & 1 == 1).collect()
    }

    pub fn to_hex(self) -> String {
        format!("{:06x}", self.0)
    }

    /// Orders by weight, then lexicographically on sorted index lists.
    pub fn canonical_cmp(self, other: BitWord) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl FromStr for BitWord {
    type Err = CodeError;

    /// Accepts six hex digits or an index list such as `[0,3,5]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || CodeError::BadBitWord(s.to_string());
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut bits = 0u32;
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let i: usize = part.parse().map_err(|_| bad())?;
                if i >= N_POINTS {
                    return Err(bad());
                }
                bits |= 1 << i;
            }
            return Ok(BitWord(bits));
        }
        let hex = t.trim_start_matches("0x");
        if hex.is_empty() || hex.len() > 6 {
            return Err(bad());
        }
        let v = u32::from_str_radix(hex, 16).map_err(|_| bad())?;
        if v > OMEGA.0 {
            return Err(bad());
        }
        Ok(BitWord(v))
    }
}

impl Serialize for BitWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for BitWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            List(Vec<usize>),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::List(v) => {
                if v.iter().any(|&i| i >= N_POINTS) {
                    return Err(serde::de::Error::custom("index out of range"));
                }
                Ok(BitWord::from_indices(v))
            }
        }
    }
}

/// A binary linear code with an explicit basis and its full word list.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    pub length: usize,
    pub generators: Vec<BitWord>,
    pub words: Vec<BitWord>,
}

impl BinaryCode {
    /// Builds the span of `gens`, keeping an independent subset as basis.
    pub fn span(length: usize, gens: &[BitWord]) -> BinaryCode {
        let mut basis: Vec<BitWord> = Vec::new();
        let mut reduced: Vec<u32> = Vec::new();
        for &g in gens {
            let mut r = g.0;
            for &b in &reduced {
                let pivot = 31 - b.leading_zeros();
                if r >> pivot & 1 == 1 {
                    r ^= b;
                }
            }
            if r != 0 {
                // keep `reduced` sorted by descending pivot
                let pos = reduced
                    .iter()
                    .position(|&b| b.leading_zeros() > r.leading_zeros())
                    .unwrap_or(reduced.len());
                reduced.insert(pos, r);
                basis.push(g);
            }
        }
        let words = (0u32..1 << basis.len())
            .map(|m| {
                BitWord(
                    basis
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| m >> k & 1 == 1)
                        .fold(0, |acc, (_, g)| acc ^ g.0),
                )
            })
            .collect();
        BinaryCode { length, generators: basis, words }
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn weight_enumerator(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for w in &self.words {
            *m.entry(w.weight()).or_insert(0) += 1;
        }
        m
    }

    pub fn is_doubly_even(&self) -> bool {
        self.generators.iter().all(|g| g.weight() % 4 == 0)
            && self
                .generators
                .iter()
                .enumerate()
                .all(|(i, g)| self.generators[i + 1..].iter().all(|h| g.dot(*h) == 0))
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length
            && self
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|h| g.dot(*h) == 0))
    }

    pub fn min_weight(&self) -> u32 {
        self.words.iter().map(|w| w.weight()).filter(|&w| w > 0).min().unwrap_or(0)
    }
}

const NONRESIDUES_MOD_23: [usize; 11] = [5, 7, 10, 11, 14, 15, 17, 19, 20, 21, 22];

fn golay_generators() -> Vec<BitWord> {
    let mut gens = vec![OMEGA];
    for shift in 0..23 {
        let mut w = BitWord::from_indices(NONRESIDUES_MOD_23.iter().map(|&x| (x + shift) % 23 + 1));
        if w.weight() % 2 == 1 {
            w = w.sum(BitWord::singleton(0));
        }
        gens.push(w);
    }
    gens
}

/// The extended quadratic residue code of length 24, basis starting with Ω.
pub fn build_golay() -> BinaryCode {
    let code = BinaryCode::span(N_POINTS, &golay_generators());
    let checks: [(bool, &str); 5] = [
        (code.dimension() == 12, "dimension 12"),
        (code.generators[0] == OMEGA, "Ω is the first generator"),
        (code.is_doubly_even(), "doubly even"),
        (code.is_self_dual(), "self-dual"),
        (code.min_weight() == 8, "minimum weight 8"),
    ];
    for (ok, what) in checks {
        assert!(ok, "{}", CodeError::Validation(what.to_string()));
    }
    code
}

/// The extended Hamming code of length 8.
pub fn build_hamming8() -> BinaryCode {
    let mut gens = vec![BitWord(0xff)];
    for shift in 0..7 {
        let w = BitWord::from_indices([1usize, 2, 4].iter().map(|&x| (x + shift) % 7 + 1));
        gens.push(w.sum(BitWord::singleton(0)));
    }
    let code = BinaryCode::span(8, &gens);
    assert_eq!(code.dimension(), 4, "{}", CodeError::Validation("hamming dimension".into()));
    code
}

/// A co-code class with its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocodeClass {
    pub canonical_rep: BitWord,
    pub coweight: u32,
    /// Golay codeword `C` with `word + C = canonical_rep`.
    pub golay_correction: BitWord,
}

/// Six disjoint tetrads covering all points, the first containing point 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sextet {
    pub tetrads: [BitWord; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapType {
    Same,
    Coweight2,
    NonCommuting4,
    Commuting4,
}

/// Golay code together with everything derived from it that is used
/// elsewhere: decoding tables, class indices and the balanced lift.
pub struct Golay {
    pub code: BinaryCode,
    coord: HashMap<u32, u16>,
    syndrome_to_class: Vec<u16>,
    reps: Vec<BitWord>,
    sigma: Vec<BitWord>,
    sigma_pos: Vec<u16>,
}

static GOLAY: OnceLock<Golay> = OnceLock::new();

/// Shared Golay context, built on first use.
pub fn golay() -> &'static Golay {
    GOLAY.get_or_init(Golay::new)
}

impl Golay {
    fn new() -> Golay {
        let code = build_golay();
        let coord = code.words.iter().enumerate().map(|(m, w)| (w.0, m as u16)).collect();
        let gens = code.generators.clone();
        let syndrome = |w: u32| -> usize {
            gens.iter()
                .enumerate()
                .fold(0, |acc, (k, g)| acc | (((w & g.0).count_ones() as usize & 1) << k))
        };

        let mut leaders: Vec<BitWord> = Vec::with_capacity(4096);
        let mut taken = vec![false; 4096];
        let mut push = |w: BitWord, leaders: &mut Vec<BitWord>| {
            let s = syndrome(w.0);
            if !taken[s] {
                taken[s] = true;
                leaders.push(w);
            }
        };
        for w in small_words(3) {
            push(w, &mut leaders);
        }
        assert_eq!(leaders.len(), 2325, "weight ≤ 3 leaders are unique");
        for a in 1..24 {
            for b in a + 1..24 {
                for c in b + 1..24 {
                    push(BitWord::from_indices([0, a, b, c]), &mut leaders);
                }
            }
        }
        assert_eq!(leaders.len(), 4096, "covering radius 4");
        leaders.sort_by(|a, b| a.canonical_cmp(*b));

        let mut syndrome_to_class = vec![0u16; 4096];
        for (i, r) in leaders.iter().enumerate() {
            syndrome_to_class[syndrome(r.0)] = i as u16;
        }
        let sigma: Vec<BitWord> = leaders.iter().copied().filter(|r| r.weight() % 2 == 0).collect();
        let mut sigma_pos = vec![u16::MAX; 4096];
        for (k, s) in sigma.iter().enumerate() {
            sigma_pos[syndrome_to_class[syndrome(s.0)] as usize] = k as u16;
        }
        Golay { code, coord, syndrome_to_class, reps: leaders, sigma, sigma_pos }
    }

    pub fn generators(&self) -> &[BitWord] {
        &self.code.generators
    }

    pub fn syndrome(&self, w: BitWord) -> usize {
        self.code
            .generators
            .iter()
            .enumerate()
            .fold(0, |acc, (k, g)| acc | ((w.dot(*g) as usize) << k))
    }

    pub fn is_codeword(&self, w: BitWord) -> bool {
        self.syndrome(w) == 0
    }

    /// Generator coordinates of a codeword (bit `k` for generator `k`).
    pub fn codeword_coords(&self, c: BitWord) -> Option<u16> {
        self.coord.get(&c.0).copied()
    }

    /// Index of the co-code class of `w` in the canonical ordering.
    pub fn class_index(&self, w: BitWord) -> usize {
        self.syndrome_to_class[self.syndrome(w)] as usize
    }

    /// Canonical representatives ordered by coweight then lexicographically.
    pub fn reps(&self) -> &[BitWord] {
        &self.reps
    }

    pub fn rep(&self, class: usize) -> BitWord {
        self.reps[class]
    }

    pub fn decode(&self, word: BitWord) -> CocodeClass {
        let rep = self.reps[self.class_index(word)];
        CocodeClass { canonical_rep: rep, coweight: rep.weight(), golay_correction: word.sum(rep) }
    }

    pub fn coweight(&self, word: BitWord) -> u32 {
        self.reps[self.class_index(word)].weight()
    }

    /// The balanced lift of the even co-code: ∅, pairs, then tetrads through 0.
    pub fn sigma(&self) -> &[BitWord] {
        &self.sigma
    }

    /// Position of `x` in [`Golay::sigma`] if `x` is a member.
    pub fn sigma_index(&self, x: BitWord) -> Option<usize> {
        if x.weight() % 2 == 1 || x.weight() > 4 {
            return None;
        }
        let k = self.sigma_pos[self.class_index(x)];
        (k != u16::MAX && self.sigma[k as usize] == x).then_some(k as usize)
    }

    pub fn check_sigma(&self, x: BitWord) -> Result<usize, CodeError> {
        self.sigma_index(x).ok_or(CodeError::NotInSigma(x))
    }

    /// The group law on Σ: `X ∔ Y` is the member of Σ in the class of `X + Y`.
    pub fn dotplus(&self, x: BitWord, y: BitWord) -> Result<BitWord, CodeError> {
        self.check_sigma(x)?;
        self.check_sigma(y)?;
        Ok(self.decode(x.sum(y)).canonical_rep)
    }

    pub fn sextet_of(&self, tetrad: BitWord) -> Result<Sextet, CodeError> {
        check_tetrad(tetrad)?;
        let t0 = self.decode(tetrad).canonical_rep;
        let mut rest: Vec<BitWord> = Vec::with_capacity(5);
        let mut covered = t0;
        for p in 0..N_POINTS {
            if covered.contains(p) {
                continue;
            }
            let five = t0.join(BitWord::singleton(p));
            let octad = five.sum(self.decode(five).canonical_rep);
            let t = octad.sum(t0);
            covered = covered.join(t);
            rest.push(t);
        }
        let tetrads = [t0, rest[0], rest[1], rest[2], rest[3], rest[4]];
        Ok(Sextet { tetrads })
    }

    pub fn sextet_overlap_type(&self, t1: BitWord, t2: BitWord) -> Result<OverlapType, CodeError> {
        check_tetrad(t1)?;
        check_tetrad(t2)?;
        Ok(match self.coweight(t1.sum(t2)) {
            0 => OverlapType::Same,
            2 => OverlapType::Coweight2,
            _ => {
                let (s1, s2) = (self.sextet_of(t1)?, self.sextet_of(t2)?);
                let even = s1
                    .tetrads
                    .iter()
                    .all(|a| s2.tetrads.iter().all(|b| a.meet(*b).weight() % 2 == 0));
                if even {
                    OverlapType::Commuting4
                } else {
                    OverlapType::NonCommuting4
                }
            }
        })
    }

    /// All octads.
    pub fn octads(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.code.words.iter().copied().filter(|w| w.weight() == 8)
    }

    /// All dodecads.
    pub fn dodecads(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.code.words.iter().copied().filter(|w| w.weight() == 12)
    }
}

fn check_tetrad(t: BitWord) -> Result<(), CodeError> {
    if t.weight() != 4 || t.0 > OMEGA.0 {
        return Err(CodeError::WrongWeight { expected: 4, got: t.weight() });
    }
    Ok(())
}

/// All words of weight at most `max`, in order of weight.
pub fn small_words(max: u32) -> Vec<BitWord> {
    let mut out = vec![BitWord::EMPTY];
    let mut layer = vec![BitWord::EMPTY];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            let top = if w.is_empty() { 0 } else { 32 - w.0.leading_zeros() as usize };
            for i in top..N_POINTS {
                next.push(w.join(BitWord::singleton(i)));
            }
        }
        out.extend_from_slice(&next);
        layer = next;
    }
    out
}

pub fn decode(word: BitWord) -> CocodeClass {
    golay().decode(word)
}

pub fn sextet_of(tetrad: BitWord) -> Result<Sextet, CodeError> {
    golay().sextet_of(tetrad)
}

pub fn sextet_overlap_type(t1: BitWord, t2: BitWord) -> Result<OverlapType, CodeError> {
    golay().sextet_overlap_type(t1, t2)
}

pub fn balanced_lift_even() -> Vec<BitWord> {
    golay().sigma().to_vec()
}

pub fn dotplus(x: BitWord, y: BitWord) -> Result<BitWord, CodeError> {
    golay().dotplus(x, y)
}
