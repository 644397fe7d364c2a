use fmoon_core::codes::*;
use proptest::prelude::*;

fn brute_coweight(w: BitWord) -> u32 {
    golay().code.words.iter().map(|c| c.sum(w).weight()).min().unwrap()
}

#[test]
fn golay_weight_enumerator() {
    let code = build_golay();
    assert_eq!(code.len(), 4096);
    let e: Vec<_> = code.weight_enumerator().into_iter().collect();
    assert_eq!(e, vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
    assert!(code.words.contains(&OMEGA));
}

#[test]
fn golay_closure_is_doubly_even_and_self_orthogonal() {
    let g = golay();
    for c in &g.code.words {
        for b in g.generators() {
            assert_eq!(c.sum(*b).weight() % 4, 0);
            assert_eq!(c.dot(*b), 0);
        }
    }
}

#[test]
fn class_counts_by_coweight() {
    let mut counts = [0usize; 5];
    for r in golay().reps() {
        counts[r.weight() as usize] += 1;
    }
    assert_eq!(counts, [1, 24, 276, 2024, 1771]);
}

#[test]
fn decode_basics() {
    let g = golay();
    assert_eq!(decode(BitWord::EMPTY), CocodeClass { canonical_rep: BitWord::EMPTY, coweight: 0, golay_correction: BitWord::EMPTY });
    let octad = g.octads().next().unwrap();
    let d = decode(octad);
    assert_eq!((d.canonical_rep, d.coweight, d.golay_correction), (BitWord::EMPTY, 0, octad));

    let i = octad.indices()[0];
    let j = (0..24).find(|&j| !octad.contains(j)).unwrap();
    // swapping one point of an octad moves two steps away from the code
    let swapped = octad.sum(BitWord::from_indices([i, j]));
    assert_eq!(swapped.weight(), 8);
    assert_eq!(decode(swapped).coweight, 2);
    assert_eq!(brute_coweight(swapped), 2);
    // four points of an octad plus an outside point
    let w5 = BitWord::from_indices(octad.indices().into_iter().take(4)).join(BitWord::singleton(j));
    assert_eq!(w5.weight(), 5);
    assert_eq!(decode(w5).coweight, 3);
    assert_eq!(brute_coweight(w5), 3);
}

#[test]
fn tetrads_and_sextets() {
    let g = golay();
    let t = BitWord::from_indices([3, 7, 11, 19]);
    let s = sextet_of(t).unwrap();
    assert!(s.tetrads[0].contains(0));
    let mut union = BitWord::EMPTY;
    for (a, x) in s.tetrads.iter().enumerate() {
        assert_eq!(x.weight(), 4);
        assert_eq!(union.meet(*x), BitWord::EMPTY);
        union = union.join(*x);
        for y in &s.tetrads[a + 1..] {
            assert!(g.is_codeword(x.sum(*y)));
            assert_eq!(decode(*x).canonical_rep, decode(*y).canonical_rep);
        }
    }
    assert_eq!(union, OMEGA);
    assert_eq!(g.octads().filter(|o| o.meet(t) == t).count(), 5);
    assert!(sextet_of(BitWord::from_indices([1, 2, 3])).is_err());
}

#[test]
fn every_tetrad_in_exactly_one_sextet() {
    let mut seen = std::collections::HashMap::new();
    for w in small_words(4).into_iter().filter(|w| w.weight() == 4) {
        *seen.entry(decode(w).canonical_rep).or_insert(0) += 1;
    }
    assert_eq!(seen.len(), 1771);
    assert!(seen.values().all(|&c| c == 6));
}

#[test]
fn overlap_types_cover_all_cases() {
    let g = golay();
    let t1 = g.sigma()[300];
    assert_eq!(sextet_overlap_type(t1, t1).unwrap(), OverlapType::Same);
    let mut found = [false; 4];
    for &t2 in &g.sigma()[277..] {
        let kind = sextet_overlap_type(t1, t2).unwrap();
        let s1 = sextet_of(t1).unwrap();
        let s2 = sextet_of(t2).unwrap();
        let sizes: Vec<u32> = s1.tetrads.iter().flat_map(|a| s2.tetrads.iter().map(move |b| a.meet(*b).weight())).collect();
        let idx = match kind {
            OverlapType::Same => {
                assert!(sizes.iter().all(|s| *s == 0 || *s == 4));
                0
            }
            OverlapType::Coweight2 => {
                assert!(sizes.iter().all(|s| [0, 1, 3].contains(s)));
                1
            }
            OverlapType::NonCommuting4 => {
                assert!(sizes.iter().all(|s| [0, 1, 2].contains(s)));
                2
            }
            OverlapType::Commuting4 => {
                assert!(sizes.iter().all(|s| *s % 2 == 0));
                3
            }
        };
        found[idx] = true;
        if found.iter().all(|f| *f) {
            break;
        }
    }
    assert_eq!(found, [true; 4]);
}

#[test]
fn balanced_lift_is_a_transversal() {
    let sigma = balanced_lift_even();
    assert_eq!(sigma.len(), 2048);
    assert_eq!(sigma.iter().filter(|x| x.weight() == 2).count(), 276);
    assert_eq!(sigma.iter().filter(|x| x.weight() == 4).count(), 1771);
    let mut classes = std::collections::HashSet::new();
    for x in &sigma {
        let d = decode(*x);
        assert_eq!(d.canonical_rep, *x);
        assert_eq!(d.coweight, x.weight());
        assert!(classes.insert(golay().class_index(*x)));
    }
}

#[test]
fn dotplus_examples() {
    let x = BitWord::from_indices([1, 2]);
    let y = BitWord::from_indices([2, 3]);
    assert_eq!(dotplus(x, BitWord::EMPTY).unwrap(), x);
    assert_eq!(dotplus(x, x).unwrap(), BitWord::EMPTY);
    assert_eq!(dotplus(x, y).unwrap(), BitWord::from_indices([1, 3]));
    assert!(dotplus(BitWord::from_indices([1]), x).is_err());
}

#[test]
fn hamming_code() {
    let h = build_hamming8();
    assert_eq!((h.dimension(), h.min_weight()), (4, 4));
    assert!(h.is_doubly_even() && h.is_self_dual());
}

fn any_word() -> impl Strategy<Value = BitWord> {
    (0u32..1 << 24).prop_map(BitWord)
}

fn sigma_member() -> impl Strategy<Value = BitWord> {
    (0usize..2048).prop_map(|k| golay().sigma()[k])
}

proptest! {
    #[test]
    fn decode_constant_on_cosets(w in any_word(), k in 0usize..4096) {
        let c = golay().code.words[k];
        prop_assert_eq!(decode(w).canonical_rep, decode(w.sum(c)).canonical_rep);
        let d = decode(w);
        prop_assert_eq!(w.sum(d.golay_correction), d.canonical_rep);
        prop_assert!(golay().is_codeword(d.golay_correction));
    }

    #[test]
    fn decode_matches_brute_force(w in any_word()) {
        prop_assert_eq!(decode(w).coweight, brute_coweight(w));
    }

    #[test]
    fn dotplus_group_laws(x in sigma_member(), y in sigma_member(), z in sigma_member()) {
        let l = dotplus(dotplus(x, y).unwrap(), z).unwrap();
        let r = dotplus(x, dotplus(y, z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(dotplus(x, y).unwrap(), dotplus(y, x).unwrap());
        prop_assert_eq!(dotplus(x, x).unwrap(), BitWord::EMPTY);
    }
}
