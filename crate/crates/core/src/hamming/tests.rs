// SPDX-License-Identifier: Apache-2.0

use super::*;
use proptest::prelude::*;
use std::collections::{HashMap, HashSet};

fn w(n: u32, bits: u32) -> Word {
    Word::new(n, bits).unwrap()
}

fn binom(n: u32, k: u32) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// Largest independent set by trying every subset (N ≤ 20).
fn brute_alpha(g: &Graph) -> usize {
    let n = g.num_vertices();
    assert!(n <= 20);
    let nbr: Vec<u32> = (0..n).map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0, |m, v| m | 1 << v)).collect();
    (0u32..1 << n)
        .filter(|s| (0..n).all(|u| s >> u & 1 == 0 || s & nbr[u] == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

#[test]
fn word_validation() {
    assert!(Word::new(0, 0).is_err());
    assert!(Word::new(33, 0).is_err());
    assert!(Word::new(3, 8).is_err());
    assert_eq!(Word::ones(32).unwrap().weight(), 32);
    assert_eq!(w(4, 0b0011).to_bitstring(), "1100");
}

#[test]
fn distance_examples() {
    let x = w(7, 0b1011001);
    assert_eq!(hamming_distance(&x, &x).unwrap(), 0);
    for n in [1, 5, 16, 32] {
        assert_eq!(hamming_distance(&Word::zero(n).unwrap(), &Word::ones(n).unwrap()).unwrap(), n);
    }
    assert!(hamming_distance(&w(3, 1), &w(4, 1)).is_err());
}

proptest! {
    #[test]
    fn distance_from_weights_and_overlap(n in 1u32..=32, a: u32, b: u32) {
        let m = if n == 32 { u32::MAX } else { (1 << n) - 1 };
        let (x, y) = (w(n, a & m), w(n, b & m));
        let overlap = (x.bits() & y.bits()).count_ones();
        prop_assert_eq!(hamming_distance(&x, &y).unwrap(), weight(&x) + weight(&y) - 2 * overlap);
    }
}

#[test]
fn gnd_degrees_and_cayley_property() {
    for n in 1..=6 {
        for d in 1..=n {
            let g = build_gnd(n, d).unwrap();
            let deg: usize = (1..d).map(|r| binom(n, r)).sum();
            for u in 0..g.num_vertices() {
                assert_eq!(g.degree(u), deg);
            }
            let size = 1usize << n;
            for z in 0..size {
                for x in 0..size {
                    for y in 0..size {
                        assert_eq!(g.has_edge(x, y), g.has_edge(x ^ z, y ^ z));
                    }
                }
            }
        }
    }
    assert_eq!(build_gnd(4, 1).unwrap().num_edges(), 0);
    assert!(build_gnd(17, 3).is_err());
    assert!(build_gnd(4, 5).is_err());
}

#[test]
fn small_graph_alphas() {
    assert_eq!(independence_number(&Graph::complete(5)).unwrap().size, 1);
    assert_eq!(independence_number(&Graph::cycle(5).unwrap()).unwrap().size, 2);
    assert_eq!(independence_number(&Graph::petersen()).unwrap().size, 4);
    assert_eq!(independence_number(&Graph::empty(7)).unwrap().size, 7);
    assert_eq!(independence_number(&Graph::empty(0)).unwrap().size, 0);
    let g33 = build_gnd(3, 3).unwrap();
    assert_eq!(brute_alpha(&g33), 2);
    let s = independence_number(&g33).unwrap();
    assert_eq!(s.size, 2);
    assert!(g33.is_independent(&s.witness));
    assert_eq!(independence_number(&build_gnd(5, 3).unwrap()).unwrap().size, 4);
}

#[test]
fn alpha_matches_brute_force_on_random_graphs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for trial in 0..60 {
        let n = 1 + trial % 16;
        let p = rng.gen_range(0.05..0.9);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let s = independence_number(&g).unwrap();
        assert_eq!(s.size, brute_alpha(&g), "trial {trial}");
        assert!(g.is_independent(&s.witness));
        assert_eq!(independence_number_par(&g, 3).unwrap().size, s.size);
    }
}

#[test]
fn greedy_codes_below_alpha() {
    for n in 1..=5 {
        for d in 1..=n {
            let c = greedy_code(n, d).unwrap();
            assert!(c.has_min_distance(d));
            let g = build_gnd(n, d).unwrap();
            let s = independence_number(&g).unwrap();
            assert!(g.is_independent(&s.witness));
            assert!(c.len() <= s.size, "n={n} d={d}");
        }
    }
}

#[test]
fn known_small_alphas() {
    // lengths up to 8, every distance
    let table: [(u32, u32, usize); 9] =
        [(6, 3, 8), (6, 4, 4), (7, 3, 16), (7, 4, 8), (8, 2, 128), (8, 4, 16), (8, 5, 4), (8, 6, 2), (8, 8, 2)];
    for (n, d, alpha) in table {
        let g = build_gnd(n, d).unwrap();
        let s = independence_number_par(&g, 4).unwrap();
        assert_eq!(s.size, alpha, "A({n},{d})");
        assert!(g.is_independent(&s.witness));
        let code = Code::from_bits(n, &s.witness.iter().map(|&v| v as u32).collect::<Vec<_>>()).unwrap();
        assert!(code.has_min_distance(d));
    }
}

#[test]
fn symmetric_search_agrees_with_generic_search() {
    for n in 1..=6 {
        for d in 1..=n {
            let g = build_gnd(n, d).unwrap();
            let plain = parse_edge_list(&write_edge_list(&g)).unwrap();
            assert_eq!(plain.hamming_parameters(), None);
            let a = independence_number(&g).unwrap();
            let b = independence_number(&plain).unwrap();
            assert_eq!(a.size, b.size, "n={n} d={d}");
            assert!(g.is_independent(&a.witness));
        }
    }
}

#[test]
fn greedy_examples() {
    assert_eq!(greedy_code(6, 1).unwrap().len(), 64);
    for n in 2..=12 {
        let c = greedy_code(n, n).unwrap();
        assert!(c.contains(&Word::zero(n).unwrap()) && c.contains(&Word::ones(n).unwrap()));
        assert_eq!(c.len(), 2);
    }
    let c = greedy_code(5, 3).unwrap();
    assert_eq!(c.len(), 4);
    assert_eq!(c.min_distance(), Some(3));
    let c = greedy_code(20, 6).unwrap();
    assert!(c.has_min_distance(6));
    assert!(greedy_code(21, 3).is_err());
}

#[test]
fn distance_distribution_examples() {
    let single = Code::from_bits(5, &[3]).unwrap();
    assert_eq!(distance_distribution(&single).unwrap(), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let whole = Code::whole_space(6).unwrap();
    let dist = distance_distribution(&whole).unwrap();
    for r in 0..=6 {
        assert_eq!(dist[r as usize], binom(6, r) as f64);
    }
    let rep = Code::from_bits(4, &[0, 15]).unwrap();
    assert_eq!(distance_distribution(&rep).unwrap(), vec![1.0, 0.0, 0.0, 0.0, 1.0]);
    let g = greedy_code(9, 3).unwrap();
    let dist = distance_distribution(&g).unwrap();
    assert_eq!(dist[0], 1.0);
    assert!((dist.iter().sum::<f64>() - g.len() as f64).abs() < 1e-12);
}

#[test]
fn code_rejects_duplicates_and_mixed_lengths() {
    assert!(Code::from_bits(3, &[1, 1]).is_err());
    assert!(Code::new(3, vec![w(3, 1), w(4, 1)]).is_err());
}

/// Translation by `z` followed by the coordinate permutation `perm`.
fn act(x: u32, z: u32, perm: &[u32]) -> u32 {
    let y = x ^ z;
    perm.iter().enumerate().fold(0, |acc, (i, &p)| acc | ((y >> i) & 1) << p)
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn triple_labels_are_exactly_orbits_for_n4() {
    let n = 4u32;
    let perms = permutations(n);
    let group: Vec<(u32, &Vec<u32>)> = (0..16).flat_map(|z| perms.iter().map(move |p| (z, p))).collect();
    assert_eq!(group.len(), 384);

    let mut subsets: Vec<Vec<u32>> = Vec::new();
    for a in 0..16u32 {
        subsets.push(vec![a]);
        for b in a + 1..16 {
            subsets.push(vec![a, b]);
            for c in b + 1..16 {
                subsets.push(vec![a, b, c]);
            }
        }
    }
    let key = |s: &[u32]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    };
    let mut orbit_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut orbit_count = 0;
    for s in &subsets {
        if orbit_of.contains_key(s) {
            continue;
        }
        for (z, p) in &group {
            orbit_of.insert(key(&s.iter().map(|&x| act(x, *z, p)).collect::<Vec<_>>()), orbit_count);
        }
        orbit_count += 1;
    }
    let label = |s: &[u32]| canonical_triple(n, &s.iter().map(|&b| w(n, b)).collect::<Vec<_>>()).unwrap();
    let mut label_to_orbit: HashMap<TripleOrbit, usize> = HashMap::new();
    let mut orbits_seen = HashSet::new();
    for s in &subsets {
        let o = orbit_of[s];
        let l = label(s);
        assert_eq!(*label_to_orbit.entry(l).or_insert(o), o, "label {l} spans two orbits");
        orbits_seen.insert(o);
    }
    assert_eq!(label_to_orbit.len(), orbits_seen.len());
}

#[test]
fn triple_labels_invariant_under_sampled_group_elements() {
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for n in 1..=8u32 {
        for _ in 0..200 {
            let k = rng.gen_range(1..=3);
            let s: Vec<u32> = (0..k).map(|_| rng.gen_range(0..1u32 << n)).collect();
            let z = rng.gen_range(0..1u32 << n);
            let mut perm: Vec<u32> = (0..n).collect();
            perm.shuffle(&mut rng);
            let img: Vec<u32> = s.iter().map(|&x| act(x, z, &perm)).collect();
            let words = |v: &[u32]| v.iter().map(|&b| w(n, b)).collect::<Vec<_>>();
            assert_eq!(canonical_triple(n, &words(&s)).unwrap(), canonical_triple(n, &words(&img)).unwrap());
        }
    }
}

#[test]
fn triple_label_examples() {
    let n = 6;
    assert_eq!(canonical_triple(n, &[w(n, 5)]).unwrap().distances(), [0, 0, 0]);
    assert_eq!(canonical_triple(n, &[w(n, 0), w(n, 7)]).unwrap().distances(), [0, 3, 3]);
    assert_eq!(canonical_triple(n, &[w(n, 0), w(n, 7), w(n, 0b111000)]).unwrap().distances(), [3, 3, 6]);
    assert!(TripleOrbit::new(1, 1, 1, 5).is_err());
    assert!(TripleOrbit::new(1, 1, 4, 5).is_err());
    assert!(TripleOrbit::new(4, 4, 4, 5).is_err());
    assert_eq!(TripleOrbit::from_weights(2, 3, 1, 5).unwrap().distances(), [2, 3, 3]);
}

#[test]
fn edge_list_round_trip() {
    let g = Graph::petersen();
    let text = write_edge_list(&g);
    assert_eq!(parse_edge_list(&text).unwrap(), g);
    let parsed = parse_edge_list("# pentagon\n5\n0 1\n1 2 # spoke\n2 3\n3 4\n4 0\n").unwrap();
    assert_eq!(parsed, Graph::cycle(5).unwrap());
    assert!(matches!(parse_edge_list("3\n0 3\n"), Err(crate::Error::Parse { line: 2, .. })));
    assert!(matches!(parse_edge_list("3\n1 1\n"), Err(crate::Error::Parse { line: 2, .. })));
    assert!(parse_edge_list("").is_err());
    assert!(parse_edge_list("x\n").is_err());
}

#[test]
fn mis_cap_is_enforced() {
    let g = Graph::empty(MAX_MIS_VERTICES + 1);
    assert!(matches!(independence_number(&g), Err(crate::Error::CapExceeded { .. })));
}
