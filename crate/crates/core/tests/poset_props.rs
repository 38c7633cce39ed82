//! Order-theoretic properties checked exhaustively at small sizes, plus
//! randomized isomorphism checks against a brute-force oracle.

use esakia_forge_core::bits::Mask;
use esakia_forge_core::caps::Caps;
use esakia_forge_core::poset::{
    enumerate_monotone_maps, enumerate_posets, is_isomorphic, product, FinitePoset, MonotoneMap,
};
use proptest::prelude::*;

fn all_subsets(n: usize) -> Vec<Mask> {
    (0..1u32 << n)
        .map(|bits| Mask::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1)))
        .collect()
}

#[test]
fn closures_are_closure_operators() {
    for n in 1..=4 {
        for p in enumerate_posets(n) {
            let subsets = all_subsets(p.len());
            for s in &subsets {
                let up = p.up_closure(s);
                assert!(s.is_subset_of(&up), "extensive");
                assert_eq!(p.up_closure(&up), up, "idempotent");
                let down = p.down_closure(s);
                assert!(s.is_subset_of(&down));
                assert_eq!(p.down_closure(&down), down);
                for t in &subsets {
                    if s.is_subset_of(t) {
                        assert!(p.up_closure(s).is_subset_of(&p.up_closure(t)), "monotone");
                        assert!(p.down_closure(s).is_subset_of(&p.down_closure(t)));
                    }
                }
            }
        }
    }
}

#[test]
fn product_projections_are_p_morphisms() {
    let caps = Caps::default();
    for n in 1..=3 {
        for p in enumerate_posets(n) {
            for m in 1..=3 {
                for q in enumerate_posets(m) {
                    let (_, pi1, pi2) = product(&p, &q, &caps).unwrap();
                    assert!(pi1.is_p_morphism());
                    assert!(pi2.is_p_morphism());
                }
            }
        }
    }
}

#[test]
fn hasse_closure_reconstructs_the_order() {
    for n in 1..=5 {
        for p in enumerate_posets(n) {
            let edges = p.hasse_edges();
            let rebuilt = FinitePoset::new(
                p.element_names().to_vec(),
                &edges,
            )
            .unwrap();
            assert_eq!(rebuilt, p);
        }
    }
}

fn brute_force_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| p.leq(a, b) == q.leq(perm[a], perm[b]))
        });
        if ok {
            return true;
        }
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

#[test]
fn iso_matches_brute_force_on_small_posets() {
    let caps = Caps::default();
    let reps: Vec<FinitePoset> = (1..=4).flat_map(enumerate_posets).collect();
    for p in &reps {
        for q in &reps {
            let got = is_isomorphic(p, q, &caps).unwrap().is_some();
            assert_eq!(got, brute_force_isomorphic(p, q));
        }
    }
}

#[test]
fn iso_is_reflexive_and_symmetric() {
    let caps = Caps::default();
    for n in 1..=4 {
        for p in enumerate_posets(n) {
            let w = is_isomorphic(&p, &p, &caps).unwrap().unwrap();
            assert!(w.forward.is_order_embedding());
            // Shuffle the element order and ask again.
            let shuffled = {
                let names: Vec<String> =
                    p.element_names().iter().rev().cloned().collect();
                let mut pairs = Vec::new();
                let n = p.len();
                for a in 0..n {
                    for b in 0..n {
                        if a != b && p.leq(a, b) {
                            pairs.push((n - 1 - a, n - 1 - b));
                        }
                    }
                }
                FinitePoset::new(names, &pairs).unwrap()
            };
            let w = is_isomorphic(&p, &shuffled, &caps).unwrap().unwrap();
            // Symmetric: the backward witness is an isomorphism too.
            for i in 0..p.len() {
                assert_eq!(w.backward.apply(w.forward.apply(i)), i);
            }
        }
    }
}

#[test]
fn monotone_map_enumeration_matches_raw_filter() {
    for n in 1..=3 {
        for p in enumerate_posets(n) {
            for m in 1..=2 {
                for q in enumerate_posets(m) {
                    let fast = enumerate_monotone_maps(&p, &q).len();
                    let mut slow = 0;
                    let total = q.len().pow(p.len() as u32);
                    for code in 0..total {
                        let mut c = code;
                        let map: Vec<usize> = (0..p.len())
                            .map(|_| {
                                let v = c % q.len();
                                c /= q.len();
                                v
                            })
                            .collect();
                        if MonotoneMap::new(p.clone(), q.clone(), map).is_ok() {
                            slow += 1;
                        }
                    }
                    assert_eq!(fast, slow);
                }
            }
        }
    }
}

/// Random poset of size `n` from a seed: a strict upper-triangular relation,
/// transitively closed by construction order.
fn seeded_poset(n: usize, seed: u64) -> FinitePoset {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 33
    };
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if next() % 3 == 0 {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::new(names, &pairs).unwrap()
}

proptest! {
    #[test]
    fn iso_agrees_with_brute_force_on_random_pairs(
        n in 1usize..=6,
        seed_a in 0u64..1000,
        seed_b in 0u64..1000,
    ) {
        let caps = Caps::default();
        let p = seeded_poset(n, seed_a);
        let q = seeded_poset(n, seed_b);
        let got = is_isomorphic(&p, &q, &caps).unwrap().is_some();
        prop_assert_eq!(got, brute_force_isomorphic(&p, &q));
    }

    #[test]
    fn up_closure_distributes_over_union(n in 1usize..=5, seed in 0u64..1000, s in 0u32..32, t in 0u32..32) {
        let p = seeded_poset(n, seed);
        let a = Mask::from_indices(n, (0..n).filter(|i| s >> i & 1 == 1));
        let b = Mask::from_indices(n, (0..n).filter(|i| t >> i & 1 == 1));
        let lhs = p.up_closure(&a.union(&b));
        let rhs = p.up_closure(&a).union(&p.up_closure(&b));
        prop_assert_eq!(lhs, rhs);
    }
}
