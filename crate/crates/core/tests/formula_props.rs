//! Parser round trips under random formulas, closure bookkeeping of the
//! generated subalgebras, and the three-way coherence of the chain oracle.

use esakia_forge_core::birkhoff::upsets;
use esakia_forge_core::bits::Mask;
use esakia_forge_core::caps::Caps;
use esakia_forge_core::formula::{
    equivalent_on_frame, generate_subalgebra, godel_chain_oracle, implication_rank, parse, print,
    Formula,
};
use esakia_forge_core::poset::{free_dl_dual, FinitePoset, MonotoneMap};
use esakia_forge_core::varieties::lc_free;
use proptest::prelude::*;

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bottom),
        Just(Formula::Top),
        "[pqr]".prop_map(Formula::Var),
    ];
    leaf.prop_recursive(5, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::And(Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::Or(Box::new(l), Box::new(r))),
            (inner.clone(), inner)
                .prop_map(|(l, r)| Formula::Implies(Box::new(l), Box::new(r))),
        ]
    })
}

proptest! {
    #[test]
    fn print_parse_is_identity(f in arb_formula()) {
        let text = print(&f);
        prop_assert_eq!(parse(&text).unwrap(), f);
    }

    #[test]
    fn rank_is_monotone_under_connectives(f in arb_formula(), g in arb_formula()) {
        let rf = implication_rank(&f);
        let rg = implication_rank(&g);
        let both = rf.max(rg);
        prop_assert_eq!(
            implication_rank(&Formula::And(Box::new(f.clone()), Box::new(g.clone()))),
            both
        );
        prop_assert_eq!(
            implication_rank(&Formula::Implies(Box::new(f), Box::new(g))),
            both + 1
        );
    }
}

#[test]
fn oracle_coherence_triangle() {
    let caps = Caps::default();
    // Three independent computations of the one-generator count.
    let oracle = godel_chain_oracle(1, 3, &caps).unwrap();
    assert_eq!(oracle.count(), 6);
    let (two, gens) = free_dl_dual(1, &caps).unwrap();
    let free = lc_free(&two, &[MonotoneMap::terminal(&two)], &caps).unwrap();
    let lattice = upsets(&free.stage, &caps).unwrap();
    assert_eq!(lattice.len(), 6);
    let to_base = free.complex.root_to(2, 0);
    let named = vec![("g0".to_string(), to_base.preimage_of_mask(&gens[0]))];
    let closure = generate_subalgebra(&lattice, &named, None, &caps).unwrap();
    assert!(closure.is_complete());
    assert_eq!(closure.len(), 6);
}

#[test]
fn subalgebra_generation_is_monotone_and_idempotent() {
    let caps = Caps::default();
    let v = FinitePoset::from_named(
        vec!["a".into(), "b".into(), "c".into()],
        &[("c".into(), "a".into()), ("c".into(), "b".into())],
    )
    .unwrap();
    let lattice = upsets(&v, &caps).unwrap();
    let a = v.mask_of_names(&["a"]).unwrap();
    let b = v.mask_of_names(&["b"]).unwrap();
    let small = generate_subalgebra(&lattice, &[("a".to_string(), a.clone())], None, &caps)
        .unwrap();
    let big = generate_subalgebra(
        &lattice,
        &[("a".to_string(), a), ("b".to_string(), b)],
        None,
        &caps,
    )
    .unwrap();
    for (m, _, _) in small.members() {
        assert!(big.members().iter().any(|(v, _, _)| v == m));
    }
    // Idempotent: regenerating from the closure's members adds nothing.
    let regen_gens: Vec<(String, Mask)> = big
        .members()
        .iter()
        .enumerate()
        .map(|(i, (m, _, _))| (format!("m{i}"), m.clone()))
        .collect();
    let regen = generate_subalgebra(&lattice, &regen_gens, None, &caps).unwrap();
    assert_eq!(regen.len(), big.len());
    assert_eq!(regen.stages_used(), 0);
}

#[test]
fn rank_cap_truncates_saturation() {
    let caps = Caps::default();
    let chain = FinitePoset::chain(2);
    let lattice = upsets(&chain, &caps).unwrap();
    let gen = chain.mask_of_names(&["1"]).unwrap();
    let capped = generate_subalgebra(&lattice, &[("p".to_string(), gen)], Some(0), &caps)
        .unwrap();
    assert_eq!(capped.len(), 3);
    assert!(!capped.is_complete() || lattice.len() == 3);
}

#[test]
fn stage_bookkeeping_bounds_witness_rank() {
    let caps = Caps::default();
    let v = FinitePoset::from_named(
        vec!["a".into(), "b".into(), "c".into()],
        &[("c".into(), "a".into()), ("c".into(), "b".into())],
    )
    .unwrap();
    let lattice = upsets(&v, &caps).unwrap();
    let a = v.mask_of_names(&["a"]).unwrap();
    let alg = generate_subalgebra(&lattice, &[("a".to_string(), a)], None, &caps).unwrap();
    for (_, stage, witness) in alg.members() {
        assert!(*stage <= implication_rank(witness));
    }
}

#[test]
fn double_negation_collapse_is_frame_dependent() {
    let caps = Caps::default();
    let p = parse("p").unwrap();
    let nnp = parse("~~p").unwrap();
    assert!(equivalent_on_frame(&p, &nnp, &FinitePoset::antichain(3), &caps).unwrap());
    assert!(!equivalent_on_frame(&p, &nnp, &FinitePoset::chain(3), &caps).unwrap());
}
