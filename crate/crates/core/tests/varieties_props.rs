//! Variety-step laws: Boolean lattices from the singleton step, the KC and
//! LC filter characterizations, KC root surjectivity over directed bases,
//! linearised stabilization, and freeness of the stabilized stage at desk
//! scale.

use esakia_forge_core::birkhoff::{heyting_implication, negation, upsets, validates};
use esakia_forge_core::bits::Mask;
use esakia_forge_core::caps::Caps;
use esakia_forge_core::formula::{generate_subalgebra, parse};
use esakia_forge_core::poset::{enumerate_posets, free_dl_dual, FinitePoset, MonotoneMap};
use esakia_forge_core::varieties::{
    boolean_step, bool_filter_characterization, kc_filter_characterization,
    lc_filter_characterization, lc_free, stabilization_check, VarietyMode,
};
use esakia_forge_core::vietoris::build_complex;

#[test]
fn boolean_step_gives_boolean_lattices() {
    let caps = Caps::default();
    for n in 1..=4 {
        for p in enumerate_posets(n) {
            let layer = boolean_step(&p);
            let lattice = upsets(layer.poset(), &caps).unwrap();
            assert_eq!(lattice.len(), 1 << p.len());
            for u in lattice.members() {
                // Complemented: U \/ ~U is the carrier.
                let neg = negation(layer.poset(), u).unwrap();
                assert_eq!(u.union(&neg), lattice.top());
                // Implication is classical there.
                for v in lattice.members() {
                    let imp = heyting_implication(layer.poset(), u, v).unwrap();
                    assert_eq!(imp, u.complement().union(v));
                }
            }
        }
    }
}

#[test]
fn filter_characterizations_up_to_three_elements() {
    // The acceptance suite covers bases of four elements.
    let caps = Caps::default();
    for n in 1..=3 {
        for p in enumerate_posets(n) {
            let complex = build_complex(
                &p,
                &[MonotoneMap::terminal(&p)],
                2,
                VarietyMode::Ha,
                &caps,
            )
            .unwrap();
            assert!(
                kc_filter_characterization(complex.layer(2), complex.layer(1), &caps).unwrap()
            );
            assert!(lc_filter_characterization(complex.layer(2), &caps).unwrap());
            assert!(bool_filter_characterization(complex.layer(1), &caps).unwrap());
        }
    }
}

#[test]
fn kc_projections_to_directed_bases_are_surjective() {
    // Stagewise root surjectivity fails in the restricted tower (over the
    // diamond, the three-element rooted subset has an empty well-directed
    // fiber), but the composite projections onto a directed base stay
    // surjective, which is what embeds the base algebra.
    let caps = Caps {
        layer_base: 64,
        step_nodes: 10_000_000,
        ..Caps::default()
    };
    for n in 1..=4 {
        for p in enumerate_posets(n) {
            if !p.is_directed() || p.root().is_none() {
                continue;
            }
            let depth = if n <= 3 { 3 } else { 2 };
            let complex = build_complex(
                &p,
                &[MonotoneMap::terminal(&p)],
                depth,
                VarietyMode::Kc,
                &caps,
            )
            .unwrap();
            for i in 1..=depth {
                assert!(
                    complex.root_to(i, 0).is_surjective(),
                    "projection from stage {i} over {p:?}"
                );
            }
        }
    }
}

#[test]
fn kc_stagewise_surjectivity_fails_on_the_diamond() {
    let caps = Caps {
        layer_base: 64,
        step_nodes: 10_000_000,
        ..Caps::default()
    };
    let diamond = FinitePoset::from_named(
        vec!["bot".into(), "l".into(), "r".into(), "top".into()],
        &[
            ("bot".into(), "l".into()),
            ("bot".into(), "r".into()),
            ("l".into(), "top".into()),
            ("r".into(), "top".into()),
        ],
    )
    .unwrap();
    assert!(diamond.is_directed());
    let complex = build_complex(
        &diamond,
        &[MonotoneMap::terminal(&diamond)],
        2,
        VarietyMode::Kc,
        &caps,
    )
    .unwrap();
    assert!(!complex.layer(2).root().unwrap().is_surjective());
    assert!(complex.root_to(2, 0).is_surjective());
}

#[test]
fn lc_stabilization_up_to_three_elements() {
    let caps = Caps::default();
    let lc_axiom = parse("(p->q)|(q->p)").unwrap();
    for n in 1..=3 {
        for p in enumerate_posets(n) {
            let free = lc_free(&p, &[MonotoneMap::terminal(&p)], &caps).unwrap();
            assert!(free.stage.is_prelinear());
            assert!(validates(&free.stage, &lc_axiom, &caps).unwrap());
        }
    }
}

#[test]
fn stabilization_criterion_up_to_four_elements() {
    let caps = Caps::default();
    for n in 1..=4 {
        for p in enumerate_posets(n) {
            let verdict = stabilization_check(&p, &caps).unwrap();
            assert!(verdict.consistent(), "{p:?}");
        }
    }
}

#[test]
fn stabilized_stage_is_free_at_desk_scale() {
    // The upset lattice of the stabilized stage over 2^n is generated by the
    // pulled-back generator upsets, everything by implication rank 2.
    let caps = Caps {
        upset_base: 64,
        ..Caps::roomy()
    };
    for n in 1..=2 {
        let (base, gens) = free_dl_dual(n, &caps).unwrap();
        let free = lc_free(&base, &[MonotoneMap::terminal(&base)], &caps).unwrap();
        let stage_layer = free.complex.layer(2);
        let to_base = free.complex.root_to(2, 0);
        let lattice = upsets(stage_layer.poset(), &caps).unwrap();
        let named: Vec<(String, Mask)> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("g{i}"), to_base.preimage_of_mask(g)))
            .collect();
        let closure = generate_subalgebra(&lattice, &named, None, &caps).unwrap();
        assert!(closure.is_complete(), "{n} generators");
        assert!(closure.stages_used() <= 2);
        for (_, stage, witness) in closure.members() {
            assert!(*stage <= esakia_forge_core::formula::implication_rank(witness));
        }
    }
}

#[test]
fn singleton_collapse_in_every_mode() {
    let caps = Caps::default();
    let point = FinitePoset::singleton();
    for mode in [
        VarietyMode::Ha,
        VarietyMode::Bool,
        VarietyMode::Kc,
        VarietyMode::Lc,
    ] {
        let complex =
            build_complex(&point, &[MonotoneMap::terminal(&point)], 3, mode, &caps).unwrap();
        assert!(complex.layers().iter().all(|l| l.len() == 1));
    }
}
