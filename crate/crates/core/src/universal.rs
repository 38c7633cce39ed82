//! Stability of complex points, the canonical stable double-lift, and the
//! truncated image-finite universal models (the n-universal models when the
//! base is the dual of a free distributive lattice).

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::Mask;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poset::{free_dl_dual, FinitePoset, MonotoneMap};
use crate::varieties::VarietyMode;
use crate::vietoris::{build_complex, Complex};

/// Per-layer stability flags. A point is prestable when its root fiber one
/// layer up is a singleton, and stable when every point above it is
/// prestable. Flags at the last computed layer are unknown (`None`): they
/// would need one more layer, and a truncation must only ever
/// under-approximate the stable part.
#[derive(Clone, Debug)]
pub struct StabilityTable {
    prestable: Vec<Option<Vec<bool>>>,
    stable: Vec<Option<Vec<bool>>>,
}

impl StabilityTable {
    pub fn prestable(&self, layer: usize, element: usize) -> Option<bool> {
        self.prestable[layer].as_ref().map(|v| v[element])
    }

    pub fn stable(&self, layer: usize, element: usize) -> Option<bool> {
        self.stable[layer].as_ref().map(|v| v[element])
    }

    /// Mask of certified-stable elements of a layer, when known.
    pub fn stable_mask(&self, layer: usize, layer_len: usize) -> Option<Mask> {
        self.stable[layer]
            .as_ref()
            .map(|v| Mask::from_indices(layer_len, (0..layer_len).filter(|&i| v[i])))
    }
}

/// Compute stability flags for every layer with lookahead, and verify the
/// persistence law (the fiber over a stable point is itself stable) wherever
/// both sides are known.
pub fn stability_table(c: &Complex) -> Result<StabilityTable> {
    if c.layers().len() < 2 {
        return Err(Error::InsufficientDepth(
            "stability needs at least one layer of lookahead".to_string(),
        ));
    }
    let nlayers = c.layers().len();
    let mut prestable: Vec<Option<Vec<bool>>> = vec![None; nlayers];
    let mut stable: Vec<Option<Vec<bool>>> = vec![None; nlayers];

    for i in 0..nlayers - 1 {
        let here = c.layer(i).poset();
        let up = c.layer(i + 1);
        let root = up.root().unwrap();
        let mut fiber_count = vec![0usize; here.len()];
        for e in 0..up.len() {
            fiber_count[root.apply(e)] += 1;
        }
        let pre: Vec<bool> = fiber_count.iter().map(|&k| k == 1).collect();
        let st: Vec<bool> = (0..here.len())
            .map(|x| here.up_cone(x).iter().all(|y| pre[y]))
            .collect();
        prestable[i] = Some(pre);
        stable[i] = Some(st);
    }

    // Persistence: the unique fiber point over a stable point is stable.
    for i in 0..nlayers.saturating_sub(2) {
        let st_here = stable[i].as_ref().unwrap();
        let st_up = stable[i + 1].as_ref().unwrap();
        let up = c.layer(i + 1);
        let root = up.root().unwrap();
        for (e, up_stable) in st_up.iter().enumerate() {
            if st_here[root.apply(e)] && !up_stable {
                return Err(Error::InternalInvariant(
                    "fiber over a stable point is not stable".to_string(),
                ));
            }
        }
    }

    Ok(StabilityTable { prestable, stable })
}

/// Result of the canonical double lift.
#[derive(Clone, Debug)]
pub struct Bullet {
    /// Index of the lifted element in layer `i + 2`.
    pub element: usize,
    /// Stability flag when the complex is deep enough to certify it.
    pub stable: Option<bool>,
}

/// The canonical stable double-lift of `x` at layer `i`: the element of
/// layer `i + 2` whose members are the up-cones of the points above `x`.
/// Its double root is `x`; with enough lookahead it is certified stable.
pub fn bullet_embed(c: &Complex, layer: usize, x: usize, table: &StabilityTable) -> Result<Bullet> {
    if layer + 2 > c.depth() {
        return Err(Error::InsufficientDepth(format!(
            "double lift from layer {layer} needs depth {}",
            layer + 2
        )));
    }
    let here = c.layer(layer).poset();
    let up = c.layer(layer + 1);
    let mut members = Mask::empty(up.len());
    for y in here.up_cone(x).iter() {
        let cone = here.up_cone(y).clone();
        let e = up.element_with_provenance(&cone).ok_or_else(|| {
            Error::MissingElement(format!(
                "up-cone of {} was filtered out of layer {}",
                here.name(y),
                layer + 1
            ))
        })?;
        members.insert(e);
    }
    let element = c
        .layer(layer + 2)
        .element_with_provenance(&members)
        .ok_or_else(|| {
            Error::MissingElement(format!(
                "double lift of {} was filtered out of layer {}",
                here.name(x),
                layer + 2
            ))
        })?;
    let r2 = c.layer(layer + 2).root().unwrap();
    let r1 = c.layer(layer + 1).root().unwrap();
    if r1.apply(r2.apply(element)) != x {
        return Err(Error::InternalInvariant(
            "double lift does not root at its origin".to_string(),
        ));
    }
    Ok(Bullet {
        element,
        stable: table.stable(layer + 2, element),
    })
}

/// The depth-`d` truncation of the image-finite universal construction: the
/// poset of certified-stable points of layer `d`, with the induced order.
/// Builds an unrestricted complex to depth `d + 2` internally.
pub fn universal_model(base: &FinitePoset, depth: usize, caps: &Caps) -> Result<FinitePoset> {
    let terminal = MonotoneMap::terminal(base);
    let complex = build_complex(base, &[terminal], depth + 2, VarietyMode::Ha, caps)
        .map_err(|a| a.error)?;
    let table = stability_table(&complex)?;
    let mask = table
        .stable_mask(depth, complex.layer(depth).len())
        .ok_or_else(|| Error::InsufficientDepth("stability unknown at the requested depth".to_string()))?;
    let (sub, _) = complex.layer(depth).poset().induced(&mask);
    Ok(sub)
}

/// `universal_model` over the dual of the free distributive lattice on `n`
/// generators.
pub fn n_universal_model(n: usize, depth: usize, caps: &Caps) -> Result<FinitePoset> {
    let (base, _) = free_dl_dual(n, caps)?;
    universal_model(&base, depth, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_isomorphic;

    fn terminal_complex(base: &FinitePoset, depth: usize, caps: &Caps) -> Complex {
        build_complex(
            base,
            &[MonotoneMap::terminal(base)],
            depth,
            VarietyMode::Ha,
            caps,
        )
        .unwrap()
    }

    #[test]
    fn discrete_bases_are_everywhere_stable() {
        let caps = Caps::default();
        let base = FinitePoset::antichain(3);
        let complex = terminal_complex(&base, 3, &caps);
        let table = stability_table(&complex).unwrap();
        for i in 0..=2 {
            for e in 0..complex.layer(i).len() {
                assert_eq!(table.stable(i, e), Some(true));
            }
        }
        assert_eq!(table.stable(3, 0), None);
    }

    #[test]
    fn two_chain_stability_pattern() {
        let caps = Caps::default();
        let base = FinitePoset::chain(2);
        let complex = terminal_complex(&base, 3, &caps);
        let table = stability_table(&complex).unwrap();
        // Layer 0: the top is stable, the bottom is not even prestable.
        assert_eq!(table.stable(0, base.index_of("1").unwrap()), Some(true));
        assert_eq!(table.prestable(0, base.index_of("0").unwrap()), Some(false));
        // Layer 1: both singletons stable, the doubleton not.
        let v1 = complex.layer(1);
        for e in 0..v1.len() {
            let expect = v1.provenance().unwrap()[e].count() == 1;
            assert_eq!(table.stable(1, e), Some(expect));
        }
    }

    #[test]
    fn bullet_on_the_two_chain_is_the_stable_pair() {
        let caps = Caps::default();
        let base = FinitePoset::chain(2);
        let complex = terminal_complex(&base, 3, &caps);
        let table = stability_table(&complex).unwrap();
        let bottom = base.index_of("0").unwrap();
        let bullet = bullet_embed(&complex, 0, bottom, &table).unwrap();
        // Members are the up-cones of 0 and 1: the {0,1} and {1} elements.
        let members = &complex.layer(2).provenance().unwrap()[bullet.element];
        assert_eq!(members.count(), 2);
        assert_eq!(bullet.stable, Some(true));
        // Maximal points double-lift to singleton threads.
        let top = base.index_of("1").unwrap();
        let bullet = bullet_embed(&complex, 0, top, &table).unwrap();
        assert_eq!(
            complex.layer(2).provenance().unwrap()[bullet.element].count(),
            1
        );
    }

    #[test]
    fn bullet_on_discrete_base_is_singleton_of_singleton() {
        let caps = Caps::default();
        let base = FinitePoset::antichain(2);
        let complex = terminal_complex(&base, 2, &caps);
        let table = stability_table(&complex).unwrap();
        for x in 0..2 {
            let b = bullet_embed(&complex, 0, x, &table).unwrap();
            assert_eq!(
                complex.layer(2).provenance().unwrap()[b.element].count(),
                1
            );
        }
    }

    #[test]
    fn universal_model_of_antichain_is_the_antichain() {
        let caps = Caps::default();
        let base = FinitePoset::antichain(3);
        for d in 0..=2 {
            let m = universal_model(&base, d, &caps).unwrap();
            assert!(is_isomorphic(&m, &base, &caps).unwrap().is_some());
        }
    }

    #[test]
    fn ladder_truncations_grow() {
        let caps = Caps {
            layer_base: 64,
            step_nodes: 10_000_000,
            ..Caps::default()
        };
        let sizes: Vec<usize> = (0..=3)
            .map(|d| n_universal_model(1, d, &caps).unwrap().len())
            .collect();
        assert_eq!(sizes[0], 1);
        assert_eq!(sizes[1], 2);
        assert_eq!(sizes[2], 3);
        assert!(sizes[3] > sizes[2]);
    }

    #[test]
    fn depth_guard() {
        let caps = Caps::default();
        let base = FinitePoset::chain(2);
        let complex = terminal_complex(&base, 1, &caps);
        let table = stability_table(&complex).unwrap();
        assert_eq!(
            bullet_embed(&complex, 0, 0, &table).unwrap_err().name(),
            "InsufficientDepth"
        );
    }
}
