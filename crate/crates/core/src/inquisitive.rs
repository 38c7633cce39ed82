//! The hyperspace machinery over discrete bases: the frame of nonempty
//! subsets under reverse inclusion, the maximum-preserving step, the
//! M-complex, and regular generation of upset algebras.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::birkhoff::{negation, upsets};
use crate::bits::Mask;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formula::generate_subalgebra;
use crate::poset::{FinitePoset, MonotoneMap};
use crate::varieties::VarietyMode;
use crate::vietoris::{base_layer, enumerate_rooted, layer_from_masks, Layer, StepFilter};

/// The poset of nonempty subsets of a point set under reverse inclusion,
/// with the data needed to work with it: each element's point set and the
/// index of each point's singleton.
#[derive(Clone, Debug)]
pub struct PowersetFrame {
    pub poset: FinitePoset,
    pub point_names: Vec<String>,
    /// Points of each frame element.
    pub point_sets: Vec<Mask>,
    /// Frame element index of each point's singleton.
    pub singleton_of: Vec<usize>,
}

impl PowersetFrame {
    pub fn over(point_names: &[String], caps: &Caps) -> Result<Self> {
        let n = point_names.len();
        if n == 0 {
            return Err(Error::SizeLimitExceeded("empty point set".to_string()));
        }
        if n >= usize::BITS as usize || (1usize << n) - 1 > caps.product_size {
            return Err(Error::SizeLimitExceeded(format!(
                "2^{n} - 1 subsets (cap {})",
                caps.product_size
            )));
        }
        let size = (1usize << n) - 1;
        let mut names = Vec::with_capacity(size);
        let mut point_sets = Vec::with_capacity(size);
        for bits in 1..=size {
            let members: Vec<&str> = (0..n)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| point_names[i].as_str())
                .collect();
            names.push(format!("{{{}}}", members.join(",")));
            point_sets.push(Mask::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1)));
        }
        let mut pairs = Vec::new();
        for a in 1..=size {
            for b in 1..=size {
                // Reverse inclusion: a <= b iff b is a subset of a.
                if a != b && b & a == b {
                    pairs.push((a - 1, b - 1));
                }
            }
        }
        let poset = FinitePoset::new(names, &pairs)?;
        // The singleton {i} is the element built from bits == 1 << i.
        let singleton_of = (0..n).map(|i| (1usize << i) - 1).collect();
        Ok(PowersetFrame {
            poset,
            point_names: point_names.to_vec(),
            point_sets,
            singleton_of,
        })
    }

    /// `[u]` = elements whose points all lie in `u` (an upset of the frame).
    pub fn bracket(&self, u: &Mask) -> Mask {
        Mask::from_indices(
            self.poset.len(),
            (0..self.poset.len()).filter(|&c| self.point_sets[c].is_subset_of(u)),
        )
    }
}

/// The frame of nonempty subsets of an `n`-point set, points named
/// "a", "b", ... and elements like "{a,b}", ordered by reverse inclusion.
pub fn medvedev_frame(n: usize, caps: &Caps) -> Result<FinitePoset> {
    Ok(medvedev_structure(n, caps)?.poset)
}

pub fn medvedev_structure(n: usize, caps: &Caps) -> Result<PowersetFrame> {
    if n > 24 {
        return Err(Error::SizeLimitExceeded(format!("{n} points")));
    }
    let names: Vec<String> = (0..n)
        .map(|i| {
            let c = (b'a' + i as u8) as char;
            c.to_string()
        })
        .collect();
    PowersetFrame::over(&names, caps)
}

/// The maximum-preserving step over a discrete base: rooted subsets of the
/// subset frame that contain the singleton of every point of every member.
/// Returns the layer (index 1) over the frame, plus the frame itself.
pub fn vmax_step(x: &FinitePoset, caps: &Caps) -> Result<(PowersetFrame, Layer)> {
    if !x.is_antichain() {
        return Err(Error::NotDiscrete(
            "the maximum-preserving step is defined over discrete bases".to_string(),
        ));
    }
    let frame = PowersetFrame::over(x.element_names(), caps)?;
    let n = frame.poset.len();
    let requires: Vec<Mask> = (0..n)
        .map(|c| {
            Mask::from_indices(
                n,
                frame.point_sets[c].iter().map(|p| frame.singleton_of[p]),
            )
        })
        .collect();
    let filter = StepFilter {
        pair_ok: None,
        requires_above: Some(requires),
    };
    let masks = enumerate_rooted(&frame.poset, &[], &filter, caps)?;
    let layer = layer_from_masks(1, &frame.poset, masks, VarietyMode::Ha);
    Ok((frame, layer))
}

/// The M-complex over a discrete base: layer 0 is the full subset frame,
/// layer 1 the maximum-preserving step, and each further layer the plain
/// rooted relatively-open step over the previous root map.
pub struct MComplex {
    pub frame: PowersetFrame,
    layers: Vec<Layer>,
}

impl MComplex {
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i]
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }
}

pub fn m_complex(x: &FinitePoset, depth: usize, caps: &Caps) -> Result<MComplex> {
    let (frame, first) = vmax_step(x, caps)?;
    let mut layers = vec![base_layer(
        frame.poset.clone(),
        vec![MonotoneMap::terminal(&frame.poset)],
        VarietyMode::Ha,
    )];
    if depth >= 1 {
        layers.push(first);
    }
    for i in 2..=depth {
        let prev = layers[i - 1].poset().clone();
        if prev.len() > caps.layer_base {
            return Err(Error::SizeLimitExceeded(format!(
                "M-complex layer {} has {} elements (cap {})",
                i - 1,
                prev.len(),
                caps.layer_base
            )));
        }
        let root = layers[i - 1].root().unwrap().clone();
        let masks = enumerate_rooted(&prev, &[&root], &StepFilter::none(), caps)?;
        layers.push(layer_from_masks(i, &prev, masks, VarietyMode::Ha));
    }
    // Layerwise maximum census: the maxima of every layer are in bijection
    // with the base points.
    for layer in &layers {
        let census = layer.poset().max_elements().count();
        if census != x.len() {
            return Err(Error::InternalInvariant(format!(
                "layer {} has {census} maximal elements, expected {}",
                layer.index(),
                x.len()
            )));
        }
    }
    Ok(MComplex { frame, layers })
}

/// Upsets fixed by double negation.
pub fn regular_elements(p: &FinitePoset, caps: &Caps) -> Result<Vec<Mask>> {
    let lattice = upsets(p, caps)?;
    let mut out = Vec::new();
    for u in lattice.members() {
        let nn = negation(p, &negation(p, u)?)?;
        if nn == *u {
            out.push(u.clone());
        }
    }
    Ok(out)
}

/// Is the upset algebra generated by its regular elements? Closes the
/// regulars under meets, joins, implications and bounds and compares with
/// the full lattice.
pub fn is_regularly_generated(p: &FinitePoset, caps: &Caps) -> Result<bool> {
    let lattice = upsets(p, caps)?;
    let gens: Vec<(String, Mask)> = regular_elements(p, caps)?
        .into_iter()
        .enumerate()
        .map(|(i, m)| (format!("r{i}"), m))
        .collect();
    let closure = generate_subalgebra(&lattice, &gens, None, caps)?;
    Ok(closure.is_complete())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medvedev_shapes() {
        let caps = Caps::default();
        assert_eq!(medvedev_frame(1, &caps).unwrap().len(), 1);
        let m2 = medvedev_frame(2, &caps).unwrap();
        assert_eq!(m2.len(), 3);
        // Bottom {a,b} below the two singletons.
        let bottom = m2.index_of("{a,b}").unwrap();
        assert_eq!(m2.up_cone(bottom).count(), 3);
        let m3 = medvedev_frame(3, &caps).unwrap();
        assert_eq!(m3.len(), 7);
        assert_eq!(m3.max_elements().count(), 3);
    }

    #[test]
    fn vmax_over_two_points() {
        let caps = Caps::default();
        let x = FinitePoset::antichain(2);
        let (frame, layer) = vmax_step(&x, &caps).unwrap();
        assert_eq!(layer.len(), 3);
        let sizes: Vec<usize> = layer
            .provenance()
            .unwrap()
            .iter()
            .map(|m| m.count())
            .collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 3]);
        // Each principal up-cone of a singleton is a member.
        for p in 0..2 {
            let single = frame.singleton_of[p];
            let cone = frame.poset.up_cone(single).clone();
            assert!(layer.element_with_provenance(&cone).is_some());
        }
    }

    #[test]
    fn vmax_rejects_non_discrete() {
        let caps = Caps::default();
        assert_eq!(
            vmax_step(&FinitePoset::chain(2), &caps).unwrap_err().name(),
            "NotDiscrete"
        );
    }

    #[test]
    fn m_complex_two_points() {
        let caps = Caps::default();
        let x = FinitePoset::antichain(2);
        let mc = m_complex(&x, 2, &caps).unwrap();
        assert_eq!(mc.layer(0).len(), 3);
        assert_eq!(mc.layer(1).len(), 3);
        assert_eq!(mc.layer(2).len(), 3);
        for layer in mc.layers() {
            assert_eq!(layer.poset().max_elements().count(), 2);
        }
    }

    #[test]
    fn m_complex_singleton_base() {
        let caps = Caps::default();
        let x = FinitePoset::antichain(1);
        let mc = m_complex(&x, 3, &caps).unwrap();
        assert!(mc.layers().iter().all(|l| l.len() == 1));
    }

    #[test]
    fn regular_elements_cases() {
        let caps = Caps::default();
        // Discrete: everything is regular.
        let anti = FinitePoset::antichain(2);
        assert_eq!(regular_elements(&anti, &caps).unwrap().len(), 4);
        // The 2-chain: only the bounds.
        let chain = FinitePoset::chain(2);
        let regs = regular_elements(&chain, &caps).unwrap();
        assert_eq!(regs.len(), 2);
        // Medvedev(2): the bracket sets are regular.
        let m = medvedev_structure(2, &caps).unwrap();
        let regs = regular_elements(&m.poset, &caps).unwrap();
        for bits in 0..4usize {
            let u = Mask::from_indices(2, (0..2).filter(|i| bits >> i & 1 == 1));
            assert!(regs.contains(&m.bracket(&u)));
        }
    }

    #[test]
    fn regular_generation_cases() {
        let caps = Caps::default();
        assert!(is_regularly_generated(&FinitePoset::antichain(3), &caps).unwrap());
        assert!(!is_regularly_generated(&FinitePoset::chain(2), &caps).unwrap());
        for n in 1..=3 {
            let m = medvedev_frame(n, &caps).unwrap();
            assert!(is_regularly_generated(&m, &caps).unwrap(), "frame size {n}");
        }
    }
}
