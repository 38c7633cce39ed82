//! Variety-restricted steps: the Boolean singleton step, well-directedness
//! for the weak-excluded-middle variety, linearised steps with their
//! two-stage stabilization for the Goedel-Dummett variety, and the antichain
//! stabilization criterion.


use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::birkhoff::upsets;
use crate::bits::Mask;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poset::{self, FinitePoset, IsoWitness, MonotoneMap};
use crate::vietoris::{
    base_layer, build_complex, enumerate_rooted, layer_from_masks, Complex, Layer, StepFilter,
};

/// Which subvariety a complex is built for, fixing the stage from which the
/// extra filter applies: singletons from stage 1, well-directedness and
/// chains from stage 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyMode {
    Ha,
    Bool,
    Kc,
    Lc,
}

impl VarietyMode {
    pub fn restriction_start(self) -> Option<usize> {
        match self {
            VarietyMode::Ha => None,
            VarietyMode::Bool => Some(1),
            VarietyMode::Kc | VarietyMode::Lc => Some(2),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            VarietyMode::Ha => "ha",
            VarietyMode::Bool => "bool",
            VarietyMode::Kc => "kc",
            VarietyMode::Lc => "lc",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "ha" => Some(VarietyMode::Ha),
            "bool" => Some(VarietyMode::Bool),
            "kc" => Some(VarietyMode::Kc),
            "lc" => Some(VarietyMode::Lc),
            _ => None,
        }
    }
}

/// The Boolean step: the singletons of `p` with discrete order, isomorphic
/// to `(p, =)`.
pub fn boolean_step(p: &FinitePoset) -> Layer {
    let masks: Vec<(usize, Mask)> = (0..p.len())
        .map(|i| (i, Mask::singleton(p.len(), i)))
        .collect();
    layer_from_masks(1, p, masks, VarietyMode::Bool)
}

/// Well-directedness of a stage-2 element given as the subsets its members
/// literally are: for every ordered pair `(d, d')` of members,
/// `up(d) /\ down(d')` is nonempty, with closures taken in `ground`.
pub fn is_well_directed(members: &[Mask], ground: &FinitePoset) -> bool {
    let ups: Vec<Mask> = members.iter().map(|m| ground.up_closure(m)).collect();
    let downs: Vec<Mask> = members.iter().map(|m| ground.down_closure(m)).collect();
    ups.iter()
        .all(|u| downs.iter().all(|d| u.intersects(d)))
}

/// The member subsets (over the ground poset two layers down) of one element
/// of a stage `>= 2` layer.
pub fn member_sets(stage: &Layer, below: &Layer, element: usize) -> Vec<Mask> {
    let prov = stage.provenance().expect("stage >= 1 has provenance");
    let inner = below.provenance().expect("stage >= 2 sits over a step layer");
    prov[element].iter().map(|d| inner[d].clone()).collect()
}

/// Does the upset-filter membership test agree with well-directedness on
/// every element of a stage-2 layer? For each element `C` and each upset `U`
/// of the ground poset the filter asks: all members of `C` avoid `U`, or all
/// members meet `U`.
pub fn kc_filter_characterization(stage2: &Layer, stage1: &Layer, caps: &Caps) -> Result<bool> {
    let ground = stage1
        .root()
        .ok_or_else(|| Error::IncompatibleMaps("stage 1 must be a step layer".to_string()))?
        .codomain();
    if stage2.root().map(|r| r.codomain()) != Some(stage1.poset()) {
        return Err(Error::IncompatibleMaps(
            "stage 2 does not sit over stage 1".to_string(),
        ));
    }
    let lattice = upsets(ground, caps)?;
    for c in 0..stage2.len() {
        let members = member_sets(stage2, stage1, c);
        let by_filter = lattice.members().iter().all(|u| {
            let all_avoid = members.iter().all(|m| !m.intersects(u));
            let all_meet = members.iter().all(|m| m.intersects(u));
            all_avoid || all_meet
        });
        if by_filter != is_well_directed(&members, ground) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is the element a chain in the ambient (previous-layer) order?
pub fn is_linearised(members: &Mask, ambient: &FinitePoset) -> bool {
    let elems: Vec<usize> = members.iter().collect();
    elems
        .iter()
        .all(|&a| elems.iter().all(|&b| ambient.comparable(a, b)))
}

/// Does membership in the prelinearity filter coincide with being a chain on
/// every element of a step layer? For upsets `U, V` of the ambient poset the
/// filter asks `C <= -U \/ V` or `C <= -V \/ U`.
pub fn lc_filter_characterization(stage: &Layer, caps: &Caps) -> Result<bool> {
    let ambient = stage
        .root()
        .ok_or_else(|| Error::IncompatibleMaps("expected a step layer".to_string()))?
        .codomain();
    let lattice = upsets(ambient, caps)?;
    let prov = stage.provenance().unwrap();
    for c in prov {
        let by_filter = lattice.members().iter().all(|u| {
            lattice.members().iter().all(|v| {
                let left = u.complement().union(v);
                let right = v.complement().union(u);
                c.is_subset_of(&left) || c.is_subset_of(&right)
            })
        });
        if by_filter != is_linearised(c, ambient) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does the excluded-middle filter coincide with being a singleton on every
/// element of a stage-1 layer? For each upset `U` of the base the filter
/// asks: all points of `C` lie in `U`, or all avoid it.
pub fn bool_filter_characterization(stage1: &Layer, caps: &Caps) -> Result<bool> {
    let base = stage1
        .root()
        .ok_or_else(|| Error::IncompatibleMaps("expected a step layer".to_string()))?
        .codomain();
    let lattice = upsets(base, caps)?;
    for c in stage1.provenance().unwrap() {
        let by_filter = lattice
            .members()
            .iter()
            .all(|u| c.is_subset_of(u) || !c.intersects(u));
        if by_filter != (c.count() == 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The stabilized linearised construction with its certificate.
pub struct LcFree {
    /// Depth-3 complex in `Lc` mode over the requested base.
    pub complex: Complex,
    /// The stabilized stage (layer 2), the dual of the free prelinear algebra.
    pub stage: FinitePoset,
    /// Root map of layer 3 as an isomorphism onto layer 2.
    pub stabilization: IsoWitness,
}

/// Build `V_1` (unrestricted), `V_2^L`, `V_3^L`, then certify that the stage
/// is prelinear and that the last root map is an isomorphism. A certificate
/// failure is an engine bug, reported as `StabilizationFailure`.
pub fn lc_free(base: &FinitePoset, witnesses: &[MonotoneMap], caps: &Caps) -> Result<LcFree> {
    let complex =
        build_complex(base, witnesses, 3, VarietyMode::Lc, caps).map_err(|a| a.error)?;
    let v2 = complex.layer(2).poset().clone();
    let v3 = complex.layer(3).poset();
    if !v2.is_prelinear() {
        return Err(Error::StabilizationFailure(
            "stage 2 of the linearised complex is not prelinear".to_string(),
        ));
    }
    let root = complex.layer(3).root().unwrap();
    if !(root.is_surjective() && root.is_order_embedding()) {
        return Err(Error::StabilizationFailure(
            "root map of stage 3 is not an isomorphism".to_string(),
        ));
    }
    let mut section = vec![0usize; v2.len()];
    for i in 0..v3.len() {
        section[root.apply(i)] = i;
    }
    let backward = root.clone();
    let forward = MonotoneMap::new(v2.clone(), v3.clone(), section)?;
    let stabilization = IsoWitness {
        forward,
        backward,
    };
    Ok(LcFree {
        complex,
        stage: v2,
        stabilization,
    })
}

/// Dual of the coproduct of two prelinear algebras: the stabilized
/// linearised stage over the product of their dual posets, with both
/// projections as witnesses.
pub fn godel_coproduct(p: &FinitePoset, q: &FinitePoset, caps: &Caps) -> Result<FinitePoset> {
    if !p.is_prelinear() {
        return Err(Error::NotPrelinear("left factor".to_string()));
    }
    if !q.is_prelinear() {
        return Err(Error::NotPrelinear("right factor".to_string()));
    }
    let (prod, pi_p, pi_q) = poset::product(p, q, caps)?;
    let free = lc_free(&prod, &[pi_p, pi_q], caps)?;
    Ok(free.stage)
}

/// Instance verdict for the antichain stabilization criterion.
#[derive(Clone, Debug)]
pub struct StabilizationVerdict {
    pub root_is_iso: bool,
    pub is_antichain: bool,
}

impl StabilizationVerdict {
    /// The criterion asserts the two flags agree on every poset.
    pub fn consistent(&self) -> bool {
        self.root_is_iso == self.is_antichain
    }
}

/// Does the root map of the first unrestricted step witness an isomorphism,
/// and is the base an antichain?
pub fn stabilization_check(base: &FinitePoset, caps: &Caps) -> Result<StabilizationVerdict> {
    let terminal = MonotoneMap::terminal(base);
    let refs = [&terminal];
    let masks = enumerate_rooted(base, &refs, &StepFilter::none(), caps)?;
    let layer = layer_from_masks(1, base, masks, VarietyMode::Ha);
    let root = layer.root().unwrap();
    Ok(StabilizationVerdict {
        root_is_iso: root.is_surjective() && root.is_order_embedding(),
        is_antichain: base.is_antichain(),
    })
}

/// Base layer constructor re-exported for building bespoke towers.
pub fn base_layer_for(base: FinitePoset, witnesses: Vec<MonotoneMap>) -> Layer {
    base_layer(base, witnesses, VarietyMode::Ha)
}
