//! The one-step construction that freely adds implications over a poset: for
//! an indexing map `g` (or several), the rooted `g`-open subsets under
//! reverse inclusion with their root map, iterated into a complex, and the
//! universal liftings of maps into such steps.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::Mask;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poset::{self, FinitePoset, IsoWitness, MonotoneMap};
use crate::varieties::VarietyMode;

/// A poset together with the maps whose indexed implications a step must
/// preserve. Several witnesses mean the conjunction of the per-witness
/// conditions.
#[derive(Clone, Debug)]
pub struct GContext {
    base: FinitePoset,
    witnesses: Vec<MonotoneMap>,
}

impl GContext {
    pub fn new(base: FinitePoset, witnesses: Vec<MonotoneMap>) -> Result<Self> {
        if witnesses.is_empty() {
            return Err(Error::IncompatibleMaps(
                "a step needs at least one witness map".to_string(),
            ));
        }
        for w in &witnesses {
            if *w.domain() != base {
                return Err(Error::IncompatibleMaps(
                    "witness domain differs from the base poset".to_string(),
                ));
            }
        }
        Ok(GContext { base, witnesses })
    }

    /// The base with the unique map to the singleton as only witness.
    pub fn terminal(base: FinitePoset) -> Self {
        let t = MonotoneMap::terminal(&base);
        GContext {
            base,
            witnesses: vec![t],
        }
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn witnesses(&self) -> &[MonotoneMap] {
        &self.witnesses
    }
}

/// One stage of a complex: a poset whose elements carry their identity as
/// subsets of the previous layer, ordered by reverse inclusion, with the
/// root map down.
#[derive(Clone, Debug)]
pub struct Layer {
    index: usize,
    poset: FinitePoset,
    mode: VarietyMode,
    link: LayerLink,
}

#[derive(Clone, Debug)]
enum LayerLink {
    Base { witnesses: Vec<MonotoneMap> },
    Step { provenance: Vec<Mask>, root: MonotoneMap },
}

impl Layer {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn mode(&self) -> VarietyMode {
        self.mode
    }

    /// Witness maps; present only on the base layer.
    pub fn witnesses(&self) -> Option<&[MonotoneMap]> {
        match &self.link {
            LayerLink::Base { witnesses } => Some(witnesses),
            LayerLink::Step { .. } => None,
        }
    }

    /// Each element's identity as a subset of the previous layer.
    pub fn provenance(&self) -> Option<&[Mask]> {
        match &self.link {
            LayerLink::Base { .. } => None,
            LayerLink::Step { provenance, .. } => Some(provenance),
        }
    }

    /// The root map to the previous layer.
    pub fn root(&self) -> Option<&MonotoneMap> {
        match &self.link {
            LayerLink::Base { .. } => None,
            LayerLink::Step { root, .. } => Some(root),
        }
    }

    /// Index of the element whose provenance is exactly `mask`.
    pub fn element_with_provenance(&self, mask: &Mask) -> Option<usize> {
        self.provenance()?
            .iter()
            .position(|m| m == mask)
    }
}

/// The tower of layers `V_0 .. V_d` produced by iterating the step.
#[derive(Clone, Debug)]
pub struct Complex {
    layers: Vec<Layer>,
    mode: VarietyMode,
}

impl Complex {
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i]
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn mode(&self) -> VarietyMode {
        self.mode
    }

    /// Composite root map from layer `i` down to layer `j <= i`.
    pub fn root_to(&self, i: usize, j: usize) -> MonotoneMap {
        let mut map = MonotoneMap::identity(self.layers[i].poset());
        for k in (j + 1..=i).rev() {
            map = self.layers[k]
                .root()
                .expect("non-base layer has a root")
                .after(&map)
                .expect("root maps compose");
        }
        map
    }
}

/// A complex build that hit a cap; the completed prefix is preserved.
#[derive(Debug)]
pub struct ComplexAbort {
    pub prefix: Complex,
    pub error: Error,
}

/// Is `s` open relative to every witness of `ctx`? For each member `m` and
/// each `b >= m` there must be `m' >= m` inside `s` in the same witness
/// fiber as `b`.
pub fn is_g_open_subset(ctx: &GContext, s: &Mask) -> bool {
    let base = &ctx.base;
    for w in &ctx.witnesses {
        for m in s.iter() {
            let cone = base.up_cone(m);
            let need = w.image_of_mask(cone);
            let have = w.image_of_mask(&cone.intersection(s));
            if !need.is_subset_of(&have) {
                return false;
            }
        }
    }
    true
}

/// Condition (*): whenever `f(a) <= b` there is `a' >= a` with
/// `g(f(a')) = g(b)`. Equivalent to `f^{-1}` preserving the `g`-indexed
/// implications of upset lattices.
pub fn is_g_open_map(f: &MonotoneMap, g: &MonotoneMap) -> Result<bool> {
    if f.codomain() != g.domain() {
        return Err(Error::IncompatibleMaps(
            "g must be composable after f".to_string(),
        ));
    }
    let x = f.domain();
    let y = f.codomain();
    for a in 0..x.len() {
        for b in y.up_cone(f.apply(a)).iter() {
            let ok = x
                .up_cone(a)
                .iter()
                .any(|a2| g.apply(f.apply(a2)) == g.apply(b));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-element admissibility filters layered on top of the openness
/// condition during enumeration. All of them are checkable at the moment an
/// element is added, walking the up-cone top-down.
pub(crate) struct StepFilter {
    /// `pair_ok[d]` = elements that may coexist with `d`; `None` = no constraint.
    pub pair_ok: Option<Vec<Mask>>,
    /// `requires_above[d]` = elements that must be present whenever `d` is.
    pub requires_above: Option<Vec<Mask>>,
}

impl StepFilter {
    pub fn none() -> Self {
        StepFilter {
            pair_ok: None,
            requires_above: None,
        }
    }

    /// Only singleton subsets survive.
    pub fn singletons(n: usize) -> Self {
        StepFilter {
            pair_ok: Some(vec![Mask::empty(n); n]),
            requires_above: None,
        }
    }

    /// Members must be pairwise comparable in `base`.
    pub fn chains(base: &FinitePoset) -> Self {
        let n = base.len();
        let pair_ok = (0..n)
            .map(|d| {
                Mask::from_indices(n, (0..n).filter(|&e| base.comparable(d, e)))
            })
            .collect();
        StepFilter {
            pair_ok: Some(pair_ok),
            requires_above: None,
        }
    }

    /// Members must be pairwise well-directed: for members `d, d'` whose
    /// identities are the subsets `sets[d], sets[d']` of `ground`, both
    /// `up(sets[d]) /\ down(sets[d'])` and the swap must be nonempty.
    pub fn well_directed(ground: &FinitePoset, sets: &[Mask]) -> Self {
        let n = sets.len();
        let ups: Vec<Mask> = sets.iter().map(|s| ground.up_closure(s)).collect();
        let downs: Vec<Mask> = sets.iter().map(|s| ground.down_closure(s)).collect();
        let pair_ok = (0..n)
            .map(|d| {
                Mask::from_indices(
                    n,
                    (0..n).filter(|&e| {
                        ups[d].intersects(&downs[e]) && ups[e].intersects(&downs[d])
                    }),
                )
            })
            .collect();
        StepFilter {
            pair_ok: Some(pair_ok),
            requires_above: None,
        }
    }
}

/// Enumerate, per root, the rooted subsets of its up-cone that pass the
/// witness openness conditions and the filter. Walks each up-cone in a
/// descending linear extension so every admissibility check is exact at
/// decision time; branches whose root obligation has become unreachable are
/// cut. Output is in canonical order: root index, then cardinality, then
/// mask value.
pub(crate) fn enumerate_rooted(
    base: &FinitePoset,
    witnesses: &[&MonotoneMap],
    filter: &StepFilter,
    caps: &Caps,
) -> Result<Vec<(usize, Mask)>> {
    struct Search<'a> {
        base: &'a FinitePoset,
        witnesses: &'a [&'a MonotoneMap],
        filter: &'a StepFilter,
        /// Witness image of each element's up-cone, per witness.
        cone_images: Vec<Vec<Mask>>,
        budget: u64,
        out: Vec<(usize, Mask)>,
    }

    impl<'a> Search<'a> {
        fn admit(&self, e: usize, chosen: &Mask, root: usize) -> bool {
            if let Some(pair_ok) = &self.filter.pair_ok {
                if !chosen.is_subset_of(&pair_ok[e]) {
                    return false;
                }
            }
            if let Some(req) = &self.filter.requires_above {
                let mut want = req[e].clone();
                want.remove(e);
                if !want.is_subset_of(chosen) {
                    return false;
                }
            }
            let _ = root;
            for (w, imgs) in self.witnesses.iter().zip(&self.cone_images) {
                let visible = chosen.intersection(self.base.up_cone(e));
                let mut have = w.image_of_mask(&visible);
                have.insert(w.apply(e));
                if !imgs[e].is_subset_of(&have) {
                    return false;
                }
            }
            true
        }

        fn run(
            &mut self,
            root: usize,
            order: &[usize],
            pos: usize,
            chosen: &mut Mask,
            have: &mut [Mask],
            avail: &[Vec<Mask>],
        ) -> Result<()> {
            self.budget = self.budget.checked_sub(1).ok_or_else(|| {
                Error::SizeLimitExceeded("enumeration node budget exhausted".to_string())
            })?;
            // Root obligation still reachable?
            for (wi, imgs) in self.cone_images.iter().enumerate() {
                let mut reachable = have[wi].clone();
                reachable.union_with(&avail[wi][pos]);
                if !imgs[root].is_subset_of(&reachable) {
                    return Ok(());
                }
            }
            if pos == order.len() {
                if self.admit(root, chosen, root) {
                    let mut s = chosen.clone();
                    s.insert(root);
                    self.out.push((root, s));
                }
                return Ok(());
            }
            let e = order[pos];
            // Exclude e.
            self.run(root, order, pos + 1, chosen, have, avail)?;
            // Include e.
            if self.admit(e, chosen, root) {
                chosen.insert(e);
                let mut saved = Vec::with_capacity(self.witnesses.len());
                for (wi, w) in self.witnesses.iter().enumerate() {
                    let v = w.apply(e);
                    saved.push((wi, v, have[wi].contains(v)));
                    have[wi].insert(v);
                }
                self.run(root, order, pos + 1, chosen, have, avail)?;
                for (wi, v, was) in saved {
                    if !was {
                        have[wi].remove(v);
                    }
                }
                chosen.remove(e);
            }
            Ok(())
        }
    }

    if base.len() > caps.layer_base {
        return Err(Error::SizeLimitExceeded(format!(
            "step over a base of {} elements (cap {})",
            base.len(),
            caps.layer_base
        )));
    }

    let cone_images: Vec<Vec<Mask>> = witnesses
        .iter()
        .map(|w| {
            (0..base.len())
                .map(|e| w.image_of_mask(base.up_cone(e)))
                .collect()
        })
        .collect();

    let mut search = Search {
        base,
        witnesses,
        filter,
        cone_images,
        budget: caps.step_nodes,
        out: Vec::new(),
    };

    let descending: Vec<usize> = {
        let mut ext = base.linear_extension();
        ext.reverse();
        ext
    };

    for root in 0..base.len() {
        let cone = base.up_cone(root);
        let order: Vec<usize> = descending
            .iter()
            .copied()
            .filter(|&e| e != root && cone.contains(e))
            .collect();
        // Suffix unions of witness images over the undecided tail.
        let avail: Vec<Vec<Mask>> = witnesses
            .iter()
            .map(|w| {
                let mut suffix = vec![Mask::empty(w.codomain().len()); order.len() + 1];
                for k in (0..order.len()).rev() {
                    suffix[k] = suffix[k + 1].clone();
                    suffix[k].insert(w.apply(order[k]));
                }
                suffix
            })
            .collect();
        let mut chosen = Mask::empty(base.len());
        let mut have: Vec<Mask> = witnesses
            .iter()
            .map(|w| Mask::singleton(w.codomain().len(), w.apply(root)))
            .collect();
        search.run(root, &order, 0, &mut chosen, &mut have, &avail)?;
    }

    let mut out = search.out;
    out.sort_unstable_by(|(ra, ma), (rb, mb)| ra.cmp(rb).then_with(|| ma.canonical_cmp(mb)));
    Ok(out)
}

/// Assemble a layer poset from enumerated subsets: reverse-inclusion order,
/// deterministic names `L{index}:{root}:{mask-hex}`, root map down to `base`.
pub(crate) fn layer_from_masks(
    index: usize,
    base: &FinitePoset,
    masks: Vec<(usize, Mask)>,
    mode: VarietyMode,
) -> Layer {
    let names: Vec<String> = masks
        .iter()
        .map(|(root, m)| format!("L{index}:{}:{}", base.name(*root), m.hex()))
        .collect();
    let mut pairs = Vec::new();
    for (a, (_, ma)) in masks.iter().enumerate() {
        for (b, (_, mb)) in masks.iter().enumerate() {
            if a != b && mb.is_subset_of(ma) {
                pairs.push((a, b));
            }
        }
    }
    let poset = FinitePoset::new(names, &pairs).expect("reverse inclusion is a partial order");
    let root_map = MonotoneMap::new(
        poset.clone(),
        base.clone(),
        masks.iter().map(|(root, _)| *root).collect(),
    )
    .expect("the root map is monotone");
    Layer {
        index,
        poset,
        mode,
        link: LayerLink::Step {
            provenance: masks.into_iter().map(|(_, m)| m).collect(),
            root: root_map,
        },
    }
}

pub(crate) fn base_layer(base: FinitePoset, witnesses: Vec<MonotoneMap>, mode: VarietyMode) -> Layer {
    Layer {
        index: 0,
        poset: base,
        mode,
        link: LayerLink::Base { witnesses },
    }
}

/// One step over `ctx`: all rooted subsets of up-cones passing the openness
/// conditions, with the mode filter where it is stage-free (`Bool` keeps
/// singletons, `Lc` keeps chains of the base order; `Kc` needs layer history
/// and only restricts inside [`build_complex`]).
pub fn vietoris_step(ctx: &GContext, mode: VarietyMode, caps: &Caps) -> Result<Layer> {
    let filter = match mode {
        VarietyMode::Bool => StepFilter::singletons(ctx.base.len()),
        VarietyMode::Lc => StepFilter::chains(&ctx.base),
        VarietyMode::Ha | VarietyMode::Kc => StepFilter::none(),
    };
    let refs: Vec<&MonotoneMap> = ctx.witnesses.iter().collect();
    let masks = enumerate_rooted(&ctx.base, &refs, &filter, caps)?;
    Ok(layer_from_masks(1, &ctx.base, masks, mode))
}

/// Iterate the step to `depth`: layer 0 is the base with the given
/// witnesses; stage `i + 1` is the step over layer `i` with the root map as
/// witness. Variety filters apply from each mode's starting stage
/// (singletons from stage 1, well-directedness and chains from stage 2).
pub fn build_complex(
    base: &FinitePoset,
    witnesses: &[MonotoneMap],
    depth: usize,
    mode: VarietyMode,
    caps: &Caps,
) -> core::result::Result<Complex, ComplexAbort> {
    let fail = |prefix: Vec<Layer>, error: Error| ComplexAbort {
        prefix: Complex {
            layers: prefix,
            mode,
        },
        error,
    };

    let ctx = match GContext::new(base.clone(), witnesses.to_vec()) {
        Ok(c) => c,
        Err(e) => return Err(fail(vec![], e)),
    };
    let mut layers = vec![base_layer(base.clone(), witnesses.to_vec(), mode)];

    for i in 1..=depth {
        let step_base = layers[i - 1].poset().clone();
        let step_witnesses: Vec<MonotoneMap> = if i == 1 {
            ctx.witnesses.clone()
        } else {
            vec![layers[i - 1].root().unwrap().clone()]
        };
        let filter = match (mode, mode.restriction_start()) {
            (VarietyMode::Bool, Some(start)) if i >= start => {
                StepFilter::singletons(step_base.len())
            }
            (VarietyMode::Lc, Some(start)) if i >= start => StepFilter::chains(&step_base),
            (VarietyMode::Kc, Some(start)) if i >= start => {
                let ground = layers[i - 2].poset();
                let sets = layers[i - 1]
                    .provenance()
                    .expect("stage >= 2 has provenance below");
                StepFilter::well_directed(ground, sets)
            }
            _ => StepFilter::none(),
        };
        let refs: Vec<&MonotoneMap> = step_witnesses.iter().collect();
        let masks = match enumerate_rooted(&step_base, &refs, &filter, caps) {
            Ok(m) => m,
            Err(e) => return Err(fail(layers, e)),
        };
        layers.push(layer_from_masks(i, &step_base, masks, mode));
    }

    Ok(Complex { layers, mode })
}

/// The unique root-compatible lift of a relatively open map into a step:
/// `h'(a) = h[up-cone of a]`, located as an element of `target`.
pub fn lift_point_map(
    h: &MonotoneMap,
    ctx: &GContext,
    target: &Layer,
) -> Result<MonotoneMap> {
    if h.codomain() != ctx.base() {
        return Err(Error::IncompatibleMaps(
            "h must land in the step base".to_string(),
        ));
    }
    for w in ctx.witnesses() {
        if !is_g_open_map(h, w)? {
            return Err(Error::NotGOpen(
                "h is not open relative to a witness".to_string(),
            ));
        }
    }
    let z = h.domain();
    let mut assignment = Vec::with_capacity(z.len());
    for a in 0..z.len() {
        let image = h.image_of_mask(z.up_cone(a));
        let idx = target.element_with_provenance(&image).ok_or_else(|| {
            Error::MissingElement(format!(
                "image of the up-cone of {} is not a layer element",
                z.name(a)
            ))
        })?;
        assignment.push(idx);
    }
    MonotoneMap::new(z.clone(), target.poset().clone(), assignment)
}

/// Functorial direct image between steps: `C` maps to `p[C]`. The witness
/// triangles must commute; the image must land inside the target layer.
/// Returns the two freshly built layers and the map between them.
pub fn lift_direct_image(
    p: &MonotoneMap,
    ctx_x: &GContext,
    ctx_y: &GContext,
    caps: &Caps,
) -> Result<(Layer, Layer, MonotoneMap)> {
    if p.domain() != ctx_x.base() || p.codomain() != ctx_y.base() {
        return Err(Error::IncompatibleMaps(
            "p must map the source base to the target base".to_string(),
        ));
    }
    if ctx_x.witnesses().len() != ctx_y.witnesses().len() {
        return Err(Error::IncompatibleMaps(
            "witness lists differ in length".to_string(),
        ));
    }
    for (wx, wy) in ctx_x.witnesses().iter().zip(ctx_y.witnesses()) {
        if wy.after(p)? != *wx {
            return Err(Error::IncompatibleMaps(
                "witness triangle does not commute".to_string(),
            ));
        }
    }
    let source = vietoris_step(ctx_x, VarietyMode::Ha, caps)?;
    let target = vietoris_step(ctx_y, VarietyMode::Ha, caps)?;
    let prov = source.provenance().unwrap();
    let mut assignment = Vec::with_capacity(prov.len());
    for c in prov {
        let image = p.image_of_mask(c);
        let idx = target.element_with_provenance(&image).ok_or_else(|| {
            Error::ImageNotInLayer(format!(
                "direct image {:?} fails the target layer conditions",
                ctx_y.base().names_of_mask(&image)
            ))
        })?;
        assignment.push(idx);
    }
    let map = MonotoneMap::new(source.poset().clone(), target.poset().clone(), assignment)?;
    // Roots commute: p(root(C)) = root(p[C]).
    let src_root = source.root().unwrap();
    let tgt_root = target.root().unwrap();
    for i in 0..source.len() {
        if p.apply(src_root.apply(i)) != tgt_root.apply(map.apply(i)) {
            return Err(Error::InternalInvariant(
                "direct image does not commute with roots".to_string(),
            ));
        }
    }
    Ok((source, target, map))
}

/// The thread `(x, up(x), up(up(x)), ...)` locating each iterated up-cone as
/// an element of the corresponding layer. In restricted modes an up-cone may
/// have been filtered away, which is reported as `MissingElement`.
pub fn unit_thread(complex: &Complex, x: usize, depth: usize) -> Result<Vec<usize>> {
    if depth > complex.depth() {
        return Err(Error::InsufficientDepth(format!(
            "thread to depth {depth} in a depth-{} complex",
            complex.depth()
        )));
    }
    let mut out = vec![x];
    let mut current = x;
    for i in 1..=depth {
        let prev = complex.layer(i - 1).poset();
        let cone = prev.up_cone(current).clone();
        let next = complex
            .layer(i)
            .element_with_provenance(&cone)
            .ok_or_else(|| {
                Error::MissingElement(format!(
                    "up-cone of {} was filtered out of layer {i}",
                    prev.name(current)
                ))
            })?;
        out.push(next);
        current = next;
    }
    Ok(out)
}

/// A complex over a product (or pullback) carrying the composite projection
/// maps from every layer to the two factors.
#[derive(Debug)]
pub struct ProjectedComplex {
    pub complex: Complex,
    pub to_left: Vec<MonotoneMap>,
    pub to_right: Vec<MonotoneMap>,
}

fn project_threads(
    complex: &Complex,
    pi_left: &MonotoneMap,
    pi_right: &MonotoneMap,
) -> (Vec<MonotoneMap>, Vec<MonotoneMap>) {
    let mut to_left = vec![pi_left.clone()];
    let mut to_right = vec![pi_right.clone()];
    for i in 1..=complex.depth() {
        let root = complex.layer(i).root().unwrap();
        to_left.push(to_left[i - 1].after(root).unwrap());
        to_right.push(to_right[i - 1].after(root).unwrap());
    }
    (to_left, to_right)
}

/// Complex over `x` times `y` with both projections as witnesses: the
/// truncated dual of the coproduct construction.
pub fn product_complex(
    x: &FinitePoset,
    y: &FinitePoset,
    depth: usize,
    mode: VarietyMode,
    caps: &Caps,
) -> core::result::Result<ProjectedComplex, ComplexAbort> {
    let (prod, pi_x, pi_y) = poset::product(x, y, caps).map_err(|e| ComplexAbort {
        prefix: Complex {
            layers: vec![],
            mode,
        },
        error: e,
    })?;
    let complex = build_complex(&prod, &[pi_x.clone(), pi_y.clone()], depth, mode, caps)?;
    let (to_left, to_right) = project_threads(&complex, &pi_x, &pi_y);
    Ok(ProjectedComplex {
        complex,
        to_left,
        to_right,
    })
}

/// Complex over the pullback of two p-morphisms, witnesses the projections.
/// For surjective cospans both projection threads stay surjective.
pub fn pullback_complex(
    f: &MonotoneMap,
    g: &MonotoneMap,
    depth: usize,
    caps: &Caps,
) -> core::result::Result<ProjectedComplex, ComplexAbort> {
    let plain = |error: Error| ComplexAbort {
        prefix: Complex {
            layers: vec![],
            mode: VarietyMode::Ha,
        },
        error,
    };
    if !f.is_p_morphism() {
        return Err(plain(Error::NotPMorphism("left leg".to_string())));
    }
    if !g.is_p_morphism() {
        return Err(plain(Error::NotPMorphism("right leg".to_string())));
    }
    let (pb, px, py) = poset::pullback(f, g, caps).map_err(plain)?;
    let complex = build_complex(&pb, &[px.clone(), py.clone()], depth, VarietyMode::Ha, caps)?;
    let (to_left, to_right) = project_threads(&complex, &px, &py);
    Ok(ProjectedComplex {
        complex,
        to_left,
        to_right,
    })
}

/// Layerwise comparison of the complex over `x (y + z)` with the disjoint
/// union of the complexes over `x y` and `x z`.
pub struct CodistReport {
    pub holds: bool,
    /// One witness per layer, where found.
    pub witnesses: Vec<Option<IsoWitness>>,
}

pub fn codistributivity_check(
    x: &FinitePoset,
    y: &FinitePoset,
    z: &FinitePoset,
    depth: usize,
    caps: &Caps,
) -> Result<CodistReport> {
    let (sum, _, _) = poset::disjoint_union(y, z);
    let lhs = product_complex(x, &sum, depth, VarietyMode::Ha, caps)
        .map_err(|a| a.error)?;
    let xy = product_complex(x, y, depth, VarietyMode::Ha, caps).map_err(|a| a.error)?;
    let xz = product_complex(x, z, depth, VarietyMode::Ha, caps).map_err(|a| a.error)?;
    let mut witnesses = Vec::new();
    let mut holds = true;
    for i in 0..=depth {
        let (rhs, _, _) = poset::disjoint_union(
            xy.complex.layer(i).poset(),
            xz.complex.layer(i).poset(),
        );
        let w = poset::is_isomorphic(lhs.complex.layer(i).poset(), &rhs, caps)?;
        holds &= w.is_some();
        witnesses.push(w);
    }
    Ok(CodistReport { holds, witnesses })
}
