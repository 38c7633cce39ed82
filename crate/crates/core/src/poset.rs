//! Finite posets and monotone maps: closures, p-morphisms, products,
//! disjoint unions, pullbacks, the duals of free distributive lattices,
//! canonical forms and isomorphism testing.
//!
//! The order is stored as a full reflexive-transitive bit matrix (one upward
//! row per element), because every construction downstream queries `leq`
//! constantly. Ingested relations are transitively closed automatically; a
//! cycle after closure is a hard error.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::Mask;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A finite poset: element names plus the full order relation.
///
/// Element indices follow the listed order. Constructors that ingest
/// user-supplied data are expected to sort names first (the JSON reader
/// does); derived posets pick their own deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    /// `up[i]` is the mask of all `j` with `i <= j` (including `i`).
    up: Vec<Mask>,
}

impl FinitePoset {
    /// Build from element names and a list of `a <= b` index pairs.
    /// Reflexivity is implied and the transitive closure is applied.
    pub fn new(elements: Vec<String>, leq: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let mut up = vec![Mask::empty(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in leq {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("index {}", a.max(b))));
            }
            up[a].insert(b);
        }
        // Floyd-Warshall style closure over bit rows.
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                let mut row = up[i].clone();
                for j in row.clone().iter() {
                    if j != i {
                        row.union_with(&up[j]);
                    }
                }
                if row != up[i] {
                    up[i] = row;
                    changed = true;
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAntisymmetric(format!(
                        "{} and {} are in a cycle",
                        elements[i], elements[j]
                    )));
                }
            }
        }
        Ok(FinitePoset { elements, up })
    }

    /// Build from names given as string pairs.
    pub fn from_named(elements: Vec<String>, leq: &[(String, String)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(leq.len());
        {
            let lookup = |name: &str| -> Result<usize> {
                elements
                    .iter()
                    .position(|e| e == name)
                    .ok_or_else(|| Error::UnknownElement(name.to_string()))
            };
            for (a, b) in leq {
                pairs.push((lookup(a)?, lookup(b)?));
            }
        }
        FinitePoset::new(elements, &pairs)
    }

    pub fn singleton() -> Self {
        FinitePoset::new(vec!["*".to_string()], &[]).unwrap()
    }

    /// Total order on `n` elements named "0", "1", ...
    pub fn chain(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::new(elements, &pairs).unwrap()
    }

    /// Discrete poset on `n` elements named "0", "1", ...
    pub fn antichain(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        FinitePoset::new(elements, &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The principal up-cone of `i` as a mask (contains `i`).
    pub fn up_cone(&self, i: usize) -> &Mask {
        &self.up[i]
    }

    /// `{x : exists y in s, y <= x}`.
    pub fn up_closure(&self, s: &Mask) -> Mask {
        let mut out = Mask::empty(self.len());
        for i in s.iter() {
            out.union_with(&self.up[i]);
        }
        out
    }

    /// `{x : exists y in s, x <= y}`.
    pub fn down_closure(&self, s: &Mask) -> Mask {
        let mut out = Mask::empty(self.len());
        for i in 0..self.len() {
            if self.up[i].intersects(s) {
                out.insert(i);
            }
        }
        out
    }

    pub fn is_upset(&self, s: &Mask) -> bool {
        self.up_closure(s) == *s
    }

    /// Mask for a list of element names; `UnknownElement` on a bad name.
    pub fn mask_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Mask> {
        let mut m = Mask::empty(self.len());
        for n in names {
            m.insert(self.index_of(n.as_ref())?);
        }
        Ok(m)
    }

    pub fn names_of_mask(&self, m: &Mask) -> Vec<String> {
        m.iter().map(|i| self.elements[i].clone()).collect()
    }

    /// Elements with no strict successor.
    pub fn max_elements(&self) -> Mask {
        Mask::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| self.up[i].count() == 1),
        )
    }

    /// Elements with no strict predecessor.
    pub fn min_elements(&self) -> Mask {
        let mut m = Mask::full(self.len());
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if j != i {
                    m.remove(j);
                }
            }
        }
        m
    }

    /// Least element, if the poset is rooted.
    pub fn root(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count() == self.len())
    }

    /// Least element of a subset, if it has one.
    pub fn least_of(&self, s: &Mask) -> Option<usize> {
        s.iter().find(|&i| s.is_subset_of(&self.up[i]))
    }

    /// Every up-cone is a chain.
    pub fn is_prelinear(&self) -> bool {
        (0..self.len()).all(|x| {
            let cone: Vec<_> = self.up[x].iter().collect();
            cone.iter()
                .all(|&a| cone.iter().all(|&b| self.comparable(a, b)))
        })
    }

    /// Whenever `x <= y` and `x <= z` there is a common upper bound of `y, z`.
    pub fn is_directed(&self) -> bool {
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                for z in self.up[x].iter() {
                    if !self.up[y].intersects(&self.up[z]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|i| self.up[i].count() == 1)
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between,
    /// sorted by `(a, b)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].iter() {
                if a == b {
                    continue;
                }
                let between = self.up[a]
                    .iter()
                    .any(|k| k != a && k != b && self.up[k].contains(b));
                if !between {
                    edges.push((a, b));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Longest-chain height of each element above the minimal elements.
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut level = vec![0usize; n];
        // Process in an order compatible with the partial order.
        let order = self.linear_extension();
        for &i in &order {
            for j in self.up[i].iter() {
                if j != i {
                    level[j] = level[j].max(level[i] + 1);
                }
            }
        }
        level
    }

    /// Some linear extension (minimal elements first), deterministic.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .find(|&i| {
                    !placed[i]
                        && (0..n).all(|j| placed[j] || !self.lt(j, i))
                })
                .expect("acyclic order always has a minimal element");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Subposet induced by a mask, names preserved. Returns the poset and the
    /// original index of each new element.
    pub fn induced(&self, s: &Mask) -> (FinitePoset, Vec<usize>) {
        let keep: Vec<usize> = s.iter().collect();
        let elements: Vec<String> = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &ia) in keep.iter().enumerate() {
            for (b, &ib) in keep.iter().enumerate() {
                if a != b && self.leq(ia, ib) {
                    pairs.push((a, b));
                }
            }
        }
        (FinitePoset::new(elements, &pairs).unwrap(), keep)
    }
}

/// A monotone total map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: FinitePoset,
    codomain: FinitePoset,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(domain: FinitePoset, codomain: FinitePoset, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() {
            return Err(Error::NotMonotone("assignment is not total".to_string()));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::UnknownElement(format!("target index {bad}")));
        }
        for a in 0..domain.len() {
            for b in domain.up[a].iter() {
                if !codomain.leq(map[a], map[b]) {
                    return Err(Error::NotMonotone(format!(
                        "{} <= {} but {} !<= {}",
                        domain.name(a),
                        domain.name(b),
                        codomain.name(map[a]),
                        codomain.name(map[b])
                    )));
                }
            }
        }
        Ok(MonotoneMap { domain, codomain, map })
    }

    pub fn from_named_pairs(
        domain: FinitePoset,
        codomain: FinitePoset,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            map[domain.index_of(a)?] = codomain.index_of(b)?;
        }
        if let Some(i) = map.iter().position(|&v| v == usize::MAX) {
            return Err(Error::NotMonotone(format!(
                "no image given for {}",
                domain.name(i)
            )));
        }
        MonotoneMap::new(domain, codomain, map)
    }

    pub fn identity(p: &FinitePoset) -> Self {
        MonotoneMap {
            domain: p.clone(),
            codomain: p.clone(),
            map: (0..p.len()).collect(),
        }
    }

    /// The unique map to the singleton poset.
    pub fn terminal(p: &FinitePoset) -> Self {
        MonotoneMap {
            domain: p.clone(),
            codomain: FinitePoset::singleton(),
            map: vec![0; p.len()],
        }
    }

    pub fn domain(&self) -> &FinitePoset {
        &self.domain
    }

    pub fn codomain(&self) -> &FinitePoset {
        &self.codomain
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    /// `g.after(f)` is the composite `g o f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.codomain != self.domain {
            return Err(Error::IncompatibleMaps(
                "composition endpoints do not match".to_string(),
            ));
        }
        Ok(MonotoneMap {
            domain: f.domain.clone(),
            codomain: self.codomain.clone(),
            map: f.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn image_of_mask(&self, s: &Mask) -> Mask {
        Mask::from_indices(self.codomain.len(), s.iter().map(|i| self.map[i]))
    }

    pub fn preimage_of_mask(&self, s: &Mask) -> Mask {
        Mask::from_indices(
            self.domain.len(),
            (0..self.domain.len()).filter(|&i| s.contains(self.map[i])),
        )
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &v in &self.map {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    pub fn is_order_embedding(&self) -> bool {
        self.is_injective()
            && (0..self.domain.len()).all(|a| {
                (0..self.domain.len()).all(|b| {
                    self.domain.leq(a, b) == self.codomain.leq(self.map[a], self.map[b])
                })
            })
    }

    /// Back condition: whenever `f(x) <= y` there is `x' >= x` with `f(x') = y`.
    pub fn is_p_morphism(&self) -> bool {
        for x in 0..self.domain.len() {
            for y in self.codomain.up[self.map[x]].iter() {
                let witnessed = self.domain.up[x].iter().any(|x2| self.map[x2] == y);
                if !witnessed {
                    return false;
                }
            }
        }
        true
    }
}

/// A verified isomorphism: both composites are identities and both maps are
/// order-embeddings.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub forward: MonotoneMap,
    pub backward: MonotoneMap,
}

impl IsoWitness {
    fn new(forward: MonotoneMap, backward: MonotoneMap) -> Result<Self> {
        let ok = forward.is_order_embedding()
            && backward.is_order_embedding()
            && (0..forward.domain.len()).all(|i| backward.apply(forward.apply(i)) == i)
            && (0..backward.domain.len()).all(|i| forward.apply(backward.apply(i)) == i);
        if !ok {
            return Err(Error::InternalInvariant(
                "isomorphism witness failed validation".to_string(),
            ));
        }
        Ok(IsoWitness { forward, backward })
    }
}

/// Stable coloring for isomorphism pruning, refined jointly over both posets
/// so color identifiers are comparable.
fn refine_colors(p: &FinitePoset, q: &FinitePoset) -> (Vec<u32>, Vec<u32>) {
    let n = p.len();
    let total = n + q.len();
    let leq = |a: usize, b: usize| -> bool {
        if a < n && b < n {
            p.leq(a, b)
        } else if a >= n && b >= n {
            q.leq(a - n, b - n)
        } else {
            false
        }
    };
    let mut color: Vec<u32> = (0..total)
        .map(|i| {
            let ups = (0..total).filter(|&j| j != i && leq(i, j)).count();
            let downs = (0..total).filter(|&j| j != i && leq(j, i)).count();
            (ups * total + downs) as u32
        })
        .collect();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::with_capacity(total);
        for i in 0..total {
            let mut up: Vec<u32> = (0..total)
                .filter(|&j| j != i && leq(i, j))
                .map(|j| color[j])
                .collect();
            let mut down: Vec<u32> = (0..total)
                .filter(|&j| j != i && leq(j, i))
                .map(|j| color[j])
                .collect();
            up.sort_unstable();
            down.sort_unstable();
            sigs.push((color[i], up, down));
        }
        let mut sorted: Vec<&(u32, Vec<u32>, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap() as u32)
            .collect();
        if next == color {
            break;
        }
        color = next;
    }
    (color[..n].to_vec(), color[n..].to_vec())
}

/// Exact isomorphism decision. Returns the lexicographically least witness
/// (smallest image vector in index order) when one exists.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset, caps: &Caps) -> Result<Option<IsoWitness>> {
    if p.len() != q.len() {
        return Ok(None);
    }
    if p.len() > caps.iso_size {
        return Err(Error::SizeLimitExceeded(format!(
            "isomorphism search over {} elements (cap {})",
            p.len(),
            caps.iso_size
        )));
    }
    let n = p.len();
    if n == 0 {
        let f = MonotoneMap::new(p.clone(), q.clone(), vec![])?;
        let b = MonotoneMap::new(q.clone(), p.clone(), vec![])?;
        return Ok(Some(IsoWitness::new(f, b)?));
    }
    let (pc, qc) = refine_colors(p, q);
    let mut p_hist = pc.clone();
    let mut q_hist = qc.clone();
    p_hist.sort_unstable();
    q_hist.sort_unstable();
    if p_hist != q_hist {
        return Ok(None);
    }

    fn search(
        p: &FinitePoset,
        q: &FinitePoset,
        pc: &[u32],
        qc: &[u32],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for j in 0..q.len() {
            if used[j] || pc[i] != qc[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                p.leq(k, i) == q.leq(map[k], j) && p.leq(i, k) == q.leq(j, map[k])
            });
            if consistent {
                map.push(j);
                used[j] = true;
                if search(p, q, pc, qc, map, used) {
                    return true;
                }
                used[j] = false;
                map.pop();
            }
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !search(p, q, &pc, &qc, &mut map, &mut used) {
        return Ok(None);
    }
    let mut back = vec![0usize; n];
    for (i, &j) in map.iter().enumerate() {
        back[j] = i;
    }
    let forward = MonotoneMap::new(p.clone(), q.clone(), map)?;
    let backward = MonotoneMap::new(q.clone(), p.clone(), back)?;
    Ok(Some(IsoWitness::new(forward, backward)?))
}

/// Product poset with componentwise order; element names are `"(p,q)"`.
/// Returns the two projections.
pub fn product(
    p: &FinitePoset,
    q: &FinitePoset,
    caps: &Caps,
) -> Result<(FinitePoset, MonotoneMap, MonotoneMap)> {
    let size = p.len() * q.len();
    if size > caps.product_size {
        return Err(Error::SizeLimitExceeded(format!(
            "product of {} x {} elements (cap {})",
            p.len(),
            q.len(),
            caps.product_size
        )));
    }
    let mut elements = Vec::with_capacity(size);
    for a in 0..p.len() {
        for b in 0..q.len() {
            elements.push(format!("({},{})", p.name(a), q.name(b)));
        }
    }
    let idx = |a: usize, b: usize| a * q.len() + b;
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for b in 0..q.len() {
            for a2 in p.up[a].iter() {
                for b2 in q.up[b].iter() {
                    pairs.push((idx(a, b), idx(a2, b2)));
                }
            }
        }
    }
    let prod = FinitePoset::new(elements, &pairs)?;
    let mut proj_p = Vec::with_capacity(size);
    let mut proj_q = Vec::with_capacity(size);
    for a in 0..p.len() {
        for b in 0..q.len() {
            proj_p.push(a);
            proj_q.push(b);
        }
    }
    let pi_p = MonotoneMap::new(prod.clone(), p.clone(), proj_p)?;
    let pi_q = MonotoneMap::new(prod.clone(), q.clone(), proj_q)?;
    Ok((prod, pi_p, pi_q))
}

/// Tagged sum with no cross order; names are prefixed `"l:"` and `"r:"`.
/// Returns the two injections.
pub fn disjoint_union(
    p: &FinitePoset,
    q: &FinitePoset,
) -> (FinitePoset, MonotoneMap, MonotoneMap) {
    let mut elements: Vec<String> = p.elements.iter().map(|e| format!("l:{e}")).collect();
    elements.extend(q.elements.iter().map(|e| format!("r:{e}")));
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for b in p.up[a].iter() {
            pairs.push((a, b));
        }
    }
    for a in 0..q.len() {
        for b in q.up[a].iter() {
            pairs.push((p.len() + a, p.len() + b));
        }
    }
    let sum = FinitePoset::new(elements, &pairs).unwrap();
    let inl = MonotoneMap::new(p.clone(), sum.clone(), (0..p.len()).collect()).unwrap();
    let inr =
        MonotoneMap::new(q.clone(), sum.clone(), (p.len()..p.len() + q.len()).collect()).unwrap();
    (sum, inl, inr)
}

/// Pullback `{(x, y) : f(x) = g(y)}` with the induced order. Returns the two
/// projections.
pub fn pullback(
    f: &MonotoneMap,
    g: &MonotoneMap,
    caps: &Caps,
) -> Result<(FinitePoset, MonotoneMap, MonotoneMap)> {
    if f.codomain != g.codomain {
        return Err(Error::IncompatibleMaps(
            "pullback requires a shared codomain".to_string(),
        ));
    }
    let (prod, pi_x, pi_y) = product(&f.domain, &g.domain, caps)?;
    let keep = Mask::from_indices(
        prod.len(),
        (0..prod.len()).filter(|&i| f.apply(pi_x.apply(i)) == g.apply(pi_y.apply(i))),
    );
    let (sub, orig) = prod.induced(&keep);
    let px = MonotoneMap::new(
        sub.clone(),
        f.domain.clone(),
        orig.iter().map(|&i| pi_x.apply(i)).collect(),
    )?;
    let py = MonotoneMap::new(
        sub.clone(),
        g.domain.clone(),
        orig.iter().map(|&i| pi_y.apply(i)).collect(),
    )?;
    Ok((sub, px, py))
}

/// The poset `2^n` with componentwise order (the dual of the free
/// distributive lattice on `n` generators), together with each generator's
/// upset `{v : v(i) = 1}`. Elements are named by their bit strings, bit 0
/// leftmost; the zero-generator case is a singleton named "e".
pub fn free_dl_dual(n: usize, caps: &Caps) -> Result<(FinitePoset, Vec<Mask>)> {
    if n >= usize::BITS as usize || (1usize << n) > caps.product_size {
        return Err(Error::SizeLimitExceeded(format!(
            "2^{n} elements (cap {})",
            caps.product_size
        )));
    }
    let size = 1usize << n;
    let name = |v: usize| -> String {
        if n == 0 {
            return "e".to_string();
        }
        (0..n)
            .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    };
    let elements: Vec<String> = (0..size).map(name).collect();
    let mut pairs = Vec::new();
    for v in 0..size {
        for w in 0..size {
            if v & w == v {
                pairs.push((v, w));
            }
        }
    }
    let poset = FinitePoset::new(elements, &pairs)?;
    let gens = (0..n)
        .map(|i| Mask::from_indices(size, (0..size).filter(|v| v >> i & 1 == 1)))
        .collect();
    Ok((poset, gens))
}

/// All monotone maps from `domain` to `codomain`, in lexicographic order of
/// their image vectors.
pub fn enumerate_monotone_maps(domain: &FinitePoset, codomain: &FinitePoset) -> Vec<MonotoneMap> {
    let n = domain.len();
    let mut out = Vec::new();
    let mut map: Vec<usize> = Vec::with_capacity(n);

    fn go(
        domain: &FinitePoset,
        codomain: &FinitePoset,
        map: &mut Vec<usize>,
        out: &mut Vec<MonotoneMap>,
    ) {
        let i = map.len();
        if i == domain.len() {
            out.push(MonotoneMap {
                domain: domain.clone(),
                codomain: codomain.clone(),
                map: map.clone(),
            });
            return;
        }
        for c in 0..codomain.len() {
            let ok = (0..i).all(|k| {
                (!domain.leq(k, i) || codomain.leq(map[k], c))
                    && (!domain.leq(i, k) || codomain.leq(c, map[k]))
            });
            if ok {
                map.push(c);
                go(domain, codomain, map, out);
                map.pop();
            }
        }
    }

    if codomain.is_empty() && n > 0 {
        return out;
    }
    go(domain, codomain, &mut map, &mut out);
    out
}

/// All posets on `n` elements up to isomorphism, each presented with element
/// order a linear extension and named "p0", "p1", ... Deterministic output.
pub fn enumerate_posets(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 7, "poset enumeration is meant for desk sizes");
    if n == 0 {
        return vec![FinitePoset::new(vec![], &[]).unwrap()];
    }
    let pair_count = n * (n - 1) / 2;
    let pair_list: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << pair_count) {
        let mut strict = vec![Mask::empty(n); n];
        for (k, &(i, j)) in pair_list.iter().enumerate() {
            if bits >> k & 1 == 1 {
                strict[i].insert(j);
            }
        }
        let transitive = (0..n).all(|i| {
            strict[i]
                .iter()
                .all(|j| strict[j].is_subset_of(&strict[i]))
        });
        if !transitive {
            continue;
        }
        let key = min_extension_key(&strict, n);
        if seen.insert(key.clone()) {
            // Rebuild in the canonical order encoded by the key.
            let elements = (0..n).map(|i| format!("p{i}")).collect();
            let mut pairs = Vec::new();
            for s in 0..n {
                for t in s + 1..n {
                    if key[s * n + t] {
                        pairs.push((s, t));
                    }
                }
            }
            out.push(FinitePoset::new(elements, &pairs).unwrap());
        }
    }
    out
}

/// Canonical key: the minimum, over all linear extensions, of the relabeled
/// strict order matrix read row-major.
fn min_extension_key(strict: &[Mask], n: usize) -> Vec<bool> {
    let mut best: Option<Vec<bool>> = None;
    let mut placement: Vec<usize> = Vec::with_capacity(n);
    let mut placed = Mask::empty(n);

    fn below(strict: &[Mask], n: usize, v: usize) -> Mask {
        Mask::from_indices(n, (0..n).filter(|&u| strict[u].contains(v)))
    }

    fn go(
        strict: &[Mask],
        n: usize,
        placement: &mut Vec<usize>,
        placed: &mut Mask,
        best: &mut Option<Vec<bool>>,
    ) {
        if placement.len() == n {
            let mut key = vec![false; n * n];
            for (s, &es) in placement.iter().enumerate() {
                for (t, &et) in placement.iter().enumerate() {
                    key[s * n + t] = strict[es].contains(et);
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                *best = Some(key);
            }
            return;
        }
        for v in 0..n {
            if !placed.contains(v) && below(strict, n, v).is_subset_of(placed) {
                placement.push(v);
                placed.insert(v);
                go(strict, n, placement, placed, best);
                placed.remove(v);
                placement.pop();
            }
        }
    }

    go(strict, n, &mut placement, &mut placed, &mut best);
    best.unwrap()
}
