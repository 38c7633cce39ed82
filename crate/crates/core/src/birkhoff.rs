//! Finite Birkhoff/Esakia duality: the lattice of all upsets of a poset with
//! its Heyting operations, join-irreducibles and the round trip back to the
//! poset, Kripke evaluation of formulas, and frame validity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bits::Mask;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::poset::FinitePoset;

/// All upsets of a finite poset, canonically sorted by
/// (cardinality, mask value). This is the finite dual algebra.
#[derive(Clone, Debug)]
pub struct UpsetLattice {
    base: FinitePoset,
    upsets: Vec<Mask>,
}

/// Complete, duplicate-free enumeration of the upsets of `p`.
pub fn upsets(p: &FinitePoset, caps: &Caps) -> Result<UpsetLattice> {
    if p.len() > caps.upset_base {
        return Err(Error::SizeLimitExceeded(format!(
            "upset enumeration over {} elements (cap {})",
            p.len(),
            caps.upset_base
        )));
    }
    // Walk elements top-down; an element may enter only if everything
    // strictly above it is already in. Every branch yields an upset, so the
    // work is linear in the output.
    let order = {
        let mut ext = p.linear_extension();
        ext.reverse();
        ext
    };
    let mut out = Vec::new();
    let mut current = Mask::empty(p.len());

    fn go(
        p: &FinitePoset,
        order: &[usize],
        pos: usize,
        current: &mut Mask,
        out: &mut Vec<Mask>,
    ) {
        if pos == order.len() {
            out.push(current.clone());
            return;
        }
        let e = order[pos];
        go(p, order, pos + 1, current, out);
        let strictly_above_in = p
            .up_cone(e)
            .iter()
            .all(|j| j == e || current.contains(j));
        if strictly_above_in {
            current.insert(e);
            go(p, order, pos + 1, current, out);
            current.remove(e);
        }
    }

    go(p, &order, 0, &mut current, &mut out);
    out.sort_unstable_by(|a, b| a.canonical_cmp(b));
    Ok(UpsetLattice {
        base: p.clone(),
        upsets: out,
    })
}

impl UpsetLattice {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.upsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upsets.is_empty()
    }

    pub fn members(&self) -> &[Mask] {
        &self.upsets
    }

    pub fn contains(&self, m: &Mask) -> bool {
        self.index_of(m).is_some()
    }

    pub fn index_of(&self, m: &Mask) -> Option<usize> {
        self.upsets
            .binary_search_by(|u| u.canonical_cmp(m))
            .ok()
    }

    pub fn bottom(&self) -> Mask {
        Mask::empty(self.base.len())
    }

    pub fn top(&self) -> Mask {
        Mask::full(self.base.len())
    }
}

/// Relative pseudocomplement `U -> V = P - down(U - V)`.
///
/// Satisfies the residuation law: `W /\ U <= V` iff `W <= U -> V` for all
/// upsets `W`.
pub fn heyting_implication(p: &FinitePoset, u: &Mask, v: &Mask) -> Result<Mask> {
    for (name, m) in [("antecedent", u), ("consequent", v)] {
        if !p.is_upset(m) {
            return Err(Error::NotAnUpset(format!(
                "{name} {:?} is not an upset",
                p.names_of_mask(m)
            )));
        }
    }
    Ok(p.down_closure(&u.difference(v)).complement())
}

/// `box U = P - down(P - U)`, defined for arbitrary subsets.
pub fn box_op(p: &FinitePoset, u: &Mask) -> Mask {
    p.down_closure(&u.complement()).complement()
}

/// `not U = U -> empty`.
pub fn negation(p: &FinitePoset, u: &Mask) -> Result<Mask> {
    heyting_implication(p, u, &Mask::empty(p.len()))
}

/// The poset of join-irreducible members of a (complete) upset lattice,
/// under inclusion-reversed order. Join-irreducibles of `upsets(P)` are the
/// principal up-cones, so the round trip returns `P` with its own names.
pub fn join_irreducibles(l: &UpsetLattice) -> FinitePoset {
    let mut found: Vec<(usize, Mask)> = Vec::new();
    for m in l.members() {
        if m.is_empty() {
            continue;
        }
        // Join-irreducible iff the upset has a unique minimal element.
        let minimal: Vec<usize> = m
            .iter()
            .filter(|&i| {
                m.iter().all(|j| j == i || !l.base.lt(j, i))
            })
            .collect();
        if let [root] = minimal[..] {
            found.push((root, m.clone()));
        }
    }
    // Order by the root's index so the round trip is the identity on names.
    found.sort_unstable_by_key(|(root, _)| *root);
    let names: Vec<String> = found
        .iter()
        .map(|(root, _)| l.base.name(*root).to_string())
        .collect();
    let cones: Vec<Mask> = found.into_iter().map(|(_, m)| m).collect();
    let mut pairs = Vec::new();
    for a in 0..cones.len() {
        for b in 0..cones.len() {
            if a != b && cones[b].is_subset_of(&cones[a]) {
                pairs.push((a, b));
            }
        }
    }
    FinitePoset::new(names, &pairs).expect("join-irreducible order is a poset")
}

/// Assignment of an upset to each propositional variable over a fixed frame.
#[derive(Clone, Debug)]
pub struct Valuation {
    frame: FinitePoset,
    assign: BTreeMap<String, Mask>,
}

impl Valuation {
    pub fn new(frame: FinitePoset, assign: BTreeMap<String, Mask>) -> Result<Self> {
        for (var, m) in &assign {
            if !frame.is_upset(m) {
                return Err(Error::NotAnUpset(format!(
                    "assignment of {var} is not an upset"
                )));
            }
        }
        Ok(Valuation { frame, assign })
    }

    pub fn frame(&self) -> &FinitePoset {
        &self.frame
    }

    pub fn get(&self, var: &str) -> Option<&Mask> {
        self.assign.get(var)
    }
}

/// Kripke semantics by structural recursion: conjunction is intersection,
/// disjunction is union, implication is the relative pseudocomplement.
pub fn eval(phi: &Formula, v: &Valuation) -> Result<Mask> {
    let p = &v.frame;
    Ok(match phi {
        Formula::Bottom => Mask::empty(p.len()),
        Formula::Top => Mask::full(p.len()),
        Formula::Var(name) => v
            .get(name)
            .ok_or_else(|| Error::UnboundVariable(name.clone()))?
            .clone(),
        Formula::And(l, r) => eval(l, v)?.intersection(&eval(r, v)?),
        Formula::Or(l, r) => eval(l, v)?.union(&eval(r, v)?),
        Formula::Implies(l, r) => heyting_implication(p, &eval(l, v)?, &eval(r, v)?)?,
    })
}

/// Frame validity: `phi` evaluates to the full carrier under every valuation.
pub fn validates(p: &FinitePoset, phi: &Formula, caps: &Caps) -> Result<bool> {
    let vars = phi.variables();
    if vars.len() > caps.valuation_vars {
        return Err(Error::SizeLimitExceeded(format!(
            "{} variables in a validity sweep (cap {})",
            vars.len(),
            caps.valuation_vars
        )));
    }
    let lattice = upsets(p, caps)?;
    let carrier = lattice.top();
    let k = vars.len();
    let mut choice = alloc::vec![0usize; k];
    loop {
        let assign: BTreeMap<String, Mask> = vars
            .iter()
            .cloned()
            .zip(choice.iter().map(|&c| lattice.members()[c].clone()))
            .collect();
        let val = Valuation::new(p.clone(), assign)?;
        if eval(phi, &val)? != carrier {
            return Ok(false);
        }
        // Advance the odometer over upset indices.
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(true);
            }
            choice[pos] += 1;
            if choice[pos] < lattice.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if k == 0 {
            return Ok(true);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use alloc::vec;

    fn v_poset() -> FinitePoset {
        FinitePoset::from_named(
            vec!["a".into(), "b".into(), "c".into()],
            &[("c".into(), "a".into()), ("c".into(), "b".into())],
        )
        .unwrap()
    }

    #[test]
    fn upset_counts() {
        let caps = Caps::default();
        assert_eq!(upsets(&FinitePoset::chain(2), &caps).unwrap().len(), 3);
        assert_eq!(upsets(&FinitePoset::antichain(2), &caps).unwrap().len(), 4);
        let (square, _) = crate::poset::free_dl_dual(2, &caps).unwrap();
        assert_eq!(upsets(&square, &caps).unwrap().len(), 6);
    }

    #[test]
    fn implication_on_the_fork() {
        let v = v_poset();
        let a = v.mask_of_names(&["a"]).unwrap();
        let b = v.mask_of_names(&["b"]).unwrap();
        let imp = heyting_implication(&v, &a, &b).unwrap();
        assert_eq!(v.names_of_mask(&imp), vec!["b"]);
        // U -> U is the whole carrier.
        assert_eq!(heyting_implication(&v, &a, &a).unwrap(), Mask::full(3));
    }

    #[test]
    fn implication_on_the_chain() {
        let chain = FinitePoset::chain(2);
        let top = chain.mask_of_names(&["1"]).unwrap();
        let empty = Mask::empty(2);
        assert_eq!(negation(&chain, &top).unwrap(), empty);
        assert_eq!(
            heyting_implication(&chain, &empty, &top).unwrap(),
            Mask::full(2)
        );
    }

    #[test]
    fn non_upsets_are_rejected() {
        let chain = FinitePoset::chain(2);
        let bottom_only = chain.mask_of_names(&["0"]).unwrap();
        assert_eq!(
            heyting_implication(&chain, &bottom_only, &bottom_only)
                .unwrap_err()
                .name(),
            "NotAnUpset"
        );
    }

    #[test]
    fn box_of_upset_is_the_upset() {
        let v = v_poset();
        let caps = Caps::default();
        for u in upsets(&v, &caps).unwrap().members() {
            assert_eq!(&box_op(&v, u), u);
        }
    }

    #[test]
    fn join_irreducible_round_trips() {
        let caps = Caps::default();
        for p in [FinitePoset::chain(2), FinitePoset::antichain(3), v_poset()] {
            let ji = join_irreducibles(&upsets(&p, &caps).unwrap());
            assert_eq!(ji.element_names(), p.element_names());
            assert!(crate::poset::is_isomorphic(&ji, &p, &caps)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn eval_weak_excluded_middle() {
        let caps = Caps::default();
        let wem = parse("~p|~~p").unwrap();
        // Chains validate it.
        let chain = FinitePoset::chain(2);
        let val = Valuation::new(
            chain.clone(),
            BTreeMap::from([("p".to_string(), chain.mask_of_names(&["1"]).unwrap())]),
        )
        .unwrap();
        assert_eq!(eval(&wem, &val).unwrap(), Mask::full(2));
        assert!(validates(&chain, &wem, &caps).unwrap());
        // The fork does not: v(p) = {a} evaluates to {a, b}.
        let v = v_poset();
        let val = Valuation::new(
            v.clone(),
            BTreeMap::from([("p".to_string(), v.mask_of_names(&["a"]).unwrap())]),
        )
        .unwrap();
        let got = eval(&wem, &val).unwrap();
        assert_eq!(v.names_of_mask(&got), vec!["a", "b"]);
        assert!(!validates(&v, &wem, &caps).unwrap());
    }

    #[test]
    fn validity_basics() {
        let caps = Caps::default();
        let lc = parse("(p->q)|(q->p)").unwrap();
        assert!(validates(&FinitePoset::chain(3), &lc, &caps).unwrap());
        assert!(!validates(&v_poset(), &lc, &caps).unwrap());
        let taut = parse("p->p").unwrap();
        for p in crate::poset::enumerate_posets(3) {
            assert!(validates(&p, &taut, &caps).unwrap());
        }
    }

    #[test]
    fn unbound_variable_error() {
        let chain = FinitePoset::chain(2);
        let val = Valuation::new(chain, BTreeMap::new()).unwrap();
        let phi = parse("p").unwrap();
        assert_eq!(eval(&phi, &val).unwrap_err().name(), "UnboundVariable");
    }
}
