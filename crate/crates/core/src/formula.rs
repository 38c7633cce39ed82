//! IPC formula syntax: parsing and printing, implication rank, semantic
//! generation of subalgebras inside an upset lattice, and an independent
//! chain-semantics oracle for the Goedel-Dummett variety.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::Mask;
use crate::birkhoff::{self, UpsetLattice, Valuation};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Syntax tree over named variables with meet, join, implication and the
/// bounds. Negation is sugar: `~p` is `p -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Top,
    Var(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

pub fn var(name: &str) -> Formula {
    Formula::Var(name.to_string())
}

pub fn and(l: Formula, r: Formula) -> Formula {
    Formula::And(Box::new(l), Box::new(r))
}

pub fn or(l: Formula, r: Formula) -> Formula {
    Formula::Or(Box::new(l), Box::new(r))
}

pub fn implies(l: Formula, r: Formula) -> Formula {
    Formula::Implies(Box::new(l), Box::new(r))
}

pub fn not(f: Formula) -> Formula {
    implies(f, Formula::Bottom)
}

impl Formula {
    /// Distinct variable names, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        self.collect_vars(&mut set);
        set.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            _ => {}
        }
    }

    /// Number of connectives and atoms, a deterministic size measure.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Top | Formula::Var(_) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }
}

/// Maximum nesting depth of implications; negation counts as one implication,
/// meet and join are transparent.
pub fn implication_rank(f: &Formula) -> usize {
    match f {
        Formula::Bottom | Formula::Top | Formula::Var(_) => 0,
        Formula::And(l, r) | Formula::Or(l, r) => {
            implication_rank(l).max(implication_rank(r))
        }
        Formula::Implies(l, r) => 1 + implication_rank(l).max(implication_rank(r)),
    }
}

// Grammar: atoms are identifiers; `0`, `1` are the bounds; precedence
// `~` > `&` > `|` > `->`, all binary operators right-associative.

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Zero,
    One,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '~' => {
                out.push((i, Token::Not));
                i += 1;
            }
            '&' => {
                out.push((i, Token::And));
                i += 1;
            }
            '|' => {
                out.push((i, Token::Or));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0' => {
                out.push((i, Token::Zero));
                i += 1;
            }
            '1' => {
                out.push((i, Token::One));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((i, Token::Arrow));
                    i += 2;
                } else {
                    return Err(Error::ParseError {
                        position: i,
                        message: "expected '->'".to_string(),
                    });
                }
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::ParseError {
                    position: i,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.bump();
            let right = self.implication()?;
            Ok(implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let left = self.conjunction()?;
        if self.peek() == Some(&Token::Or) {
            self.bump();
            let right = self.disjunction()?;
            Ok(or(left, right))
        } else {
            Ok(left)
        }
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let left = self.unary()?;
        if self.peek() == Some(&Token::And) {
            self.bump();
            let right = self.conjunction()?;
            Ok(and(left, right))
        } else {
            Ok(left)
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        let position = self.here();
        match self.bump() {
            Some(Token::Not) => Ok(not(self.unary()?)),
            Some(Token::Zero) => Ok(Formula::Bottom),
            Some(Token::One) => Ok(Formula::Top),
            Some(Token::Ident(name)) => Ok(Formula::Var(name)),
            Some(Token::LParen) => {
                let inner = self.implication()?;
                if self.bump() != Some(Token::RParen) {
                    return Err(Error::ParseError {
                        position: self.here(),
                        message: "expected ')'".to_string(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::ParseError {
                position,
                message: format!("expected a formula, found {other:?}"),
            }),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::ParseError {
            position: parser.here(),
            message: "trailing input".to_string(),
        });
    }
    Ok(f)
}

/// Minimal-parentheses rendering; `phi -> 0` prints as `~phi`.
/// `parse(print(f)) == f` for every formula.
pub fn print(f: &Formula) -> String {
    render(f, 1)
}

fn render(f: &Formula, min_prec: u8) -> String {
    let (prec, body) = match f {
        Formula::Bottom => (4, "0".to_string()),
        Formula::Top => (4, "1".to_string()),
        Formula::Var(v) => (4, v.clone()),
        Formula::Implies(l, r) if **r == Formula::Bottom => {
            (4, format!("~{}", render(l, 4)))
        }
        Formula::Implies(l, r) => (1, format!("{}->{}", render(l, 2), render(r, 1))),
        Formula::Or(l, r) => (2, format!("{}|{}", render(l, 3), render(r, 2))),
        Formula::And(l, r) => (3, format!("{}&{}", render(l, 4), render(r, 3))),
    };
    if prec < min_prec {
        format!("({body})")
    } else {
        body
    }
}

/// A subalgebra generated inside an upset lattice, with one witness formula
/// per member and the saturation stage at which it first appeared.
#[derive(Clone, Debug)]
pub struct GeneratedAlgebra {
    members: Vec<(Mask, usize, Formula)>,
    ambient_size: usize,
    stages_used: usize,
}

impl GeneratedAlgebra {
    pub fn members(&self) -> &[(Mask, usize, Formula)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the closure reached every member of the ambient lattice.
    pub fn is_complete(&self) -> bool {
        self.members.len() == self.ambient_size
    }

    pub fn stages_used(&self) -> usize {
        self.stages_used
    }

    pub fn stage_of(&self, value: &Mask) -> Option<usize> {
        self.members
            .iter()
            .find(|(m, _, _)| m == value)
            .map(|(_, s, _)| *s)
    }
}

/// Saturation by stages: stage 0 is the lattice closure of the generators
/// with the bounds; stage k+1 adds implications between existing members and
/// re-closes under meet and join. Stops at a fixpoint or at `rank_cap`.
pub fn generate_subalgebra(
    lattice: &UpsetLattice,
    generators: &[(String, Mask)],
    rank_cap: Option<usize>,
    caps: &Caps,
) -> Result<GeneratedAlgebra> {
    if lattice.len() > caps.product_size {
        return Err(Error::SizeLimitExceeded(format!(
            "closure inside a lattice of {} upsets (cap {})",
            lattice.len(),
            caps.product_size
        )));
    }
    let p = lattice.base();
    for (name, g) in generators {
        if !p.is_upset(g) {
            return Err(Error::NotAnUpset(format!("generator {name}")));
        }
    }

    let mut members: Vec<(Mask, usize, Formula)> = Vec::new();
    let push = |members: &mut Vec<(Mask, usize, Formula)>, m: Mask, stage, witness| {
        if !members.iter().any(|(v, _, _)| *v == m) {
            members.push((m, stage, witness));
            true
        } else {
            false
        }
    };

    push(&mut members, Mask::empty(p.len()), 0, Formula::Bottom);
    push(&mut members, Mask::full(p.len()), 0, Formula::Top);
    for (name, g) in generators {
        push(&mut members, g.clone(), 0, var(name));
    }

    let lattice_close = |members: &mut Vec<(Mask, usize, Formula)>, stage: usize| {
        let mut changed = true;
        while changed {
            changed = false;
            let len = members.len();
            for i in 0..len {
                for j in 0..len {
                    if i == j {
                        continue;
                    }
                    let meet = members[i].0.intersection(&members[j].0);
                    let join = members[i].0.union(&members[j].0);
                    let (wi, wj) = (members[i].2.clone(), members[j].2.clone());
                    if push(members, meet, stage, and(wi.clone(), wj.clone())) {
                        changed = true;
                    }
                    if push(members, join, stage, or(wi, wj)) {
                        changed = true;
                    }
                }
            }
        }
    };

    lattice_close(&mut members, 0);

    let mut stage = 0;
    loop {
        if rank_cap.is_some_and(|cap| stage >= cap) {
            break;
        }
        stage += 1;
        let before = members.len();
        let snapshot = members.len();
        for i in 0..snapshot {
            for j in 0..snapshot {
                let imp = birkhoff::heyting_implication(p, &members[i].0, &members[j].0)?;
                let witness = implies(members[i].2.clone(), members[j].2.clone());
                push(&mut members, imp, stage, witness);
            }
        }
        lattice_close(&mut members, stage);
        if members.len() == before {
            stage -= 1;
            break;
        }
    }

    Ok(GeneratedAlgebra {
        members,
        ambient_size: lattice.len(),
        stages_used: stage,
    })
}

/// The free Goedel-Dummett algebra on `n_vars` generators, computed by chain
/// semantics: close the generator tuples under min, max and the chain
/// residuum inside the product of every (chain, valuation) component with
/// chains of size up to `max_chain_size`.
#[derive(Clone, Debug)]
pub struct ChainOracle {
    /// `(chain_size, valuation)` per product component.
    pub components: Vec<(u8, Vec<u8>)>,
    /// Closure members as value tuples, sorted.
    pub members: Vec<Vec<u8>>,
}

impl ChainOracle {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

pub fn godel_chain_oracle(
    n_vars: usize,
    max_chain_size: usize,
    caps: &Caps,
) -> Result<ChainOracle> {
    if n_vars > 2 || max_chain_size > 6 {
        return Err(Error::SizeLimitExceeded(format!(
            "chain oracle for {n_vars} variables over chains up to {max_chain_size}"
        )));
    }
    let mut components: Vec<(u8, Vec<u8>)> = Vec::new();
    for k in 1..=max_chain_size as u8 {
        let mut val = vec![0u8; n_vars];
        loop {
            components.push((k, val.clone()));
            let mut pos = 0;
            loop {
                if pos == n_vars {
                    break;
                }
                val[pos] += 1;
                if val[pos] < k {
                    break;
                }
                val[pos] = 0;
                pos += 1;
            }
            if pos == n_vars {
                break;
            }
        }
    }

    let width = components.len();
    let tops: Vec<u8> = components.iter().map(|(k, _)| k - 1).collect();
    let residuum = |a: u8, b: u8, top: u8| -> u8 {
        let _ = top;
        if a <= b {
            top
        } else {
            b
        }
    };

    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut members: Vec<Vec<u8>> = Vec::new();
    let add = |seen: &mut BTreeSet<Vec<u8>>, members: &mut Vec<Vec<u8>>, t: Vec<u8>| {
        if seen.insert(t.clone()) {
            members.push(t);
        }
    };

    add(&mut seen, &mut members, vec![0u8; width]);
    add(&mut seen, &mut members, tops.clone());
    for v in 0..n_vars {
        let t: Vec<u8> = components.iter().map(|(_, val)| val[v]).collect();
        add(&mut seen, &mut members, t);
    }

    let mut frontier_start = 0;
    while frontier_start < members.len() {
        let frontier_end = members.len();
        if members.len() > caps.product_size {
            return Err(Error::SizeLimitExceeded(
                "chain oracle closure grew past the cap".to_string(),
            ));
        }
        for i in frontier_start..frontier_end {
            for j in 0..frontier_end {
                let a = members[i].clone();
                let b = members[j].clone();
                let mut meet = vec![0u8; width];
                let mut join = vec![0u8; width];
                let mut imp_ab = vec![0u8; width];
                let mut imp_ba = vec![0u8; width];
                for c in 0..width {
                    meet[c] = a[c].min(b[c]);
                    join[c] = a[c].max(b[c]);
                    imp_ab[c] = residuum(a[c], b[c], tops[c]);
                    imp_ba[c] = residuum(b[c], a[c], tops[c]);
                }
                add(&mut seen, &mut members, meet);
                add(&mut seen, &mut members, join);
                add(&mut seen, &mut members, imp_ab);
                add(&mut seen, &mut members, imp_ba);
            }
        }
        frontier_start = frontier_end;
    }

    members.sort_unstable();
    Ok(ChainOracle { components, members })
}

/// Do `phi` and `psi` evaluate identically under every valuation on `p`?
pub fn equivalent_on_frame(
    phi: &Formula,
    psi: &Formula,
    p: &FinitePoset,
    caps: &Caps,
) -> Result<bool> {
    let mut vars: BTreeSet<String> = phi.variables().into_iter().collect();
    vars.extend(psi.variables());
    let vars: Vec<String> = vars.into_iter().collect();
    if vars.len() > caps.valuation_vars {
        return Err(Error::SizeLimitExceeded(format!(
            "{} variables in an equivalence sweep (cap {})",
            vars.len(),
            caps.valuation_vars
        )));
    }
    let lattice = birkhoff::upsets(p, caps)?;
    let k = vars.len();
    let mut choice = vec![0usize; k];
    loop {
        let assign = vars
            .iter()
            .cloned()
            .zip(choice.iter().map(|&c| lattice.members()[c].clone()))
            .collect();
        let val = Valuation::new(p.clone(), assign)?;
        if birkhoff::eval(phi, &val)? != birkhoff::eval(psi, &val)? {
            return Ok(false);
        }
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

    #[test]
    fn precedence_and_associativity() {
        // `->` is right-associative and binds loosest.
        assert_eq!(
            parse("p->q|q->p").unwrap(),
            implies(var("p"), implies(or(var("q"), var("q")), var("p")))
        );
        assert_eq!(
            parse("~~p").unwrap(),
            implies(implies(var("p"), Formula::Bottom), Formula::Bottom)
        );
        assert_eq!(
            parse("(p->q)|(q->p)").unwrap(),
            or(implies(var("p"), var("q")), implies(var("q"), var("p")))
        );
        assert_eq!(
            parse("p&q|r").unwrap(),
            or(and(var("p"), var("q")), var("r"))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse("p -> ") {
            Err(Error::ParseError { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("p @ q").is_err());
        assert!(parse("(p").is_err());
        assert!(parse("p q").is_err());
    }

    #[test]
    fn print_round_trips() {
        for text in [
            "p->q->p",
            "(p->q)->p",
            "~(p&q)",
            "~~p",
            "p|(q->p)",
            "(p|q)&r",
            "0->1",
        ] {
            let f = parse(text).unwrap();
            assert_eq!(parse(&print(&f)).unwrap(), f, "round trip of {text}");
        }
        // Negation sugar is re-printed as sugar.
        assert_eq!(print(&not(var("p"))), "~p");
        assert_eq!(print(&parse("p->0").unwrap()), "~p");
    }

    #[test]
    fn ranks() {
        assert_eq!(implication_rank(&var("p")), 0);
        let lc = parse("(p->q)|(q->p)").unwrap();
        assert_eq!(implication_rank(&lc), 1);
        let wem = parse("~p|~~p").unwrap();
        assert_eq!(implication_rank(&wem), 2);
    }

    #[test]
    fn oracle_small_counts() {
        let caps = Caps::default();
        assert_eq!(godel_chain_oracle(0, 2, &caps).unwrap().count(), 2);
        assert_eq!(godel_chain_oracle(1, 3, &caps).unwrap().count(), 6);
    }

    #[test]
    fn subalgebra_of_free_dl_square_needs_no_implications() {
        let caps = Caps::default();
        let (square, gens) = crate::poset::free_dl_dual(2, &caps).unwrap();
        let lattice = birkhoff::upsets(&square, &caps).unwrap();
        let named: Vec<(String, Mask)> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("g{i}"), g.clone()))
            .collect();
        let alg = generate_subalgebra(&lattice, &named, None, &caps).unwrap();
        assert!(alg.is_complete());
        assert_eq!(alg.len(), 6);
        assert!(alg.members().iter().all(|(_, stage, _)| *stage == 0));
    }

    #[test]
    fn full_generator_set_closes_at_stage_zero() {
        let caps = Caps::default();
        let chain = FinitePoset::chain(2);
        let lattice = birkhoff::upsets(&chain, &caps).unwrap();
        let gens: Vec<(String, Mask)> = lattice
            .members()
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("g{i}"), m.clone()))
            .collect();
        let alg = generate_subalgebra(&lattice, &gens, None, &caps).unwrap();
        assert!(alg.is_complete());
        assert_eq!(alg.stages_used(), 0);
    }

    #[test]
    fn equivalence_on_frames() {
        let caps = Caps::default();
        let p = parse("p").unwrap();
        let nnp = parse("~~p").unwrap();
        assert!(equivalent_on_frame(&p, &p, &FinitePoset::chain(2), &caps).unwrap());
        assert!(equivalent_on_frame(&nnp, &p, &FinitePoset::antichain(2), &caps).unwrap());
        assert!(!equivalent_on_frame(&nnp, &p, &FinitePoset::chain(2), &caps).unwrap());
    }
}
