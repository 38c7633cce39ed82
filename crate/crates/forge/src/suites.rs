//! Exhaustive per-variety check suites over all posets up to a size bound,
//! one certificate line per poset.

use std::fmt::Write;

use esakia_forge_core::birkhoff::{upsets, validates};
use esakia_forge_core::caps::Caps;
use esakia_forge_core::formula::parse;
use esakia_forge_core::poset::{enumerate_posets, MonotoneMap};
use esakia_forge_core::varieties::{
    bool_filter_characterization, kc_filter_characterization, lc_filter_characterization,
    lc_free, VarietyMode,
};
use esakia_forge_core::vietoris::build_complex;
use esakia_forge_core::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bool,
    Kc,
    Lc,
}

impl Suite {
    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "bool" => Some(Suite::Bool),
            "kc" => Some(Suite::Kc),
            "lc" => Some(Suite::Lc),
            _ => None,
        }
    }
}

/// Run one suite over every poset with at most `max_size` elements (up to
/// isomorphism). Appends one line per poset to `log`; returns overall truth.
pub fn run_suite(suite: Suite, max_size: usize, caps: &Caps, log: &mut String) -> Result<bool> {
    let mut all_ok = true;
    for n in 1..=max_size {
        for (k, p) in enumerate_posets(n).into_iter().enumerate() {
            let ok = match suite {
                Suite::Bool => {
                    let complex = build_complex(
                        &p,
                        &[MonotoneMap::terminal(&p)],
                        1,
                        VarietyMode::Ha,
                        caps,
                    )
                    .map_err(|a| a.error)?;
                    let filter_ok = bool_filter_characterization(complex.layer(1), caps)?;
                    let boolean = esakia_forge_core::varieties::boolean_step(&p);
                    let size_ok = upsets(boolean.poset(), caps)?.len() == 1 << p.len();
                    let line_ok = filter_ok && size_ok;
                    let _ = writeln!(
                        log,
                        "bool n={n} poset={k:02} filter={} lattice={}",
                        verdict(filter_ok),
                        verdict(size_ok)
                    );
                    line_ok
                }
                Suite::Kc => {
                    let complex = build_complex(
                        &p,
                        &[MonotoneMap::terminal(&p)],
                        2,
                        VarietyMode::Ha,
                        caps,
                    )
                    .map_err(|a| a.error)?;
                    let agree =
                        kc_filter_characterization(complex.layer(2), complex.layer(1), caps)?;
                    let _ = writeln!(
                        log,
                        "kc n={n} poset={k:02} stage2={} well-directed={}",
                        complex.layer(2).len(),
                        verdict(agree)
                    );
                    agree
                }
                Suite::Lc => {
                    let free = lc_free(&p, &[MonotoneMap::terminal(&p)], caps)?;
                    let prelinear = free.stage.is_prelinear();
                    let iso = free.stabilization.backward.is_order_embedding()
                        && free.stabilization.backward.is_surjective();
                    let axiom = validates(&free.stage, &parse("(p->q)|(q->p)").unwrap(), caps)?;
                    let chains_agree =
                        lc_filter_characterization(free.complex.layer(2), caps)?;
                    let line_ok = prelinear && iso && axiom && chains_agree;
                    let _ = writeln!(
                        log,
                        "lc n={n} poset={k:02} stage={} prelinear={} stable={} axiom={} filter={}",
                        free.stage.len(),
                        verdict(prelinear),
                        verdict(iso),
                        verdict(axiom),
                        verdict(chains_agree)
                    );
                    line_ok
                }
            };
            all_ok &= ok;
        }
    }
    Ok(all_ok)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
