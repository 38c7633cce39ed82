//! Command line dispatcher. Exit status 0 on success, 1 on a domain error
//! (typed error name on stderr), 2 when a size cap was exceeded. The env
//! var `ESAKIA_FORGE_CAP` overrides the enumeration node cap.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use esakia_forge_core::birkhoff::{eval, upsets, Valuation};
use esakia_forge_core::caps::Caps;
use esakia_forge_core::formula;
use esakia_forge_core::inquisitive::{m_complex, regular_elements, is_regularly_generated};
use esakia_forge_core::poset::{self, FinitePoset, MonotoneMap};
use esakia_forge_core::universal::{n_universal_model, stability_table, universal_model};
use esakia_forge_core::varieties::{boolean_step, godel_coproduct, lc_free, VarietyMode};
use esakia_forge_core::vietoris::{build_complex, Complex};
use esakia_forge_core::{Error, Result};

use crate::json::{
    complex_out, layer_out, load_map, load_poset, map_out, poset_out, to_pretty,
};
use crate::suites::{run_suite, Suite};
use crate::{dot, SCHEMA};

#[derive(Parser)]
#[command(
    name = "esakia-forge",
    version,
    about = "Finite posets, upset algebras, and step-by-step implication towers"
)]
struct Cli {
    /// Max poset size a layer step may enumerate subsets over.
    #[arg(long, global = true)]
    layer_cap: Option<usize>,
    /// Max recursion nodes per layer enumeration.
    #[arg(long, global = true)]
    node_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Args)]
struct OutArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize and emit a poset; `--info` reports order properties.
    Poset {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        info: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Step-by-step towers over a poset.
    Complex {
        #[command(subcommand)]
        action: ComplexCmd,
    },
    /// Single variety-restricted steps.
    Variety {
        #[command(subcommand)]
        action: VarietyCmd,
    },
    /// Dual of the coproduct of two prelinear algebras.
    CoproductGodel {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Product poset with projections.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Pullback of two maps into a shared codomain.
    Pullback {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Truncated image-finite universal model.
    Universal {
        /// Generator count: start from the dual of the free distributive lattice.
        #[arg(long, conflicts_with = "poset")]
        gens: Option<usize>,
        /// Arbitrary base poset.
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Prestable/stable flags per layer of the tower over a poset.
    Stability {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The M-complex over a discrete base of the given size.
    Inquisitive {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Regular elements of the upset algebra and regular generation.
    Regular {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated duals of free algebras.
    Free {
        #[arg(long, value_parser = ["ipc", "lc"])]
        logic: String,
        #[arg(long)]
        gens: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate a formula over a frame under a valuation.
    Eval {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        valuation: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent free-algebra oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// Exhaustive certificate suites over all small posets.
    Check {
        #[arg(long, value_parser = ["bool", "kc", "lc"])]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Build the tower to a depth and emit layers with provenance.
    Build {
        #[arg(long)]
        poset: PathBuf,
        /// `terminal` or a path to a map document; repeatable.
        #[arg(long = "witness")]
        witnesses: Vec<String>,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_parser = ["ha", "bool", "kc", "lc"], default_value = "ha")]
        mode: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum VarietyCmd {
    /// One restricted step: singletons for `bool`, the first restricted
    /// stage (stage 2) for `kc` and `lc`.
    Step {
        #[arg(long, value_parser = ["bool", "kc", "lc"])]
        mode: String,
        #[arg(long)]
        poset: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Free prelinear-algebra cardinality via chain semantics.
    Godel {
        #[arg(long)]
        vars: usize,
        /// Largest chain size; defaults to `vars + 2`.
        #[arg(long)]
        chains: Option<usize>,
        /// Include the member tuples in the output.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run() -> i32 {
    run_from(std::env::args().collect())
}

pub fn run_from(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    let caps = effective_caps(&cli);
    match dispatch(cli.command, &caps) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            if matches!(err, Error::SizeLimitExceeded(_)) {
                2
            } else {
                1
            }
        }
    }
}

fn effective_caps(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(layer) = cli.layer_cap {
        caps.layer_base = layer;
    }
    if let Some(nodes) = cli.node_cap {
        caps.step_nodes = nodes;
    }
    if let Ok(env) = std::env::var("ESAKIA_FORGE_CAP") {
        if let Ok(nodes) = env.parse::<u64>() {
            caps.step_nodes = nodes;
        }
    }
    caps
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| Error::ParseError {
            position: 0,
            message: format!("writing {}: {e}", path.display()),
        }),
    }
}

fn parse_witnesses(specs: &[String], base: &FinitePoset) -> Result<Vec<MonotoneMap>> {
    if specs.is_empty() {
        return Ok(vec![MonotoneMap::terminal(base)]);
    }
    specs
        .iter()
        .map(|spec| {
            if spec == "terminal" {
                Ok(MonotoneMap::terminal(base))
            } else {
                let map = load_map(Path::new(spec))?;
                if map.domain() != base {
                    return Err(Error::IncompatibleMaps(format!(
                        "witness {spec} is not a map out of the base poset"
                    )));
                }
                Ok(map)
            }
        })
        .collect()
}

fn mode_from_tag(tag: &str) -> VarietyMode {
    VarietyMode::from_tag(tag).expect("validated by clap")
}

fn build_or_report_prefix(
    base: &FinitePoset,
    witnesses: &[MonotoneMap],
    depth: usize,
    mode: VarietyMode,
    caps: &Caps,
    out: &OutArgs,
) -> Result<()> {
    match build_complex(base, witnesses, depth, mode, caps) {
        Ok(complex) => emit_complex(&complex, out),
        Err(abort) => {
            // Report the completed prefix, then surface the cap error.
            emit_complex(&abort.prefix, out)?;
            Err(abort.error)
        }
    }
}

fn emit_complex(complex: &Complex, out: &OutArgs) -> Result<()> {
    let text = match out.emit {
        Emit::Json => to_pretty(&complex_out(complex)),
        Emit::Dot => {
            let last = complex.layer(complex.depth());
            dot::poset_dot(last.poset(), &format!("layer{}", last.index()))
        }
    };
    write_output(&out.out, &text)
}

fn emit_poset(p: &FinitePoset, name: &str, out: &OutArgs) -> Result<()> {
    let text = match out.emit {
        Emit::Json => to_pretty(&poset_out(p, Some(name.to_string()))),
        Emit::Dot => dot::poset_dot(p, name),
    };
    write_output(&out.out, &text)
}

fn dispatch(command: Command, caps: &Caps) -> Result<()> {
    match command {
        Command::Poset { poset, info, out } => {
            let p = load_poset(&poset)?;
            if info {
                let doc = json!({
                    "schema": SCHEMA,
                    "elements": p.element_names(),
                    "hasse": p.hasse_edges().iter()
                        .map(|&(a, b)| (p.name(a), p.name(b)))
                        .collect::<Vec<_>>(),
                    "max": p.names_of_mask(&p.max_elements()),
                    "prelinear": p.is_prelinear(),
                    "directed": p.is_directed(),
                    "antichain": p.is_antichain(),
                    "rooted": p.root().is_some(),
                });
                write_output(&out.out, &to_pretty(&doc))
            } else {
                emit_poset(&p, "poset", &out)
            }
        }
        Command::Complex { action } => match action {
            ComplexCmd::Build {
                poset,
                witnesses,
                depth,
                mode,
                out,
            } => {
                let base = load_poset(&poset)?;
                let witnesses = parse_witnesses(&witnesses, &base)?;
                build_or_report_prefix(
                    &base,
                    &witnesses,
                    depth,
                    mode_from_tag(&mode),
                    caps,
                    &out,
                )
            }
        },
        Command::Variety { action } => match action {
            VarietyCmd::Step { mode, poset, out } => {
                let base = load_poset(&poset)?;
                match mode.as_str() {
                    "bool" => {
                        let layer = boolean_step(&base);
                        let doc = json!({
                            "schema": SCHEMA,
                            "mode": "bool",
                            "layer": layer_out(&layer, Some(&base)),
                        });
                        match out.emit {
                            Emit::Json => write_output(&out.out, &to_pretty(&doc)),
                            Emit::Dot => {
                                write_output(&out.out, &dot::poset_dot(layer.poset(), "bool"))
                            }
                        }
                    }
                    tag => {
                        let mode = mode_from_tag(tag);
                        let complex = build_complex(
                            &base,
                            &[MonotoneMap::terminal(&base)],
                            2,
                            mode,
                            caps,
                        )
                        .map_err(|a| a.error)?;
                        let doc = json!({
                            "schema": SCHEMA,
                            "mode": tag,
                            "layer": layer_out(complex.layer(2), Some(complex.layer(1).poset())),
                        });
                        match out.emit {
                            Emit::Json => write_output(&out.out, &to_pretty(&doc)),
                            Emit::Dot => write_output(
                                &out.out,
                                &dot::poset_dot(complex.layer(2).poset(), tag),
                            ),
                        }
                    }
                }
            }
        },
        Command::CoproductGodel { left, right, out } => {
            let p = load_poset(&left)?;
            let q = load_poset(&right)?;
            let result = godel_coproduct(&p, &q, caps)?;
            emit_poset(&result, "coproduct", &out)
        }
        Command::Product { left, right, out } => {
            let p = load_poset(&left)?;
            let q = load_poset(&right)?;
            let (prod, pi1, pi2) = poset::product(&p, &q, caps)?;
            match out.emit {
                Emit::Dot => write_output(&out.out, &dot::poset_dot(&prod, "product")),
                Emit::Json => {
                    let doc = json!({
                        "schema": SCHEMA,
                        "poset": poset_out(&prod, None),
                        "to_left": map_out(&pi1),
                        "to_right": map_out(&pi2),
                    });
                    write_output(&out.out, &to_pretty(&doc))
                }
            }
        }
        Command::Pullback { left, right, out } => {
            let f = load_map(&left)?;
            let g = load_map(&right)?;
            let (pb, px, py) = poset::pullback(&f, &g, caps)?;
            match out.emit {
                Emit::Dot => write_output(&out.out, &dot::poset_dot(&pb, "pullback")),
                Emit::Json => {
                    let doc = json!({
                        "schema": SCHEMA,
                        "poset": poset_out(&pb, None),
                        "to_left": map_out(&px),
                        "to_right": map_out(&py),
                    });
                    write_output(&out.out, &to_pretty(&doc))
                }
            }
        }
        Command::Universal {
            gens,
            poset,
            depth,
            out,
        } => {
            let model = match (gens, poset) {
                (Some(n), None) => n_universal_model(n, depth, caps)?,
                (None, Some(path)) => universal_model(&load_poset(&path)?, depth, caps)?,
                _ => {
                    return Err(Error::ParseError {
                        position: 0,
                        message: "pass exactly one of --gens or --poset".to_string(),
                    })
                }
            };
            emit_poset(&model, "universal", &out)
        }
        Command::Stability { poset, depth, out } => {
            let base = load_poset(&poset)?;
            let complex = build_complex(
                &base,
                &[MonotoneMap::terminal(&base)],
                depth,
                VarietyMode::Ha,
                caps,
            )
            .map_err(|a| a.error)?;
            let table = stability_table(&complex)?;
            let layers: Vec<serde_json::Value> = complex
                .layers()
                .iter()
                .map(|layer| {
                    let elements: Vec<serde_json::Value> = (0..layer.len())
                        .map(|e| {
                            json!({
                                "name": layer.poset().name(e),
                                "prestable": table.prestable(layer.index(), e),
                                "stable": table.stable(layer.index(), e),
                            })
                        })
                        .collect();
                    json!({"index": layer.index(), "elements": elements})
                })
                .collect();
            let doc = json!({"schema": SCHEMA, "depth": depth, "layers": layers});
            write_output(&out, &to_pretty(&doc))
        }
        Command::Inquisitive { size, depth, out } => {
            let base = FinitePoset::antichain(size);
            let mc = m_complex(&base, depth, caps)?;
            match out.emit {
                Emit::Dot => {
                    let last = mc.layer(mc.depth());
                    write_output(
                        &out.out,
                        &dot::poset_dot(last.poset(), &format!("m{}", last.index())),
                    )
                }
                Emit::Json => {
                    let layers: Vec<_> = mc
                        .layers()
                        .iter()
                        .map(|layer| {
                            let below = layer
                                .index()
                                .checked_sub(1)
                                .map(|i| mc.layer(i).poset());
                            layer_out(layer, below)
                        })
                        .collect();
                    let doc = json!({"schema": SCHEMA, "points": size, "layers": layers});
                    write_output(&out.out, &to_pretty(&doc))
                }
            }
        }
        Command::Regular { poset, out } => {
            let p = load_poset(&poset)?;
            let regs: Vec<Vec<String>> = regular_elements(&p, caps)?
                .iter()
                .map(|m| p.names_of_mask(m))
                .collect();
            let doc = json!({
                "schema": SCHEMA,
                "regular": regs,
                "regularly_generated": is_regularly_generated(&p, caps)?,
            });
            write_output(&out, &to_pretty(&doc))
        }
        Command::Free {
            logic,
            gens,
            depth,
            out,
        } => {
            let (base, _) = poset::free_dl_dual(gens, caps)?;
            match logic.as_str() {
                "ipc" => build_or_report_prefix(
                    &base,
                    &[MonotoneMap::terminal(&base)],
                    depth,
                    VarietyMode::Ha,
                    caps,
                    &out,
                ),
                _ => {
                    let free = lc_free(&base, &[MonotoneMap::terminal(&base)], caps)?;
                    match out.emit {
                        Emit::Dot => {
                            write_output(&out.out, &dot::poset_dot(&free.stage, "free-lc"))
                        }
                        Emit::Json => {
                            let doc = json!({
                                "schema": SCHEMA,
                                "logic": "lc",
                                "gens": gens,
                                "stage": poset_out(&free.stage, None),
                                "free_algebra_size": upsets(&free.stage, caps)?.len(),
                                "stabilized": true,
                            });
                            write_output(&out.out, &to_pretty(&doc))
                        }
                    }
                }
            }
        }
        Command::Eval {
            frame,
            formula: text,
            valuation,
            out,
        } => {
            let p = load_poset(&frame)?;
            let phi = formula::parse(&text)?;
            let assign = match valuation {
                None => BTreeMap::new(),
                Some(path) => {
                    let doc: crate::json::ValuationDoc = crate::json::read_json(&path)?;
                    let frame_doc = crate::json::resolve_poset(&doc.frame)?;
                    if frame_doc != p {
                        return Err(Error::IncompatibleMaps(
                            "valuation frame differs from --frame".to_string(),
                        ));
                    }
                    doc.assign
                        .iter()
                        .map(|(var, names)| Ok((var.clone(), p.mask_of_names(names)?)))
                        .collect::<Result<BTreeMap<_, _>>>()?
                }
            };
            let val = Valuation::new(p.clone(), assign)?;
            let result = eval(&phi, &val)?;
            let doc = json!({
                "schema": SCHEMA,
                "formula": formula::print(&phi),
                "result": p.names_of_mask(&result),
                "is_carrier": result == esakia_forge_core::bits::Mask::full(p.len()),
            });
            write_output(&out, &to_pretty(&doc))
        }
        Command::Oracle { which } => match which {
            OracleCmd::Godel {
                vars,
                chains,
                full,
                out,
            } => {
                let max_chain = chains.unwrap_or(vars + 2);
                let oracle = formula::godel_chain_oracle(vars, max_chain, caps)?;
                let mut doc = json!({
                    "schema": SCHEMA,
                    "vars": vars,
                    "max_chain": max_chain,
                    "count": oracle.count(),
                });
                if full {
                    doc["components"] = serde_json::to_value(&oracle.components).unwrap();
                    doc["members"] = serde_json::to_value(&oracle.members).unwrap();
                }
                write_output(&out, &to_pretty(&doc))
            }
        },
        Command::Check { suite, max_size } => {
            let suite = Suite::from_tag(&suite).expect("validated by clap");
            let mut log = String::new();
            let mut caps = caps.clone();
            caps.layer_base = caps.layer_base.max(64);
            caps.step_nodes = caps.step_nodes.max(10_000_000);
            let ok = run_suite(suite, max_size, &caps, &mut log)?;
            print!("{log}");
            if ok {
                println!("suite ok");
                Ok(())
            } else {
                Err(Error::StabilizationFailure("suite failed".to_string()))
            }
        }
    }
}
