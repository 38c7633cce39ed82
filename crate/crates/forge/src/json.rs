//! JSON ingestion and emission. Input posets are sorted lexicographically by
//! element name before construction; emitted relations list covering pairs
//! only (reflexivity and transitivity are reapplied on ingestion). Subset
//! provenance is serialized as sorted name lists, never as raw masks.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use esakia_forge_core::poset::{FinitePoset, MonotoneMap};
use esakia_forge_core::varieties::VarietyMode;
use esakia_forge_core::vietoris::{Complex, Layer};
use esakia_forge_core::{Error, Result};

use crate::SCHEMA;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

/// A poset given inline or as a path to a JSON file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Path(String),
    Inline(PosetDoc),
}

#[derive(Clone, Debug, Deserialize)]
pub struct MapDoc {
    pub domain: PosetRef,
    pub codomain: PosetRef,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ValuationDoc {
    pub frame: PosetRef,
    pub assign: BTreeMap<String, Vec<String>>,
}

fn io_error(context: &str, err: impl std::fmt::Display) -> Error {
    Error::ParseError {
        position: 0,
        message: format!("{context}: {err}"),
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| io_error(&format!("reading {}", path.display()), e))?;
    serde_json::from_str(&text).map_err(|e| io_error(&format!("parsing {}", path.display()), e))
}

/// Build a poset from its document: names are sorted lexicographically (the
/// ingestion tie-break), reflexivity is implied, the transitive closure is
/// applied by the constructor.
pub fn poset_from_doc(doc: &PosetDoc) -> Result<FinitePoset> {
    let mut elements = doc.elements.clone();
    elements.sort();
    FinitePoset::from_named(elements, &doc.leq)
}

pub fn resolve_poset(r: &PosetRef) -> Result<FinitePoset> {
    match r {
        PosetRef::Inline(doc) => poset_from_doc(doc),
        PosetRef::Path(path) => {
            let doc: PosetDoc = read_json(Path::new(path))?;
            poset_from_doc(&doc)
        }
    }
}

pub fn load_poset(path: &Path) -> Result<FinitePoset> {
    let doc: PosetDoc = read_json(path)?;
    poset_from_doc(&doc)
}

pub fn map_from_doc(doc: &MapDoc) -> Result<MonotoneMap> {
    let domain = resolve_poset(&doc.domain)?;
    let codomain = resolve_poset(&doc.codomain)?;
    let pairs: Vec<(String, String)> = doc
        .map
        .iter()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    MonotoneMap::from_named_pairs(domain, codomain, &pairs)
}

pub fn load_map(path: &Path) -> Result<MonotoneMap> {
    let doc: MapDoc = read_json(path)?;
    map_from_doc(&doc)
}

// Emission documents.

#[derive(Serialize)]
pub struct PosetOut {
    pub schema: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

pub fn poset_out(p: &FinitePoset, name: Option<String>) -> PosetOut {
    PosetOut {
        schema: SCHEMA,
        name,
        elements: p.element_names().to_vec(),
        leq: p
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect(),
    }
}

#[derive(Serialize)]
pub struct MapOut {
    pub codomain: Vec<String>,
    pub map: BTreeMap<String, String>,
}

pub fn map_out(m: &MonotoneMap) -> MapOut {
    MapOut {
        codomain: m.codomain().element_names().to_vec(),
        map: (0..m.domain().len())
            .map(|i| {
                (
                    m.domain().name(i).to_string(),
                    m.codomain().name(m.apply(i)).to_string(),
                )
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct LayerOut {
    pub index: usize,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<BTreeMap<String, String>>,
}

pub fn layer_out(layer: &Layer, below: Option<&FinitePoset>) -> LayerOut {
    let p = layer.poset();
    let provenance = layer.provenance().zip(below).map(|(prov, base)| {
        (0..p.len())
            .map(|i| (p.name(i).to_string(), base.names_of_mask(&prov[i])))
            .collect()
    });
    let root = layer.root().map(|r| {
        (0..p.len())
            .map(|i| {
                (
                    p.name(i).to_string(),
                    r.codomain().name(r.apply(i)).to_string(),
                )
            })
            .collect()
    });
    LayerOut {
        index: layer.index(),
        elements: p.element_names().to_vec(),
        leq: p
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect(),
        provenance,
        root,
    }
}

#[derive(Serialize)]
pub struct ComplexOut {
    pub schema: &'static str,
    pub mode: &'static str,
    pub layers: Vec<LayerOut>,
    pub witnesses: Vec<MapOut>,
}

pub fn complex_out(c: &Complex) -> ComplexOut {
    let layers = c
        .layers()
        .iter()
        .map(|layer| {
            let below = layer
                .index()
                .checked_sub(1)
                .map(|i| c.layer(i).poset());
            layer_out(layer, below)
        })
        .collect();
    let witnesses = c
        .layer(0)
        .witnesses()
        .unwrap_or_default()
        .iter()
        .map(map_out)
        .collect();
    ComplexOut {
        schema: SCHEMA,
        mode: mode_tag(c.mode()),
        layers,
        witnesses,
    }
}

pub fn mode_tag(mode: VarietyMode) -> &'static str {
    mode.tag()
}

pub fn to_pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}
