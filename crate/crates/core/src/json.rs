//! JSON wire formats for trees, morphisms, and operads.
//!
//! Tree: `{"edges":[..],"vertices":[{"id":..,"nbhd":[..]},..],"legOrder":[..]}`
//! with an optional `"root"` leg for rooted trees.
//! Morphism: `{"dom":Tree,"cod":Tree,"phi0":{edge:edge},"phi1":{vertex:{"vertices":[..],"edges":[..]}}}`.
//! Operad: `{"colors":[..],"ops":{"c0|c1|..|cn":[opIds]},"units":{color:op},
//! "act":{op:{"i0|i1|..":op}},"circ":{"g|i|f":op}}` — profile keys join the
//! output-first color list with `|`, permutation keys join images with `|`,
//! and composition keys join outer op, slot, inner op with `|`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::morphism::Morphism;
use crate::operad::{FiniteCyclicOperad, OpId, Perm};
use crate::subgraph::SubGraph;
use crate::tree::{EdgeId, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("malformed input: {0}")]
    Malformed(String),
}

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError::Malformed(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexDto {
    pub id: VertexId,
    pub nbhd: Vec<EdgeId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeDto {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexDto>,
    #[serde(rename = "legOrder")]
    pub leg_order: Vec<EdgeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<EdgeId>,
}

impl TreeDto {
    pub fn from_tree(t: &Tree) -> TreeDto {
        TreeDto {
            edges: t.edges().iter().cloned().collect(),
            vertices: t
                .vertices()
                .map(|v| VertexDto {
                    id: v.clone(),
                    nbhd: t.nbhd(v).to_vec(),
                })
                .collect(),
            leg_order: t.leg_order().to_vec(),
            root: None,
        }
    }

    pub fn to_tree(&self) -> Result<Tree, JsonError> {
        Tree::new(
            self.edges.iter().cloned(),
            self.vertices
                .iter()
                .map(|v| (v.id.clone(), v.nbhd.clone())),
            self.leg_order.clone(),
        )
        .map_err(|e| bad(format!("invalid tree: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubGraphDto {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDto {
    pub dom: TreeDto,
    pub cod: TreeDto,
    pub phi0: BTreeMap<EdgeId, EdgeId>,
    pub phi1: BTreeMap<VertexId, SubGraphDto>,
}

impl MorphismDto {
    pub fn from_morphism(m: &Morphism) -> MorphismDto {
        MorphismDto {
            dom: TreeDto::from_tree(m.dom()),
            cod: TreeDto::from_tree(m.cod()),
            phi0: m.phi0().clone(),
            phi1: m
                .phi1()
                .iter()
                .map(|(v, g)| {
                    (
                        v.clone(),
                        SubGraphDto {
                            vertices: g.vertices.iter().cloned().collect(),
                            edges: g.edges.iter().cloned().collect(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn to_morphism(&self) -> Result<Morphism, JsonError> {
        let dom = Arc::new(self.dom.to_tree()?);
        let cod = Arc::new(self.cod.to_tree()?);
        let phi1: BTreeMap<VertexId, SubGraph> = self
            .phi1
            .iter()
            .map(|(v, g)| {
                (
                    v.clone(),
                    SubGraph {
                        vertices: g.vertices.iter().cloned().collect(),
                        edges: g.edges.iter().cloned().collect(),
                    },
                )
            })
            .collect();
        Morphism::new(dom, cod, self.phi0.clone(), phi1)
            .map_err(|e| bad(format!("invalid morphism: {e}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperadDto {
    pub colors: Vec<String>,
    /// Profile key "c0|c1|...|cn" (output color first) to op ids.
    pub ops: BTreeMap<String, Vec<OpId>>,
    pub units: BTreeMap<String, OpId>,
    /// Per-op action tables keyed by the permutation's images "i0|i1|...".
    pub act: BTreeMap<OpId, BTreeMap<String, OpId>>,
    /// Composition table keyed "g|i|f".
    pub circ: BTreeMap<String, OpId>,
}

pub fn perm_key(p: &Perm) -> String {
    p.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

fn parse_perm(s: &str) -> Result<Perm, JsonError> {
    s.split('|')
        .map(|x| x.parse::<usize>().map_err(|_| bad(format!("bad permutation key {s:?}"))))
        .collect()
}

impl OperadDto {
    pub fn from_operad(o: &FiniteCyclicOperad) -> OperadDto {
        let mut ops: BTreeMap<String, Vec<OpId>> = BTreeMap::new();
        for (op, profile) in &o.profiles {
            ops.entry(profile.join("|")).or_default().push(op.clone());
        }
        let mut act: BTreeMap<OpId, BTreeMap<String, OpId>> = BTreeMap::new();
        for ((op, perm), img) in &o.act {
            act.entry(op.clone())
                .or_default()
                .insert(perm_key(perm), img.clone());
        }
        let circ = o
            .circ
            .iter()
            .map(|((g, i, f), h)| (format!("{g}|{i}|{f}"), h.clone()))
            .collect();
        OperadDto {
            colors: o.colors.iter().cloned().collect(),
            ops,
            units: o.units.clone(),
            act,
            circ,
        }
    }

    pub fn to_operad(&self) -> Result<FiniteCyclicOperad, JsonError> {
        let colors: BTreeSet<String> = self.colors.iter().cloned().collect();
        let mut profiles: BTreeMap<OpId, Vec<String>> = BTreeMap::new();
        for (key, op_ids) in &self.ops {
            let profile: Vec<String> = key.split('|').map(str::to_string).collect();
            for op in op_ids {
                if profiles.insert(op.clone(), profile.clone()).is_some() {
                    return Err(bad(format!("op {op:?} listed under two profiles")));
                }
            }
        }
        let mut act: BTreeMap<(OpId, Perm), OpId> = BTreeMap::new();
        for (op, table) in &self.act {
            for (key, img) in table {
                act.insert((op.clone(), parse_perm(key)?), img.clone());
            }
        }
        let mut circ: BTreeMap<(OpId, usize, OpId), OpId> = BTreeMap::new();
        for (key, h) in &self.circ {
            let parts: Vec<&str> = key.split('|').collect();
            let [g, i, f] = parts[..] else {
                return Err(bad(format!("bad circ key {key:?}, expected \"g|i|f\"")));
            };
            let i: usize = i
                .parse()
                .map_err(|_| bad(format!("bad slot in circ key {key:?}")))?;
            circ.insert((g.to_string(), i, f.to_string()), h.clone());
        }
        Ok(FiniteCyclicOperad {
            colors,
            profiles,
            units: self.units.clone(),
            act,
            circ,
        })
    }
}

/// DOT export of the red/white/black incidence graph of a tree: white round
/// nodes for tree vertices, black squares for interior edges, red diamonds
/// for legs; position 0 of each neighborhood is marked on the arc.
pub fn tree_to_dot(t: &Tree) -> String {
    let mut out = String::from("graph tree {\n");
    let interior = t.interior();
    for e in t.edges() {
        let (shape, color) = if interior.contains(e) {
            ("square", "black")
        } else {
            ("diamond", "red")
        };
        out.push_str(&format!(
            "  \"e:{e}\" [label=\"{e}\", shape={shape}, color={color}];\n"
        ));
    }
    for v in t.vertices() {
        out.push_str(&format!("  \"v:{v}\" [label=\"{v}\", shape=circle];\n"));
        for (k, e) in t.nbhd(v).iter().enumerate() {
            let mark = if k == 0 { " [penwidth=2, label=\"0\"]" } else { "" };
            out.push_str(&format!("  \"v:{v}\" -- \"e:{e}\"{mark};\n"));
        }
    }
    out.push_str(&format!(
        "  legorder [shape=plaintext, label=\"legs: {}\"];\n",
        t.leg_order().join(", ")
    ));
    out.push_str("}\n");
    out
}
