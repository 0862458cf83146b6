//! Subgraphs of a tree: a set of vertices closed under neighborhoods plus a
//! set of edges, nonempty and connected. Operations take the host tree
//! explicitly; a `SubGraph` value only stores the two id sets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::tree::{EdgeId, Tree, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubGraphError {
    #[error("subgraph is empty")]
    Empty,
    #[error("subgraph mentions {0} which is not in the host tree")]
    NotInHost(String),
    #[error("vertex {0} is included but edge {1} of its neighborhood is not")]
    NotNbhdClosed(VertexId, EdgeId),
    #[error("subgraph is not connected")]
    Disconnected,
    #[error("subgraphs are disjoint")]
    Disjoint,
}

/// The multiset boundary of a subgraph: its legs, except that a single-edge
/// subgraph has its edge with multiplicity two.
pub type BoundaryMultiset = BTreeMap<EdgeId, u32>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubGraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl SubGraph {
    /// The single-edge subgraph |_e.
    pub fn edge(e: &str) -> SubGraph {
        SubGraph {
            vertices: BTreeSet::new(),
            edges: BTreeSet::from([e.to_string()]),
        }
    }

    /// The star subgraph *_v: one vertex and its neighborhood.
    pub fn star(host: &Tree, v: &str) -> SubGraph {
        SubGraph {
            vertices: BTreeSet::from([v.to_string()]),
            edges: host.nbhd(v).iter().cloned().collect(),
        }
    }

    /// The whole tree as a subgraph of itself.
    pub fn whole(host: &Tree) -> SubGraph {
        SubGraph {
            vertices: host.vertices().cloned().collect(),
            edges: host.edges().clone(),
        }
    }

    pub fn validate(&self, host: &Tree) -> Result<(), SubGraphError> {
        if self.edges.is_empty() {
            return Err(SubGraphError::Empty);
        }
        for e in &self.edges {
            if !host.has_edge(e) {
                return Err(SubGraphError::NotInHost(e.clone()));
            }
        }
        for v in &self.vertices {
            if !host.has_vertex(v) {
                return Err(SubGraphError::NotInHost(v.clone()));
            }
            for e in host.nbhd(v) {
                if !self.edges.contains(e) {
                    return Err(SubGraphError::NotNbhdClosed(v.clone(), e.clone()));
                }
            }
        }
        // Edges must be covered: every edge touches an included vertex,
        // except in the single-edge case.
        if self.vertices.is_empty() {
            if self.edges.len() != 1 {
                return Err(SubGraphError::Disconnected);
            }
            return Ok(());
        }
        let covered: BTreeSet<&EdgeId> = self
            .vertices
            .iter()
            .flat_map(|v| host.nbhd(v).iter())
            .collect();
        for e in &self.edges {
            if !covered.contains(e) {
                return Err(SubGraphError::Disconnected);
            }
        }
        // Connectivity over included vertices (acyclicity is inherited from
        // the host tree).
        let ends = host.edge_ends();
        let start = self.vertices.iter().next().unwrap();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in host.nbhd(&v) {
                for w in &ends[e] {
                    if self.vertices.contains(w) && seen.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return Err(SubGraphError::Disconnected);
        }
        Ok(())
    }

    /// Legs of the subgraph: included edges incident to at most one included
    /// vertex.
    pub fn legs(&self, host: &Tree) -> BTreeSet<EdgeId> {
        let ends = host.edge_ends();
        self.edges
            .iter()
            .filter(|e| {
                ends[*e]
                    .iter()
                    .filter(|v| self.vertices.contains(*v))
                    .count()
                    < 2
            })
            .cloned()
            .collect()
    }

    pub fn interior(&self, host: &Tree) -> BTreeSet<EdgeId> {
        let legs = self.legs(host);
        self.edges.difference(&legs).cloned().collect()
    }

    /// The boundary multiset: e^2 for |_e, otherwise the legs each once.
    pub fn boundary(&self, host: &Tree) -> BoundaryMultiset {
        if self.vertices.is_empty() {
            let e = self.edges.iter().next().unwrap();
            return BTreeMap::from([(e.clone(), 2)]);
        }
        self.legs(host).into_iter().map(|e| (e, 1)).collect()
    }

    pub fn is_single_edge(&self) -> bool {
        self.vertices.is_empty() && self.edges.len() == 1
    }

    /// Linear subgraphs have only bivalent vertices.
    pub fn is_linear(&self, host: &Tree) -> bool {
        self.vertices.iter().all(|v| host.valence(v) == 2)
    }

    pub fn overlaps(&self, other: &SubGraph) -> bool {
        self.edges.intersection(&other.edges).next().is_some()
            || self.vertices.intersection(&other.vertices).next().is_some()
    }

    /// Union, defined only for overlapping subgraphs of the same host.
    pub fn union(&self, other: &SubGraph, host: &Tree) -> Result<SubGraph, SubGraphError> {
        if !self.overlaps(other) {
            return Err(SubGraphError::Disjoint);
        }
        let u = SubGraph {
            vertices: self.vertices.union(&other.vertices).cloned().collect(),
            edges: self.edges.union(&other.edges).cloned().collect(),
        };
        u.validate(host)?;
        Ok(u)
    }

    /// Intersection, when nonempty.
    pub fn intersection(&self, other: &SubGraph, host: &Tree) -> Result<SubGraph, SubGraphError> {
        let i = SubGraph {
            vertices: self.vertices.intersection(&other.vertices).cloned().collect(),
            edges: self.edges.intersection(&other.edges).cloned().collect(),
        };
        if i.edges.is_empty() && i.vertices.is_empty() {
            return Err(SubGraphError::Disjoint);
        }
        i.validate(host)?;
        Ok(i)
    }

    pub fn contains(&self, other: &SubGraph) -> bool {
        other.vertices.is_subset(&self.vertices) && other.edges.is_subset(&self.edges)
    }

    /// Promotes the subgraph to a standalone tree, inheriting neighborhood
    /// orders from the host. The leg ordering is the given one, or else the
    /// subgraph's legs sorted lexicographically (an arbitrary deterministic
    /// pinning).
    pub fn to_tree(&self, host: &Tree, leg_order: Option<Vec<EdgeId>>) -> Result<Tree, TreeError> {
        let legs = self.legs(host);
        let leg_order = leg_order.unwrap_or_else(|| legs.iter().cloned().collect());
        if self.vertices.is_empty() {
            let e = self.edges.iter().next().unwrap();
            return Tree::new([e.clone()], [], [e.clone()]);
        }
        Tree::new(
            self.edges.iter().cloned(),
            self.vertices
                .iter()
                .map(|v| (v.clone(), host.nbhd(v).to_vec())),
            leg_order,
        )
    }
}

/// Enumerates all subgraphs of a tree: every single edge plus one subgraph
/// per connected nonempty set of vertices.
pub fn all_subgraphs(host: &Tree) -> Vec<SubGraph> {
    let mut out: Vec<SubGraph> = host.edges().iter().map(|e| SubGraph::edge(e)).collect();
    let vertices: Vec<&VertexId> = host.vertices().collect();
    let n = vertices.len();
    assert!(n <= 30, "subgraph enumeration limited to small trees");
    let ends = host.edge_ends();
    for mask in 1u64..(1u64 << n) {
        let vs: BTreeSet<VertexId> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vertices[i].clone())
            .collect();
        let edges: BTreeSet<EdgeId> = vs.iter().flat_map(|v| host.nbhd(v).iter().cloned()).collect();
        let g = SubGraph { vertices: vs, edges };
        // Connectivity check mirrors validate but avoids redundant work.
        let start = g.vertices.iter().next().unwrap().clone();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in host.nbhd(&v) {
                for w in &ends[e] {
                    if g.vertices.contains(w) && seen.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
            }
        }
        if seen.len() == g.vertices.len() {
            out.push(g);
        }
    }
    out.sort();
    out
}

/// Index from boundary multisets to the subgraphs having that boundary;
/// the pruning table for morphism enumeration.
pub fn subgraphs_by_boundary(host: &Tree) -> BTreeMap<BoundaryMultiset, Vec<SubGraph>> {
    let mut map: BTreeMap<BoundaryMultiset, Vec<SubGraph>> = BTreeMap::new();
    for g in all_subgraphs(host) {
        map.entry(g.boundary(host)).or_default().push(g);
    }
    map
}
