//! Unrooted trees with legs.
//!
//! A tree here is a finite contractible graph whose edges may dangle: an edge
//! belongs to at most two vertex neighborhoods, and the edges appearing in at
//! most one neighborhood are the *legs*. Every tree carries a total ordering
//! of each vertex neighborhood (`nbhd`, position 0 is the marked edge) and a
//! total ordering of its legs (`leg_order`). The one-edge, zero-vertex tree
//! is written `eta`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

pub type EdgeId = String;
pub type VertexId = String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("edge {0} appears in more than 2 neighborhoods")]
    IncidenceViolation(EdgeId),
    #[error("graph is not contractible: {0}")]
    NotContractible(String),
    #[error("tree has no legs")]
    NoLegs,
    #[error("bad ordering data: {0}")]
    BadOrdering(String),
}

/// A letter of a path: an edge or a vertex of the ambient tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Edge(EdgeId),
    Vertex(VertexId),
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Edge(e) => write!(f, "{e}"),
            Item::Vertex(v) => write!(f, "{v}"),
        }
    }
}

/// An alternating edge/vertex word; consecutive letters are incident.
pub type Path = Vec<Item>;

/// A finite unrooted tree with legs and chosen orderings.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    edges: BTreeSet<EdgeId>,
    nbhd: BTreeMap<VertexId, Vec<EdgeId>>,
    leg_order: Vec<EdgeId>,
}

impl Tree {
    /// Validates raw data and builds a tree.
    pub fn new(
        edges: impl IntoIterator<Item = EdgeId>,
        nbhd: impl IntoIterator<Item = (VertexId, Vec<EdgeId>)>,
        leg_order: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Tree, TreeError> {
        let t = Tree {
            edges: edges.into_iter().collect(),
            nbhd: nbhd.into_iter().collect(),
            leg_order: leg_order.into_iter().collect(),
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), TreeError> {
        if self.edges.is_empty() {
            return Err(TreeError::NotContractible("no edges".into()));
        }
        // Neighborhood sanity: listed edges exist, no duplicates.
        let mut incidence: BTreeMap<&EdgeId, u32> = BTreeMap::new();
        for (v, nb) in &self.nbhd {
            if nb.is_empty() {
                return Err(TreeError::BadOrdering(format!("vertex {v} has empty neighborhood")));
            }
            let mut seen = BTreeSet::new();
            for e in nb {
                if !self.edges.contains(e) {
                    return Err(TreeError::BadOrdering(format!(
                        "neighborhood of {v} lists unknown edge {e}"
                    )));
                }
                if !seen.insert(e) {
                    return Err(TreeError::BadOrdering(format!(
                        "neighborhood of {v} lists edge {e} twice"
                    )));
                }
                *incidence.entry(e).or_default() += 1;
            }
        }
        for (e, n) in &incidence {
            if *n > 2 {
                return Err(TreeError::IncidenceViolation((*e).clone()));
            }
        }
        let legs: BTreeSet<EdgeId> = self
            .edges
            .iter()
            .filter(|e| incidence.get(e).copied().unwrap_or(0) <= 1)
            .cloned()
            .collect();
        if legs.is_empty() {
            return Err(TreeError::NoLegs);
        }
        if self.nbhd.is_empty() {
            // The vertex-free case must be eta: a single edge, listed once.
            if self.edges.len() != 1 {
                return Err(TreeError::NotContractible(
                    "multiple edges but no vertices".into(),
                ));
            }
            if self.leg_order.len() != 1 || &self.leg_order[0] != self.edges.iter().next().unwrap()
            {
                return Err(TreeError::BadOrdering(
                    "eta must list its single edge once in legOrder".into(),
                ));
            }
            return Ok(());
        }
        // Every edge must touch a vertex (a floating edge would be a second
        // component), and the graph must be connected and acyclic.
        for e in &self.edges {
            if incidence.get(e).copied().unwrap_or(0) == 0 {
                return Err(TreeError::NotContractible(format!(
                    "edge {e} is incident to no vertex"
                )));
            }
        }
        let n_interior = self.edges.len() - legs.len();
        if n_interior != self.nbhd.len() - 1 {
            return Err(TreeError::NotContractible(format!(
                "|interior| = {} but |vertices| - 1 = {}",
                n_interior,
                self.nbhd.len() - 1
            )));
        }
        // Connectivity BFS over vertices through interior edges.
        let ends = self.edge_ends();
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let start = self.nbhd.keys().next().unwrap();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for e in &self.nbhd[v] {
                for w in &ends[e] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        if seen.len() != self.nbhd.len() {
            return Err(TreeError::NotContractible("graph is disconnected".into()));
        }
        // legOrder must be a bijection onto the legs.
        let lo: BTreeSet<EdgeId> = self.leg_order.iter().cloned().collect();
        if lo.len() != self.leg_order.len() || lo != legs {
            return Err(TreeError::BadOrdering(
                "legOrder is not a bijection onto the legs".into(),
            ));
        }
        Ok(())
    }

    /// The tree with one edge named `e` and no vertices.
    pub fn eta() -> Tree {
        Tree::eta_named("e")
    }

    /// An eta tree with a chosen edge name.
    pub fn eta_named(e: &str) -> Tree {
        Tree {
            edges: BTreeSet::from([e.to_string()]),
            nbhd: BTreeMap::new(),
            leg_order: vec![e.to_string()],
        }
    }

    /// The star with one vertex `v` and `n >= 1` edges named `0..n-1`.
    pub fn star(n: usize) -> Tree {
        assert!(n >= 1, "star requires n >= 1");
        let edges: Vec<EdgeId> = (0..n).map(|i| i.to_string()).collect();
        Tree {
            edges: edges.iter().cloned().collect(),
            nbhd: BTreeMap::from([("v".to_string(), edges.clone())]),
            leg_order: edges,
        }
    }

    /// The linear tree with `n` bivalent vertices `v1..vn` and edges `e0..en`;
    /// `linear(0)` is isomorphic to eta.
    pub fn linear(n: usize) -> Tree {
        if n == 0 {
            return Tree::eta_named("e0");
        }
        let edge = |i: usize| format!("e{i}");
        let edges: BTreeSet<EdgeId> = (0..=n).map(edge).collect();
        let nbhd: BTreeMap<VertexId, Vec<EdgeId>> = (1..=n)
            .map(|i| (format!("v{i}"), vec![edge(i - 1), edge(i)]))
            .collect();
        Tree {
            edges,
            nbhd,
            leg_order: vec![edge(0), edge(n)],
        }
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.nbhd.keys()
    }

    pub fn vertex_count(&self) -> usize {
        self.nbhd.len()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.nbhd.contains_key(v)
    }

    pub fn has_edge(&self, e: &str) -> bool {
        self.edges.contains(e)
    }

    /// The ordered neighborhood of a vertex (position i realizes ord^v(i)).
    pub fn nbhd(&self, v: &str) -> &[EdgeId] {
        &self.nbhd[v]
    }

    pub fn nbhd_map(&self) -> &BTreeMap<VertexId, Vec<EdgeId>> {
        &self.nbhd
    }

    /// The leg ordering (position i realizes ord(i)).
    pub fn leg_order(&self) -> &[EdgeId] {
        &self.leg_order
    }

    /// Vertices incident to each edge (0, 1 or 2 of them).
    pub fn edge_ends(&self) -> BTreeMap<EdgeId, Vec<VertexId>> {
        let mut ends: BTreeMap<EdgeId, Vec<VertexId>> =
            self.edges.iter().map(|e| (e.clone(), Vec::new())).collect();
        for (v, nb) in &self.nbhd {
            for e in nb {
                ends.get_mut(e).unwrap().push(v.clone());
            }
        }
        ends
    }

    pub fn legs(&self) -> BTreeSet<EdgeId> {
        self.leg_order.iter().cloned().collect()
    }

    pub fn is_leg(&self, e: &str) -> bool {
        self.leg_order.iter().any(|l| l == e)
    }

    pub fn interior(&self) -> BTreeSet<EdgeId> {
        let legs = self.legs();
        self.edges.difference(&legs).cloned().collect()
    }

    /// Valence |v| = number of edges at v.
    pub fn valence(&self, v: &str) -> usize {
        self.nbhd[v].len()
    }

    /// True when every vertex is bivalent (eta and single edges count as linear).
    pub fn is_linear(&self) -> bool {
        self.nbhd.values().all(|nb| nb.len() == 2)
    }

    /// The unique repetition-free path between two items, as an alternating
    /// edge/vertex word including both endpoints.
    pub fn minimal_path(&self, x: &Item, y: &Item) -> Path {
        if x == y {
            return vec![x.clone()];
        }
        let ends = self.edge_ends();
        let mut prev: BTreeMap<Item, Item> = BTreeMap::new();
        let mut queue = VecDeque::from([x.clone()]);
        let mut seen = BTreeSet::from([x.clone()]);
        'bfs: while let Some(cur) = queue.pop_front() {
            let nexts: Vec<Item> = match &cur {
                Item::Edge(e) => ends[e].iter().cloned().map(Item::Vertex).collect(),
                Item::Vertex(v) => self.nbhd[v].iter().cloned().map(Item::Edge).collect(),
            };
            for nx in nexts {
                if seen.insert(nx.clone()) {
                    prev.insert(nx.clone(), cur.clone());
                    if &nx == y {
                        break 'bfs;
                    }
                    queue.push_back(nx);
                }
            }
        }
        let mut path = vec![y.clone()];
        while let Some(p) = prev.get(path.last().unwrap()) {
            path.push(p.clone());
        }
        assert_eq!(path.last(), Some(x), "items not connected in tree");
        path.reverse();
        path
    }

    /// d(x, y) = (|P| - 1) / 2 for the minimal path P; both items must be
    /// edges or both vertices so the count is integral.
    pub fn distance(&self, x: &Item, y: &Item) -> usize {
        debug_assert!(matches!(
            (x, y),
            (Item::Edge(_), Item::Edge(_)) | (Item::Vertex(_), Item::Vertex(_))
        ));
        (self.minimal_path(x, y).len() - 1) / 2
    }

    /// Edge-to-edge distance (the common case).
    pub fn edge_distance(&self, a: &str, b: &str) -> usize {
        self.distance(&Item::Edge(a.to_string()), &Item::Edge(b.to_string()))
    }

    /// Rebuilds the tree with given orderings, without revalidating structure.
    pub(crate) fn with_orders(
        &self,
        nbhd: BTreeMap<VertexId, Vec<EdgeId>>,
        leg_order: Vec<EdgeId>,
    ) -> Tree {
        let t = Tree {
            edges: self.edges.clone(),
            nbhd,
            leg_order,
        };
        debug_assert_eq!(t.validate(), Ok(()));
        t
    }
}

/// Node color of the red/white/black incidence graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwbColor {
    /// Leg end (univalent).
    Red,
    /// Interior edge midpoint (bivalent).
    White,
    /// Tree vertex.
    Black,
}

/// The ordinary colored graph presentation of a tree: black nodes are the
/// vertices, white nodes subdivide interior edges, red nodes end the legs.
/// Adjacency lists of black nodes keep the neighborhood order, so the
/// original tree can be reconstructed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RwbGraph {
    /// (label, color); labels reuse the tree's edge/vertex ids.
    pub nodes: Vec<(String, RwbColor)>,
    /// Ordered adjacency, indices into `nodes`.
    pub adj: Vec<Vec<usize>>,
    /// Leg labels in legOrder order.
    pub leg_order: Vec<String>,
}

impl Tree {
    pub fn to_rwb(&self) -> RwbGraph {
        let mut nodes = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let ends = self.edge_ends();
        for v in self.nbhd.keys() {
            index.insert(v.clone(), nodes.len());
            nodes.push((v.clone(), RwbColor::Black));
        }
        for e in &self.edges {
            let color = if ends[e].len() == 2 { RwbColor::White } else { RwbColor::Red };
            index.insert(e.clone(), nodes.len());
            nodes.push((e.clone(), color));
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        if self.nbhd.is_empty() {
            // eta: one edge with two red ends, drawn as a red node plus a
            // second anonymous red end.
            let e = self.edges.iter().next().unwrap();
            nodes.push((format!("{e}'"), RwbColor::Red));
            adj = vec![Vec::new(); nodes.len()];
            adj[index[e]].push(nodes.len() - 1);
            adj[nodes.len() - 1].push(index[e]);
        } else {
            for (v, nb) in &self.nbhd {
                for e in nb {
                    adj[index[v]].push(index[e]);
                    adj[index[e]].push(index[v]);
                }
            }
        }
        RwbGraph {
            nodes,
            adj,
            leg_order: self.leg_order.clone(),
        }
    }

    /// GraphViz DOT rendering of the rwb graph.
    pub fn to_dot(&self) -> String {
        let g = self.to_rwb();
        let mut out = String::from("graph rwb {\n  node [style=filled];\n");
        for (i, (label, color)) in g.nodes.iter().enumerate() {
            let (fill, font) = match color {
                RwbColor::Red => ("red", "white"),
                RwbColor::White => ("white", "black"),
                RwbColor::Black => ("black", "white"),
            };
            out.push_str(&format!(
                "  n{i} [label=\"{label}\", fillcolor={fill}, fontcolor={font}];\n"
            ));
        }
        for (i, nbrs) in g.adj.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    out.push_str(&format!("  n{i} -- n{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl RwbGraph {
    /// Reconstructs the tree this graph presents.
    pub fn to_tree(&self) -> Result<Tree, TreeError> {
        let blacks: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].1 == RwbColor::Black)
            .collect();
        if blacks.is_empty() {
            // eta
            let e = self
                .nodes
                .iter()
                .find(|(_, c)| *c == RwbColor::Red)
                .map(|(l, _)| l.clone())
                .ok_or(TreeError::NoLegs)?;
            return Tree::new([e.clone()], [], [e]);
        }
        let mut edges = BTreeSet::new();
        let mut nbhd = BTreeMap::new();
        for &b in &blacks {
            let (label, _) = &self.nodes[b];
            let nb: Vec<EdgeId> = self.adj[b]
                .iter()
                .map(|&j| self.nodes[j].0.clone())
                .collect();
            edges.extend(nb.iter().cloned());
            nbhd.insert(label.clone(), nb);
        }
        Tree::new(edges, nbhd, self.leg_order.clone())
    }
}
