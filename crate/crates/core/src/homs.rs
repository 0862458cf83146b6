//! Exhaustive hom-set enumeration between trees.
//!
//! The search walks the domain's edges in breadth-first order, assigning
//! phi0 values with backtracking. Edges, vertices and boundary multisets are
//! interned to small integers up front, so the hot loop touches only integer
//! arrays. As soon as a vertex's neighborhood is fully assigned it is pruned
//! against condition (1) and against the precomputed boundary-multiset index
//! of codomain subgraphs (condition (2)); partially assigned neighborhoods
//! are pruned when they cannot extend to any boundary. Completed edge maps
//! are extended by all disjoint choices of phi1 subgraphs.
//!
//! The same search core optionally enforces an orientation constraint (the
//! image of each vertex's marked edge must minimize a per-edge rank), which
//! the rooting-based enumeration uses to avoid filtering after the fact.
//!
//! Output is sorted in a canonical order, so the (optional) parallel split
//! over the first edge's value is observationally identical to the
//! sequential run.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::morphism::Morphism;
use crate::subgraph::{subgraphs_by_boundary, SubGraph};
use crate::tree::{EdgeId, Item, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("search space of {space} candidates exceeds the cap {cap}")]
    SizeBoundExceeded { space: u128, cap: u128 },
}

/// Knobs for enumeration: the candidate cap and whether to fan out across
/// threads. `parallel` has effect only when the `parallel` feature is on.
#[derive(Debug, Clone, Copy)]
pub struct EnumConfig {
    pub cap: u128,
    pub parallel: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            cap: 10_000_000,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

/// Codomain-only data for the search: the boundary-multiset index of its
/// subgraphs, interned to integers. Building this is the expensive part of a
/// search setup, so callers enumerating many domains against one codomain
/// (e.g. the rooting-based enumeration) compute it once and reuse it.
pub(crate) struct CodIndex {
    cod_edges: Vec<EdgeId>,
    cod_verts: Vec<VertexId>,
    /// Sorted boundary multiset (as interned edge indices) -> group index.
    by_key: HashMap<Vec<u32>, usize>,
    /// All boundary multisets, for partial feasibility checks.
    keys: Vec<Vec<u32>>,
    /// Subgraphs of each boundary group.
    group_subs: Vec<Vec<SubGraph>>,
    /// Interned vertex sets of each group's subgraphs, for disjointness.
    group_vsets: Vec<Vec<Vec<u32>>>,
}

impl CodIndex {
    pub(crate) fn new(cod: &Arc<Tree>) -> CodIndex {
        let cod_edges: Vec<EdgeId> = cod.edges().iter().cloned().collect();
        let edge_pos: BTreeMap<&EdgeId, u32> = cod_edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        let cod_verts: Vec<VertexId> = cod.vertices().cloned().collect();
        let vert_pos: BTreeMap<&VertexId, u32> = cod_verts
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        let mut by_key = HashMap::new();
        let mut keys = Vec::new();
        let mut group_subs = Vec::new();
        let mut group_vsets = Vec::new();
        for (bdy, subs) in subgraphs_by_boundary(cod) {
            let mut key: Vec<u32> = Vec::new();
            for (e, c) in &bdy {
                for _ in 0..*c {
                    key.push(edge_pos[e]);
                }
            }
            key.sort_unstable();
            let vsets: Vec<Vec<u32>> = subs
                .iter()
                .map(|g| g.vertices.iter().map(|w| vert_pos[w]).collect())
                .collect();
            by_key.insert(key.clone(), group_subs.len());
            keys.push(key);
            group_subs.push(subs);
            group_vsets.push(vsets);
        }
        CodIndex {
            cod_edges,
            cod_verts,
            by_key,
            keys,
            group_subs,
            group_vsets,
        }
    }

    /// Per-edge ranks aligned with this index's edge interning, from any
    /// map defined on all codomain edges (e.g. distances to a root leg).
    pub(crate) fn edge_ranks(&self, dist: &BTreeMap<EdgeId, usize>) -> Vec<u32> {
        self.cod_edges.iter().map(|e| dist[e] as u32).collect()
    }
}

/// Does the sorted multiset `sub` embed into the sorted multiset `key`?
fn contains_sub(key: &[u32], sub: &[u32]) -> bool {
    let mut i = 0;
    for &k in key {
        if i < sub.len() && sub[i] == k {
            i += 1;
        }
    }
    i == sub.len()
}

struct Search<'a> {
    dom: &'a Arc<Tree>,
    cod: &'a Arc<Tree>,
    /// Domain edges in BFS order; phi0 assigns positions in this order.
    order: Vec<EdgeId>,
    /// Domain vertices, in the interned order used by `nb_pos`.
    verts: Vec<VertexId>,
    /// Per vertex: positions in `order` of its neighborhood edges, in
    /// neighborhood order (marked edge first).
    nb_pos: Vec<Vec<usize>>,
    /// Per position: vertices incident to the edge assigned at that step.
    touch: Vec<Vec<usize>>,
    idx: &'a CodIndex,
    /// When set, the image of each vertex's marked edge must have minimal
    /// rank within the vertex's image neighborhood.
    orient: Option<&'a [u32]>,
}

impl<'a> Search<'a> {
    fn new(
        dom: &'a Arc<Tree>,
        cod: &'a Arc<Tree>,
        idx: &'a CodIndex,
        orient: Option<&'a [u32]>,
    ) -> Search<'a> {
        // BFS over the domain's incidence structure starting from the first leg.
        let ends = dom.edge_ends();
        let mut order: Vec<EdgeId> = Vec::new();
        let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
        let mut queue: VecDeque<Item> = VecDeque::new();
        queue.push_back(Item::Edge(dom.leg_order()[0].clone()));
        let mut seen_v: BTreeSet<VertexId> = BTreeSet::new();
        while let Some(item) = queue.pop_front() {
            match item {
                Item::Edge(e) => {
                    if seen.insert(e.clone()) {
                        order.push(e.clone());
                        for v in &ends[&e] {
                            if seen_v.insert(v.clone()) {
                                queue.push_back(Item::Vertex(v.clone()));
                            }
                        }
                    }
                }
                Item::Vertex(v) => {
                    for e in dom.nbhd(&v) {
                        if !seen.contains(e) {
                            queue.push_back(Item::Edge(e.clone()));
                        }
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), dom.edges().len());
        let pos: BTreeMap<&EdgeId, usize> = order.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let verts: Vec<VertexId> = dom.nbhd_map().keys().cloned().collect();
        let vpos: BTreeMap<&VertexId, usize> = verts
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let nb_pos: Vec<Vec<usize>> = verts
            .iter()
            .map(|v| dom.nbhd(v).iter().map(|e| pos[e]).collect())
            .collect();
        let touch: Vec<Vec<usize>> = order
            .iter()
            .map(|e| ends[e].iter().map(|v| vpos[v]).collect())
            .collect();
        Search {
            dom,
            cod,
            order,
            verts,
            nb_pos,
            touch,
            idx,
            orient,
        }
    }

    /// Extends a partial phi0 (one value per position in `order`), collecting
    /// morphisms.
    fn go(&self, depth: usize, phi0: &mut Vec<u32>, out: &mut Vec<Morphism>) {
        if depth == self.order.len() {
            self.finish(phi0, out);
            return;
        }
        for val in 0..self.idx.cod_edges.len() as u32 {
            phi0.push(val);
            if self.feasible(depth, phi0) {
                self.go(depth + 1, phi0, out);
            }
            phi0.pop();
        }
    }

    /// Checks conditions that became decidable when position `depth` was
    /// assigned. Positions `<= depth` of phi0 are assigned.
    fn feasible(&self, depth: usize, phi0: &[u32]) -> bool {
        for &vi in &self.touch[depth] {
            let nbp = &self.nb_pos[vi];
            let mut buf = [0u32; 32];
            let mut heap;
            let have: &mut [u32] = if nbp.len() <= 32 {
                &mut buf[..nbp.len()]
            } else {
                heap = vec![0u32; nbp.len()];
                &mut heap
            };
            let mut n = 0usize;
            for &p in nbp {
                if p <= depth {
                    have[n] = phi0[p];
                    n += 1;
                }
            }
            let have = &mut have[..n];
            // Orientation: the marked edge's image must have minimal rank.
            // (A violation among assigned edges can never be repaired.)
            if let Some(rank) = self.orient {
                let mp = nbp[0];
                if mp <= depth {
                    let r0 = rank[phi0[mp] as usize];
                    for &p in &nbp[1..] {
                        if p <= depth && rank[phi0[p] as usize] < r0 {
                            return false;
                        }
                    }
                }
            }
            have.sort_unstable();
            // Partial injectivity: valence-2 vertices may collapse their two
            // edges (the single-edge subgraph has boundary {e, e}); all other
            // collisions are fatal.
            if nbp.len() != 2 && have.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            if n == nbp.len() {
                // Neighborhood complete: its image must be the boundary of
                // some codomain subgraph, exactly.
                if !self.idx.by_key.contains_key(have as &[u32]) {
                    return false;
                }
            } else if !self.idx.keys.iter().any(|k| contains_sub(k, have)) {
                // The assigned values must extend to some boundary.
                return false;
            }
        }
        true
    }

    /// All ways of picking pairwise vertex-disjoint phi1 subgraphs.
    fn finish(&self, phi0: &[u32], out: &mut Vec<Morphism>) {
        let groups: Vec<usize> = self
            .nb_pos
            .iter()
            .map(|nbp| {
                let mut want: Vec<u32> = nbp.iter().map(|&p| phi0[p]).collect();
                want.sort_unstable();
                self.idx.by_key[want.as_slice()]
            })
            .collect();
        let mut used = vec![false; self.idx.cod_verts.len()];
        let mut choice: Vec<usize> = Vec::with_capacity(groups.len());
        self.pick(phi0, &groups, &mut choice, &mut used, out);
    }

    fn pick(
        &self,
        phi0: &[u32],
        groups: &[usize],
        choice: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Morphism>,
    ) {
        let i = choice.len();
        if i == groups.len() {
            self.emit(phi0, groups, choice, out);
            return;
        }
        'cand: for (si, vset) in self.idx.group_vsets[groups[i]].iter().enumerate() {
            for &w in vset {
                if used[w as usize] {
                    continue 'cand;
                }
            }
            for &w in vset {
                used[w as usize] = true;
            }
            choice.push(si);
            self.pick(phi0, groups, choice, used, out);
            choice.pop();
            for &w in vset {
                used[w as usize] = false;
            }
        }
    }

    fn emit(&self, phi0: &[u32], groups: &[usize], choice: &[usize], out: &mut Vec<Morphism>) {
        let phi0_map: BTreeMap<EdgeId, EdgeId> = self
            .order
            .iter()
            .enumerate()
            .map(|(p, e)| (e.clone(), self.idx.cod_edges[phi0[p] as usize].clone()))
            .collect();
        let phi1: BTreeMap<VertexId, SubGraph> = self
            .verts
            .iter()
            .enumerate()
            .map(|(vi, v)| (v.clone(), self.idx.group_subs[groups[vi]][choice[vi]].clone()))
            .collect();
        // Conditions (1)-(3) are enforced during the search: injectivity and
        // exact boundary matching at neighborhood completion, vertex
        // disjointness during subgraph selection.
        out.push(Morphism::new_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            phi0_map,
            phi1,
        ));
    }
}

/// All morphisms dom -> cod, canonically ordered. This is the oracle the
/// structured (rooting-based) enumeration is checked against.
pub fn enumerate_homs_bruteforce(
    dom: &Arc<Tree>,
    cod: &Arc<Tree>,
    cfg: &EnumConfig,
) -> Result<Vec<Morphism>, EnumError> {
    enumerate_homs_bruteforce_indexed(dom, cod, &CodIndex::new(cod), cfg)
}

/// As [`enumerate_homs_bruteforce`], reusing a precomputed codomain index.
pub(crate) fn enumerate_homs_bruteforce_indexed(
    dom: &Arc<Tree>,
    cod: &Arc<Tree>,
    idx: &CodIndex,
    cfg: &EnumConfig,
) -> Result<Vec<Morphism>, EnumError> {
    run_search(dom, cod, idx, None, cfg)
}

/// All morphisms whose per-vertex marked-edge image minimizes `ranks`
/// (indexed as in `idx`) within the vertex's image neighborhood. With ranks
/// taken as distances to the codomain root, these are exactly the oriented
/// maps between rooted trees.
pub(crate) fn enumerate_homs_oriented_indexed(
    dom: &Arc<Tree>,
    cod: &Arc<Tree>,
    idx: &CodIndex,
    ranks: &[u32],
    cfg: &EnumConfig,
) -> Result<Vec<Morphism>, EnumError> {
    run_search(dom, cod, idx, Some(ranks), cfg)
}

fn run_search(
    dom: &Arc<Tree>,
    cod: &Arc<Tree>,
    idx: &CodIndex,
    orient: Option<&[u32]>,
    cfg: &EnumConfig,
) -> Result<Vec<Morphism>, EnumError> {
    let space = (cod.edges().len() as u128)
        .checked_pow(dom.edges().len() as u32)
        .unwrap_or(u128::MAX);
    if space > cfg.cap {
        return Err(EnumError::SizeBoundExceeded { space, cap: cfg.cap });
    }
    let search = Search::new(dom, cod, idx, orient);

    #[cfg(feature = "parallel")]
    let mut out: Vec<Morphism> = if cfg.parallel {
        (0..search.idx.cod_edges.len() as u32)
            .into_par_iter()
            .map(|val| {
                let mut phi0 = vec![val];
                let mut part = Vec::new();
                if search.feasible(0, &phi0) {
                    search.go(1, &mut phi0, &mut part);
                }
                part
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    } else {
        let mut all = Vec::new();
        search.go(0, &mut Vec::new(), &mut all);
        all
    };

    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<Morphism> = {
        let mut all = Vec::new();
        search.go(0, &mut Vec::new(), &mut all);
        all
    };

    // Domain and codomain are constant across the set, so order by the maps
    // alone (comparing shared trees repeatedly is needlessly expensive).
    out.sort_by(|a, b| a.phi0().cmp(b.phi0()).then_with(|| a.phi1().cmp(b.phi1())));
    out.dedup_by(|a, b| a.phi0() == b.phi0() && a.phi1() == b.phi1());
    Ok(out)
}
