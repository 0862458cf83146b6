//! Morphisms of the category of unrooted trees, in both formalisms.
//!
//! A morphism R -> S is a pair: an edge map phi0 and a vertex-to-subgraph map
//! phi1, subject to three conditions:
//!   (1) phi0 is injective on nbhd(v) whenever |v| != 2;
//!   (2) the multiset phi0(nbhd(v)) equals the boundary of phi1(v);
//!   (3) the vertex sets of phi1(v), phi1(w) are disjoint for v != w.
//! The equivalent *complete* form acts on all subgraphs at once and is
//! compatible with boundaries, overlap, unions and intersections.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::subgraph::{all_subgraphs, BoundaryMultiset, SubGraph};
use crate::tree::{EdgeId, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("phi0 not injective on the neighborhood of {vertex}: {e1} and {e2} both map to {to}")]
    NonInjectiveAtVertex {
        vertex: VertexId,
        e1: EdgeId,
        e2: EdgeId,
        to: EdgeId,
    },
    #[error("legs of phi1({vertex}) do not match phi0 of its neighborhood")]
    LegMismatch { vertex: VertexId },
    #[error("phi1({v}) and phi1({w}) share a vertex")]
    VertexOverlap { v: VertexId, w: VertexId },
    #[error("map is not total or mentions unknown ids: {0}")]
    NotTotal(String),
    #[error("invalid subgraph at {vertex}: {reason}")]
    BadSubGraph { vertex: VertexId, reason: String },
    #[error("composition domain mismatch")]
    DomainMismatch,
    #[error("complete morphism violates {0}")]
    NotComplete(String),
}

/// A morphism of trees. Immutable; the underlying trees are shared.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    dom: Arc<Tree>,
    cod: Arc<Tree>,
    phi0: BTreeMap<EdgeId, EdgeId>,
    phi1: BTreeMap<VertexId, SubGraph>,
}

impl Morphism {
    pub fn new(
        dom: Arc<Tree>,
        cod: Arc<Tree>,
        phi0: BTreeMap<EdgeId, EdgeId>,
        phi1: BTreeMap<VertexId, SubGraph>,
    ) -> Result<Morphism, MorphismError> {
        let m = Morphism { dom, cod, phi0, phi1 };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), MorphismError> {
        // Totality of phi0 and phi1.
        let dom_edges: BTreeSet<&EdgeId> = self.dom.edges().iter().collect();
        let mapped: BTreeSet<&EdgeId> = self.phi0.keys().collect();
        if dom_edges != mapped {
            return Err(MorphismError::NotTotal("phi0".into()));
        }
        for to in self.phi0.values() {
            if !self.cod.has_edge(to) {
                return Err(MorphismError::NotTotal(format!("phi0 hits unknown edge {to}")));
            }
        }
        let dom_vs: BTreeSet<&VertexId> = self.dom.vertices().collect();
        let mapped_vs: BTreeSet<&VertexId> = self.phi1.keys().collect();
        if dom_vs != mapped_vs {
            return Err(MorphismError::NotTotal("phi1".into()));
        }
        for (v, g) in &self.phi1 {
            g.validate(&self.cod).map_err(|e| MorphismError::BadSubGraph {
                vertex: v.clone(),
                reason: e.to_string(),
            })?;
        }
        // (1) injectivity at non-bivalent vertices.
        for (v, nb) in self.dom.nbhd_map() {
            if nb.len() != 2 {
                let mut seen: BTreeMap<&EdgeId, &EdgeId> = BTreeMap::new();
                for e in nb {
                    let to = &self.phi0[e];
                    if let Some(prev) = seen.insert(to, e) {
                        return Err(MorphismError::NonInjectiveAtVertex {
                            vertex: v.clone(),
                            e1: prev.clone(),
                            e2: e.clone(),
                            to: to.clone(),
                        });
                    }
                }
            }
        }
        // (2) boundary matching, as multisets.
        for (v, nb) in self.dom.nbhd_map() {
            let mut want: BoundaryMultiset = BTreeMap::new();
            for e in nb {
                *want.entry(self.phi0[e].clone()).or_default() += 1;
            }
            if self.phi1[v].boundary(&self.cod) != want {
                return Err(MorphismError::LegMismatch { vertex: v.clone() });
            }
        }
        // (3) pairwise vertex disjointness.
        let mut owner: BTreeMap<&VertexId, &VertexId> = BTreeMap::new();
        for (v, g) in &self.phi1 {
            for w in &g.vertices {
                if let Some(prev) = owner.insert(w, v) {
                    return Err(MorphismError::VertexOverlap {
                        v: prev.clone(),
                        w: v.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Constructs without re-validating. For internal callers whose data is
    /// valid by construction (search output, composites of valid morphisms,
    /// order-only re-pinnings): validity of a morphism depends only on the
    /// unordered incidence structure, so these cannot go wrong structurally,
    /// and re-validation dominated enumeration profiles.
    pub(crate) fn new_unchecked(
        dom: Arc<Tree>,
        cod: Arc<Tree>,
        phi0: BTreeMap<EdgeId, EdgeId>,
        phi1: BTreeMap<VertexId, SubGraph>,
    ) -> Morphism {
        Morphism { dom, cod, phi0, phi1 }
    }

    pub fn identity(t: Arc<Tree>) -> Morphism {
        let phi0 = t.edges().iter().map(|e| (e.clone(), e.clone())).collect();
        let phi1 = t
            .vertices()
            .map(|v| (v.clone(), SubGraph::star(&t, v)))
            .collect();
        Morphism {
            dom: t.clone(),
            cod: t,
            phi0,
            phi1,
        }
    }

    /// True when this is the identity on its (shared) domain/codomain.
    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self == &Morphism::identity(self.dom.clone())
    }

    pub fn dom(&self) -> &Arc<Tree> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Tree> {
        &self.cod
    }

    pub fn phi0(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.phi0
    }

    pub fn phi1(&self) -> &BTreeMap<VertexId, SubGraph> {
        &self.phi1
    }

    pub fn apply0(&self, e: &str) -> &EdgeId {
        &self.phi0[e]
    }

    pub fn apply1(&self, v: &str) -> &SubGraph {
        &self.phi1[v]
    }

    /// The image subgraph: the single edge phi0(e) for a vertex-free domain,
    /// else the union of all phi1(v).
    pub fn image(&self) -> SubGraph {
        if self.phi1.is_empty() {
            return SubGraph::edge(self.phi0.values().next().unwrap());
        }
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for g in self.phi1.values() {
            vertices.extend(g.vertices.iter().cloned());
            edges.extend(g.edges.iter().cloned());
        }
        let img = SubGraph { vertices, edges };
        debug_assert_eq!(img.validate(&self.cod), Ok(()));
        img
    }

    /// image(phi |_T) for a subgraph T of the domain.
    pub fn image_restricted(&self, t: &SubGraph) -> SubGraph {
        if t.vertices.is_empty() {
            let e = t.edges.iter().next().unwrap();
            return SubGraph::edge(&self.phi0[e]);
        }
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for v in &t.vertices {
            let g = &self.phi1[v];
            vertices.extend(g.vertices.iter().cloned());
            edges.extend(g.edges.iter().cloned());
        }
        SubGraph { vertices, edges }
    }

    /// psi after phi.
    pub fn compose(psi: &Morphism, phi: &Morphism) -> Result<Morphism, MorphismError> {
        if psi.dom.as_ref() != phi.cod.as_ref() {
            return Err(MorphismError::DomainMismatch);
        }
        let phi0 = phi
            .phi0
            .iter()
            .map(|(e, m)| (e.clone(), psi.phi0[m].clone()))
            .collect();
        let phi1 = phi
            .phi1
            .iter()
            .map(|(v, g)| (v.clone(), psi.image_restricted(g)))
            .collect();
        // Composites of valid morphisms are valid, so skip re-validation.
        Ok(Morphism::new_unchecked(
            phi.dom.clone(),
            psi.cod.clone(),
            phi0,
            phi1,
        ))
    }

    /// Isomorphisms: phi0 bijective and phi1 lands in single-vertex stars,
    /// bijectively on vertices.
    pub fn is_isomorphism(&self) -> bool {
        let img: BTreeSet<&EdgeId> = self.phi0.values().collect();
        if img.len() != self.phi0.len() || img.len() != self.cod.edges().len() {
            return false;
        }
        let mut hit = BTreeSet::new();
        for g in self.phi1.values() {
            if g.vertices.len() != 1 {
                return false;
            }
            let w = g.vertices.iter().next().unwrap();
            if g != &SubGraph::star(&self.cod, w) || !hit.insert(w.clone()) {
                return false;
            }
        }
        hit.len() == self.cod.vertex_count()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let phi0: BTreeMap<EdgeId, EdgeId> =
            self.phi0.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let vmap: BTreeMap<VertexId, VertexId> = self
            .phi1
            .iter()
            .map(|(v, g)| (g.vertices.iter().next().unwrap().clone(), v.clone()))
            .collect();
        let phi1 = vmap
            .iter()
            .map(|(w, v)| (w.clone(), SubGraph::star(&self.dom, v)))
            .collect();
        Some(Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            phi0,
            phi1,
        })
    }

    /// Constant morphisms factor through the vertex-free tree: the image is a
    /// single edge.
    pub fn is_constant(&self) -> bool {
        self.image().is_single_edge()
    }

    /// The constant morphism onto the edge `e` of `cod`; only linear domains
    /// admit one.
    pub fn constant(dom: Arc<Tree>, cod: Arc<Tree>, e: &str) -> Result<Morphism, MorphismError> {
        let phi0 = dom.edges().iter().map(|x| (x.clone(), e.to_string())).collect();
        let phi1 = dom
            .vertices()
            .map(|v| (v.clone(), SubGraph::edge(e)))
            .collect();
        Morphism::new(dom, cod, phi0, phi1)
    }

    /// The inclusion of a subgraph, as a morphism from its standalone tree.
    /// `sub_tree` must be a promotion of `sub` (same edge/vertex ids).
    pub fn inclusion(sub_tree: Arc<Tree>, sub: &SubGraph, host: Arc<Tree>) -> Morphism {
        debug_assert_eq!(
            sub_tree.edges().iter().cloned().collect::<BTreeSet<_>>(),
            sub.edges
        );
        let phi0 = sub.edges.iter().map(|e| (e.clone(), e.clone())).collect();
        let phi1 = sub
            .vertices
            .iter()
            .map(|v| (v.clone(), SubGraph::star(&host, v)))
            .collect();
        let m = Morphism {
            dom: sub_tree,
            cod: host,
            phi0,
            phi1,
        };
        debug_assert_eq!(m.validate(), Ok(()));
        m
    }

    pub fn to_complete(&self) -> CompleteMorphism {
        let alpha1 = all_subgraphs(&self.dom)
            .into_iter()
            .map(|t| {
                let img = self.image_restricted(&t);
                (t, img)
            })
            .collect();
        CompleteMorphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            alpha0: self.phi0.clone(),
            alpha1,
        }
    }
}

/// The lattice-map form of a morphism: an edge map plus a total map on
/// subgraphs compatible with boundaries, overlap, unions and intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteMorphism {
    pub dom: Arc<Tree>,
    pub cod: Arc<Tree>,
    pub alpha0: BTreeMap<EdgeId, EdgeId>,
    pub alpha1: BTreeMap<SubGraph, SubGraph>,
}

impl CompleteMorphism {
    pub fn validate(&self) -> Result<(), MorphismError> {
        let expected: BTreeSet<SubGraph> = all_subgraphs(&self.dom).into_iter().collect();
        let got: BTreeSet<SubGraph> = self.alpha1.keys().cloned().collect();
        if expected != got {
            return Err(MorphismError::NotComplete(
                "alpha1 is not total on subgraphs".into(),
            ));
        }
        for (t, img) in &self.alpha1 {
            img.validate(&self.cod)
                .map_err(|e| MorphismError::NotComplete(format!("image invalid: {e}")))?;
            // Boundary compatibility: boundary of the image equals the
            // multiset image of the boundary.
            let mut want: BoundaryMultiset = BTreeMap::new();
            for (e, n) in t.boundary(&self.dom) {
                *want.entry(self.alpha0[&e].clone()).or_default() += n;
            }
            if img.boundary(&self.cod) != want {
                return Err(MorphismError::NotComplete(
                    "boundary compatibility fails".into(),
                ));
            }
        }
        // Overlap, union and intersection preservation.
        let subs: Vec<&SubGraph> = self.alpha1.keys().collect();
        for (i, a) in subs.iter().enumerate() {
            for b in subs.iter().skip(i + 1) {
                if !a.overlaps(b) {
                    continue;
                }
                let (ia, ib) = (&self.alpha1[*a], &self.alpha1[*b]);
                if !ia.overlaps(ib) {
                    return Err(MorphismError::NotComplete("overlap not preserved".into()));
                }
                let union = a.union(b, &self.dom).unwrap();
                if self.alpha1[&union] != ia.union(ib, &self.cod).unwrap() {
                    return Err(MorphismError::NotComplete("union not preserved".into()));
                }
                if let Ok(inter) = a.intersection(b, &self.dom) {
                    if self.alpha1[&inter] != ia.intersection(ib, &self.cod).unwrap() {
                        return Err(MorphismError::NotComplete(
                            "intersection not preserved".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Recovers the kernel form by precomposition with stars.
    pub fn to_morphism(&self) -> Result<Morphism, MorphismError> {
        let phi1 = self
            .dom
            .vertices()
            .map(|v| (v.clone(), self.alpha1[&SubGraph::star(&self.dom, v)].clone()))
            .collect();
        Morphism::new(
            self.dom.clone(),
            self.cod.clone(),
            self.alpha0.clone(),
            phi1,
        )
    }
}

/// Assertions the paper proves for every morphism; used as test properties
/// on enumerated hom-sets.
pub fn check_morphism_lemmas(m: &Morphism) {
    let cod = m.cod();
    let image_edges: BTreeSet<&EdgeId> = m.phi0().values().collect();
    for (v, g) in m.phi1() {
        let interior = g.interior(cod);
        // interior(phi1(v)) is disjoint from every other phi1(w).
        for (w, h) in m.phi1() {
            if v != w {
                assert!(
                    interior.iter().all(|e| !h.edges.contains(e)),
                    "interior of phi1({v}) meets edges of phi1({w})"
                );
            }
        }
        // interior(phi1(v)) is disjoint from the image of phi0.
        assert!(
            interior.iter().all(|e| !image_edges.contains(e)),
            "interior of phi1({v}) meets image(phi0)"
        );
    }
    // Legs interchange: phi0(legs(dom)) = legs(image).
    let leg_image: BTreeSet<EdgeId> = m
        .dom()
        .leg_order()
        .iter()
        .map(|e| m.phi0()[e].clone())
        .collect();
    let img = m.image();
    let img_legs = if img.is_single_edge() {
        img.edges.clone()
    } else {
        img.legs(cod)
    };
    assert_eq!(leg_image, img_legs, "legs interchange fails");
    // Same value: equal phi0-values lie on a linear subgraph whose edges all
    // share the value.
    let dom = m.dom();
    let mut fibers: BTreeMap<&EdgeId, Vec<&EdgeId>> = BTreeMap::new();
    for (e, to) in m.phi0() {
        fibers.entry(to).or_default().push(e);
    }
    for (to, fiber) in fibers {
        for a in &fiber {
            for b in &fiber {
                let path = dom.minimal_path(
                    &crate::tree::Item::Edge((*a).to_string()),
                    &crate::tree::Item::Edge((*b).to_string()),
                );
                for item in &path {
                    match item {
                        crate::tree::Item::Edge(e) => {
                            assert_eq!(&m.phi0()[e], to, "same-value witness path broken")
                        }
                        crate::tree::Item::Vertex(v) => {
                            assert_eq!(dom.valence(v), 2, "same-value path visits non-bivalent vertex")
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(t: Tree) -> Arc<Tree> {
        Arc::new(t)
    }

    #[test]
    fn identity_is_valid_iso() {
        for t in [Tree::eta(), Tree::star(3), Tree::linear(2)] {
            let id = Morphism::identity(arc(t));
            assert_eq!(id.validate(), Ok(()));
            assert!(id.is_isomorphism());
            assert!(!id.is_constant() || id.dom().vertex_count() == 0);
            assert_eq!(Morphism::compose(&id, &id).unwrap(), id);
        }
    }

    #[test]
    fn star3_noninjective_rejected() {
        let s = arc(Tree::star(3));
        let mut phi0: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        phi0.insert("0".into(), "0".into());
        phi0.insert("1".into(), "0".into());
        phi0.insert("2".into(), "2".into());
        let phi1 = BTreeMap::from([("v".to_string(), SubGraph::star(&s, "v"))]);
        let err = Morphism::new(s.clone(), s, phi0, phi1).unwrap_err();
        assert!(matches!(err, MorphismError::NonInjectiveAtVertex { .. }));
    }

    #[test]
    fn constant_l1_to_star3() {
        let l1 = arc(Tree::linear(1));
        let s3 = arc(Tree::star(3));
        let c = Morphism::constant(l1, s3, "1").unwrap();
        assert!(c.is_constant());
        assert_eq!(c.image(), SubGraph::edge("1"));
        check_morphism_lemmas(&c);
    }

    #[test]
    fn identity_image_is_whole() {
        let t = arc(crate::fixtures::figure3());
        let id = Morphism::identity(t.clone());
        assert_eq!(id.image(), SubGraph::whole(&t));
    }

    #[test]
    fn codegeneracy_then_constant() {
        // L2 -> L1 collapsing v2, then the constant L1 -> eta.
        let l2 = arc(Tree::linear(2));
        let l1 = arc(Tree::linear(1));
        let eta = arc(Tree::eta_named("e0"));
        let sigma = Morphism::new(
            l2.clone(),
            l1.clone(),
            BTreeMap::from([
                ("e0".to_string(), "e0".to_string()),
                ("e1".to_string(), "e1".to_string()),
                ("e2".to_string(), "e1".to_string()),
            ]),
            BTreeMap::from([
                ("v1".to_string(), SubGraph::star(&l1, "v1")),
                ("v2".to_string(), SubGraph::edge("e1")),
            ]),
        )
        .unwrap();
        let c = Morphism::constant(l1, eta.clone(), "e0").unwrap();
        let comp = Morphism::compose(&c, &sigma).unwrap();
        assert_eq!(comp, Morphism::constant(l2, eta, "e0").unwrap());
    }

    #[test]
    fn complete_round_trip() {
        let t = arc(crate::fixtures::figure3());
        let id = Morphism::identity(t.clone());
        let complete = id.to_complete();
        assert_eq!(complete.validate(), Ok(()));
        // alpha1 of the identity is the identity on subgraphs.
        for (a, b) in &complete.alpha1 {
            assert_eq!(a, b);
        }
        assert_eq!(complete.to_morphism().unwrap(), id);
    }
}
