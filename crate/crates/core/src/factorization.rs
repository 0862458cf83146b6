//! Degree, the two factorization systems, constructive lifting, and the
//! coface/codegeneracy generators.
//!
//! The generalized Reedy structure: degree-raising maps are the
//! edge-injective ones, degree-lowering maps are edge-surjective and cover
//! every codomain vertex. Every map factors as a collapse (lowering) followed
//! by an injective map (raising), uniquely up to isomorphism.
//!
//! The active/inert weak factorization system: active maps hit the whole
//! codomain, inert maps are subgraph-inclusion-like. Every active map has the
//! left lifting property against inert maps, with a unique lift built
//! directly from leg and subgraph transport.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::morphism::Morphism;
use crate::subgraph::SubGraph;
use crate::tree::{EdgeId, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorizationError {
    #[error("morphism is not active")]
    NotActive,
    #[error("morphism is not inert")]
    NotInert,
    #[error("the given square does not commute")]
    SquareDoesNotCommute,
}

pub fn degree(t: &Tree) -> usize {
    t.vertex_count()
}

/// Membership in the degree-raising class: edge map injective.
pub fn in_xi_plus(m: &Morphism) -> bool {
    let img: BTreeSet<&EdgeId> = m.phi0().values().collect();
    img.len() == m.phi0().len()
}

/// Membership in the degree-lowering class: edge map surjective and every
/// codomain vertex lies in some image subgraph.
pub fn in_xi_minus(m: &Morphism) -> bool {
    let img: BTreeSet<&EdgeId> = m.phi0().values().collect();
    if img.len() != m.cod().edges().len() {
        return false;
    }
    let covered: BTreeSet<&VertexId> = m
        .phi1()
        .values()
        .flat_map(|g| g.vertices.iter())
        .collect();
    m.cod().vertices().all(|w| covered.contains(w))
}

/// Active maps hit the whole codomain.
pub fn is_active(m: &Morphism) -> bool {
    m.image() == SubGraph::whole(m.cod())
}

/// Inert maps: edge-injective, and the codomain neighborhoods of all image
/// vertices already lie in the edge image (so each phi1(v) is a star and the
/// map is a subgraph inclusion up to renaming).
pub fn is_inert(m: &Morphism) -> bool {
    if !in_xi_plus(m) {
        return false;
    }
    let img: BTreeSet<&EdgeId> = m.phi0().values().collect();
    m.phi1().values().all(|g| {
        g.vertices
            .iter()
            .all(|w| m.cod().nbhd(w).iter().all(|e| img.contains(e)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorizationKind {
    Reedy,
    ActiveInert,
}

#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub mid: Arc<Tree>,
    /// dom -> mid
    pub first: Morphism,
    /// mid -> cod
    pub second: Morphism,
    pub kind: FactorizationKind,
}

/// Factors a morphism as (degree-lowering, degree-raising).
///
/// The middle tree keeps one edge per phi0-fiber (fibers are connected linear
/// subgraphs) and one vertex per domain vertex whose image subgraph is not a
/// single edge. Fresh ids are the lexicographic minima of the collapsed
/// classes, so the output is reproducible.
pub fn reedy_factor(phi: &Morphism) -> FactorizationResult {
    let dom = phi.dom();
    let cod = phi.cod();
    // Edge classes: fibers of phi0, represented by their least member.
    let mut fiber_rep: BTreeMap<&EdgeId, EdgeId> = BTreeMap::new();
    for (e, val) in phi.phi0() {
        let rep = fiber_rep.entry(val).or_insert_with(|| e.clone());
        if e < rep {
            *rep = e.clone();
        }
    }
    let class = |e: &EdgeId| fiber_rep[&phi.phi0()[e]].clone();
    let retained: Vec<&VertexId> = dom
        .vertices()
        .filter(|v| !phi.apply1(v).is_single_edge())
        .collect();
    let mid_edges: BTreeSet<EdgeId> = fiber_rep.values().cloned().collect();
    let mid_nbhd: Vec<(VertexId, Vec<EdgeId>)> = retained
        .iter()
        .map(|v| ((*v).clone(), dom.nbhd(v).iter().map(&class).collect()))
        .collect();
    let mut mid_leg_order: Vec<EdgeId> = Vec::new();
    for l in dom.leg_order() {
        let c = class(l);
        if !mid_leg_order.contains(&c) {
            mid_leg_order.push(c);
        }
    }
    let mid = Arc::new(
        Tree::new(mid_edges, mid_nbhd, mid_leg_order)
            .expect("collapsed middle tree is a valid tree"),
    );
    let h_phi0: BTreeMap<EdgeId, EdgeId> =
        dom.edges().iter().map(|e| (e.clone(), class(e))).collect();
    let h_phi1: BTreeMap<VertexId, SubGraph> = dom
        .vertices()
        .map(|v| {
            let g = if phi.apply1(v).is_single_edge() {
                SubGraph::edge(&class(&dom.nbhd(v)[0]))
            } else {
                SubGraph::star(&mid, v)
            };
            (v.clone(), g)
        })
        .collect();
    let first = Morphism::new(dom.clone(), mid.clone(), h_phi0, h_phi1)
        .expect("collapse is a morphism");
    let g_phi0: BTreeMap<EdgeId, EdgeId> = mid
        .edges()
        .iter()
        .map(|c| (c.clone(), phi.phi0()[c].clone()))
        .collect();
    let g_phi1: BTreeMap<VertexId, SubGraph> = mid
        .vertices()
        .map(|v| (v.clone(), phi.apply1(v).clone()))
        .collect();
    let second = Morphism::new(mid.clone(), cod.clone(), g_phi0, g_phi1)
        .expect("induced injective map is a morphism");
    debug_assert!(in_xi_minus(&first));
    debug_assert!(in_xi_plus(&second));
    debug_assert_eq!(&Morphism::compose(&second, &first).unwrap(), phi);
    FactorizationResult {
        mid,
        first,
        second,
        kind: FactorizationKind::Reedy,
    }
}

/// Factors a morphism as (active onto its image, inclusion of the image).
pub fn active_inert_factor(phi: &Morphism) -> FactorizationResult {
    let dom = phi.dom();
    let cod = phi.cod();
    let image = phi.image();
    // Pin the image by transporting the domain's leg order.
    let leg_order: Option<Vec<EdgeId>> = if image.is_single_edge() {
        None
    } else {
        let mut lo = Vec::new();
        for l in dom.leg_order() {
            let e = phi.phi0()[l].clone();
            if !lo.contains(&e) {
                lo.push(e);
            }
        }
        Some(lo)
    };
    let mid = Arc::new(
        image
            .to_tree(cod, leg_order)
            .expect("image promotes to a tree"),
    );
    let first = Morphism::new(
        dom.clone(),
        mid.clone(),
        phi.phi0().clone(),
        phi.phi1().clone(),
    )
    .expect("corestriction to the image is a morphism");
    let second = Morphism::inclusion(mid.clone(), &image, cod.clone());
    debug_assert!(is_active(&first));
    debug_assert!(is_inert(&second));
    debug_assert_eq!(&Morphism::compose(&second, &first).unwrap(), phi);
    FactorizationResult {
        mid,
        first,
        second,
        kind: FactorizationKind::ActiveInert,
    }
}

/// Solves the lifting problem
///
/// ```text
///   R --alpha--> P
///   |            |
///  phi (active) psi (inert)
///   |            |
///   v            v
///   S --beta---> Q
/// ```
///
/// returning the unique gamma: S -> P with gamma . phi = alpha and
/// psi . gamma = beta.
pub fn lift_square(
    phi: &Morphism,
    psi: &Morphism,
    alpha: &Morphism,
    beta: &Morphism,
) -> Result<Morphism, FactorizationError> {
    if !is_active(phi) {
        return Err(FactorizationError::NotActive);
    }
    if !is_inert(psi) {
        return Err(FactorizationError::NotInert);
    }
    let (lhs, rhs) = (
        Morphism::compose(psi, alpha).map_err(|_| FactorizationError::SquareDoesNotCommute)?,
        Morphism::compose(beta, phi).map_err(|_| FactorizationError::SquareDoesNotCommute)?,
    );
    if lhs != rhs {
        return Err(FactorizationError::SquareDoesNotCommute);
    }
    let s = phi.cod();
    let p = psi.dom();
    let gamma = if s.vertex_count() == 0 {
        // S is a single edge, so alpha is constant; gamma is the constant at
        // alpha's value.
        let e = s.edges().iter().next().unwrap();
        let val = alpha.phi0().values().next().unwrap().clone();
        debug_assert!(alpha.image().is_single_edge());
        Morphism::new(
            s.clone(),
            p.clone(),
            BTreeMap::from([(e.clone(), val)]),
            BTreeMap::new(),
        )
        .expect("constant lift is a morphism")
    } else {
        // psi is an inclusion up to renaming: each of its image subgraphs has
        // exactly one vertex.
        let psi_vertex: BTreeMap<&VertexId, &VertexId> = psi
            .phi1()
            .iter()
            .map(|(t, g)| {
                debug_assert_eq!(g.vertices.len(), 1);
                (g.vertices.iter().next().unwrap(), t)
            })
            .collect();
        let psi_edge_inv: BTreeMap<&EdgeId, &EdgeId> =
            psi.phi0().iter().map(|(a, b)| (b, a)).collect();
        // Transport each vertex of S: find who covers it in the domain and
        // pull its beta-image back through psi.
        let mut gamma1: BTreeMap<VertexId, SubGraph> = BTreeMap::new();
        for w in s.vertices() {
            let g = beta.apply1(w);
            let vertices: BTreeSet<VertexId> = g
                .vertices
                .iter()
                .map(|q| {
                    (*psi_vertex
                        .get(q)
                        .expect("beta image vertex lies in psi's image"))
                    .clone()
                })
                .collect();
            let edges: BTreeSet<EdgeId> = g
                .edges
                .iter()
                .map(|q| {
                    (*psi_edge_inv
                        .get(q)
                        .expect("beta image edge lies in psi's edge image"))
                    .clone()
                })
                .collect();
            gamma1.insert(w.clone(), SubGraph { vertices, edges });
        }
        // Edges: legs transport along alpha through any phi-preimage leg;
        // interior edges are the unique common edge of the two adjacent
        // transported subgraphs.
        let mut gamma0: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
        for l in s.leg_order() {
            let r = phi
                .dom()
                .leg_order()
                .iter()
                .find(|r| phi.apply0(r) == l)
                .expect("active maps hit every codomain leg");
            gamma0.insert(l.clone(), alpha.apply0(r).clone());
        }
        let ends = s.edge_ends();
        for e in s.interior() {
            let vs = &ends[&e];
            debug_assert_eq!(vs.len(), 2);
            let common: Vec<&EdgeId> = gamma1[&vs[0]]
                .edges
                .intersection(&gamma1[&vs[1]].edges)
                .collect();
            assert_eq!(common.len(), 1, "interior edge transport not unique");
            gamma0.insert(e.clone(), common[0].clone());
        }
        Morphism::new(s.clone(), p.clone(), gamma0, gamma1)
            .expect("transported lift is a morphism")
    };
    debug_assert_eq!(&Morphism::compose(&gamma, phi).unwrap(), alpha);
    debug_assert_eq!(&Morphism::compose(psi, &gamma).unwrap(), beta);
    Ok(gamma)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CofaceKind {
    /// Contracts the named interior edge of the codomain.
    Inner { edge: EdgeId },
    /// Omits the named codomain vertex (the retained edge is the witness).
    Outer { vertex: VertexId, edge: EdgeId },
    /// The edge inclusion hitting leg ord(i) of a one-vertex codomain.
    LegInclusion { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofaceDescriptor {
    pub kind: CofaceKind,
    /// The coface map into the tree it was computed for.
    pub map: Morphism,
}

/// All coface maps into `s` (degree of the domain is one less), one per
/// isomorphism class over `s`, in a canonical order: leg inclusions, then
/// outer, then inner.
pub fn cofaces(s: &Arc<Tree>) -> Vec<CofaceDescriptor> {
    let mut out = Vec::new();
    match s.vertex_count() {
        0 => {}
        1 => {
            for (i, l) in s.leg_order().iter().enumerate() {
                let eta = Arc::new(Tree::eta_named(l));
                let map = Morphism::new(
                    eta,
                    s.clone(),
                    BTreeMap::from([(l.clone(), l.clone())]),
                    BTreeMap::new(),
                )
                .expect("edge inclusion is a morphism");
                out.push(CofaceDescriptor {
                    kind: CofaceKind::LegInclusion { index: i },
                    map,
                });
            }
        }
        _ => {
            // Outer cofaces: one per vertex whose neighborhood is legs except
            // for a single interior edge.
            let interior = s.interior();
            for v in s.vertices() {
                let inner_edges: Vec<&EdgeId> =
                    s.nbhd(v).iter().filter(|e| interior.contains(*e)).collect();
                if inner_edges.len() != 1 {
                    continue;
                }
                let e = inner_edges[0].clone();
                let sub = SubGraph {
                    vertices: s.vertices().filter(|w| *w != v).cloned().collect(),
                    edges: s
                        .edges()
                        .iter()
                        .filter(|x| !s.nbhd(v).contains(x) || **x == e)
                        .cloned()
                        .collect(),
                };
                let mut leg_order: Vec<EdgeId> = s
                    .leg_order()
                    .iter()
                    .filter(|l| sub.edges.contains(*l))
                    .cloned()
                    .collect();
                leg_order.push(e.clone());
                let sub_tree = Arc::new(
                    sub.to_tree(s, Some(leg_order))
                        .expect("outer face is a tree"),
                );
                let map = Morphism::inclusion(sub_tree, &sub, s.clone());
                out.push(CofaceDescriptor {
                    kind: CofaceKind::Outer {
                        vertex: v.clone(),
                        edge: e,
                    },
                    map,
                });
            }
        }
    }
    // Inner cofaces: one per interior edge.
    let ends = s.edge_ends();
    for e in s.interior() {
        let (u, w) = (&ends[&e][0], &ends[&e][1]);
        let merged = fresh_vertex_id(s, &format!("{u}{w}"));
        let nu = s.nbhd(u);
        let nw = s.nbhd(w);
        let j = nu.iter().position(|x| x == &e).unwrap();
        let k = nw.iter().position(|x| x == &e).unwrap();
        // Splice the two neighborhoods at the contracted edge.
        let mut spliced: Vec<EdgeId> = Vec::new();
        spliced.extend(nu[..j].iter().cloned());
        spliced.extend(nw[k + 1..].iter().cloned());
        spliced.extend(nw[..k].iter().cloned());
        spliced.extend(nu[j + 1..].iter().cloned());
        let nbhd: Vec<(VertexId, Vec<EdgeId>)> = s
            .nbhd_map()
            .iter()
            .filter(|(v, _)| *v != u && *v != w)
            .map(|(v, nb)| (v.clone(), nb.clone()))
            .chain([(merged.clone(), spliced)])
            .collect();
        let dom = Arc::new(
            Tree::new(
                s.edges().iter().filter(|x| **x != e).cloned(),
                nbhd,
                s.leg_order().to_vec(),
            )
            .expect("contracted tree is a tree"),
        );
        let phi0 = dom.edges().iter().map(|x| (x.clone(), x.clone())).collect();
        let phi1: BTreeMap<VertexId, SubGraph> = dom
            .vertices()
            .map(|v| {
                if v == &merged {
                    let edges: BTreeSet<EdgeId> =
                        nu.iter().chain(nw.iter()).cloned().collect();
                    (
                        v.clone(),
                        SubGraph {
                            vertices: BTreeSet::from([u.clone(), w.clone()]),
                            edges,
                        },
                    )
                } else {
                    (v.clone(), SubGraph::star(s, v))
                }
            })
            .collect();
        let map = Morphism::new(dom, s.clone(), phi0, phi1)
            .expect("inner coface is a morphism");
        out.push(CofaceDescriptor {
            kind: CofaceKind::Inner { edge: e },
            map,
        });
    }
    out
}

fn fresh_vertex_id(t: &Tree, base: &str) -> VertexId {
    let mut id = base.to_string();
    while t.has_vertex(&id) {
        id.push('\'');
    }
    id
}

/// All codegeneracies out of `s`: one per bivalent vertex, collapsing it and
/// merging its two edges.
pub fn codegeneracies(s: &Arc<Tree>) -> Vec<Morphism> {
    let mut out = Vec::new();
    for v in s.vertices() {
        if s.valence(v) != 2 {
            continue;
        }
        let (e1, e2) = (&s.nbhd(v)[0], &s.nbhd(v)[1]);
        let m = std::cmp::min(e1, e2).clone();
        let subst = |e: &EdgeId| if e == e1 || e == e2 { m.clone() } else { e.clone() };
        let nbhd: Vec<(VertexId, Vec<EdgeId>)> = s
            .nbhd_map()
            .iter()
            .filter(|(w, _)| *w != v)
            .map(|(w, nb)| (w.clone(), nb.iter().map(&subst).collect()))
            .collect();
        let mut leg_order: Vec<EdgeId> = Vec::new();
        for l in s.leg_order() {
            let x = subst(l);
            if !leg_order.contains(&x) {
                leg_order.push(x);
            }
        }
        // When both merged edges were legs, the collapse lands in eta.
        if nbhd.is_empty() {
            leg_order = vec![m.clone()];
        }
        let cod = Arc::new(
            Tree::new(
                s.edges()
                    .iter()
                    .filter(|x| *x != e1 && *x != e2)
                    .cloned()
                    .chain([m.clone()]),
                nbhd,
                leg_order,
            )
            .expect("collapsed tree is a tree"),
        );
        let phi0 = s.edges().iter().map(|e| (e.clone(), subst(e))).collect();
        let phi1: BTreeMap<VertexId, SubGraph> = s
            .vertices()
            .map(|w| {
                if w == v {
                    (w.clone(), SubGraph::edge(&m))
                } else {
                    (w.clone(), SubGraph::star(&cod, w))
                }
            })
            .collect();
        let map = Morphism::new(s.clone(), cod, phi0, phi1)
            .expect("codegeneracy is a morphism");
        debug_assert!(in_xi_minus(&map));
        out.push(map);
    }
    out
}

/// Searches for an isomorphism theta: dom(d1) -> dom(d2) with d2 . theta = d1
/// (isomorphism over the common codomain).
pub fn iso_over(
    d1: &Morphism,
    d2: &Morphism,
    cfg: &crate::homs::EnumConfig,
) -> Option<Morphism> {
    if d1.cod() != d2.cod() {
        return None;
    }
    crate::rooting::isomorphisms(d1.dom(), d2.dom(), cfg)
        .ok()?
        .into_iter()
        .find(|theta| Morphism::compose(d2, theta).as_ref() == Ok(d1))
}
