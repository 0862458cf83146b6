//! Presheaves on the category of trees: the cyclic dendroidal nerve of a
//! finite cyclic operad, representables, Segal-core and inner-horn hom
//! computation, and the bijectivity checks of the nerve theorem.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::sync::Arc;

use crate::canon::tree_classes;
use crate::decorated::{evaluate_decorated_tree, DecoratedTree};
use crate::factorization::{cofaces, iso_over, CofaceDescriptor, CofaceKind};
use crate::homs::{EnumConfig, EnumError};
use crate::morphism::Morphism;
use crate::operad::{Color, FiniteCyclicOperad, OpId};
use crate::rooting::enumerate_homs_structured;
use crate::subgraph::SubGraph;
use crate::tree::{EdgeId, Tree, VertexId};

/// A finitely computable presheaf: a set of elements for every tree and a
/// restriction function for every morphism, contravariantly.
pub trait Presheaf {
    type Elem: Clone + Ord + Debug;
    /// Elements over a tree, in a canonical order.
    fn value(&self, s: &Arc<Tree>) -> Vec<Self::Elem>;
    /// Restriction along phi: R -> S, sending value(S) to value(R).
    fn restrict(&self, phi: &Morphism, x: &Self::Elem) -> Self::Elem;
}

/// An element of the nerve of an operad over a tree: an edge coloring plus
/// an operation per vertex whose profile matches the colors in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NerveElement {
    pub coloring: BTreeMap<EdgeId, Color>,
    pub vertex_ops: BTreeMap<VertexId, OpId>,
}

/// The cyclic dendroidal nerve of a finite cyclic operad.
pub struct NervePresheaf {
    pub operad: FiniteCyclicOperad,
}

pub fn nerve(operad: FiniteCyclicOperad) -> NervePresheaf {
    NervePresheaf { operad }
}

impl NervePresheaf {
    fn colorings(&self, s: &Tree) -> Vec<BTreeMap<EdgeId, Color>> {
        let mut out: Vec<BTreeMap<EdgeId, Color>> = vec![BTreeMap::new()];
        for e in s.edges() {
            out = out
                .into_iter()
                .flat_map(|m| {
                    self.operad.colors.iter().map(move |c| {
                        let mut m = m.clone();
                        m.insert(e.clone(), c.clone());
                        m
                    })
                })
                .collect();
        }
        out
    }
}

impl Presheaf for NervePresheaf {
    type Elem = NerveElement;

    fn value(&self, s: &Arc<Tree>) -> Vec<NerveElement> {
        // No coloring can help a vertex whose valence matches no profile.
        let lengths: BTreeSet<usize> = self.operad.profiles.values().map(Vec::len).collect();
        if s.vertices().any(|v| !lengths.contains(&s.valence(v))) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for coloring in self.colorings(s) {
            let mut assignments: Vec<BTreeMap<VertexId, OpId>> = vec![BTreeMap::new()];
            for v in s.vertices() {
                let profile: Vec<Color> =
                    s.nbhd(v).iter().map(|e| coloring[e].clone()).collect();
                let ops = self.operad.ops_at(&profile);
                assignments = assignments
                    .into_iter()
                    .flat_map(|m| {
                        ops.iter().map(move |op| {
                            let mut m = m.clone();
                            m.insert(v.clone(), (*op).clone());
                            m
                        })
                    })
                    .collect();
                if assignments.is_empty() {
                    break;
                }
            }
            for vertex_ops in assignments {
                out.push(NerveElement {
                    coloring: coloring.clone(),
                    vertex_ops,
                });
            }
        }
        out.sort();
        out
    }

    fn restrict(&self, phi: &Morphism, x: &NerveElement) -> NerveElement {
        let cod = phi.cod();
        let coloring: BTreeMap<EdgeId, Color> = phi
            .phi0()
            .iter()
            .map(|(e, img)| (e.clone(), x.coloring[img].clone()))
            .collect();
        let vertex_ops: BTreeMap<VertexId, OpId> = phi
            .phi1()
            .iter()
            .map(|(v, g)| {
                let op = if g.is_single_edge() {
                    let e = g.edges.iter().next().unwrap();
                    self.operad.units[&x.coloring[e]].clone()
                } else {
                    let leg_order: Vec<EdgeId> = phi
                        .dom()
                        .nbhd(v)
                        .iter()
                        .map(|e| phi.apply0(e).clone())
                        .collect();
                    let shape = Arc::new(
                        g.to_tree(cod, Some(leg_order))
                            .expect("image subgraph pins to a tree"),
                    );
                    let d = DecoratedTree {
                        coloring: shape
                            .edges()
                            .iter()
                            .map(|e| (e.clone(), x.coloring[e].clone()))
                            .collect(),
                        labels: shape
                            .vertices()
                            .map(|w| (w.clone(), x.vertex_ops[w].clone()))
                            .collect(),
                        shape,
                    };
                    evaluate_decorated_tree(&self.operad, &d)
                        .expect("nerve restriction evaluates")
                };
                (v.clone(), op)
            })
            .collect();
        NerveElement { coloring, vertex_ops }
    }
}

/// The representable presheaf of a tree: morphisms into it, restricted by
/// precomposition.
pub struct RepresentablePresheaf {
    pub target: Arc<Tree>,
    pub cfg: EnumConfig,
}

pub fn representable(target: Arc<Tree>) -> RepresentablePresheaf {
    RepresentablePresheaf { target, cfg: EnumConfig::default() }
}

impl Presheaf for RepresentablePresheaf {
    type Elem = Morphism;

    fn value(&self, s: &Arc<Tree>) -> Vec<Morphism> {
        enumerate_homs_structured(s, &self.target, &self.cfg)
            .expect("representable hom-set within cap")
    }

    fn restrict(&self, phi: &Morphism, x: &Morphism) -> Morphism {
        Morphism::compose(x, phi).expect("precomposition")
    }
}

/// Morphisms into a fixed tree whose image lies inside a single closed star
/// (or single edge). This is a sub-presheaf of the representable — exactly
/// its Segal core — and fails the Segal condition at the target whenever the
/// target has more than one vertex.
pub struct StarImagePresheaf {
    pub target: Arc<Tree>,
    pub cfg: EnumConfig,
}

impl StarImagePresheaf {
    fn admits(&self, m: &Morphism) -> bool {
        let img = m.image();
        if img.vertices.is_empty() {
            return true;
        }
        self.target
            .vertices()
            .any(|v| SubGraph::star(&self.target, v).contains(&img))
    }
}

impl Presheaf for StarImagePresheaf {
    type Elem = Morphism;

    fn value(&self, s: &Arc<Tree>) -> Vec<Morphism> {
        enumerate_homs_structured(s, &self.target, &self.cfg)
            .expect("hom-set within cap")
            .into_iter()
            .filter(|m| self.admits(m))
            .collect()
    }

    fn restrict(&self, phi: &Morphism, x: &Morphism) -> Morphism {
        Morphism::compose(x, phi).expect("precomposition")
    }
}

/// The pinned one-vertex tree sitting at a vertex of `s`, with leg order the
/// vertex order, together with its inclusion into `s`.
pub fn star_inclusion(s: &Arc<Tree>, v: &str) -> (Arc<Tree>, Morphism) {
    let nb = s.nbhd(v).to_vec();
    let star = Arc::new(
        Tree::new(nb.iter().cloned(), [(v.to_string(), nb.clone())], nb.clone())
            .expect("vertex star is a tree"),
    );
    let phi0 = nb.iter().map(|e| (e.clone(), e.clone())).collect();
    let phi1 = BTreeMap::from([(v.to_string(), SubGraph::star(s, v))]);
    let m = Morphism::new(star.clone(), s.clone(), phi0, phi1).expect("star inclusion");
    (star, m)
}

/// The single-edge tree at an edge of `s` together with its inclusion.
pub fn edge_inclusion(s: &Arc<Tree>, e: &str) -> (Arc<Tree>, Morphism) {
    let eta = Arc::new(Tree::eta_named(e));
    let m = Morphism::new(
        eta.clone(),
        s.clone(),
        BTreeMap::from([(e.to_string(), e.to_string())]),
        BTreeMap::new(),
    )
    .expect("edge inclusion");
    (eta, m)
}

/// Families of star-elements glued along interior edges: one element of
/// X(⋆ᵥ) per vertex, such that for every interior edge the two restrictions
/// to the edge's η agree. For η itself this degenerates to X(η) (empty key).
pub fn segal_core_homs<X: Presheaf>(x: &X, s: &Arc<Tree>) -> Vec<BTreeMap<VertexId, X::Elem>> {
    if s.vertex_count() == 0 {
        // One "family" per element, recorded under an empty marker vertex id.
        return x
            .value(s)
            .into_iter()
            .map(|e| BTreeMap::from([(String::new(), e)]))
            .collect();
    }
    let verts: Vec<VertexId> = s.vertices().cloned().collect();
    let stars: BTreeMap<&VertexId, (Arc<Tree>, Morphism)> =
        verts.iter().map(|v| (v, star_inclusion(s, v))).collect();
    let ends = s.edge_ends();
    // Interior-edge constraints: (u, v, eta->star_u, eta->star_v).
    let mut constraints = Vec::new();
    for e in s.interior() {
        let (u, v) = (&ends[&e][0], &ends[&e][1]);
        let (_, into_u) = edge_inclusion(&stars[u].0, &e);
        let (_, into_v) = edge_inclusion(&stars[v].0, &e);
        constraints.push((u.clone(), v.clone(), into_u, into_v));
    }
    let mut families: Vec<BTreeMap<VertexId, X::Elem>> = vec![BTreeMap::new()];
    for v in &verts {
        let elems = x.value(&stars[v].0);
        families = families
            .into_iter()
            .flat_map(|f| {
                elems.iter().map(move |e| {
                    let mut f = f.clone();
                    f.insert(v.clone(), e.clone());
                    f
                })
            })
            .filter(|f| {
                constraints.iter().all(|(u, w, iu, iw)| {
                    match (f.get(u), f.get(w)) {
                        (Some(xu), Some(xw)) => x.restrict(iu, xu) == x.restrict(iw, xw),
                        _ => true,
                    }
                })
            })
            .collect();
    }
    families.sort();
    families
}

/// The canonical map X(S) → segal_core_homs(X, S): restrict along every star
/// inclusion.
pub fn segal_map<X: Presheaf>(x: &X, s: &Arc<Tree>, elem: &X::Elem) -> BTreeMap<VertexId, X::Elem> {
    if s.vertex_count() == 0 {
        return BTreeMap::from([(String::new(), elem.clone())]);
    }
    s.vertices()
        .map(|v| {
            let (_, inc) = star_inclusion(s, v);
            (v.clone(), x.restrict(&inc, elem))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SegalReport {
    pub pass: bool,
    /// The first failing tree and a description, when not Segal.
    pub witness: Option<(Tree, String)>,
}

/// Checks bijectivity of the Segal map over all tree isomorphism classes up
/// to the vertex bound (legs bounded by 6).
pub fn is_segal<X: Presheaf>(x: &X, vertex_bound: usize) -> SegalReport {
    for s in tree_classes(vertex_bound, 6) {
        let s = Arc::new(s);
        if s.vertex_count() == 0 {
            continue;
        }
        let elems = x.value(&s);
        let families = segal_core_homs(x, &s);
        let images: Vec<_> = elems.iter().map(|e| segal_map(x, &s, e)).collect();
        let distinct: BTreeSet<_> = images.iter().collect();
        if distinct.len() != elems.len() {
            return SegalReport {
                pass: false,
                witness: Some((s.as_ref().clone(), "Segal map not injective".into())),
            };
        }
        for f in &families {
            if !images.contains(f) {
                return SegalReport {
                    pass: false,
                    witness: Some((
                        s.as_ref().clone(),
                        "Segal map not surjective onto core homs".into(),
                    )),
                };
            }
        }
    }
    SegalReport { pass: true, witness: None }
}

/// The faces of an inner horn: all cofaces of `s` that are not isomorphic
/// over `s` to the omitted inner coface `delta`.
pub fn horn_faces(s: &Arc<Tree>, delta: &CofaceDescriptor, cfg: &EnumConfig) -> Vec<CofaceDescriptor> {
    cofaces(s)
        .into_iter()
        .filter(|d| iso_over(&d.map, &delta.map, cfg).is_none())
        .collect()
}

/// Compatible families over the faces of the inner horn at `delta`:
/// for every pair of faces and every pair of sub-faces identified over `s`
/// by an isomorphism, the corresponding restrictions agree.
pub fn inner_horn_homs<X: Presheaf>(
    x: &X,
    s: &Arc<Tree>,
    delta: &CofaceDescriptor,
    cfg: &EnumConfig,
) -> Result<Vec<Vec<X::Elem>>, EnumError> {
    assert!(
        matches!(delta.kind, CofaceKind::Inner { .. }),
        "horns are taken at inner cofaces"
    );
    let faces = horn_faces(s, delta, cfg);
    horn_homs_over_faces(x, &faces, cfg)
}

fn horn_homs_over_faces<X: Presheaf>(
    x: &X,
    faces: &[CofaceDescriptor],
    cfg: &EnumConfig,
) -> Result<Vec<Vec<X::Elem>>, EnumError> {
    let values: Vec<Vec<X::Elem>> = faces.iter().map(|d| x.value(d.map.dom())).collect();
    if values.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    // Codimension-2 compatibility data: (face index a, face index b,
    // sub-face g of dom(a), sub-face g' of dom(b), iso theta with
    // b.map ∘ g' ∘ theta = a.map ∘ g).
    let mut constraints: Vec<(usize, usize, Morphism, Morphism, Morphism)> = Vec::new();
    for (ai, a) in faces.iter().enumerate() {
        let subs_a = cofaces(a.map.dom());
        for (bi, b) in faces.iter().enumerate().skip(ai) {
            let subs_b = cofaces(b.map.dom());
            for g in &subs_a {
                let ag = Morphism::compose(&a.map, &g.map).unwrap();
                for gp in &subs_b {
                    let bgp = Morphism::compose(&b.map, &gp.map).unwrap();
                    if ag.image() != bgp.image() {
                        continue;
                    }
                    for theta in crate::rooting::isomorphisms(g.map.dom(), gp.map.dom(), cfg)? {
                        if Morphism::compose(&bgp, &theta).as_ref() == Ok(&ag)
                            && !(ai == bi && g == gp && theta.is_identity())
                        {
                            constraints.push((ai, bi, g.map.clone(), gp.map.clone(), theta));
                        }
                    }
                }
            }
        }
    }
    let mut families: Vec<Vec<X::Elem>> = vec![Vec::new()];
    for (i, elems) in values.iter().enumerate() {
        let mut space = families.len() as u128;
        space = space.saturating_mul(elems.len().max(1) as u128);
        if space > cfg.cap {
            return Err(EnumError::SizeBoundExceeded { space, cap: cfg.cap });
        }
        families = families
            .into_iter()
            .flat_map(|f| {
                elems.iter().map(move |e| {
                    let mut f = f.clone();
                    f.push(e.clone());
                    f
                })
            })
            .filter(|f| {
                constraints.iter().all(|(ai, bi, g, gp, theta)| {
                    if *ai > i || *bi > i {
                        return true;
                    }
                    let lhs = x.restrict(g, &f[*ai]);
                    let rhs = x.restrict(theta, &x.restrict(gp, &f[*bi]));
                    lhs == rhs
                })
            })
            .collect();
    }
    families.sort();
    families.dedup();
    Ok(families)
}

#[derive(Debug, Clone)]
pub struct HornReport {
    pub pass: bool,
    pub horn_count: usize,
    pub element_count: usize,
    pub detail: String,
}

/// Checks that X(S) → inner_horn_homs is a bijection for the horn at `delta`.
pub fn unique_inner_filler<X: Presheaf>(
    x: &X,
    s: &Arc<Tree>,
    delta: &CofaceDescriptor,
    cfg: &EnumConfig,
) -> Result<HornReport, EnumError> {
    let faces = horn_faces(s, delta, cfg);
    let horns = horn_homs_over_faces(x, &faces, cfg)?;
    let elems = x.value(s);
    let images: Vec<Vec<X::Elem>> = elems
        .iter()
        .map(|e| faces.iter().map(|d| x.restrict(&d.map, e)).collect())
        .collect();
    let distinct: BTreeSet<_> = images.iter().collect();
    let injective = distinct.len() == elems.len();
    let surjective = horns.iter().all(|h| images.contains(h));
    // Every image must itself be a horn element (compatibility is closed
    // under restriction from a filler).
    let lands = images.iter().all(|h| horns.contains(h));
    let pass = injective && surjective && lands;
    Ok(HornReport {
        pass,
        horn_count: horns.len(),
        element_count: elems.len(),
        detail: format!(
            "injective={injective} surjective={surjective} well-defined={lands}"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{example_a, example_c, example_c_prime};

    fn arc(t: Tree) -> Arc<Tree> {
        Arc::new(t)
    }

    #[test]
    fn nerve_counts_on_linear_trees() {
        let x = nerve(example_c());
        assert_eq!(x.value(&arc(Tree::eta())).len(), 1);
        assert_eq!(x.value(&arc(Tree::linear(1))).len(), 4);
        assert_eq!(x.value(&arc(Tree::linear(2))).len(), 16);
        assert_eq!(x.value(&arc(Tree::linear(3))).len(), 64);
        // Degree-1 operads vanish on non-linear trees.
        assert!(x.value(&arc(Tree::star(3))).is_empty());
        assert!(x.value(&arc(crate::fixtures::figure3())).is_empty());
    }

    #[test]
    fn nerve_restriction_composes_words() {
        // Restricting along the codegeneracy-free inner coface of L2
        // multiplies the letters.
        let x = nerve(example_c());
        let l2 = arc(Tree::linear(2));
        let inner = cofaces(&l2)
            .into_iter()
            .find(|d| matches!(d.kind, CofaceKind::Inner { .. }))
            .unwrap();
        for e in x.value(&l2) {
            let r = x.restrict(&inner.map, &e);
            let (g, f) = (&e.vertex_ops["v1"], &e.vertex_ops["v2"]);
            let composite = x.operad.apply_circ(g, 1, f).unwrap();
            assert_eq!(r.vertex_ops.values().next().unwrap(), &composite);
        }
    }

    #[test]
    fn nerve_functoriality_sampled() {
        let x = nerve(example_c());
        let l1 = arc(Tree::linear(1));
        let l2 = arc(Tree::linear(2));
        let cfg = EnumConfig::default();
        let f_set = crate::homs::enumerate_homs_bruteforce(&l1, &l2, &cfg).unwrap();
        let g_set = crate::homs::enumerate_homs_bruteforce(&l2, &l2, &cfg).unwrap();
        for e in x.value(&l2) {
            for g in &g_set {
                let gx = x.restrict(g, &e);
                for f in &f_set {
                    let comp = Morphism::compose(g, f).unwrap();
                    assert_eq!(x.restrict(&comp, &e), x.restrict(f, &gx));
                }
            }
            let id = Morphism::identity(l2.clone());
            assert_eq!(x.restrict(&id, &e), e);
        }
    }

    #[test]
    fn segal_core_counts() {
        let x = nerve(example_c());
        let l2 = arc(Tree::linear(2));
        assert_eq!(segal_core_homs(&x, &l2).len(), 16);
        // One vertex: no conditions, core = value.
        let s3 = arc(Tree::star(3));
        assert_eq!(segal_core_homs(&x, &s3).len(), x.value(&s3).len());
    }

    #[test]
    fn nerves_are_segal() {
        for o in [example_c(), example_c_prime(), example_a()] {
            let x = nerve(o);
            let r = is_segal(&x, 3);
            assert!(r.pass, "nerve should be Segal: {:?}", r.witness);
        }
    }

    #[test]
    fn star_image_presheaf_not_segal() {
        let l2 = arc(Tree::linear(2));
        let x = StarImagePresheaf { target: l2.clone(), cfg: EnumConfig::default() };
        // The pair of star inclusions is a compatible family with no filler.
        let fams = segal_core_homs(&x, &l2);
        let images: Vec<_> = x.value(&l2).iter().map(|e| segal_map(&x, &l2, e)).collect();
        assert!(fams.iter().any(|f| !images.contains(f)));
        let r = is_segal(&x, 2);
        assert!(!r.pass);
    }

    #[test]
    fn unique_fillers_for_nerves_small() {
        let cfg = EnumConfig::default();
        for o in [example_c(), example_a()] {
            let x = nerve(o);
            for s in tree_classes(3, 5) {
                let s = arc(s);
                for d in cofaces(&s) {
                    if !matches!(d.kind, CofaceKind::Inner { .. }) {
                        continue;
                    }
                    let r = unique_inner_filler(&x, &s, &d, &cfg).unwrap();
                    assert!(r.pass, "horn at {:?} of {s:?}: {}", d.kind, r.detail);
                }
            }
        }
    }

    #[test]
    fn horn_filler_recovers_composition() {
        // Two-vertex linear tree: horn homs are pairs agreeing on the inner
        // edge and the filler restricts to the composite.
        let cfg = EnumConfig::default();
        let x = nerve(example_c());
        let l2 = arc(Tree::linear(2));
        let delta = cofaces(&l2)
            .into_iter()
            .find(|d| matches!(d.kind, CofaceKind::Inner { .. }))
            .unwrap();
        let horns = inner_horn_homs(&x, &l2, &delta, &cfg).unwrap();
        assert_eq!(horns.len(), 16, "pairs agreeing on the single color");
        let r = unique_inner_filler(&x, &l2, &delta, &cfg).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn star_image_presheaf_fails_horn_filling() {
        let cfg = EnumConfig::default();
        let l2 = arc(Tree::linear(2));
        let x = StarImagePresheaf { target: l2.clone(), cfg: cfg.clone() };
        let delta = cofaces(&l2)
            .into_iter()
            .find(|d| matches!(d.kind, CofaceKind::Inner { .. }))
            .unwrap();
        let r = unique_inner_filler(&x, &l2, &delta, &cfg).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn representable_star3_fails_segal() {
        // A compatible family of star maps into ⋆₃ need not glue: pairing a
        // star embedding with a constant map matching on the interior edge
        // has no filler among the (all-constant) maps from the two-vertex
        // tree.
        let x = representable(arc(Tree::star(3)));
        let r = is_segal(&x, 2);
        assert!(!r.pass);
        let (s, reason) = r.witness.unwrap();
        assert_eq!(s.vertex_count(), 2);
        assert!(reason.contains("not surjective"), "{reason}");
    }

    #[test]
    fn representable_values() {
        let l1 = arc(Tree::linear(1));
        let x = representable(l1.clone());
        assert_eq!(x.value(&arc(Tree::eta())).len(), 2, "edges of L1");
        assert_eq!(x.value(&l1).len(), 4);
    }
}
