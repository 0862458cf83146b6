//! Canonical forms and isomorphism testing for trees.
//!
//! Two flavors are exposed. The *pinned* form distinguishes trees up to
//! isomorphisms that preserve the leg ordering and every neighborhood
//! ordering exactly (such an isomorphism is unique when it exists). The
//! *unpinned* form distinguishes trees up to isomorphism in the tree
//! category itself, whose maps never see the orderings. Callers state which
//! comparison they use; iso-class generation and face deduplication use the
//! unpinned form, encodings of pinned data use the pinned form.

use std::collections::BTreeMap;

use crate::tree::{EdgeId, Tree, VertexId};

/// An explicit relabeling between two trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
}

fn inner_end<'t>(t: &'t Tree, e: &str, parent: Option<&VertexId>) -> Option<&'t VertexId> {
    t.nbhd_map()
        .iter()
        .find(|(v, nb)| Some(*v) != parent && nb.iter().any(|x| x == e))
        .map(|(v, _)| v)
}

fn leg_index(t: &Tree, e: &str) -> usize {
    t.leg_order().iter().position(|l| l == e).unwrap()
}

/// Serialization of the subtree hanging off `e` away from `parent`,
/// preserving neighborhood rotations and leg indices.
fn pinned_ser(t: &Tree, e: &str, parent: Option<&VertexId>) -> String {
    match inner_end(t, e, parent) {
        None => format!("L{}", leg_index(t, e)),
        Some(v) => {
            let nb = t.nbhd(v);
            let j = nb.iter().position(|x| x == e).unwrap();
            let n = nb.len();
            let children: Vec<String> = (1..n)
                .map(|k| pinned_ser(t, &nb[(j + k) % n], Some(v)))
                .collect();
            format!("({j};{})", children.join(","))
        }
    }
}

/// Canonical byte encoding of a pinned tree: equal iff the trees are related
/// by an isomorphism matching legOrder and all neighborhood orders.
pub fn canonical_form(t: &Tree) -> Vec<u8> {
    if t.vertex_count() == 0 {
        return b"eta".to_vec();
    }
    let root = &t.leg_order()[0];
    format!("R{}", pinned_ser(t, root, None)).into_bytes()
}

/// AHU-style serialization ignoring all orderings.
fn unpinned_ser(t: &Tree, e: &str, parent: Option<&VertexId>) -> String {
    match inner_end(t, e, parent) {
        None => "*".to_string(),
        Some(v) => {
            let mut children: Vec<String> = t
                .nbhd(v)
                .iter()
                .filter(|x| *x != e)
                .map(|c| unpinned_ser(t, c, Some(v)))
                .collect();
            children.sort();
            format!("({})", children.join(","))
        }
    }
}

/// Canonical byte encoding up to unpinned isomorphism: the minimum over all
/// leg rootings of the AHU string.
pub fn canonical_form_unpinned(t: &Tree) -> Vec<u8> {
    if t.vertex_count() == 0 {
        return b"eta".to_vec();
    }
    t.leg_order()
        .iter()
        .map(|l| unpinned_ser(t, l, None))
        .min()
        .unwrap()
        .into_bytes()
}

/// The unique isomorphism matching leg order and neighborhood orders, if any.
pub fn pinned_isomorphism(a: &Tree, b: &Tree) -> Option<Relabeling> {
    if a.edges().len() != b.edges().len()
        || a.vertex_count() != b.vertex_count()
        || a.leg_order().len() != b.leg_order().len()
    {
        return None;
    }
    let mut rel = Relabeling {
        edge_map: BTreeMap::new(),
        vertex_map: BTreeMap::new(),
    };
    if a.vertex_count() == 0 {
        let (ea, eb) = (a.leg_order()[0].clone(), b.leg_order()[0].clone());
        rel.edge_map.insert(ea, eb);
        return Some(rel);
    }
    fn walk(
        a: &Tree,
        b: &Tree,
        ea: &str,
        eb: &str,
        pa: Option<&VertexId>,
        pb: Option<&VertexId>,
        rel: &mut Relabeling,
    ) -> bool {
        rel.edge_map.insert(ea.to_string(), eb.to_string());
        match (inner_end(a, ea, pa), inner_end(b, eb, pb)) {
            (None, None) => leg_index(a, ea) == leg_index(b, eb),
            (Some(va), Some(vb)) => {
                let (na, nb) = (a.nbhd(va), b.nbhd(vb));
                if na.len() != nb.len() {
                    return false;
                }
                let ja = na.iter().position(|x| x == ea).unwrap();
                let jb = nb.iter().position(|x| x == eb).unwrap();
                if ja != jb {
                    return false;
                }
                rel.vertex_map.insert(va.clone(), vb.clone());
                let n = na.len();
                (1..n).all(|k| {
                    walk(a, b, &na[(ja + k) % n], &nb[(jb + k) % n], Some(va), Some(vb), rel)
                })
            }
            _ => false,
        }
    }
    if walk(a, b, &a.leg_order()[0], &b.leg_order()[0], None, None, &mut rel) {
        Some(rel)
    } else {
        None
    }
}

/// Some isomorphism ignoring all orderings (a relabeling of edges and
/// vertices preserving incidence and legs), if one exists.
pub fn find_isomorphism(a: &Tree, b: &Tree) -> Option<Relabeling> {
    if a.edges().len() != b.edges().len()
        || a.vertex_count() != b.vertex_count()
        || a.leg_order().len() != b.leg_order().len()
    {
        return None;
    }
    if a.vertex_count() == 0 {
        return Some(Relabeling {
            edge_map: BTreeMap::from([(a.leg_order()[0].clone(), b.leg_order()[0].clone())]),
            vertex_map: BTreeMap::new(),
        });
    }
    fn walk(
        a: &Tree,
        b: &Tree,
        ea: &str,
        eb: &str,
        pa: Option<&VertexId>,
        pb: Option<&VertexId>,
        rel: &mut Relabeling,
    ) -> bool {
        rel.edge_map.insert(ea.to_string(), eb.to_string());
        match (inner_end(a, ea, pa), inner_end(b, eb, pb)) {
            (None, None) => true,
            (Some(va), Some(vb)) => {
                if a.valence(va) != b.valence(vb) {
                    return false;
                }
                rel.vertex_map.insert(va.clone(), vb.clone());
                // Group the remaining children by subtree shape; subtrees
                // with equal AHU keys are isomorphic, so pairing within a
                // group in deterministic order always extends.
                let mut groups: BTreeMap<String, (Vec<&EdgeId>, Vec<&EdgeId>)> = BTreeMap::new();
                for c in a.nbhd(va).iter().filter(|x| *x != ea) {
                    groups.entry(unpinned_ser(a, c, Some(va))).or_default().0.push(c);
                }
                for c in b.nbhd(vb).iter().filter(|x| *x != eb) {
                    groups.entry(unpinned_ser(b, c, Some(vb))).or_default().1.push(c);
                }
                for (_, (ca, cb)) in groups {
                    if ca.len() != cb.len() {
                        return false;
                    }
                    for (x, y) in ca.iter().zip(cb.iter()) {
                        if !walk(a, b, x, y, Some(va), Some(vb), rel) {
                            return false;
                        }
                    }
                }
                true
            }
            _ => false,
        }
    }
    let root_a = &a.leg_order()[0];
    let key_a = unpinned_ser(a, root_a, None);
    for lb in b.leg_order() {
        if unpinned_ser(b, lb, None) != key_a {
            continue;
        }
        let mut rel = Relabeling {
            edge_map: BTreeMap::new(),
            vertex_map: BTreeMap::new(),
        };
        if walk(a, b, root_a, lb, None, None, &mut rel) {
            return Some(rel);
        }
    }
    None
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    canonical_form_unpinned(a) == canonical_form_unpinned(b)
}

/// All unpinned iso-classes of trees with at most `max_vertices` vertices and
/// at most `max_legs` legs, each with an arbitrary deterministic pinning.
/// Grown by repeatedly attaching a fresh vertex at a leg.
pub fn tree_classes(max_vertices: usize, max_legs: usize) -> Vec<Tree> {
    let mut by_key: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
    let eta = Tree::eta();
    by_key.insert(canonical_form_unpinned(&eta), eta);
    if max_vertices == 0 {
        return by_key.into_values().collect();
    }
    let max_valence = max_legs + max_vertices.saturating_sub(1);
    // Intermediate trees may exceed the leg budget when later attachments can
    // absorb the excess (each univalent attachment removes one leg).
    for n in 1..=max_valence {
        if n <= max_legs + (max_vertices - 1) {
            let s = Tree::star(n);
            by_key.entry(canonical_form_unpinned(&s)).or_insert(s);
        }
    }
    let mut frontier: Vec<Tree> = by_key
        .values()
        .filter(|t| t.vertex_count() == 1)
        .cloned()
        .collect();
    for v_count in 1..max_vertices {
        let remaining = max_vertices - v_count - 1;
        let mut next = Vec::new();
        for t in &frontier {
            for leg in t.leg_order().to_vec() {
                for k in 1..=max_valence {
                    let legs_after = t.leg_order().len() - 1 + (k - 1);
                    if legs_after == 0 || legs_after > max_legs + remaining {
                        continue;
                    }
                    let t2 = attach(t, &leg, k);
                    let key = canonical_form_unpinned(&t2);
                    if !by_key.contains_key(&key) {
                        by_key.insert(key, t2.clone());
                        next.push(t2);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Tree> = by_key
        .into_values()
        .filter(|t| t.leg_order().len() <= max_legs && t.vertex_count() <= max_vertices)
        .collect();
    out.sort_by_key(|t| (t.vertex_count(), t.leg_order().len(), canonical_form_unpinned(t)));
    out
}

/// Attaches a fresh vertex of valence `k` at the leg `e` of `t`.
fn attach(t: &Tree, e: &str, k: usize) -> Tree {
    let fresh_v = format!("n{}", t.vertex_count());
    let mut edges: Vec<EdgeId> = t.edges().iter().cloned().collect();
    let mut new_nb = vec![e.to_string()];
    let mut i = 0;
    while new_nb.len() < k {
        let cand = format!("x{i}");
        if !t.has_edge(&cand) {
            new_nb.push(cand.clone());
            edges.push(cand);
        }
        i += 1;
    }
    let mut nbhd: Vec<(VertexId, Vec<EdgeId>)> = t
        .nbhd_map()
        .iter()
        .map(|(v, nb)| (v.clone(), nb.clone()))
        .collect();
    nbhd.push((fresh_v, new_nb.clone()));
    let leg_order: Vec<EdgeId> = t
        .leg_order()
        .iter()
        .filter(|l| *l != e)
        .cloned()
        .chain(new_nb.into_iter().skip(1))
        .collect();
    Tree::new(edges, nbhd, leg_order).expect("attachment yields a valid tree")
}
