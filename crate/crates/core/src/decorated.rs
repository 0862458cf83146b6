//! Trees decorated by operad data: evaluation, the free cyclic operad on a
//! tree, and the functor sending tree morphisms to maps of free operads.
//!
//! A decorated tree colors every edge and labels every vertex with an
//! operation whose profile matches the colors around it (slot i of the
//! profile is the color of ordᵛ(i), so the marked edge carries the output).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::homs::{EnumConfig, EnumError};
use crate::morphism::Morphism;
use crate::operad::{permutations, Color, FiniteCyclicOperad, OpId, OperadError, Perm};
use crate::rooting::rootify;
use crate::tree::{EdgeId, Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecoratedTree {
    pub shape: Arc<Tree>,
    pub coloring: BTreeMap<EdgeId, Color>,
    pub labels: BTreeMap<VertexId, OpId>,
}

impl DecoratedTree {
    /// Checks totality and the profile condition at every vertex.
    pub fn validate(&self, o: &FiniteCyclicOperad) -> Result<(), OperadError> {
        for e in self.shape.edges() {
            let c = self.coloring.get(e).ok_or_else(|| {
                OperadError::ColorMismatch(format!("edge {e} is uncolored"))
            })?;
            if !o.colors.contains(c) {
                return Err(OperadError::ColorMismatch(format!(
                    "edge {e} has unknown color {c}"
                )));
            }
        }
        for v in self.shape.vertices() {
            let op = self.labels.get(v).ok_or_else(|| {
                OperadError::ColorMismatch(format!("vertex {v} is unlabeled"))
            })?;
            let profile: Vec<Color> = self
                .shape
                .nbhd(v)
                .iter()
                .map(|e| self.coloring[e].clone())
                .collect();
            match o.profiles.get(op) {
                Some(p) if *p == profile => {}
                _ => {
                    return Err(OperadError::ColorMismatch(format!(
                        "label {op} at {v} does not have profile {profile:?}"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Number of vertices — the "size" used by the free-operad enumeration.
    pub fn size(&self) -> usize {
        self.shape.vertex_count()
    }

    /// The output-first profile read off the leg order.
    pub fn profile(&self) -> Vec<Color> {
        self.shape
            .leg_order()
            .iter()
            .map(|l| self.coloring[l].clone())
            .collect()
    }
}

/// Evaluates a decorated tree to a single operation: root at the first leg,
/// align each vertex label to the rooted order by a τ-power, graft children
/// with ∘ᵢ from the right, and finally permute the result's inputs back into
/// the tree's leg order.
pub fn evaluate_decorated_tree(
    o: &FiniteCyclicOperad,
    d: &DecoratedTree,
) -> Result<OpId, OperadError> {
    d.validate(o)?;
    let t = &d.shape;
    if t.vertex_count() == 0 {
        let e = t.edges().iter().next().unwrap();
        return Ok(o.units[&d.coloring[e]].clone());
    }
    let r0 = t.leg_order()[0].clone();
    let rooted = rootify(t, &r0)
        .expect("first leg roots the tree")
        .rooted;
    let rt = rooted.tree().clone();
    let ends = rt.edge_ends();

    // g aligned to the rooted order: if the rooted neighborhood is the
    // original rotated left by k, the label acts by the k-th power of τ.
    let aligned = |v: &VertexId| -> Result<OpId, OperadError> {
        let orig = d.shape.nbhd(v);
        let first = &rt.nbhd(v)[0];
        let k = orig.iter().position(|e| e == first).unwrap();
        let q = orig.len();
        let sigma: Perm = (0..q).map(|i| (i + k) % q).collect();
        o.apply_act(&d.labels[v], &sigma)
    };

    fn eval(
        o: &FiniteCyclicOperad,
        d: &DecoratedTree,
        rt: &Tree,
        ends: &BTreeMap<EdgeId, Vec<VertexId>>,
        aligned: &dyn Fn(&VertexId) -> Result<OpId, OperadError>,
        v: &VertexId,
    ) -> Result<(OpId, Vec<EdgeId>), OperadError> {
        let nb = rt.nbhd(v);
        let mut op = aligned(v)?;
        let mut leaves: Vec<EdgeId> = nb[1..].to_vec();
        for i in (1..nb.len()).rev() {
            let x = &nb[i];
            if rt.is_leg(x) {
                continue;
            }
            let child = ends[x].iter().find(|w| *w != v).unwrap();
            let (f, lf) = eval(o, d, rt, ends, aligned, child)?;
            op = o.apply_circ(&op, i, &f)?;
            leaves.splice(i - 1..i, lf);
        }
        Ok((op, leaves))
    }

    let v0 = rt
        .vertices()
        .find(|v| rt.nbhd(v)[0] == r0)
        .expect("root leg touches a vertex");
    let (raw, leaves) = eval(o, d, &rt, &ends, &aligned, v0)?;
    // Permute planar leaf order into the tree's leg order.
    let mut rho: Perm = vec![0];
    for l in &rt.leg_order()[1..] {
        rho.push(1 + leaves.iter().position(|x| x == l).unwrap());
    }
    o.apply_act(&raw, &rho)
}

/// A stable serialization of a decorated tree that forgets raw edge/vertex
/// ids and the per-vertex marked positions but keeps labels, colors, the
/// cyclic orders, and the leg numbering — two decorated trees describe the
/// same free-operad element exactly when these strings agree.
pub fn decorated_canonical_form(d: &DecoratedTree) -> String {
    let t = &d.shape;
    if t.vertex_count() == 0 {
        let e = t.edges().iter().next().unwrap();
        return format!("eta[{}]", d.coloring[e]);
    }
    let leg_index: BTreeMap<&EdgeId, usize> = t
        .leg_order()
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let ends = t.edge_ends();
    fn ser(
        d: &DecoratedTree,
        leg_index: &BTreeMap<&EdgeId, usize>,
        ends: &BTreeMap<EdgeId, Vec<VertexId>>,
        v: &VertexId,
        ein: &EdgeId,
    ) -> String {
        let t = &d.shape;
        let nb = t.nbhd(v);
        let j = nb.iter().position(|e| e == ein).unwrap();
        let mut s = format!("({}", d.labels[v]);
        for step in 1..=nb.len() - 1 {
            let x = &nb[(j + step) % nb.len()];
            s.push_str(&format!(";{}", d.coloring[x]));
            if t.is_leg(x) {
                s.push_str(&format!("=L{}", leg_index[x]));
            } else {
                let w = ends[x].iter().find(|w| *w != v).unwrap();
                s.push_str(&ser(d, leg_index, ends, w, x));
            }
        }
        s.push(')');
        s
    }
    let r0 = &t.leg_order()[0];
    let v0 = t.vertices().find(|v| t.nbhd(v).contains(r0)).unwrap();
    format!("R[{}]{}", d.coloring[r0], ser(d, &leg_index, &ends, v0, r0))
}

/// The image of a tree morphism under the free-cyclic-operad functor:
/// the edge map on colors and, for each domain vertex, the image subgraph
/// pinned by transporting the vertex order (a unit marker when the subgraph
/// is a single edge).
#[derive(Debug, Clone)]
pub struct CFunctorImage {
    pub on_colors: BTreeMap<EdgeId, EdgeId>,
    pub generator_images: BTreeMap<VertexId, DecoratedTree>,
}

impl CFunctorImage {
    /// Canonical key suitable for equality comparison of functor images.
    pub fn canonical_key(&self) -> (BTreeMap<EdgeId, EdgeId>, BTreeMap<VertexId, String>) {
        (
            self.on_colors.clone(),
            self.generator_images
                .iter()
                .map(|(v, d)| (v.clone(), decorated_canonical_form(d)))
                .collect(),
        )
    }
}

pub fn apply_functor_c(phi: &Morphism) -> CFunctorImage {
    let cod = phi.cod();
    let generator_images = phi
        .dom()
        .vertices()
        .map(|v| {
            let g = phi.apply1(v);
            let d = if g.is_single_edge() {
                let e = g.edges.iter().next().unwrap().clone();
                DecoratedTree {
                    shape: Arc::new(Tree::eta_named(&e)),
                    coloring: BTreeMap::from([(e.clone(), e)]),
                    labels: BTreeMap::new(),
                }
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
                DecoratedTree {
                    coloring: shape.edges().iter().map(|e| (e.clone(), e.clone())).collect(),
                    labels: shape.vertices().map(|w| (w.clone(), w.clone())).collect(),
                    shape,
                }
            };
            (v.clone(), d)
        })
        .collect();
    CFunctorImage {
        on_colors: phi.phi0().clone(),
        generator_images,
    }
}

/// Applies σ ∈ Σ⁺ to a free-operad element by permuting its leg order:
/// slot j of the result is slot σ(j) of the input.
pub fn act_on_element(d: &DecoratedTree, sigma: &Perm) -> DecoratedTree {
    let legs = d.shape.leg_order();
    let new_legs: Vec<EdgeId> = sigma.iter().map(|&j| legs[j].clone()).collect();
    let shape = Arc::new(
        Tree::new(
            d.shape.edges().clone(),
            d.shape
                .nbhd_map()
                .iter()
                .map(|(v, nb)| (v.clone(), nb.clone())),
            new_legs,
        )
        .expect("permuting legs preserves treeness"),
    );
    DecoratedTree {
        shape,
        coloring: d.coloring.clone(),
        labels: d.labels.clone(),
    }
}

/// Grafts element `y` into input slot `i` (1-based) of element `x`,
/// identifying y's first leg with x's i-th leg. Colors must match.
pub fn graft_elements(x: &DecoratedTree, i: usize, y: &DecoratedTree) -> Option<DecoratedTree> {
    let xl = x.shape.leg_order();
    let yl = y.shape.leg_order();
    if i < 1 || i >= xl.len() || yl.is_empty() {
        return None;
    }
    let xe = &xl[i];
    let y0 = &yl[0];
    if x.coloring[xe] != y.coloring[y0] {
        return None;
    }
    // Rename y's items away from x's.
    let mut counter = 0usize;
    let mut fresh_edge = |taken: &BTreeSet<EdgeId>| loop {
        let cand = format!("q{counter}");
        counter += 1;
        if !taken.contains(&cand) {
            break cand;
        }
    };
    let mut taken: BTreeSet<EdgeId> = x.shape.edges().clone();
    let mut edge_map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for e in y.shape.edges() {
        if e == y0 {
            edge_map.insert(e.clone(), xe.clone());
        } else {
            let n = fresh_edge(&taken);
            taken.insert(n.clone());
            edge_map.insert(e.clone(), n);
        }
    }
    let mut vcounter = 0usize;
    let xverts: BTreeSet<&VertexId> = x.shape.vertices().collect();
    let mut vertex_map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in y.shape.vertices() {
        let mut cand = v.clone();
        while xverts.contains(&cand) || vertex_map.values().any(|w| *w == cand) {
            cand = format!("p{vcounter}");
            vcounter += 1;
        }
        vertex_map.insert(v.clone(), cand);
    }
    let edges: BTreeSet<EdgeId> = x
        .shape
        .edges()
        .iter()
        .cloned()
        .chain(edge_map.values().cloned())
        .collect();
    let nbhd: Vec<(VertexId, Vec<EdgeId>)> = x
        .shape
        .nbhd_map()
        .iter()
        .map(|(v, nb)| (v.clone(), nb.clone()))
        .chain(y.shape.nbhd_map().iter().map(|(v, nb)| {
            (
                vertex_map[v].clone(),
                nb.iter().map(|e| edge_map[e].clone()).collect(),
            )
        }))
        .collect();
    let mut leg_order: Vec<EdgeId> = xl[..i].to_vec();
    leg_order.extend(yl[1..].iter().map(|e| edge_map[e].clone()));
    leg_order.extend(xl[i + 1..].iter().cloned());
    let shape = Arc::new(Tree::new(edges, nbhd, leg_order).expect("graft of trees is a tree"));
    let coloring = x
        .coloring
        .iter()
        .map(|(e, c)| (e.clone(), c.clone()))
        .chain(
            y.coloring
                .iter()
                .filter(|(e, _)| *e != y0)
                .map(|(e, c)| (edge_map[e].clone(), c.clone())),
        )
        .collect();
    let labels = x
        .labels
        .iter()
        .map(|(v, l)| (v.clone(), l.clone()))
        .chain(y.labels.iter().map(|(v, l)| (vertex_map[v].clone(), l.clone())))
        .collect();
    Some(DecoratedTree { shape, coloring, labels })
}

/// All elements of the free cyclic operad on `s` with at most `size_bound`
/// vertices: units, the Σ⁺-orbit of every vertex generator, and all grafts,
/// one representative per isomorphism class, in canonical order.
pub fn free_elements(
    s: &Arc<Tree>,
    size_bound: usize,
    cfg: &EnumConfig,
) -> Result<Vec<DecoratedTree>, EnumError> {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out: Vec<DecoratedTree> = Vec::new();
    fn push(seen: &mut BTreeSet<String>, out: &mut Vec<DecoratedTree>, d: DecoratedTree) -> bool {
        seen.insert(decorated_canonical_form(&d)) && {
            out.push(d);
            true
        }
    }
    // Units: one per color.
    for c in s.edges() {
        let d = DecoratedTree {
            shape: Arc::new(Tree::eta_named("u")),
            coloring: BTreeMap::from([("u".to_string(), c.clone())]),
            labels: BTreeMap::new(),
        };
        push(&mut seen, &mut out, d);
    }
    // Generators: every ordering of every vertex neighborhood.
    let mut levels: Vec<Vec<DecoratedTree>> = vec![Vec::new(); size_bound + 1];
    for v in s.vertices() {
        let nb = s.nbhd(v);
        let q = nb.len();
        for sigma in permutations(q) {
            let edges: Vec<EdgeId> = (0..q).map(|i| format!("g{i}")).collect();
            let shape = Arc::new(
                Tree::new(
                    edges.iter().cloned(),
                    [(("n0").to_string(), edges.clone())],
                    edges.clone(),
                )
                .expect("star is a tree"),
            );
            let d = DecoratedTree {
                shape,
                coloring: edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), nb[sigma[i]].clone()))
                    .collect(),
                labels: BTreeMap::from([("n0".to_string(), v.clone())]),
            };
            if push(&mut seen, &mut out, d.clone()) {
                levels[1].push(d);
            }
        }
    }
    for n in 2..=size_bound {
        let mut new_level: Vec<DecoratedTree> = Vec::new();
        for j in 1..n {
            let (xs, ys) = (levels[j].clone(), levels[n - j].clone());
            for x in &xs {
                for i in 1..x.shape.leg_order().len() {
                    for y in &ys {
                        let Some(g) = graft_elements(x, i, y) else { continue };
                        let arity = g.shape.leg_order().len();
                        if out.len() as u128 > cfg.cap {
                            return Err(EnumError::SizeBoundExceeded {
                                space: out.len() as u128,
                                cap: cfg.cap,
                            });
                        }
                        // Orbits are always inserted wholesale, so a known
                        // element means its whole orbit is already present.
                        if seen.contains(&decorated_canonical_form(&g)) {
                            continue;
                        }
                        for sigma in permutations(arity) {
                            let gd = act_on_element(&g, &sigma);
                            if push(&mut seen, &mut out, gd.clone()) {
                                new_level.push(gd);
                            }
                        }
                    }
                }
            }
        }
        levels[n] = new_level;
    }
    out.sort_by(|a, b| {
        (a.size(), decorated_canonical_form(a)).cmp(&(b.size(), decorated_canonical_form(b)))
    });
    Ok(out)
}
