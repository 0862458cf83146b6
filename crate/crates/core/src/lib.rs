//! The category of finite unrooted trees with legs: objects, morphisms,
//! rooting, factorization systems, finite cyclic operads, the free cyclic
//! operad on a tree, and the cyclic dendroidal nerve with its Segal and
//! inner-horn checks.
//!
//! Everything is exact and finite: hom-sets are enumerated, operad axioms are
//! checked exhaustively, and presheaf conditions are verified up to explicit
//! vertex/leg bounds.

pub mod canon;
pub mod decorated;
pub mod factorization;
pub mod fixtures;
pub mod graft;
pub mod homs;
pub mod json;
pub mod morphism;
pub mod nerve;
pub mod operad;
pub mod rooting;
pub mod subgraph;
pub mod tree;

pub use canon::{canonical_form, canonical_form_unpinned, find_isomorphism, is_isomorphic, tree_classes};
pub use decorated::{
    act_on_element, apply_functor_c, decorated_canonical_form, evaluate_decorated_tree,
    free_elements, graft_elements, CFunctorImage, DecoratedTree,
};
pub use factorization::{
    active_inert_factor, codegeneracies, cofaces, degree, in_xi_minus, in_xi_plus, is_active,
    is_inert, iso_over, lift_square, reedy_factor, CofaceDescriptor, CofaceKind,
    FactorizationError, FactorizationKind, FactorizationResult,
};
pub use graft::{
    delta_a, delta_b, delta_e, graft_tree, phi_mn, psi_q, psi_sigma, verify_psi_phi_squares,
    GraftError, GraftTree,
};
pub use homs::{enumerate_homs_bruteforce, EnumConfig, EnumError};
pub use json::{tree_to_dot, JsonError, MorphismDto, OperadDto, SubGraphDto, TreeDto, VertexDto};
pub use nerve::{
    edge_inclusion, horn_faces, inner_horn_homs, is_segal, nerve, representable, segal_core_homs,
    segal_map, star_inclusion, unique_inner_filler, HornReport, NerveElement, NervePresheaf,
    Presheaf, RepresentablePresheaf, SegalReport, StarImagePresheaf,
};
pub use morphism::{CompleteMorphism, Morphism, MorphismError};
pub use operad::{
    enumerate_cyc_maps, example_a, example_c, example_c_prime, from_involutive_monoid, Color,
    CycMap, FiniteCyclicOperad, OpId, OperadError, Perm,
};
pub use rooting::{
    amalgamate, automorphisms, enumerate_homs_structured, enumerate_omega_homs, find_root,
    is_oriented, is_rooted, isomorphisms, lift, rootify, RootedTree, RootingError, RootingResult,
};
pub use subgraph::{all_subgraphs, BoundaryMultiset, SubGraph, SubGraphError};
pub use tree::{EdgeId, Item, Path, RwbColor, RwbGraph, Tree, TreeError, VertexId};
