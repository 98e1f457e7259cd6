//! Computational toolkit for one-cusped hyperbolic prism orbifolds: the
//! signature catalog, right-permutation representations of their orientable
//! rotation groups, cover certification (manifold, cusps, homology, spines,
//! isometries, geodesic surfaces), tetrahedral gluing tables, embedding and
//! volume data, knot-complement pre-filters, and low-index subgroup
//! enumeration.

pub mod catalog;
pub mod complex;
pub mod filters;
pub mod fixtures;
pub mod geom;
pub mod homology;
pub mod lowindex;
pub mod perm;
pub mod quad;
pub mod tri;

pub use catalog::{builtin_tables, lookup, make_signature, vertex_data, PrismSignature};
pub use complex::{
    build_complex, build_spine, coarsen_spine, first_homology, fundamental_presentation,
    geodesic_surface, CoverComplex, SpineComplex,
};
pub use filters::{cusp_killing, double_cover_exists, filter_covers, prefilter};
pub use geom::{embed, maximal_cusp, prism_volume, verify_matrix_rep, EmbeddingGeometry};
pub use homology::AbelianGroup;
pub use lowindex::{brute_force_reps, enumerate_subgroups, EnumerationTask};
pub use perm::{
    cusp_orbits, evaluate_word, find_isometries, is_manifold, relators, validate_rep,
    verify_intertwine, GroupWord, Orientation, PermRep, Permutation,
};
pub use tri::{export_gluing_table, parse_gluing_table, triangulate, validate_triangulation};
