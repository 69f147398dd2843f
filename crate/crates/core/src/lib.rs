//! Geometric amalgamations of free groups.
//!
//! A diagram is a bipartite multigraph of axes (infinite cyclic vertex
//! groups) and chambers (free groups decorated by rank and orientability),
//! subject to thickness and surface-realizability rules. This crate
//! validates diagrams, reads and writes them, computes canonical codes and
//! isomorphisms, presents the direct limit, computes homology of the
//! associated P-manifold, and builds truncated models of its universal cover.

pub mod canon;
pub mod cover;
pub mod diagram;
pub mod error;
pub mod examples;
pub mod io;
pub mod limit;
pub mod matrix;
pub mod pmanifold;
pub mod word;

pub use canon::{
    are_isomorphic, automorphism_count, brute_force_automorphism_count, brute_force_isomorphic,
    brute_force_isomorphic_bounded, brute_force_isomorphism, canonical_code, canonical_form, enumerate_diagrams,
    enumerate_with, find_isomorphism, random_diagram, random_diagram_with, random_relabeling, CanonicalCode,
    CanonicalForm, EnumBounds, IsoWitness, RandomOptions,
};
pub use cover::{
    adjacent, build_cover_tree, components_after_removal, maximal_transitive_sets, CoverNode, CoverTree, NodeKind,
};
pub use diagram::{
    axis_degree, boundary_count, euler_characteristic, surface_realizable, validate, validate_with, Chamber,
    ChamberData, Diagram, Edge, Rule, Thickness, ValidationOptions, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use io::{export_dot, export_json, import_json, parse_document, parse_gaf, print_gaf, GafDocument, ParseError};
pub use limit::{abelianization, limit_presentation, Presentation};
pub use matrix::{smith_normal_form, IntMatrix, SnfResult};
pub use pmanifold::{betti_numbers, chamber_multiplicity_matrix, diagram_of, realize, Betti, IncidenceStructure};
pub use word::{Letter, Word};
