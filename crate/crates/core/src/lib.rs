//! Twisted cubes `P_{i,m}`, generalized string polytopes `Δ_{i,m}` and
//! condition-(P) certificates for words in finite Weyl groups, computed in
//! exact rational arithmetic.
//!
//! Module map:
//! - [`rootsys`]: Cartan matrices, weights, reduced words, Weyl dimensions.
//! - [`polyhedra`]: half-space polytopes, vertices, lattice points, volume,
//!   simplicity and smoothness.
//! - [`twistedcube`]: the functions `A_j`, `P_{i,m}`, Cartier data, condition (P).
//! - [`stringpoly`]: the `Ψ` recursion, membership in `Δ_{i,m}`, `m(lambda)`.
//! - [`resolve`]: construction of smooth multiplicity lists and their report.

pub mod error;
pub mod polyhedra;
pub mod rational;
pub mod resolve;
pub mod rootsys;
pub mod stringpoly;
pub mod twistedcube;

pub use error::{Error, Result};
pub use polyhedra::{is_simple, is_smooth, HPolytope, Halfspace, Incidence, VertexSet};
pub use rational::{Point, Rational};
pub use resolve::{
    construct_m, construct_m_with_offset, containment_check, verify_resolution,
    verify_resolution_with, ContainmentReport, ResolutionReport,
};
pub use rootsys::{cartan_matrix, Family, RootDatum, Weight, Word};
pub use stringpoly::{
    delta_equals_p, delta_lattice_points, for_each_delta_point, in_delta, in_delta_int,
    lattice_counts, m_of_lambda, psi_trace, DeltaEqualsEvidence, PsiTrace, StringMembership,
};
pub use twistedcube::{
    a_forms, cartier_data, direct_p_oracle, direct_p_oracle_capped, satisfies_p, twisted_cube,
    AffineFormList, CartierTable, ConditionPCertificate, Sign, WordMult,
};
