//! Exact certification of separating-invariant degree bounds for finite
//! abelian groups over fields that need not be algebraically closed, plus
//! verification of concrete separation witnesses.
//!
//! The pipeline: characters of the group pair into roots of unity
//! ([`group`], [`cyclotomic`]); the Galois group of the cyclotomic extension
//! acts on characters and carves out stable subsets ([`galois`]); product-one
//! sequences over the characters form the block monoid ([`blockmonoid`]);
//! Hermite-normal-form lattice arithmetic decides whether the degree-bounded
//! block elements span every kernel relation ([`lattice`]); and the certifier
//! turns that into a degree bound with re-checkable evidence ([`certify`]).
//! Concrete orbit-separation checks for regular representations and explicit
//! matrix groups live in [`separation`] and [`matgroup`], with the paper-level
//! computations bundled in [`presets`] and [`reproduce`].

pub mod blockmonoid;
pub mod budget;
pub mod certify;
pub mod cyclotomic;
pub mod error;
pub mod galois;
pub mod group;
pub mod lattice;
pub mod matgroup;
pub mod parse;
pub mod poly;
pub mod presets;
pub mod rational;
pub mod reproduce;
pub mod separation;

pub use blockmonoid::{
    atoms, build_s, enumerate_block_elements, is_product_one, restrict, SSet, ZSequence,
};
pub use budget::Budgets;
pub use certify::{
    build_t, check_condition_star, decompose_into_s, minimal_certified_degree, recheck_certificate,
    DegreeFailure, SDecomposition, SeparationCertificate, SubsetEvidence,
};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic, GaloisAutomorphism};
pub use error::{Error, Result};
pub use galois::{
    galois_group, orbit_partition, stable_subsets, FieldDescriptor, GaloisGroup, OrbitPartition,
};
pub use group::{
    character_order, enumerate_characters, enumerate_elements, pairing, Character, GroupElement,
    GroupSpec,
};
pub use lattice::{hermite_normal_form, kernel_basis, IntLattice, KernelLattice};
pub use matgroup::{
    build_regular_representation, irreducible_real_form, reynolds_orbit_sum, verify_invariance,
    IrreducibleRealForm, Matrix, MatrixGroup,
};
pub use parse::{
    format_zsequence, parse_field_descriptor, parse_group_spec, parse_point_csv, parse_zsequence,
};
pub use poly::{ExactPolynomial, Monomial};
pub use rational::{parse_rational, Rational};
pub use separation::{
    eval_monomial, from_character_basis, same_orbit_matrix, same_orbit_regular,
    separated_by_degree_matrix, separated_by_degree_regular, to_character_basis,
    verify_galois_compatibility, verify_torus_separation, PointInCharacterBasis, PointInGroupBasis,
    SeparatingWitness, SeparationOutcome,
};
