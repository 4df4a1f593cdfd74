//! Exact invariants of central hyperplane arrangements over the rationals.
//!
//! The combinatorial side ([`lattice`], [`coefficients`]) computes
//! intersection lattices, Möbius values, characteristic polynomials and the
//! `b_i` coefficients of a deconing. The algebraic side ([`derivation`])
//! works with logarithmic derivations of multiarrangements: graded
//! dimensions, free bases, exponents and the `σ_i` coefficients of a
//! Ziegler restriction. [`criteria`] compares the two, and [`oracles`]
//! recomputes the combinatorics by independent methods.

pub mod arrangement;
pub mod coefficients;
pub mod corpus;
pub mod criteria;
pub mod derivation;
pub mod error;
pub mod format;
pub mod lattice;
pub mod linalg;
pub mod multipoly;
pub mod oracles;
pub mod poly;
pub mod rational;

pub use arrangement::{
    canonicalize, decone, localize_and_essentialize, ziegler_restriction, ziegler_with_fibers, AffineArrangement,
    AffineHyperplane, Arrangement, CentralArrangement, LinearForm, Multiarrangement,
};
pub use coefficients::{b_coefficients, rho, CoefficientTable, DeconeRestriction, FlatCoefficients};
pub use corpus::{corpus, corpus_entry, corpus_names, CorpusEntry, Expected, Provenance, Tagged};
pub use criteria::{
    abe_yoshinaga_free_check, compare_coefficients, mca_check, merge_verdicts, saito_free_check, tameness_classify,
    yoshinaga_3d, ChamberBound, ComparisonReport, FreenessMethod, MergedVerdict, TamenessReason, TamenessTag,
};
pub use derivation::{
    defining_polynomial, derivation_membership, derivation_space_dim, find_free_basis, multi_char_poly_free,
    rank2_exponents, saito_check, sigma_coefficients, Exponents, FreeBasis, FreenessVerdict, LocalSigma,
    PolyVectorField, SigmaMethod, SigmaStatus, SigmaTable,
};
pub use error::{Error, Result};
pub use format::{parse_arrangement_file, ArrangementFile};
pub use lattice::{chamber_count, char_poly, intersection_lattice, reduced_char_poly, Flat, IntersectionLattice};
pub use multipoly::Poly;
pub use oracles::{finite_field_char_poly, guarded_primes, moebius_bruteforce, region_count_recursion, PrimeWitness};
pub use poly::IntPolynomial;
pub use rational::Rational;
