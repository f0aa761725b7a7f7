//! A two-parameter family of rank-3 Schottky groups on the Riemann sphere,
//! generated by reflections in five mirrors (two lines and three circles),
//! together with the machinery to verify its geometry numerically and to
//! explore the groups it contains.
//!
//! The crate is organized bottom-up:
//!
//! - [`moebius`]: conformal and anticonformal Möbius maps, trace-based
//!   classification, fixed points, translation length.
//! - [`cline`]: circles and lines as one Hermitian type, with reflections,
//!   push-forwards, and inversive-product relations.
//! - [`family`]: the mirror system L₀..L₄ at a parameter point (p, r), the
//!   marked generators A₁, A₂, A₃, the symmetry relations, and the six
//!   pinchable words whose traces detect the two tangency degenerations.
//!   At (1/2, (√7−√3)/2) all six become parabolic at once.
//! - [`words`] and [`explorer`]: reduced-word enumeration, freeness and
//!   discreteness screens, and limit-set sampling.
//! - [`witness`]: search for a system of six pairwise disjoint circles
//!   paired by the generators, certifying a classical marked group.
//! - [`render`]: deterministic SVG/PPM output of limit-set samples.

// `!(x > y)` guards are deliberate throughout: they reject NaN parameters
// where the suggested `x <= y` would accept them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cline;
pub mod explorer;
pub mod family;
pub mod moebius;
pub mod render;
pub mod tol;
pub mod witness;
pub mod words;

pub use cline::{Cline, ClineError, ClineRelation, ClineRelationKind};
pub use explorer::{
    freeness_screen, jorgensen_screen, limit_set_sample, FreenessReport, JorgensenRow, LimitPoint,
    LimitSetSample, Parallelism,
};
pub use family::{
    evaluate_pinch, generators, in_f, mirror_relation_table, mirrors, noded_point, pinch_words,
    r_max, symmetry_report, w_orbit_check, FamilyError, GeneratorTriple, Membership,
    MembershipReport, MirrorSystem, ParameterPoint, PinchRow, RelationTable, SymmetryReport,
    WOrbitReport,
};
pub use moebius::{
    AntiMoebiusMap, FixedPoints, MapClass, MapError, MapKind, MoebiusMap, SpherePoint,
};
pub use render::{render, ImageFormat, RenderError, RenderOutput, Viewport};
pub use witness::{
    verify_witness, witness_search, CircleSpec, WitnessCandidate, WitnessError, WitnessReport,
    WitnessSearchConfig, WitnessVerdict, WitnessVerification,
};
pub use words::{enumerate_reduced_words, reduced_word_count, Letter, ReducedWord, WordError};
