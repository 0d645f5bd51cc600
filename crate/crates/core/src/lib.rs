//! Exact-arithmetic workbench for divisor classes on rational surfaces and
//! blown-up twistor threefolds.
//!
//! Everything here computes over ℤ and ℚ with arbitrary precision; there is
//! no floating point and no tolerance anywhere. The crate is organised
//! bottom-up:
//!
//! * [`exact`] — integer matrices, fraction-free determinants, Sylvester
//!   negative-definiteness certificates, exact linear solving, ℤ-span
//!   membership.
//! * [`lattice`] — labelled intersection lattices, class vectors, optional
//!   canonical class and real-structure conjugation, equivalence modulo
//!   declared relations.
//! * [`surface`] — rational surfaces: quadric and Hirzebruch models, point
//!   blow-ups with strict-transform tracking, adjunction, Riemann–Roch,
//!   Zariski decomposition with exact certificates.
//! * [`threefold`] — intersection rings of twistor-type threefolds, blow-up
//!   along a curve, restriction calculus to exceptional ruled surfaces.
//! * [`ledger`] — cohomology bookkeeping: exact-sequence constraint
//!   propagation over dimensions that may depend linearly on a parameter.
//! * [`workbench`] — JSON scenario layer: declare objects and checks in a
//!   file, run them, get a deterministic report.

pub mod exact;
pub mod lattice;
pub mod ledger;
pub mod surface;
pub mod threefold;
pub mod workbench;

pub use exact::{Int, IntMatrix, LinearSolution, Rat};
pub use lattice::{ClassVector, Lattice, SignedPermutation};
pub use ledger::{
    CohFact, DimKind, ExactSequence, LinExpr, ModuliCase, ModuliReport, PropagateReport,
};
pub use surface::{BaseKind, PointSpec, SurfaceModel, ZariskiDecomposition};
pub use threefold::{
    BaseClass, BlowupRecord, CurveData, ExtClass, ExtendedRing, HirzebruchClass, Splitting,
    TwistorRing,
};
pub use workbench::{parse_scenario, paper_suite, run_suite, Report, Scenario};
