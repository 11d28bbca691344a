//! Finite-set models of internal category theory.
//!
//! Everything lives inside the ambient category of finite sets and total
//! functions, with chosen products, pullbacks, equalizers and a terminal
//! object ([`ambient`]). On top of that the crate builds internal categories
//! and their functors and natural transformations ([`internal_cat`]),
//! internal monoidal categories with coherence checkers ([`monoidal`]),
//! categories enriched in an internal monoidal category ([`enriched`]),
//! externalization fibers and Grothendieck totals ([`externalization`]), and
//! free-category multicategories with the translations to and from enriched
//! categories ([`multicat`]).
//!
//! Every axiom checker produces a [`report::CheckReport`] listing each axiom
//! instance family with pass/fail status and concrete witness tuples, so a
//! failing structure can be audited rather than just rejected.
//!
//! The [`frontend`] module owns the textual fixture format and the `icat`
//! command-line interface; [`corpus`] holds the shipped example structures
//! and their deliberately broken variants used by the test suite.

pub mod ambient;
pub mod corpus;
pub mod enriched;
pub mod error;
pub mod externalization;
pub mod frontend;
pub mod internal_cat;
pub mod monoidal;
pub mod multicat;
pub mod report;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
