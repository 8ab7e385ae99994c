//! AJ-bracket of tied link diagrams.
//!
//! [`aj_recursive`] evaluates the bracket by growing a resolution tree down to
//! legal leaves, [`aj_closed`](mod@aj_closed) evaluates the 2- and 3-tied closed-form state sums,
//! and [`verify`] cross-checks the two on random tied braid closures.

pub mod aj_closed;
pub mod aj_recursive;
pub mod diagram;
pub mod kauffman;
pub mod laurent;
mod union_find;
pub mod verify;

pub use diagram::{
    parse_diagram, Color, Complexity, CrossingCensus, CrossingClass, DiagramError, DiagramInput,
    FinalResolution, Resolution, SmoothingType, StateAssignment, StateKey, TiedDiagram,
};
pub use kauffman::{kauffman_bracket, BracketStatus};
pub use laurent::{LaurentError, Monomial, TiedLaurent};
pub use aj_recursive::{aj_bracket, aj_bracket_recursive, Gamma, LeafRecord, ResolutionStrategy, TreeStats};
pub use aj_closed::{aj2_closed, aj3_closed, aj_closed, ClosedFormError, GammaBreakdown};
pub use verify::{random_tied_braid, verify_suite, Report, VerifyConfig};
