//! Certified upper bounds from planner covers, exact lower bounds over F₂,
//! and their reconciliation into bound reports.

pub mod lower;
pub mod report;
pub mod verify;

pub use lower::{
    cd_bound_check, cd_positivity_criterion, orbit_nilpotency_lower_bound, zero_divisor_cup_length, zero_divisor_cup_length_on_product, CdBoundReport,
    CdBoundStatus, CriterionReport, CriterionVerdict, FixedSetDimension, NilpotencyReport, ZeroDivisorReport,
};
pub use report::{chain_violations, reconcile, reports_to_csv, Bound, BoundLedger, BoundReport, Invariant, Status};
pub use verify::{verify_cat_cover, verify_cover, Certificate, Condition, Refutation, VerifyParams, DEFAULT_SEED};

use crate::complex::ComplexError;
use crate::symmetry::SymmetryError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}
