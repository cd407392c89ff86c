//! Certified verification of the modular-form inequalities behind the E8
//! magic function: exact q-series identities, coefficient sign lemmas,
//! interval enclosures of closed-form constants and pointwise sign
//! certificates on the imaginary axis.

pub mod evaluator;
pub mod forms;
pub mod numerics;
pub mod qseries;
pub mod verifier;
