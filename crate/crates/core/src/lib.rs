//! Binary-classification measures and the misclassification costs they imply.
//!
//! The crate evaluates twelve performance measures from a 2x2 confusion
//! matrix, attaches to each one its equivalent cost functions
//! `λ12(p2)` / `λ21(p2)` under class imbalance, and solves two-class
//! Gaussian scenarios for the boundary that optimizes a given measure.
//!
//! Everything here is pure computation over `f64` values. The crate is
//! `no_std` and only needs `alloc` for result tables; enable the `std`
//! feature when linking against the standard library (it is otherwise
//! unused).
//!
//! Class 1 is the negative (majority) class and class 2 the positive
//! (minority) class throughout.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod confusion;
pub mod costs;
pub mod gaussian;
pub mod measures;
pub mod optimize;
pub mod report;

pub use confusion::{ClassRates, ConfusionError, ConfusionMatrix};
pub use costs::{
    ApparentCosts, BoundCondition, CostError, CostProfile, CostType, Exactness, Risk, Verdict,
};
pub use gaussian::{GaussianError, GaussianScenario, OptimumSolution};
pub use measures::{MeasureError, MeasureId, MeasureValue, Orientation};
pub use report::{Series, Table2, Table2Column, Table3};
