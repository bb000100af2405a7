//! Verification-grade engine for the transverse geometry of homogeneous
//! Riemannian foliations.
//!
//! Given the structure constants of a Lie algebra with an orthonormal
//! invariant frame and a split of that frame into leaf and normal
//! directions, the engine computes the ambient and transverse Levi-Civita
//! connections, the transverse curvature tensors, the mean curvature form,
//! the symmetric tautness tensor and the associated divergence and Laplace
//! operators, then machine-checks every identity those objects satisfy and
//! renders a tautness verdict.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: dense frame-indexed tensors over the normal directions.
//! - [`algebra`]: Lie algebra validation and the ambient connection.
//! - [`foliation`]: leaf/normal splits, their validation, and transverse
//!   metric rescaling.
//! - [`geometry`]: the full transverse-geometry bundle and the differential
//!   operators acting on invariant tensors.
//! - [`diagnostics`]: tautness criteria, critical-metric residuals and the
//!   first-variation integrand.
//! - [`document`] / [`report`]: the JSON input format, built-in example
//!   generators and the report pipeline used by the `folia` binary.

pub mod algebra;
pub mod diagnostics;
pub mod document;
pub mod fixtures;
pub mod foliation;
pub mod geometry;
pub mod report;
pub mod tensor;

pub use algebra::{AlgebraError, Connection, LieAlgebra};
pub use diagnostics::{DiagnosticsError, TautnessReport, TautnessVerdict};
pub use document::{DocumentError, ExampleName, ExampleParams, InputDocument};
pub use foliation::{FoliatedAlgebra, Foliation, FoliationError};
pub use geometry::TransverseGeometry;
pub use report::{run_report, ReportFormat, RunOutcome};
pub use tensor::{FrameTensor, SymmetryClass};

/// Default residual tolerance for all identity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
