//! Desk-scale simulation of search without entanglement.
//!
//! A single quantum variable with `n` modes (a "unary" register) is enough
//! to run Grover's search: a balanced beam splitter, a phase-flipping box,
//! the inverse splitter and an inverter on mode 1, repeated about `√n`
//! times. The same linear optics recycling classical waves gives the same
//! `√n` scaling in integrated intensity, and the continuous-time variant
//! rotates a spin into the marked state in time `∝ √n`.
//!
//! Modules:
//!
//! * [`mode`]: dense single-variable state vectors and two-mode splitters.
//! * [`splitter`]: the balanced `n`-way splitter as `n − 1` two-mode splitters.
//! * [`oracle`]: the billed box and the classical coin baseline.
//! * [`grover`]: unary Grover passes, schedules and success traces.
//! * [`continuous`]: continuous-time search under `|u⟩⟨u| + |ψ⟩⟨ψ|`.
//! * [`wave`]: classical wave search with integrated-intensity billing.
//! * [`entangle`]: Schmidt spectra under unary, qubit and occupation views.
//! * [`report`]: side-by-side device comparison and byte-stable emission.

pub mod continuous;
pub mod entangle;
mod error;
pub mod grover;
pub mod mode;
pub mod oracle;
pub mod report;
pub mod splitter;
pub mod wave;

pub use error::{Error, Result};
pub use mode::{ModeState, TwoModeSplitter};
pub use num_complex::Complex64;
pub use oracle::{BillingReport, OracleBox};
pub use splitter::SplitterNetwork;

/// Normalization tolerance kept by every internal operation.
pub const NORM_TOL: f64 = 1e-12;

/// Normalization tolerance accepted at API boundaries.
pub const API_NORM_TOL: f64 = 1e-9;
