//! Simulation laboratory for quantum phase estimation read out through
//! window states and through singular-value-transformation bit extraction.
//!
//! The crate is organised bottom-up:
//!
//! - [`statevector`]: dense complex statevector with controlled single-qubit
//!   gates, register marginals, and amplitude injection.
//! - [`bessel`]: modified Bessel function `I0` (value and log forms).
//! - [`window`]: window-state construction (rectangular, cosine, sine,
//!   Kaiser), the tabulated Kaiser shape parameters, and an exact
//!   state-preparation circuit for non-negative windows.
//! - [`spectrum`]: zero-padded discrete spectra and lobe metrics.
//! - [`qpe`]: textbook phase estimation on a windowed register, an analytic
//!   emulator for the same distribution, bin coalescing, and the two-bin
//!   success metric.
//! - [`qsp`]: signal-processing responses, the smoothed sign target, and
//!   phase-factor optimization with certification.
//! - [`qsvt`]: the coherent bit-by-bit phase reader built from
//!   projector-controlled rotations around Hadamard-test block encodings,
//!   plus oracle query accounting.
//! - [`sweep`]: deterministic eigenphase sweeps, scaling studies, fits, and
//!   the bit-pattern asymmetry analysis.
//! - [`report`]: deterministic CSV/JSON/SVG rendering of results.

pub mod bessel;
pub mod error;
pub mod qpe;
pub mod qsp;
pub mod qsvt;
pub mod report;
pub mod spectrum;
pub mod statevector;
pub mod sweep;
pub mod window;

pub use error::{Error, Result};
