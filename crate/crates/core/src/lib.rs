//! A measurement-based quantum Otto engine on a small trapped-ion chain.
//!
//! Two exchange-coupled ions in a magnetic field form the working substance;
//! a third ion and one shared vibrational mode (truncated to its two lowest
//! Fock states) act as the environment. The cycle thermalizes the full
//! sixteen-level system with a hot bath, ramps the field adiabatically, and
//! replaces the cold isochore with a projective measurement of the working
//! substance in a chosen energy eigenstate.
//!
//! The ground state of the working substance switches between the fully
//! flipped product state and the singlet at the critical field `B = J1/2`;
//! the machine delivers work only above that level crossing, which is what
//! the sweeps and presets in [`sweep`] map out. The weak-coupling closed
//! forms in [`analytic`] double as an independent oracle for the exact
//! numerics, and [`selftest`] bundles every release-gating comparison.
//!
//! Modules:
//! - [`linalg`]: dense symmetric eigensolver, Kronecker products, matrix
//!   functions.
//! - [`model`]: the Hamiltonians, the fixed analytic eigenbasis, parameter
//!   validation.
//! - [`thermo`]: Gibbs states, partial traces, occupations, entropy.
//! - [`cycle`]: the four strokes, efficiency and regime classification.
//! - [`analytic`]: weak-coupling closed forms.
//! - [`optimize`]: efficiency at maximum work over the heating field.
//! - [`sweep`]: parameter sweeps, figure presets, CSV/JSON output.
//! - [`selftest`]: the acceptance checks behind `qotto selftest`.

pub mod analytic;
pub mod cycle;
pub mod error;
pub mod linalg;
pub mod model;
pub mod optimize;
pub mod selftest;
pub mod sweep;
pub mod thermo;

pub use cycle::{classify_regime, measurement_populations, run_otto, CycleResult, Regime};
pub use error::{Error, Result};
pub use linalg::{eig_sym, kron, matrix_function, Mat, SpectralDecomp, SymMatrix};
pub use model::{
    build_full_hamiltonian, build_system_hamiltonian, critical_field, system_eigensystem,
    MeasureBasis, ModelParams, SystemEigensystem,
};
pub use optimize::{eta_wmax_curve, maximize_work_over_bh, EvalMode, WmaxResult};
pub use sweep::{figure_preset, run_sweep, FigureId, FigureJob, SweepAxis, SweepRow, SweepSpec};
pub use thermo::{
    gibbs_state, partial_trace, populations, von_neumann_entropy, DensityMatrix, Populations,
};
