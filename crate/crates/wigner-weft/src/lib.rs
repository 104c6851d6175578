//! Phase-space analysis of pre/post-selected quantum states on uniform
//! 1-D grids.
//!
//! The crate computes cross-Wigner transforms and cross-ambiguity
//! functions of state pairs, the complex quasi-distribution whose
//! averages are weak values, pointer readouts, and marginals, and it
//! reconstructs either member of a pair from the quasi-distribution plus
//! the other member via Grossmann-Royer reflection-operator integrals.
//! A verification suite checks every identity the transforms are supposed
//! to satisfy and records the sign and prefactor conventions it pinned.
//!
//! Modules:
//!
//! * [`grid`] - grids, sampled states, inner products, hbar-scaled FFT.
//! * [`field`] - complex fields over the (x, p) lattice.
//! * [`transforms`] - cross-Wigner, Grossmann-Royer, ambiguity, symplectic FT.
//! * [`weak_values`] - quasi-distribution, weak values, marginals, projector scans.
//! * [`reconstruction`] - recovering a state from a field and the other state.
//! * [`verification`] - brute-force oracles and the identity suite.
//! * [`io`] - JSON/CSV state and field files, verification reports.

pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod reconstruction;
mod spectral;
pub mod tolerances;
pub mod transforms;
pub mod verification;
pub mod weak_values;

pub use error::{Error, Result};
pub use field::PhaseSpaceField;
pub use grid::{
    fourier_amplitude_at, hbar_fourier, inner_product, lin_comb, normalize, Direction, Grid,
    SampledState,
};
pub use reconstruction::{
    interior_support_deficit, reconstruct_from_rho, reconstruct_phi, reconstruct_psi,
    reconstruction_error, ReconstructTarget, ReconstructionError,
};
pub use transforms::{
    cross_ambiguity, cross_wigner, cross_wigner_via_gr, grossmann_royer_apply, symplectic_fourier,
    PhasePoint,
};
pub use verification::{
    brute_force_cross_wigner, interference_check, moyal_check, run_verification_suite,
    SuiteConfig, VerificationReport,
};
pub use weak_values::{
    lundeen_reconstruct, marginals, pointer_readout, projector_weak_value_scan,
    quasi_distribution_rho, weak_value_direct, weak_value_from_rho, MarginalReport,
    ObservableSymbol, WeakValueReport,
};
