//! Numerical tolerances used across the crate, with their origin.
//!
//! Two regimes matter here. Identities that hold exactly on the lattice
//! (Fourier inversion, Grossmann-Royer involution, conjugation symmetry,
//! the x-marginal of the Wigner field) fail only by accumulated f64
//! rounding and get tolerances near machine precision. Identities that
//! compare a lattice sum against a continuum value (closed-form Gaussian
//! integrals, Moyal's identity, momentum marginals) inherit quadrature
//! and window-truncation error and get 1e-6 on the default rig
//! (n = 256, dx = 0.1, hbar = 1).

/// Identities that are algebraically exact on the lattice. 1e-10 leaves
/// four orders of headroom over f64 rounding accumulated across n = 256
/// FFTs and reductions.
pub const ALGEBRAIC_TOL: f64 = 1e-10;

/// Forward-then-inverse Fourier round trips. These invert exactly in
/// exact arithmetic; 1e-12 absorbs FFT rounding only.
pub const FFT_ROUNDTRIP_TOL: f64 = 1e-12;

/// Lattice sums standing in for continuum integrals of smooth decaying
/// states on the default rig. The true error is spectrally small; 1e-6
/// is the contract.
pub const QUADRATURE_TOL: f64 = 1e-6;

/// Agreement between the FFT route and the reflection-operator route to
/// the cross-Wigner transform. The two routes compute the same lattice
/// sum in different orders.
pub const GR_EQUIVALENCE_TOL: f64 = 1e-8;

/// Pointwise interference decomposition W(phi+psi) = Wphi + Wpsi + 2 Re W(phi,psi).
pub const INTERFERENCE_TOL: f64 = 1e-8;

/// Max-abs error of a reconstructed wavefunction on the default rig.
/// Dominated by the parity-split quadrature of the auxiliary-state
/// overlap; grid-dependent.
pub const RECONSTRUCTION_TOL: f64 = 1e-4;

/// Two admissible auxiliary states must reconstruct the same function
/// to this max-abs difference.
pub const GAMMA_INDEPENDENCE_TOL: f64 = 1e-5;

/// Projector-scan round trip (scan then rebuild the wavefunction). The
/// round trip is algebraically exact; 1e-7 is the contract.
pub const LUNDEEN_ROUNDTRIP_TOL: f64 = 1e-7;

/// Weak values divide by <phi|psi>; below this overlap magnitude the
/// quotient is treated as undefined and an error carrying the measured
/// overlap is returned.
pub const OVERLAP_TOLERANCE: f64 = 1e-10;

/// Probability mass allowed outside the central half of the window
/// before a state stops counting as "supported well inside" it.
pub const INTERIOR_SUPPORT_TOL: f64 = 1e-8;

/// Relative slack when matching a coordinate against a lattice point.
pub const LATTICE_SNAP_TOL: f64 = 1e-9;

/// Default seed for the deterministic random-state battery.
pub const DEFAULT_SEED: u64 = 42;

// The regimes must stay ordered: exact-on-lattice < two-route < quadrature.
const _: () = {
    assert!(FFT_ROUNDTRIP_TOL < ALGEBRAIC_TOL);
    assert!(ALGEBRAIC_TOL < GR_EQUIVALENCE_TOL);
    assert!(GR_EQUIVALENCE_TOL < QUADRATURE_TOL);
    assert!(GAMMA_INDEPENDENCE_TOL < RECONSTRUCTION_TOL);
};
