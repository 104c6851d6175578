//! Weak values of observables between a preselected state `psi` and a
//! postselected state `phi`.
//!
//! The central object is the complex quasi-distribution
//! `rho(x,p) = W(phi,psi)(x,p) / <phi|psi>`, which integrates to one and
//! whose phase-space averages reproduce weak values
//! `<phi|A|psi> / <phi|psi>`. Its marginals are the position and momentum
//! interference densities, which is what makes the projector scan (weak
//! position measurement followed by momentum postselection) read the
//! wavefunction off pointwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PhaseSpaceField;
use crate::grid::{
    fourier_amplitude_at, hbar_fourier, inner_product, Direction, Grid, SampledState,
};
use crate::tolerances::OVERLAP_TOLERANCE;
use crate::transforms::cross_wigner;

/// A phase-space observable symbol for averaging against the
/// quasi-distribution.
#[derive(Clone, Debug)]
pub enum ObservableSymbol {
    /// The position coordinate `A(x,p) = x`.
    CoordinateX,
    /// The momentum coordinate `A(x,p) = p`.
    CoordinateP,
    /// Arbitrary sampled symbol over the field lattice (row-major, n*n).
    Gridded(Vec<Complex64>),
    /// Projector onto the lattice position `x_j`. Averaged through the
    /// momentum sum of the row at `x_j` rather than a discretized delta.
    PositionProjector { index: usize },
}

impl ObservableSymbol {
    fn name(&self) -> &'static str {
        match self {
            ObservableSymbol::CoordinateX => "x",
            ObservableSymbol::CoordinateP => "p",
            ObservableSymbol::Gridded(_) => "gridded",
            ObservableSymbol::PositionProjector { .. } => "position projector",
        }
    }
}

/// A complex weak value with the pointer readouts it produces under a von
/// Neumann coupling of strength `g` and readout parameter `v`:
/// the mean pointer position is `g * Re(value)` and the mean pointer
/// momentum is `(2 g v / hbar) * Im(value)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakValueReport {
    pub value: Complex64,
    pub pointer_x_mean: f64,
    pub pointer_p_mean: f64,
    pub g: f64,
    pub v: f64,
}

/// Marginals of a quasi-distribution together with their deviations from
/// the interference densities they must reproduce.
#[derive(Clone, Debug)]
pub struct MarginalReport {
    /// `sum_k rho(x_j, p_k) dp`, indexed by position.
    pub x_marginal: Vec<Complex64>,
    /// `sum_j rho(x_j, p_k) dx`, indexed by momentum.
    pub p_marginal: Vec<Complex64>,
    /// Max abs deviation of `x_marginal` from `conj(phi) psi / <phi|psi>`.
    pub x_residual: f64,
    /// Max abs deviation of `p_marginal` from
    /// `conj(F phi) F psi / <phi|psi>` on the field's momentum lattice.
    pub p_residual: f64,
}

fn checked_overlap(phi: &SampledState, psi: &SampledState) -> Result<Complex64> {
    let overlap = inner_product(phi, psi)?;
    if overlap.norm() <= OVERLAP_TOLERANCE {
        return Err(Error::NearOrthogonal {
            overlap: overlap.norm(),
            tolerance: OVERLAP_TOLERANCE,
        });
    }
    Ok(overlap)
}

/// The complex quasi-distribution `rho = W(phi,psi) / <phi|psi>`.
///
/// Errors when the pair is numerically orthogonal; the error carries the
/// measured overlap. The lattice sum `sum rho * dmu` equals one exactly
/// (up to rounding) because the momentum sum of each Wigner row
/// reproduces `conj(phi_j) psi_j`.
pub fn quasi_distribution_rho(phi: &SampledState, psi: &SampledState) -> Result<PhaseSpaceField> {
    let overlap = checked_overlap(phi, psi)?;
    let w = cross_wigner(phi, psi)?;
    Ok(w.scaled(1.0 / overlap))
}

/// Phase-space average `sum A(x_j, p_k) rho(x_j, p_k) dmu`.
pub fn weak_value_from_rho(symbol: &ObservableSymbol, rho: &PhaseSpaceField) -> Result<Complex64> {
    let n = rho.n();
    let dmu = rho.cell_measure();
    match symbol {
        ObservableSymbol::CoordinateX => {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let row_sum: Complex64 = rho.row(j).iter().sum();
                acc += rho.x(j) * row_sum;
            }
            Ok(acc * dmu)
        }
        ObservableSymbol::CoordinateP => {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                for (k, v) in rho.row(j).iter().enumerate() {
                    acc += rho.p(k) * v;
                }
            }
            Ok(acc * dmu)
        }
        ObservableSymbol::Gridded(values) => {
            if values.len() != n * n {
                return Err(Error::ShapeMismatch {
                    context: "gridded symbol vs field lattice",
                    expected: n * n,
                    got: values.len(),
                });
            }
            let acc: Complex64 = values.iter().zip(rho.values()).map(|(a, r)| a * r).sum();
            Ok(acc * dmu)
        }
        ObservableSymbol::PositionProjector { index } => {
            if *index >= n {
                return Err(Error::IndexOutOfRange {
                    name: "projector",
                    index: *index,
                    n,
                });
            }
            let row_sum: Complex64 = rho.row(*index).iter().sum();
            Ok(row_sum * rho.dp())
        }
    }
}

/// Weak value by direct operator application,
/// `<phi| A |psi> / <phi|psi>`.
///
/// Position acts by pointwise multiplication, momentum by Fourier
/// multiplication, and the position projector by single-point evaluation
/// `conj(phi(x_j)) psi(x_j)` (a density, no `dx` weight). This is the
/// independent oracle for [`weak_value_from_rho`]; the gridded symbol has
/// no direct route.
pub fn weak_value_direct(
    symbol: &ObservableSymbol,
    phi: &SampledState,
    psi: &SampledState,
) -> Result<Complex64> {
    let overlap = checked_overlap(phi, psi)?;
    match symbol {
        ObservableSymbol::CoordinateX => {
            let grid = *psi.grid();
            let applied: Vec<Complex64> = psi
                .values()
                .iter()
                .enumerate()
                .map(|(j, v)| v * grid.x(j))
                .collect();
            let x_psi = SampledState::from_values(grid, applied)?;
            Ok(inner_product(phi, &x_psi)? / overlap)
        }
        ObservableSymbol::CoordinateP => {
            let momentum = hbar_fourier(psi, Direction::Forward);
            let dual = *momentum.grid();
            let multiplied: Vec<Complex64> = momentum
                .values()
                .iter()
                .enumerate()
                .map(|(k, v)| v * dual.x(k))
                .collect();
            let p_psi = hbar_fourier(
                &SampledState::from_values(dual, multiplied)?,
                Direction::Inverse,
            );
            Ok(inner_product(phi, &p_psi)? / overlap)
        }
        ObservableSymbol::PositionProjector { index } => {
            let n = psi.grid().n();
            if *index >= n {
                return Err(Error::IndexOutOfRange {
                    name: "projector",
                    index: *index,
                    n,
                });
            }
            Ok(phi.value(*index).conj() * psi.value(*index) / overlap)
        }
        ObservableSymbol::Gridded(_) => Err(Error::UnsupportedSymbol {
            symbol: symbol.name(),
        }),
    }
}

/// Marginals of `rho` (built from the pair `(phi, psi)`) and their
/// residuals against the interference densities.
pub fn marginals(
    rho: &PhaseSpaceField,
    phi: &SampledState,
    psi: &SampledState,
) -> Result<MarginalReport> {
    if phi.grid() != psi.grid() || !rho.is_wigner_lattice_for(phi.grid()) {
        return Err(Error::GridMismatch {
            context: "marginals of rho vs state pair",
        });
    }
    let overlap = checked_overlap(phi, psi)?;
    let n = rho.n();

    let x_marginal: Vec<Complex64> = (0..n)
        .map(|j| rho.row(j).iter().sum::<Complex64>() * rho.dp())
        .collect();
    let x_residual = x_marginal
        .iter()
        .enumerate()
        .map(|(j, m)| (m - phi.value(j).conj() * psi.value(j) / overlap).norm())
        .fold(0.0, f64::max);

    let p_marginal: Vec<Complex64> = (0..n)
        .map(|k| {
            (0..n).map(|j| rho.value(j, k)).sum::<Complex64>() * rho.dx()
        })
        .collect();
    let p_residual = p_marginal
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let p = rho.p(k);
            let expect =
                fourier_amplitude_at(phi, p).conj() * fourier_amplitude_at(psi, p) / overlap;
            (m - expect).norm()
        })
        .fold(0.0, f64::max);

    Ok(MarginalReport {
        x_marginal,
        p_marginal,
        x_residual,
        p_residual,
    })
}

/// Weak values of the position projector scanned over every lattice
/// point, with momentum postselection at `p0` (a momentum-lattice point).
///
/// Postselecting on the plane wave `phi_p0` and integrating `rho` over
/// momentum at fixed `x_j` gives
/// `conj(phi_p0(x_j)) psi(x_j) / F psi(p0)`, i.e.
/// `(2*pi*hbar)^(-1/2) exp(-i p0 x_j / hbar) psi(x_j) / F psi(p0)`.
/// Errors when `F psi(p0)` is numerically zero.
pub fn projector_weak_value_scan(psi: &SampledState, p0: f64) -> Result<Vec<Complex64>> {
    let grid = *psi.grid();
    grid.momentum_index(p0, "p0")?;
    let postselected = SampledState::plane_wave(grid, p0)?;
    let rho = quasi_distribution_rho(&postselected, psi)?;
    Ok((0..grid.n())
        .map(|j| rho.row(j).iter().sum::<Complex64>() * rho.dp())
        .collect())
}

/// Rebuild the wavefunction from a projector scan:
/// `psi(x_j) = k * (2*pi*hbar)^(1/2) * exp(i p0 x_j / hbar) * scan_j`
/// with `k = F psi(p0)`. Round-trips [`projector_weak_value_scan`]
/// exactly; `k = 0` produces the zero state.
pub fn lundeen_reconstruct(
    scan: &[Complex64],
    grid: &Grid,
    p0: f64,
    k: Complex64,
) -> Result<SampledState> {
    if scan.len() != grid.n() {
        return Err(Error::ShapeMismatch {
            context: "scan length vs grid",
            expected: grid.n(),
            got: scan.len(),
        });
    }
    let hbar = grid.hbar();
    let root = (2.0 * std::f64::consts::PI * hbar).sqrt();
    let values = scan
        .iter()
        .enumerate()
        .map(|(j, s)| k * root * Complex64::cis(p0 * grid.x(j) / hbar) * s)
        .collect();
    SampledState::from_values(*grid, values)
}

/// Pointer readout means for a weak value under coupling `g` and readout
/// parameter `v`.
pub fn pointer_readout(value: Complex64, g: f64, v: f64, hbar: f64) -> WeakValueReport {
    WeakValueReport {
        value,
        pointer_x_mean: g * value.re,
        pointer_p_mean: 2.0 * g * v / hbar * value.im,
        g,
        v,
    }
}
