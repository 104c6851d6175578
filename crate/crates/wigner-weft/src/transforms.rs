//! Phase-space transforms: the cross-Wigner transform, the
//! Grossmann-Royer reflection operator, the cross-ambiguity function, and
//! the symplectic Fourier transform connecting the last two.
//!
//! The cross-Wigner transform of a postselected/preselected pair is
//!
//! ```text
//! W(phi,psi)(x,p) = (2*pi*hbar)^(-1) * integral exp(-i p y / hbar)
//!                      conj(phi(x - y/2)) psi(x + y/2) dy,
//! ```
//!
//! with the conjugate (bra-side) factor at `x - y/2`. That orientation is
//! what makes the momentum marginal come out at `+p`, and makes the
//! reflection-operator identity
//! `W(phi,psi)(z) = (pi*hbar)^(-1) <T_gr(z) phi | psi>` hold with
//! `T_gr(z0) psi(x) = exp(2i p0 (x - x0)/hbar) psi(2 x0 - x)`.
//!
//! Discretization: the correlation product is sampled at lag spacing
//! `dy = 2*dx` so both arguments `x -+ y/2` land exactly on grid points
//! (out-of-window samples are zero). The row FFT over the lag therefore
//! produces momentum samples at spacing `pi*hbar/(n*dx)` - half the grid's
//! `dp`, covering half its Nyquist range - which is the Wigner-type
//! lattice of [`PhaseSpaceField`]. On that lattice the momentum sum of a
//! row telescopes to the exact position marginal.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PhaseSpaceField;
use crate::grid::{inner_product, SampledState};
use crate::spectral::{Dft, KernelSign};

/// A point `z = (x, p)` of phase space. Operations state individually
/// whether a component must lie on a lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub x: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }
}

fn require_same_grid(phi: &SampledState, psi: &SampledState, context: &'static str) -> Result<()> {
    if phi.grid() != psi.grid() {
        return Err(Error::GridMismatch { context });
    }
    Ok(())
}

/// Cross-Wigner transform `W(phi,psi)` on the Wigner-type lattice.
///
/// Satisfies `cross_wigner(psi, phi) = cross_wigner(phi, psi)*` pointwise,
/// and its diagonal `W(psi,psi)` is real.
pub fn cross_wigner(phi: &SampledState, psi: &SampledState) -> Result<PhaseSpaceField> {
    require_same_grid(phi, psi, "cross-Wigner operands")?;
    let grid = *phi.grid();
    let n = grid.n();
    let mut field = PhaseSpaceField::wigner_lattice(&grid);
    // dy / (2*pi*hbar) with dy = 2*dx.
    let scale = grid.dx() / (std::f64::consts::PI * grid.hbar());
    let dft = Dft::new(n);
    let phi_v = phi.values();
    let psi_v = psi.values();

    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let reach = j.min(n - 1 - j) as isize;
            let mut lag = vec![Complex64::new(0.0, 0.0); n];
            for m in -reach..=reach {
                // Kernel exp(-i p_k y_m / hbar) on the halved momentum
                // lattice reduces to exp(-2*pi*i k m / n) * (-1)^m.
                let c = phi_v[(j as isize - m) as usize].conj() * psi_v[(j as isize + m) as usize];
                let idx = m.rem_euclid(n as isize) as usize;
                lag[idx] = if m.rem_euclid(2) == 1 { -c } else { c };
            }
            dft.plain(&mut lag, KernelSign::Negative);
            for v in &mut lag {
                *v *= scale;
            }
            lag
        })
        .collect();

    for (j, row) in rows.into_iter().enumerate() {
        field.row_mut(j).copy_from_slice(&row);
    }
    Ok(field)
}

/// Apply the Grossmann-Royer operator
/// `T_gr(z0) psi(x) = exp(2i p0 (x - x0)/hbar) psi(2 x0 - x)`.
///
/// `z0.x` must lie on the position lattice so the reflection maps lattice
/// to lattice; `z0.p` is arbitrary. Samples reflected outside the window
/// are zero. The operator is an involution and unitary on states whose
/// support stays inside the window.
pub fn grossmann_royer_apply(z0: PhasePoint, psi: &SampledState) -> Result<SampledState> {
    let grid = *psi.grid();
    let j0 = grid.position_index(z0.x, "x0")?;
    let n = grid.n();
    let hbar = grid.hbar();
    let values = (0..n)
        .map(|j| {
            let reflected = 2 * j0 as isize - j as isize;
            if reflected < 0 || reflected >= n as isize {
                Complex64::new(0.0, 0.0)
            } else {
                let phase = Complex64::cis(2.0 * z0.p * (grid.x(j) - z0.x) / hbar);
                phase * psi.value(reflected as usize)
            }
        })
        .collect();
    SampledState::from_values(grid, values)
}

/// Cross-Wigner value at a single phase-space point through the
/// reflection operator: `(pi*hbar)^(-1) <T_gr(z) phi | psi>`.
///
/// Agrees with the corresponding [`cross_wigner`] lattice value whenever
/// `z` lies on the Wigner lattice; the two routes are the internal
/// consistency oracle for each other.
pub fn cross_wigner_via_gr(
    phi: &SampledState,
    psi: &SampledState,
    z: PhasePoint,
) -> Result<Complex64> {
    require_same_grid(phi, psi, "cross-Wigner operands")?;
    let reflected = grossmann_royer_apply(z, phi)?;
    let ip = inner_product(&reflected, psi)?;
    Ok(ip / (std::f64::consts::PI * phi.grid().hbar()))
}

/// Symplectic Fourier transform
/// `F_sigma a(x,p) = (2*pi*hbar)^(-1) * integral exp(-i (p x' - x p') / hbar) a(x',p') dx' dp'`.
///
/// Maps a Wigner-type lattice to the ambiguity-type lattice and back; the
/// output momentum lattice is dual to the input position lattice and vice
/// versa, so applying the transform twice returns the original field
/// exactly (up to rounding).
pub fn symplectic_fourier(field: &PhaseSpaceField) -> Result<PhaseSpaceField> {
    if !field.lattice_consistent() {
        return Err(Error::GridMismatch {
            context: "symplectic Fourier input lattice",
        });
    }
    let n = field.n();
    let hbar = field.hbar();
    let two_pi_hbar = 2.0 * std::f64::consts::PI * hbar;
    let out_dx = two_pi_hbar / (n as f64 * field.dp());
    let out_dp = two_pi_hbar / (n as f64 * field.dx());
    let mut out = PhaseSpaceField::zeros(
        n,
        hbar,
        -((n / 2) as f64) * out_dx,
        out_dx,
        -((n / 2) as f64) * out_dp,
        out_dp,
    );
    let scale = field.dx() * field.dp() / two_pi_hbar;
    let dft = Dft::new(n);

    // Inner pass over the momentum index: kernel exp(+i X_r p_k / hbar)
    // with X_r * p_k / hbar = 2*pi*(r - n/2)(k - n/2)/n.
    let inner: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = field.row(j).to_vec();
            dft.centered(&mut row, KernelSign::Positive);
            row
        })
        .collect();

    // Outer pass over the position index: kernel exp(-i P_s x_j / hbar).
    let outer: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|r| {
            let mut col: Vec<Complex64> = (0..n).map(|j| inner[j][r]).collect();
            dft.centered(&mut col, KernelSign::Negative);
            for v in &mut col {
                *v *= scale;
            }
            col
        })
        .collect();

    for (r, row) in outer.into_iter().enumerate() {
        out.row_mut(r).copy_from_slice(&row);
    }
    Ok(out)
}

/// Cross-ambiguity function
/// `A(phi,psi)(x,p) = (2*pi*hbar)^(-1) * integral exp(-i p y / hbar)
/// conj(phi(y - x/2)) psi(y + x/2) dy`,
/// evaluated directly on the ambiguity-type lattice (lag spacing `2*dx`,
/// the grid's own momentum lattice).
///
/// Equals `symplectic_fourier(cross_wigner(phi, psi))` on the lattice.
pub fn cross_ambiguity(phi: &SampledState, psi: &SampledState) -> Result<PhaseSpaceField> {
    require_same_grid(phi, psi, "cross-ambiguity operands")?;
    let grid = *phi.grid();
    let n = grid.n();
    let mut field = PhaseSpaceField::ambiguity_lattice(&grid);
    let scale = grid.dx() / (2.0 * std::f64::consts::PI * grid.hbar());
    let dft = Dft::new(n);
    let phi_v = phi.values();
    let psi_v = psi.values();

    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|m| {
            let lag = m as isize - (n / 2) as isize;
            let mut prod = vec![Complex64::new(0.0, 0.0); n];
            let lo = lag.unsigned_abs();
            for j in lo..n - lo {
                prod[j] =
                    phi_v[(j as isize - lag) as usize].conj() * psi_v[(j as isize + lag) as usize];
            }
            dft.centered(&mut prod, KernelSign::Negative);
            for v in &mut prod {
                *v *= scale;
            }
            prod
        })
        .collect();

    for (m, row) in rows.into_iter().enumerate() {
        field.row_mut(m).copy_from_slice(&row);
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{lin_comb, Grid};

    const PI: f64 = std::f64::consts::PI;

    fn default_grid() -> Grid {
        Grid::new(256, 0.1, 1.0).unwrap()
    }

    fn psi0(grid: Grid) -> SampledState {
        SampledState::gaussian(grid, 0.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn wigner_gaussian_at_origin() {
        let g = default_grid();
        let w = cross_wigner(&psi0(g), &psi0(g)).unwrap();
        let center = w.value(g.n() / 2, g.n() / 2);
        assert!((center.re - 1.0 / PI).abs() < 1e-6, "{center}");
        assert!(center.im.abs() < 1e-12);
    }

    #[test]
    fn wigner_gaussian_closed_form_everywhere() {
        let g = default_grid();
        let w = cross_wigner(&psi0(g), &psi0(g)).unwrap();
        let mut worst = 0.0_f64;
        for j in 0..g.n() {
            for k in 0..g.n() {
                let expect = (1.0 / PI) * (-(w.x(j).powi(2) + w.p(k).powi(2))).exp();
                worst = worst.max((w.value(j, k) - expect).norm());
            }
        }
        assert!(worst < 1e-8, "worst deviation {worst}");
    }

    #[test]
    fn wigner_hermite_at_origin() {
        let g = default_grid();
        let h1 = SampledState::hermite(g, 1).unwrap();
        let w = cross_wigner(&h1, &h1).unwrap();
        let center = w.value(g.n() / 2, g.n() / 2);
        assert!((center.re + 1.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn wigner_odd_cross_term_vanishes_at_origin() {
        let g = default_grid();
        let h1 = SampledState::hermite(g, 1).unwrap();
        let w = cross_wigner(&psi0(g), &h1).unwrap();
        assert!(w.value(g.n() / 2, g.n() / 2).norm() < 1e-8);
    }

    #[test]
    fn wigner_conjugation_contract() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.6, 0.9, 1.1).unwrap();
        let b = SampledState::gaussian(g, -0.4, -1.2, 0.8).unwrap();
        let wab = cross_wigner(&a, &b).unwrap();
        let wba = cross_wigner(&b, &a).unwrap();
        let worst = wba.max_abs_diff(&wab.conjugated()).unwrap();
        assert!(worst < 1e-12);
    }

    #[test]
    fn wigner_x_marginal_is_exact() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.5, 1.0, 1.2).unwrap();
        let b = SampledState::gaussian(g, -0.3, 0.4, 0.9).unwrap();
        let w = cross_wigner(&a, &b).unwrap();
        let mut worst = 0.0_f64;
        for j in 0..g.n() {
            let marg: Complex64 = w.row(j).iter().sum::<Complex64>() * w.dp();
            let expect = a.value(j).conj() * b.value(j);
            worst = worst.max((marg - expect).norm());
        }
        assert!(worst < 1e-13, "worst marginal deviation {worst}");
    }

    #[test]
    fn gr_reflection_examples() {
        let g = default_grid();
        let s = psi0(g);
        let origin = PhasePoint::new(0.0, 0.0);
        let reflected = grossmann_royer_apply(origin, &s).unwrap();
        let worst = reflected
            .values()
            .iter()
            .zip(s.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "even state should be invariant, worst {worst}");
    }

    #[test]
    fn gr_involution_and_unitarity() {
        let g = default_grid();
        let s = SampledState::gaussian(g, 0.8, -1.1, 0.9).unwrap();
        let z0 = PhasePoint::new(g.x(140), 0.37);
        let twice = grossmann_royer_apply(z0, &grossmann_royer_apply(z0, &s).unwrap()).unwrap();
        let worst = twice
            .values()
            .iter()
            .zip(s.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12);

        let once = grossmann_royer_apply(z0, &s).unwrap();
        assert!(
            (inner_product(&once, &once).unwrap().re - inner_product(&s, &s).unwrap().re).abs()
                < 1e-10
        );
    }

    #[test]
    fn gr_off_lattice_rejected() {
        let g = default_grid();
        let z0 = PhasePoint::new(0.55 * g.dx(), 0.0);
        assert!(matches!(
            grossmann_royer_apply(z0, &psi0(g)),
            Err(Error::OffLattice { .. })
        ));
    }

    #[test]
    fn gr_route_matches_fft_route() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.7, 0.5, 1.0).unwrap();
        let b = SampledState::gaussian(g, -0.2, -0.8, 1.3).unwrap();
        let w = cross_wigner(&a, &b).unwrap();
        for (j, k) in [(128, 128), (100, 150), (60, 200), (190, 40), (0, 17)] {
            let z = PhasePoint::new(w.x(j), w.p(k));
            let via_gr = cross_wigner_via_gr(&a, &b, z).unwrap();
            assert!(
                (via_gr - w.value(j, k)).norm() < 1e-8,
                "mismatch at ({j},{k})"
            );
        }
    }

    #[test]
    fn gr_route_gaussian_value() {
        let g = default_grid();
        let v = cross_wigner_via_gr(&psi0(g), &psi0(g), PhasePoint::new(0.0, 0.0)).unwrap();
        assert!((v.re - 1.0 / PI).abs() < 1e-6);
        let h1 = SampledState::hermite(g, 1).unwrap();
        let v2 = cross_wigner_via_gr(&psi0(g), &h1, PhasePoint::new(0.0, 0.0)).unwrap();
        assert!(v2.norm() < 1e-8);
    }

    #[test]
    fn ambiguity_gaussian_at_origin() {
        let g = default_grid();
        let a = cross_ambiguity(&psi0(g), &psi0(g)).unwrap();
        let center = a.value(g.n() / 2, g.n() / 2);
        assert!((center.re - 1.0 / (2.0 * PI)).abs() < 1e-8, "{center}");
        let h1 = SampledState::hermite(g, 1).unwrap();
        let cross = cross_ambiguity(&psi0(g), &h1).unwrap();
        assert!(cross.value(g.n() / 2, g.n() / 2).norm() < 1e-8);
    }

    #[test]
    fn ambiguity_equals_symplectic_fourier_of_wigner() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.9, 0.7, 1.1).unwrap();
        let b = SampledState::gaussian(g, -0.5, -0.3, 0.95).unwrap();
        let direct = cross_ambiguity(&a, &b).unwrap();
        let via_fs = symplectic_fourier(&cross_wigner(&a, &b).unwrap()).unwrap();
        assert!(direct.same_lattice(&via_fs));
        let worst = direct.max_abs_diff(&via_fs).unwrap();
        assert!(worst < 1e-12, "two-route difference {worst}");
    }

    #[test]
    fn symplectic_fourier_involution() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.4, 1.1, 1.2).unwrap();
        let b = SampledState::hermite(g, 2).unwrap();
        let w = cross_wigner(&a, &b).unwrap();
        let back = symplectic_fourier(&symplectic_fourier(&w).unwrap()).unwrap();
        assert!(back.same_lattice(&w));
        assert!(back.max_abs_diff(&w).unwrap() < 1e-10);

        let zero = PhaseSpaceField::wigner_lattice(&g);
        let fz = symplectic_fourier(&zero).unwrap();
        assert!(fz.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn ambiguity_origin_equals_scaled_overlap() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.3, -0.6, 1.0).unwrap();
        let b = SampledState::gaussian(g, -0.2, 0.4, 1.1).unwrap();
        let amb = cross_ambiguity(&a, &b).unwrap();
        let overlap = inner_product(&a, &b).unwrap();
        let origin = amb.value(g.n() / 2, g.n() / 2);
        assert!((origin - overlap / (2.0 * PI)).norm() < 1e-10);
    }

    #[test]
    fn interference_decomposition_pointwise() {
        let g = default_grid();
        let a = psi0(g);
        let b = SampledState::hermite(g, 1).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let sum = lin_comb(one, &a, one, &b).unwrap();
        let w_sum = cross_wigner(&sum, &sum).unwrap();
        let wa = cross_wigner(&a, &a).unwrap();
        let wb = cross_wigner(&b, &b).unwrap();
        let wab = cross_wigner(&a, &b).unwrap();
        let mut worst = 0.0_f64;
        for (idx, v) in w_sum.values().iter().enumerate() {
            let expect = wa.values()[idx] + wb.values()[idx] + 2.0 * wab.values()[idx].re;
            worst = worst.max((v - expect).norm());
        }
        assert!(worst < 1e-10, "interference residual {worst}");
    }

    #[test]
    fn deterministic_across_calls() {
        let g = default_grid();
        let a = SampledState::gaussian(g, 0.2, 0.9, 1.0).unwrap();
        let b = SampledState::gaussian(g, -0.7, 0.1, 1.2).unwrap();
        let w1 = cross_wigner(&a, &b).unwrap();
        let w2 = cross_wigner(&a, &b).unwrap();
        assert_eq!(w1, w2);
    }
}
