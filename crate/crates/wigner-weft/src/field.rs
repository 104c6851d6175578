//! Complex fields over a rectangular (x, p) phase-space lattice.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;

/// An `n x n` complex array over a centered phase-space lattice, stored
/// row-major with the position index outermost and the momentum index
/// increasing (monotone p) within each row.
///
/// The two lattice spacings are carried explicitly because the transforms
/// in this crate produce two different lattice shapes over the same grid:
///
/// * Wigner-type fields sample `(x_min + j*dx, p_min/2 + k*dp/2)`; the
///   halved momentum spacing `pi*hbar/(n*dx)` is what makes the momentum
///   sum over a row reproduce the position marginal exactly (correlation
///   products are sampled at lag spacing `2*dx`, which halves the usable
///   momentum bandwidth).
/// * Ambiguity-type fields sample `(2*x_min + m*2*dx, p_min + k*dp)`.
///
/// The symplectic Fourier transform exchanges the two shapes.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpaceField {
    n: usize,
    hbar: f64,
    x_min: f64,
    dx: f64,
    p_min: f64,
    dp: f64,
    values: Vec<Complex64>,
}

impl PhaseSpaceField {
    pub(crate) fn zeros(n: usize, hbar: f64, x_min: f64, dx: f64, p_min: f64, dp: f64) -> Self {
        Self {
            n,
            hbar,
            x_min,
            dx,
            p_min,
            dp,
            values: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Lattice of Wigner-type fields over `grid`: the grid's position
    /// lattice crossed with the halved momentum lattice.
    pub fn wigner_lattice(grid: &Grid) -> Self {
        Self::zeros(
            grid.n(),
            grid.hbar(),
            grid.x_min(),
            grid.dx(),
            0.5 * grid.p_min(),
            0.5 * grid.dp(),
        )
    }

    /// Lattice of ambiguity-type fields over `grid`: doubled position
    /// spacing crossed with the grid's momentum lattice.
    pub fn ambiguity_lattice(grid: &Grid) -> Self {
        Self::zeros(
            grid.n(),
            grid.hbar(),
            2.0 * grid.x_min(),
            2.0 * grid.dx(),
            grid.p_min(),
            grid.dp(),
        )
    }

    /// Wrap raw values (row-major, length `n*n`), checking shape and
    /// finiteness.
    pub fn from_values(template: &PhaseSpaceField, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != template.n * template.n {
            return Err(Error::ShapeMismatch {
                context: "field values vs lattice",
                expected: template.n * template.n,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "field",
                index,
            });
        }
        Ok(Self {
            values,
            ..*template
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn p_min(&self) -> f64 {
        self.p_min
    }

    pub fn dp(&self) -> f64 {
        self.dp
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    pub fn p(&self, k: usize) -> f64 {
        self.p_min + k as f64 * self.dp
    }

    /// Phase-space cell measure `dx * dp` of this lattice.
    pub fn cell_measure(&self) -> f64 {
        self.dx * self.dp
    }

    pub fn value(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.n + k]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        &self.values[j * self.n..(j + 1) * self.n]
    }

    pub(crate) fn row_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.values[j * self.n..(j + 1) * self.n]
    }

    /// `sum field * dmu` over the whole lattice.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.cell_measure()
    }

    /// `sum |field|^2 * dmu`.
    pub fn squared_l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.cell_measure()
    }

    /// Pointwise complex conjugate.
    pub fn conjugated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| v.conj()).collect(),
            ..*self
        }
    }

    /// Pointwise scaling by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
            ..*self
        }
    }

    /// Largest pointwise modulus of `self - other` (lattices must match).
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if !self.same_lattice(other) {
            return Err(Error::GridMismatch {
                context: "field difference operands",
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Whether `other` lives on the same lattice up to floating-point noise.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.n == other.n
            && close(self.hbar, other.hbar)
            && close(self.dx, other.dx)
            && close(self.x_min, other.x_min)
            && close(self.dp, other.dp)
            && close(self.p_min, other.p_min)
    }

    /// Whether this is the Wigner-type lattice over `grid`.
    pub fn is_wigner_lattice_for(&self, grid: &Grid) -> bool {
        self.same_lattice(&Self::wigner_lattice(grid))
    }

    /// Whether this lattice is centered with a spacing product consistent
    /// with either transform shape (`n*dx*dp` equal to `pi*hbar` or
    /// `4*pi*hbar`).
    pub fn lattice_consistent(&self) -> bool {
        let centered = close(self.x_min, -((self.n / 2) as f64) * self.dx)
            && close(self.p_min, -((self.n / 2) as f64) * self.dp);
        let product = self.n as f64 * self.dx * self.dp;
        let pi_h = std::f64::consts::PI * self.hbar;
        centered && (close(product, pi_h) || close(product, 4.0 * pi_h))
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}
