//! Property-based invariants over random superpositions of displaced
//! Gaussians. Small grids keep the FFT work per case cheap.

use num_complex::Complex64;
use proptest::prelude::*;

use wigner_weft::{
    cross_wigner, hbar_fourier, inner_product, lin_comb, normalize, Direction, Grid, SampledState,
};

const N: usize = 64;
const DX: f64 = 0.25;

fn grid() -> Grid {
    Grid::new(N, DX, 1.0).unwrap()
}

#[derive(Clone, Debug)]
struct Component {
    x0: f64,
    p0: f64,
    width: f64,
    coeff: Complex64,
}

fn component() -> impl Strategy<Value = Component> {
    (
        -1.2..1.2f64,
        -1.2..1.2f64,
        0.8..1.2f64,
        -1.0..1.0f64,
        -1.0..1.0f64,
    )
        .prop_map(|(x0, p0, width, re, im)| Component {
            x0,
            p0,
            width,
            coeff: Complex64::new(re, im),
        })
}

fn state() -> impl Strategy<Value = SampledState> {
    proptest::collection::vec(component(), 1..4).prop_map(|components| {
        let g = grid();
        let mut acc = SampledState::zeros(g);
        for c in &components {
            let part = SampledState::gaussian(g, c.x0, c.p0, c.width).unwrap();
            acc = lin_comb(Complex64::new(1.0, 0.0), &acc, c.coeff, &part).unwrap();
        }
        // Keep a guaranteed-nonzero component so normalization succeeds.
        let anchor = SampledState::gaussian(g, 0.0, 0.0, 1.0).unwrap();
        let combined = lin_comb(
            Complex64::new(1.0, 0.0),
            &acc,
            Complex64::new(0.05, 0.0),
            &anchor,
        )
        .unwrap();
        normalize(&combined).unwrap()
    })
}

fn complex_coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn inner_product_is_sesquilinear(
        phi in state(),
        psi1 in state(),
        psi2 in state(),
        a in complex_coeff(),
        b in complex_coeff(),
    ) {
        let combo = lin_comb(a, &psi1, b, &psi2).unwrap();
        let lhs = inner_product(&phi, &combo).unwrap();
        let rhs = a * inner_product(&phi, &psi1).unwrap() + b * inner_product(&phi, &psi2).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn inner_product_conjugate_symmetry(phi in state(), psi in state()) {
        let ab = inner_product(&phi, &psi).unwrap();
        let ba = inner_product(&psi, &phi).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
    }

    #[test]
    fn fourier_is_unitary(psi in state()) {
        let f = hbar_fourier(&psi, Direction::Forward);
        prop_assert!((f.norm() - psi.norm()).abs() < 1e-10);
    }

    #[test]
    fn fourier_inverts(psi in state()) {
        let back = hbar_fourier(&hbar_fourier(&psi, Direction::Forward), Direction::Inverse);
        let worst = back
            .values()
            .iter()
            .zip(psi.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prop_assert!(worst < 1e-12);
    }

    #[test]
    fn wigner_conjugation_symmetry(phi in state(), psi in state()) {
        let wab = cross_wigner(&phi, &psi).unwrap();
        let wba = cross_wigner(&psi, &phi).unwrap();
        prop_assert!(wba.max_abs_diff(&wab.conjugated()).unwrap() < 1e-12);
    }

    #[test]
    fn wigner_diagonal_is_real(psi in state()) {
        let w = cross_wigner(&psi, &psi).unwrap();
        let max_im = w.values().iter().map(|v| v.im.abs()).fold(0.0, f64::max);
        prop_assert!(max_im < 1e-10);
    }

    #[test]
    fn interference_decomposition(phi in state(), psi in state()) {
        let one = Complex64::new(1.0, 0.0);
        let sum = lin_comb(one, &phi, one, &psi).unwrap();
        let w_sum = cross_wigner(&sum, &sum).unwrap();
        let w_phi = cross_wigner(&phi, &phi).unwrap();
        let w_psi = cross_wigner(&psi, &psi).unwrap();
        let w_cross = cross_wigner(&phi, &psi).unwrap();
        let worst = w_sum
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                (v - w_phi.values()[i] - w_psi.values()[i] - 2.0 * w_cross.values()[i].re).norm()
            })
            .fold(0.0, f64::max);
        prop_assert!(worst < 1e-10);
    }

    #[test]
    fn wigner_x_marginal_matches_interference_density(phi in state(), psi in state()) {
        let w = cross_wigner(&phi, &psi).unwrap();
        let mut worst = 0.0_f64;
        for j in 0..N {
            let marginal: Complex64 = w.row(j).iter().sum::<Complex64>() * w.dp();
            let density = phi.value(j).conj() * psi.value(j);
            worst = worst.max((marginal - density).norm());
        }
        prop_assert!(worst < 1e-12);
    }
}
